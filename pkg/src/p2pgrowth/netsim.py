"""Seedable simulators for the streaming overlay and its one-node reductions.

``simulate_network`` is the full event-driven model: Poisson arrivals, each
newcomer asks every live node for service, node i accepts with probability
1/(1 + organic out-degree of i), non-root nodes die after an Exp(mu) lifetime
and take their arcs with them, and the root reconnects any node left without
an upstream server.

The remaining simulators drive a single out-degree process (urn chain, jump
chain, continuous-time birth-death) and act as Monte Carlo oracles for the
analytic modules. ``sample_growth_in_degrees`` is an exact fast path for the
mu = 0 graph that uses the fact that each server's acceptances form an
independent urn.
"""
from __future__ import annotations

import hashlib
import heapq
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import CapacityError, DomainError, InternalError
from .model import ModelParams, RngStream, counter_uniforms, derive_stream, pair_counter

TRACE_SCHEMA_VERSION = 1
ROOT = 0

# sub-stream paths inside one replication
_ARRIVALS, _ACCEPT, _LIFETIME = 0, 1, 2


@dataclass(frozen=True)
class SimConfig:
    """One simulation ensemble.

    Exactly one of ``horizon`` (time) and ``max_arrivals`` ends a run.
    ``burn_in`` defaults to 10/mu and only affects the live-count occupancy.
    """

    params: ModelParams
    horizon: float | None = None
    max_arrivals: int | None = None
    snapshot_times: tuple[float, ...] = ()
    replication_count: int = 1
    master_seed: int = 0
    population_cap: int = 100_000
    record_occupancy: bool = False
    burn_in: float | None = None
    check_invariants: bool = False

    def __post_init__(self):
        if (self.horizon is None) == (self.max_arrivals is None):
            raise DomainError("set exactly one of horizon and max_arrivals")
        if self.horizon is not None and not self.horizon > 0:
            raise DomainError("horizon must be > 0")
        if self.max_arrivals is not None and self.max_arrivals <= 0:
            raise DomainError("max_arrivals must be > 0")
        times = tuple(float(s) for s in self.snapshot_times)
        if any(b < a for a, b in zip(times, times[1:])):
            raise DomainError("snapshot_times must be sorted")
        if times and (times[0] < 0 or (self.horizon is not None and times[-1] > self.horizon)):
            raise DomainError("snapshot_times must lie within [0, horizon]")
        if self.replication_count < 1:
            raise DomainError("replication_count must be >= 1")
        object.__setattr__(self, "snapshot_times", times)

    @property
    def effective_burn_in(self) -> float:
        if self.burn_in is not None:
            return self.burn_in
        return 10.0 / self.params.mu if self.params.mu > 0 else 0.0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = {"lambda": self.params.lam, "mu": self.params.mu}
        d["snapshot_times"] = list(self.snapshot_times)
        return d

    def config_hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


@dataclass
class Snapshot:
    time: float
    live_count: int
    out_degree_histogram: list[int]
    in_degree_histogram: list[int]
    in_degree_by_rank: dict[int, int]
    orphan_recovery_count_cumulative: int
    w_root_functional: float
    root_out_degree: int
    w_root_at_arrival: float = 0.0


@dataclass
class SimTrace:
    """Everything one replication reports.

    ``live_count`` and both histograms cover live nodes other than the root;
    ``root_out_degree`` counts the root's organic arcs only.
    """

    seed: int
    stream_id: int
    config_hash: str
    snapshots: list[Snapshot] = field(default_factory=list)
    end_time: float = 0.0
    arrivals: int = 0
    deaths: int = 0
    chain_arcs_checked: int = 0
    chain_arcs_present: int = 0
    live_count_occupancy: list[float] | None = None
    final_arcs: list[tuple[int, int, str]] | None = field(default=None, repr=False)


# --- network engine ---------------------------------------------------------

class NetworkState:
    """Live DAG with per-node organic out-degree and total in-degree."""

    def __init__(self, capacity: int = 64):
        self.ids = np.zeros(capacity, dtype=np.int64)
        self.out_organic = np.zeros(capacity, dtype=np.int64)
        self.in_total = np.zeros(capacity, dtype=np.int64)
        self.in_at_arrival = np.zeros(capacity, dtype=np.int64)
        self.size = 0
        self.slot: dict[int, int] = {}
        self.children: dict[int, dict[int, str]] = {}
        self.parents: dict[int, dict[int, str]] = {}
        self.recoveries = 0
        self._add_node(ROOT)

    def _add_node(self, node: int) -> int:
        if self.size == len(self.ids):
            grow = len(self.ids)
            self.ids = np.concatenate([self.ids, np.zeros(grow, dtype=np.int64)])
            self.out_organic = np.concatenate([self.out_organic, np.zeros(grow, dtype=np.int64)])
            self.in_total = np.concatenate([self.in_total, np.zeros(grow, dtype=np.int64)])
            self.in_at_arrival = np.concatenate([self.in_at_arrival, np.zeros(grow, dtype=np.int64)])
        s = self.size
        self.ids[s] = node
        self.out_organic[s] = 0
        self.in_total[s] = 0
        self.slot[node] = s
        self.children[node] = {}
        self.parents[node] = {}
        self.size += 1
        return s

    @property
    def live_count(self) -> int:
        return self.size - 1

    def _link(self, src: int, dst: int, kind: str) -> None:
        self.children[src][dst] = kind
        self.parents[dst][src] = kind
        self.in_total[self.slot[dst]] += 1
        if kind == "organic":
            self.out_organic[self.slot[src]] += 1

    def _recover(self, node: int) -> None:
        self._link(ROOT, node, "recovery")
        self.recoveries += 1

    def arrive(self, node: int, key: np.uint64) -> np.ndarray:
        """Insert ``node``; returns the ids of servers that accepted it."""
        servers = self.ids[:self.size].copy()
        u = counter_uniforms(key, pair_counter(servers, node))
        accepted = servers[u * (1 + self.out_organic[:self.size]) < 1.0]
        self._add_node(node)
        for s in accepted.tolist():
            self._link(s, node, "organic")
        if accepted.size == 0:
            self._recover(node)
        self.in_at_arrival[self.slot[node]] = self.in_total[self.slot[node]]
        return accepted

    def remove(self, node: int) -> None:
        for p, kind in self.parents.pop(node).items():
            del self.children[p][node]
            if kind == "organic":
                self.out_organic[self.slot[p]] -= 1
        for c in self.children.pop(node):
            del self.parents[c][node]
            sc = self.slot[c]
            self.in_total[sc] -= 1
            if self.in_total[sc] == 0:
                self._recover(c)
        s = self.slot.pop(node)
        last = self.size - 1
        if s != last:
            moved = int(self.ids[last])
            self.ids[s] = moved
            self.out_organic[s] = self.out_organic[last]
            self.in_total[s] = self.in_total[last]
            self.in_at_arrival[s] = self.in_at_arrival[last]
            self.slot[moved] = s
        self.size -= 1

    def arcs(self) -> list[tuple[int, int, str]]:
        return sorted((p, c, kind) for p, ch in self.children.items() for c, kind in ch.items())

    def check(self) -> None:
        """Raise InternalError if a structural invariant is broken."""
        for node, s in self.slot.items():
            par = self.parents[node]
            if any(p >= node for p in par):
                raise InternalError(f"arc into {node} from a later node")
            if self.in_total[s] != len(par):
                raise InternalError(f"in-degree counter of {node} is stale")
            if node != ROOT and not par:
                raise InternalError(f"live node {node} has no upstream server")
            if any(kind == "recovery" and p != ROOT for p, kind in par.items()):
                raise InternalError("recovery arc not owned by the root")
            organic = sum(kind == "organic" for kind in self.children[node].values())
            if self.out_organic[s] != organic:
                raise InternalError(f"organic out-degree counter of {node} is stale")

    def snapshot(self, time: float) -> Snapshot:
        n = self.size
        others = np.arange(n) != self.slot[ROOT]
        ins = self.in_total[:n][others]
        ins0 = self.in_at_arrival[:n][others]
        outs = self.out_organic[:n][others]
        ids = self.ids[:n][others]
        order = np.argsort(ids)
        return Snapshot(
            time=time,
            live_count=int(others.sum()),
            out_degree_histogram=np.bincount(outs).tolist() if outs.size else [],
            in_degree_histogram=np.bincount(ins).tolist() if ins.size else [],
            in_degree_by_rank={int(i): int(d) for i, d in zip(ids[order], ins[order])},
            orphan_recovery_count_cumulative=self.recoveries,
            w_root_functional=math.fsum((1.0 / ins).tolist()) if ins.size else 0.0,
            root_out_degree=int(self.out_organic[self.slot[ROOT]]),
            w_root_at_arrival=math.fsum((1.0 / ins0).tolist()) if ins0.size else 0.0,
        )


def simulate_network(config: SimConfig, stream: RngStream) -> SimTrace:
    """Run one replication of the full overlay model."""
    params = config.params
    arrivals_rng = stream.generator(_ARRIVALS)
    accept_key = stream.key(_ACCEPT)
    life_key = stream.key(_LIFETIME)

    state = NetworkState()
    trace = SimTrace(stream.master_seed, stream.stream_id, config.config_hash())
    horizon = math.inf if config.horizon is None else config.horizon
    max_arrivals = config.max_arrivals if config.max_arrivals is not None else math.inf
    pending = list(config.snapshot_times)
    burn_in = config.effective_burn_in
    occupancy = np.zeros(16) if config.record_occupancy else None

    deaths: list[tuple[float, int]] = []
    now = 0.0
    next_arrival = arrivals_rng.exponential(1.0 / params.lam)
    next_id = 1

    def advance(to: float) -> None:
        nonlocal now, occupancy
        while pending and pending[0] <= to:
            trace.snapshots.append(state.snapshot(pending.pop(0)))
        if occupancy is not None and to > burn_in:
            n = state.live_count
            if n >= len(occupancy):
                occupancy = np.concatenate([occupancy, np.zeros(n + 1)])
            occupancy[n] += to - max(now, burn_in)
        now = to

    while True:
        death_time = deaths[0][0] if deaths else math.inf
        if death_time <= next_arrival:
            if death_time > horizon:
                break
            advance(death_time)
            _, node = heapq.heappop(deaths)
            state.remove(node)
            trace.deaths += 1
        else:
            if next_arrival > horizon or trace.arrivals >= max_arrivals:
                break
            advance(next_arrival)
            node = next_id
            next_id += 1
            accepted = state.arrive(node, accept_key)
            trace.arrivals += 1
            if node - 1 in state.slot:
                trace.chain_arcs_checked += 1
                trace.chain_arcs_present += int(np.any(accepted == node - 1))
            if params.mu > 0:
                u = counter_uniforms(life_key, np.array([node], dtype=np.uint64))[0]
                heapq.heappush(deaths, (now - math.log1p(-u) / params.mu, node))
            if state.live_count > config.population_cap:
                raise CapacityError(
                    f"live population {state.live_count} exceeds cap {config.population_cap}"
                )
            next_arrival = now + arrivals_rng.exponential(1.0 / params.lam)
        if config.check_invariants:
            state.check()

    end = horizon if math.isfinite(horizon) else now
    advance(end)
    if not config.snapshot_times:
        trace.snapshots.append(state.snapshot(end))
    trace.end_time = end
    if occupancy is not None:
        trace.live_count_occupancy = np.trim_zeros(occupancy, "b").tolist()
    state.check()
    trace.final_arcs = state.arcs()
    return trace


def run_replications(config: SimConfig, jobs: int = 1) -> list[SimTrace]:
    """All replications of ``config``, ordered by stream id whatever ``jobs`` is."""
    streams = [derive_stream(config.master_seed, r) for r in range(config.replication_count)]
    if jobs <= 1:
        return [simulate_network(config, s) for s in streams]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(lambda s: simulate_network(config, s), streams))


# --- W_root ------------------------------------------------------------------

@dataclass(frozen=True)
class WRootEstimate:
    mean: float
    std_error: float
    snapshots: int


def w_root_of(in_degrees) -> float:
    """sum of 1/in-degree over live non-root nodes."""
    d = np.asarray(list(in_degrees), dtype=float)
    return math.fsum((1.0 / d).tolist()) if d.size else 0.0


def measure_w_root(traces, window: tuple[float, float]) -> WRootEstimate:
    """Time-average of the root's extra-work functional over a window.

    Each replication contributes the mean over its snapshots in the window;
    the standard error comes from the spread of those per-replication means
    (or from 10 batch means when there is a single replication).
    """
    if isinstance(traces, SimTrace):
        traces = [traces]
    lo, hi = window
    per_rep = []
    values_all = []
    for tr in traces:
        vals = [s.w_root_functional for s in tr.snapshots if lo <= s.time <= hi]
        if vals:
            per_rep.append(float(np.mean(vals)))
            values_all.append(vals)
    if not per_rep:
        raise DomainError(f"no snapshots inside window {window}")
    count = sum(len(v) for v in values_all)
    if len(per_rep) >= 2:
        m = float(np.mean(per_rep))
        se = float(np.std(per_rep, ddof=1) / math.sqrt(len(per_rep)))
    else:
        vals = np.asarray(values_all[0])
        m = float(vals.mean())
        batches = [b.mean() for b in np.array_split(vals, 10) if b.size]
        se = float(np.std(batches, ddof=1) / math.sqrt(len(batches))) if len(batches) > 1 else math.nan
    return WRootEstimate(m, se, count)


# --- one-process simulators -------------------------------------------------

@dataclass(frozen=True)
class Trajectory:
    """Piecewise-constant path: ``states[i]`` holds on [times[i], times[i+1])."""

    times: np.ndarray
    states: np.ndarray

    def state_at(self, t: float) -> int:
        return int(self.states[np.searchsorted(self.times, t, side="right") - 1])


def simulate_urn_chain(n_steps: int, stream: RngStream) -> np.ndarray:
    """States Z_0..Z_n of the one-white-ball urn: success w.p. 1/(1 + Z)."""
    if n_steps < 0:
        raise DomainError("n_steps must be >= 0")
    u = stream.generator(10).random(n_steps)
    z = np.zeros(n_steps + 1, dtype=np.int64)
    k = 0
    for i in range(n_steps):
        if u[i] * (1 + k) < 1.0:
            k += 1
        z[i + 1] = k
    return z


def sample_urn_states(n_steps: int, size: int, stream: RngStream) -> np.ndarray:
    """``size`` independent draws of Z_n.

    From state k the number of draws until the next success is
    Geometric(1/(1+k)), so only the successes need simulating.
    """
    if n_steps < 0:
        raise DomainError("n_steps must be >= 0")
    rng = stream.generator(11)
    pos = np.zeros(size, dtype=np.int64)
    state = np.zeros(size, dtype=np.int64)
    active = np.arange(size)
    k = 0
    while active.size:
        pos_a = pos[active] + rng.geometric(1.0 / (1 + k), size=active.size)
        hit = pos_a <= n_steps
        active = active[hit]
        pos[active] = pos_a[hit]
        state[active] += 1
        k += 1
    return state


def simulate_bd_jump_chain(n_steps: int, params: ModelParams, stream: RngStream) -> np.ndarray:
    """Jump chain of the discouragement queue: up w.p. 1/(1 + j(j+1) alpha^2)."""
    if params.mu <= 0:
        raise DomainError("jump chain with downward moves needs mu > 0")
    u = stream.generator(12).random(n_steps)
    a2 = params.alpha2
    path = np.zeros(n_steps + 1, dtype=np.int64)
    j = 0
    for i in range(n_steps):
        j = j + 1 if u[i] * (1.0 + j * (j + 1) * a2) < 1.0 else j - 1
        path[i + 1] = j
    return path


def sample_bd_jump_chain_states(n_steps: int, params: ModelParams, size: int,
                                stream: RngStream) -> np.ndarray:
    if params.mu <= 0:
        raise DomainError("jump chain with downward moves needs mu > 0")
    rng = stream.generator(13)
    a2 = params.alpha2
    j = np.zeros(size, dtype=np.int64)
    for _ in range(n_steps):
        up = rng.random(size) * (1.0 + j * (j + 1) * a2) < 1.0
        j += np.where(up, 1, -1)
    return j


def _bd_rates(j: np.ndarray, params: ModelParams):
    return params.lam / (1.0 + j), params.mu * j


def simulate_single_node_bd(t_end: float, params: ModelParams, stream: RngStream) -> Trajectory:
    """Continuous-time out-degree of one node: birth lam/(1+k), death k mu."""
    if not t_end > 0:
        raise DomainError("t_end must be > 0")
    rng = stream.generator(14)
    times, states = [0.0], [0]
    t, k = 0.0, 0
    while True:
        birth, death = params.lam / (1 + k), params.mu * k
        t += rng.exponential(1.0 / (birth + death))
        if t > t_end:
            break
        k = k + 1 if rng.random() * (birth + death) < birth else k - 1
        times.append(t)
        states.append(k)
    return Trajectory(np.array(times), np.array(states, dtype=np.int64))


def sample_single_node_states(t: float, params: ModelParams, size: int,
                              stream: RngStream) -> np.ndarray:
    """Marginal X(t) of ``size`` independent single-node processes."""
    rng = stream.generator(15)
    k = np.zeros(size, dtype=np.int64)
    clock = np.zeros(size)
    active = np.arange(size)
    while active.size:
        birth, death = _bd_rates(k[active], params)
        total = birth + death
        clock_a = clock[active] + rng.exponential(1.0, active.size) / total
        going = clock_a <= t
        up = rng.random(active.size) * total < birth
        active, clock_a, up = active[going], clock_a[going], up[going]
        clock[active] = clock_a
        k[active] += np.where(up, 1, -1)
    return k


def single_node_occupancy(n_jumps: int, params: ModelParams, stream: RngStream,
                          chains: int = 1000) -> np.ndarray:
    """Fraction of time spent in each state over about ``n_jumps`` jumps in total.

    ``chains`` independent copies run side by side, each for
    ``n_jumps // chains`` jumps, and their holding times are pooled.
    """
    if params.mu <= 0:
        raise DomainError("occupancy needs mu > 0 (otherwise there is no stationary law)")
    rng = stream.generator(16)
    steps = max(1, n_jumps // chains)
    k = np.zeros(chains, dtype=np.int64)
    occ = np.zeros(64)
    for _ in range(steps):
        birth, death = _bd_rates(k, params)
        total = birth + death
        hold = rng.exponential(1.0, chains) / total
        if k.max() >= len(occ):
            occ = np.concatenate([occ, np.zeros(k.max() + 1)])
        occ += np.bincount(k, weights=hold, minlength=len(occ))
        k += np.where(rng.random(chains) * total < birth, 1, -1)
    occ = np.trim_zeros(occ, "b")
    return occ / occ.sum()


# --- exact mu = 0 graph sampler -----------------------------------------------

def _growth_successes(n_nodes: int, reps: int, rng: np.random.Generator):
    """Yield (rep, server, client) arrays covering every arc of ``reps`` mu = 0 graphs.

    Round k emits each server's (k+1)-th accepted client.
    """
    servers = np.tile(np.arange(n_nodes - 1, dtype=np.int64), reps)
    rep = np.repeat(np.arange(reps, dtype=np.int64), n_nodes - 1)
    horizon = n_nodes - 1 - servers
    pos = np.zeros_like(servers)
    k = 0
    while servers.size:
        pos = pos + rng.geometric(1.0 / (1 + k), size=servers.size)
        keep = pos <= horizon
        servers, rep, horizon, pos = servers[keep], rep[keep], horizon[keep], pos[keep]
        yield rep, servers, servers + pos
        k += 1


def sample_growth_in_degrees(n_nodes: int, reps: int, stream: RngStream,
                             chunk: int | None = None) -> np.ndarray:
    """In-degree matrix (reps x n_nodes) of the mu = 0 graph on ids 0..n_nodes-1.

    Server i answers the request of node j with the (j - i)-th draw of its
    own urn, and the urns of different servers are independent, so each
    server's accepted clients are generated directly from geometric waiting
    times.
    """
    if n_nodes < 1 or reps < 1:
        raise DomainError("need n_nodes >= 1 and reps >= 1")
    rng = stream.generator(20)
    chunk = chunk or max(1, 2_000_000 // n_nodes)
    blocks = []
    for start in range(0, reps, chunk):
        r = min(chunk, reps - start)
        counts = np.zeros(r * n_nodes, dtype=np.int64)
        for rep, _, client in _growth_successes(n_nodes, r, rng):
            counts += np.bincount(rep * n_nodes + client, minlength=r * n_nodes)
        blocks.append(counts.reshape(r, n_nodes))
    return np.vstack(blocks)


def sample_growth_lag_frequencies(n_nodes: int, reps: int, stream: RngStream,
                                  max_lag: int | None = None) -> np.ndarray:
    """Fraction of (server, client) pairs at each lag ``client - server`` joined by an arc.

    Entry ``d`` estimates P(arc i -> i + d) in the mu = 0 graph; index 0 is unused.
    """
    if n_nodes < 2 or reps < 1:
        raise DomainError("need n_nodes >= 2 and reps >= 1")
    max_lag = n_nodes - 1 if max_lag is None else min(max_lag, n_nodes - 1)
    rng = stream.generator(22)
    chunk = max(1, 2_000_000 // n_nodes)
    hits = np.zeros(max_lag + 1, dtype=np.int64)
    for start in range(0, reps, chunk):
        r = min(chunk, reps - start)
        for _, server, client in _growth_successes(n_nodes, r, rng):
            lag = client - server
            hits += np.bincount(lag[lag <= max_lag], minlength=max_lag + 1)
    lags = np.arange(max_lag + 1)
    pairs = reps * (n_nodes - lags)
    freq = np.zeros(max_lag + 1)
    freq[1:] = hits[1:] / pairs[1:]
    return freq


def sample_growth_arcs(n_nodes: int, stream: RngStream) -> list[tuple[int, int, str]]:
    """Arcs of one mu = 0 graph with ids 0..n_nodes-1 (root 0)."""
    parts = list(_growth_successes(n_nodes, 1, stream.generator(21)))
    if not parts:
        return []
    src = np.concatenate([p[1] for p in parts])
    dst = np.concatenate([p[2] for p in parts])
    order = np.lexsort((dst, src))
    return [(int(s), int(d), "organic") for s, d in zip(src[order], dst[order])]


# --- serialisation -------------------------------------------------------------

def trace_to_dict(trace: SimTrace) -> dict:
    snaps = []
    for s in trace.snapshots:
        d = asdict(s)
        d["in_degree_by_rank"] = [[k, v] for k, v in s.in_degree_by_rank.items()]
        snaps.append(d)
    return {
        "schema_version": TRACE_SCHEMA_VERSION,
        "seed": trace.seed,
        "stream_id": trace.stream_id,
        "config_hash": trace.config_hash,
        "end_time": trace.end_time,
        "arrivals": trace.arrivals,
        "deaths": trace.deaths,
        "chain_arcs_checked": trace.chain_arcs_checked,
        "chain_arcs_present": trace.chain_arcs_present,
        "live_count_occupancy": trace.live_count_occupancy,
        "snapshots": snaps,
    }


def trace_from_dict(d: dict) -> SimTrace:
    if d.get("schema_version") != TRACE_SCHEMA_VERSION:
        raise DomainError(f"unsupported trace schema version {d.get('schema_version')!r}")
    snaps = []
    for s in d["snapshots"]:
        s = dict(s)
        s["in_degree_by_rank"] = {int(k): int(v) for k, v in s["in_degree_by_rank"]}
        snaps.append(Snapshot(**s))
    return SimTrace(
        seed=d["seed"], stream_id=d["stream_id"], config_hash=d["config_hash"],
        snapshots=snaps, end_time=d["end_time"], arrivals=d["arrivals"], deaths=d["deaths"],
        chain_arcs_checked=d["chain_arcs_checked"], chain_arcs_present=d["chain_arcs_present"],
        live_count_occupancy=d["live_count_occupancy"],
    )


def dumps_trace(trace: SimTrace) -> str:
    return json.dumps(trace_to_dict(trace), sort_keys=True, indent=1) + "\n"


CSV_COLUMNS = (
    "stream_id", "time", "live_count", "orphan_recovery_count_cumulative",
    "w_root_functional", "root_out_degree", "out_degree_histogram", "in_degree_histogram",
)


def trace_csv_rows(trace: SimTrace):
    """One row per snapshot; histograms are ';'-joined counts from degree 0."""
    for s in trace.snapshots:
        yield (
            trace.stream_id, format(s.time, ".17g"), s.live_count,
            s.orphan_recovery_count_cumulative, format(s.w_root_functional, ".17g"),
            s.root_out_degree, ";".join(map(str, s.out_degree_histogram)),
            ";".join(map(str, s.in_degree_histogram)),
        )
