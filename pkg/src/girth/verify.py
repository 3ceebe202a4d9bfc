"""Seeded property sweeps shared by the ``verify`` command and the acceptance tests.

Every suite returns a SuiteResult holding per-property pass counts. Case
parameters derive from (base_seed, case index) only, so a failing case can be
replayed in isolation.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .coloring import TARGET, deterministic_colorings, sample_colorings
from .cycle_search import find_threshold, min_cycle_sweep, path_from_table
from .directed import (
    NoCycle, build_tripartite, reduce_weights, run_directed, sampled_estimates, search_threshold,
    threshold_and_reduce, triangle_walk,
)
from .graph import (
    INF, CycleWitness, Graph, InvalidCycle, Kind, apply_random_potentials, random_graph, symmetrize,
    validate_cycle,
)
from .instance import TriangleInstance
from .kcycle import girth_via_kcycle, triangle_to_kcycle
from .minplus import distance_product, naive_distance_product
from .mixed import build_mixed_instance, mixed_walk, run_mixed, simple_paths
from .oracles import oracle_apsp, oracle_girth, oracle_min_kcycle
from .undirected import build_instance, recover_cycle, run_undirected
from .walks import critical_edge, cycle_distance, lightest_cycle_in_walk, lightest_cycle_on_support

SUITES = ("undirected", "directed", "mixed", "kcycle", "lemmas", "kernel")
DENSITIES = (0.1, 0.3, 0.7)
WEIGHT_BOUNDS = (1, 5, 20)


@dataclass
class SuiteResult:
    suite: str
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)

    def check(self, prop: str, ok: bool, detail: str = "") -> bool:
        c = self.counts.setdefault(prop, [0, 0])
        c[1] += 1
        if ok:
            c[0] += 1
        else:
            self.failures.append(f"{prop}: {detail}")
        return ok

    def tally(self, prop: str, passed: int, total: int, detail: str = "") -> None:
        c = self.counts.setdefault(prop, [0, 0])
        c[0] += passed
        c[1] += total
        if passed < total:
            self.failures.append(f"{prop}: {total - passed}/{total} failed {detail}".rstrip())

    def passed(self, prop: str) -> int:
        return self.counts.get(prop, [0, 0])[0]

    def total(self, prop: str) -> int:
        return self.counts.get(prop, [0, 0])[1]

    @property
    def ok(self) -> bool:
        return all(p == t for p, t in self.counts.values())

    def lines(self) -> list[str]:
        out = [f"{prop}: {p}/{t}" for prop, (p, t) in self.counts.items()]
        out += [f"{k}: {v:.2f}s" for k, v in self.timings.items()]
        out += [f"{k}: {v}" for k, v in self.stats.items()]
        return out


def _rng(base_seed: int, suite: str, i: int) -> np.random.Generator:
    return np.random.default_rng([base_seed, sum(map(ord, suite)), i])


def undirected_case(i: int, base_seed: int = 0) -> Graph:
    rng = _rng(base_seed, "undirected", i)
    n = int(rng.integers(4, 65))
    M = int(rng.choice(WEIGHT_BOUNDS))
    p = float(rng.choice(DENSITIES))
    return random_graph(n, p, 1, M, Kind.UNDIRECTED, seed=int(rng.integers(2**31)))


def directed_case(i: int, base_seed: int = 0, n_max: int = 48) -> tuple[Graph, Graph]:
    """(base graph with weights in [0, M], potential-shifted copy)."""
    rng = _rng(base_seed, "directed", i)
    n = int(rng.integers(4, n_max + 1))
    M = int(rng.choice(WEIGHT_BOUNDS))
    p = float(rng.choice(DENSITIES))
    base = random_graph(n, p, 0, M, Kind.DIRECTED, seed=int(rng.integers(2**31)))
    shifted, _ = apply_random_potentials(base, M, seed=int(rng.integers(2**31)))
    return base, shifted


def mixed_case(i: int, base_seed: int = 0, n_max: int = 40) -> Graph:
    rng = _rng(base_seed, "mixed", i)
    n = int(rng.integers(4, n_max + 1))
    M = int(rng.choice(WEIGHT_BOUNDS))
    p = float(rng.choice(DENSITIES))
    return random_graph(n, p, 1, M, Kind.MIXED, seed=int(rng.integers(2**31)),
                        undirected_fraction=float(rng.uniform(0.2, 0.8)))


# ---------------------------------------------------------------------------
# pipeline suites


def suite_undirected(seeds: int, base_seed: int = 0) -> SuiteResult:
    res = SuiteResult("undirected")
    spent = 0.0
    for i in range(seeds):
        g = undirected_case(i, base_seed)
        M = g.weight_bound
        start = time.perf_counter()
        rep = run_undirected(g, seed=i, keep_instances=True)
        spent += time.perf_counter() - start
        want = oracle_girth(g).weight
        res.check("oracle match", rep.weight == want, f"case {i}: got {rep.weight}, oracle {want}")
        if rep.witness is not None:
            res.check("valid witness", _valid(g, rep.witness), f"case {i}")
        bad = sum(not inst.weights_within(-M, M) for inst in rep.instances)
        res.tally("instance weights in [-M, M]", len(rep.instances) - bad, len(rep.instances), f"case {i}")
    res.timings["girth_undirected"] = spent
    return res


def suite_directed(seeds: int, base_seed: int = 0) -> SuiteResult:
    res = SuiteResult("directed")
    spent = 0.0
    for i in range(seeds):
        base, g = directed_case(i, base_seed)
        M = g.weight_bound
        start = time.perf_counter()
        rep = run_directed(g, seed=i)
        spent += time.perf_counter() - start
        want = oracle_girth(g).weight
        before = oracle_girth(base).weight
        res.check("oracle match", rep.weight == want, f"case {i}: got {rep.weight}, oracle {want}")
        res.check("pre-shift girth", rep.weight == before, f"case {i}: got {rep.weight}, pre-shift {before}")
        if rep.witness is not None:
            res.check("valid witness", _valid(g, rep.witness), f"case {i}")
        if rep.instance is not None:
            res.check("instance weights in [-M, M]", rep.instance.weights_within(-M, M), f"case {i}")
    res.timings["girth_directed"] = spent
    return res


def suite_mixed(seeds: int, base_seed: int = 0) -> SuiteResult:
    res = SuiteResult("mixed")
    spent = 0.0
    for i in range(seeds):
        g = mixed_case(i, base_seed)
        M = g.weight_bound
        start = time.perf_counter()
        rep = run_mixed(g, seed=i, keep_instances=True)
        spent += time.perf_counter() - start
        want = oracle_girth(g).weight
        res.check("oracle match", rep.weight == want, f"case {i}: got {rep.weight}, oracle {want}")
        if rep.witness is not None:
            res.check("valid witness", _valid(g, rep.witness), f"case {i}")
        bad = sum(not inst.weights_within(-M, M) for inst in rep.instances)
        res.tally("instance weights in [-M, M]", len(rep.instances) - bad, len(rep.instances), f"case {i}")
    res.timings["girth_mixed"] = spent
    return res


def _valid(g: Graph, c: CycleWitness) -> bool:
    try:
        validate_cycle(g, c)
    except InvalidCycle:
        return False
    return True


# ---------------------------------------------------------------------------
# k-cycle gadget


def random_tripartite_instance(i: int, base_seed: int = 0, max_per_part: int = 2) -> TriangleInstance:
    """Tripartite instance in [-M, M] that contains at least one triangle."""
    rng = _rng(base_seed, "kcycle", i)
    while True:
        M = int(rng.integers(1, 8))
        sizes = rng.integers(1, max_per_part + 1, size=3)
        part = np.repeat(np.array([1, 2, 3], dtype=np.int64), sizes)
        n = len(part)
        A = np.full((n, n), INF, dtype=np.int64)
        for a in range(n):
            for b in range(a + 1, n):
                if part[a] != part[b] and rng.random() < 0.75:
                    A[a, b] = A[b, a] = int(rng.integers(-M, M + 1))
        inst = TriangleInstance(A, part, np.arange(n, dtype=np.int64), offset=0, t=0, M=M)
        if any(True for _ in inst.triangles()):
            return inst


def suite_kcycle(seeds: int, base_seed: int = 0) -> SuiteResult:
    res = SuiteResult("kcycle")
    for i in range(seeds):
        inst = random_tripartite_instance(i, base_seed)
        M = inst.M
        W = min(w for _, w in inst.triangles())
        for k in (4, 5):
            gad = triangle_to_kcycle(inst, k)
            ws = [e.w for e in gad.graph.edges]
            res.check("gadget weights in [0, 6M]", min(ws) >= 0 and max(ws) <= 6 * M, f"case {i} k={k}")
            deg = np.zeros(gad.graph.n, dtype=np.int64)
            for e in gad.graph.edges:
                deg[e.u] += 1
                deg[e.v] += 1
            inner = [x for x, b in enumerate(gad.back_map) if b[0] == "path" and 0 < b[2] < k - 3]
            res.check("internal path degree 2", all(deg[x] == 2 for x in inner), f"case {i} k={k}")
            found = oracle_min_kcycle(gad.graph, k)
            got = None if found.weight is None else found.weight - 15 * M
            res.check("W + 15M identity", got == W, f"case {i} k={k}: got {got}, W {W}")
            if found.witness is not None:
                nodes, through = gad.strip(found.witness.nodes)
                ok = through and _triangle_weight(inst, nodes) == found.weight - 15 * M
                res.check("strip gives triangle", ok, f"case {i} k={k}")
    # composed pipeline on small graphs of every kind
    for i in range(seeds):
        rng = _rng(base_seed, "kcycle-e2e", i)
        kind = (Kind.UNDIRECTED, Kind.DIRECTED, Kind.MIXED)[i % 3]
        n = int(rng.integers(3, 6))
        g = random_graph(n, 0.7, 1, int(rng.integers(1, 6)), kind, seed=int(rng.integers(2**31)))
        if kind is Kind.DIRECTED:
            g, _ = apply_random_potentials(g, 2, seed=i)
        k = 4 + i % 2
        got = girth_via_kcycle(g, k, seed=i)
        want = oracle_girth(g).weight
        res.check("pipeline matches oracle", got == want, f"case {i} {kind.value} k={k}: {got} vs {want}")
    return res


def _triangle_weight(inst: TriangleInstance, nodes) -> int | None:
    A = inst.adjacency
    a, b, c = nodes
    if A[a, b] >= INF or A[b, c] >= INF or A[a, c] >= INF:
        return None
    return int(A[a, b] + A[b, c] + A[a, c])


# ---------------------------------------------------------------------------
# lemma-level checks


def check_dichotomy(res: SuiteResult, g: Graph, t: int, tag: str) -> None:
    out = min_cycle_sweep(g, t)
    if out.reported:
        c = out.cycle
        res.check("dichotomy", _valid(g, c) and c.weight <= 2 * t, f"{tag}: cycle {c} at t={t}")
        return
    dist, _ = oracle_apsp(g)
    n = g.n
    ok = True
    for s in range(n):
        for v in range(n):
            d = dist[s][v]
            got = int(out.dist[s, v])
            if d <= t and got != d:
                ok = False
            if got < INF and got != d:
                ok = False
            if s != v and d <= t:
                p = path_from_table(out.pred, s, v)
                if cycle_weight_path(g, p) != d:
                    ok = False
    res.check("dichotomy", ok, f"{tag}: table mismatch at t={t}")


def cycle_weight_path(g: Graph, p) -> int:
    return sum(g.weight(p[i], p[i + 1]) for i in range(len(p) - 1))


def check_critical_edge(res: SuiteResult, weights: list[int], tag: str) -> None:
    total = sum(weights)
    lo_half, hi_half = total // 2, -(-total // 2)
    k = len(weights)
    for s in range(k):
        i = critical_edge(weights, s)
        j = (i + 1) % k
        a = cycle_distance(weights, s, i)
        b = cycle_distance(weights, j, s)
        w = weights[i]
        ok = hi_half - w <= a <= lo_half and hi_half - w <= b <= lo_half
        res.check("critical edge bounds", ok, f"{tag} s={s}: edge {i}")


def sample_cycle_weights(rng: np.random.Generator) -> list[int]:
    """Cycle weight sequence with mixed signs and nonnegative total."""
    while True:
        k = int(rng.integers(2, 13))
        M = int(rng.integers(1, 21))
        w = [int(x) for x in rng.integers(-M, M + 1, size=k)]
        if sum(w) >= 0:
            return w


def check_min_cycle_exactness(res: SuiteResult, g: Graph, tag: str) -> None:
    """On a minimum cycle, the two halves around every critical edge are shortest paths."""
    found = oracle_girth(g)
    if found.witness is None:
        return
    dist, _ = oracle_apsp(g)
    nodes = list(found.witness.nodes)
    k = len(nodes)
    weights = [g.weight(nodes[i], nodes[(i + 1) % k]) for i in range(k)]
    for s in range(k):
        i = critical_edge(weights, s)
        j = (i + 1) % k
        ok = (dist[nodes[s]][nodes[i]] == cycle_distance(weights, s, i)
              and dist[nodes[j]][nodes[s]] == cycle_distance(weights, j, s))
        res.check("critical halves are shortest", ok, f"{tag} s={s}")


def check_instance_triangles(res: SuiteResult, g: Graph, inst: TriangleInstance, recover, tag: str) -> None:
    """Every triangle of ``inst`` must map to a simple cycle no heavier than it certifies."""
    bad = 0
    total = 0
    for nodes, w in inst.triangles():
        total += 1
        claimed = inst.certified_weight(nodes, w)
        try:
            cyc = recover(nodes)
        except (InvalidCycle, KeyError):
            cyc = None
        if cyc is None or not _valid(g, cyc) or cyc.weight > claimed:
            bad += 1
    res.check("no false triangle (instances)", bad == 0, f"{tag}: {bad}/{total} triangles")
    res.tally("no false triangle (triangles)", total - bad, total, tag)


def suite_lemmas(seeds: int, base_seed: int = 0, coloring_samples: int = 100_000) -> SuiteResult:
    res = SuiteResult("lemmas")
    for i in range(seeds):
        rng = _rng(base_seed, "lemmas", i)
        n = int(rng.integers(4, 21))
        M = int(rng.choice(WEIGHT_BOUNDS))
        g = random_graph(n, float(rng.choice(DENSITIES)), 1, M, Kind.UNDIRECTED,
                         seed=int(rng.integers(2**31)))
        girth = oracle_girth(g).weight
        top = girth if girth is not None else n * M
        t = int(rng.integers(0, top + 1))
        check_dichotomy(res, g, t, f"case {i}")

        check_critical_edge(res, sample_cycle_weights(rng), f"case {i}")
        base = random_graph(int(rng.integers(3, 13)), 0.4, 0, M, Kind.DIRECTED, seed=int(rng.integers(2**31)))
        shifted, _ = apply_random_potentials(base, M, seed=i)
        check_min_cycle_exactness(res, shifted, f"case {i}")

    for i in range(seeds):
        _no_false_triangle_case(res, i, base_seed)

    ok, freq = coloring_frequency(coloring_samples, base_seed)
    res.check("coloring pattern frequency", ok, f"observed {freq:.5f}")
    res.stats["pattern frequency"] = round(freq, 5)
    for n in (4, 5, 6, 7, 8):
        res.check("deterministic family coverage", deterministic_covers(n), f"n={n}")
    return res


def _no_false_triangle_case(res: SuiteResult, i: int, base_seed: int) -> None:
    rng = _rng(base_seed, "false-triangle", i)
    n = int(rng.integers(4, 25))
    M = int(rng.choice(WEIGHT_BOUNDS))
    p = float(rng.choice((0.15, 0.3)))
    g = random_graph(n, p, 1, M, Kind.UNDIRECTED, seed=int(rng.integers(2**31)))
    thr = find_threshold(g)
    if thr.candidate is not None:
        for col in sample_colorings(n, 2, seed=i):
            inst = build_instance(g, thr.t, thr.table, col)
            check_instance_triangles(res, g, inst, lambda nodes, inst=inst: recover_cycle(g, inst, thr.table, nodes),
                                     f"undirected case {i}")

    base = random_graph(n, p, 0, M, Kind.DIRECTED, seed=int(rng.integers(2**31)))
    dg, _ = apply_random_potentials(base, M, seed=i)
    est = sampled_estimates(dg, i)
    try:
        red = threshold_and_reduce(build_tripartite(dg, est), dg.weight_bound)
    except NoCycle:
        red = None
    if red is not None:
        check_instance_triangles(res, dg, red,
                                 lambda nodes: lightest_cycle_in_walk(dg, triangle_walk(est, red, nodes)),
                                 f"directed case {i}")

    mg = random_graph(n, p, 1, M, Kind.MIXED, seed=int(rng.integers(2**31)))
    sp = simple_paths(mg, sampled_estimates(symmetrize(mg), i))
    for col in sample_colorings(n, 2, seed=i):
        inst = build_mixed_instance(mg, sp, col)
        try:
            red = reduce_weights(inst, search_threshold(inst, mg.weight_bound), mg.weight_bound)
        except NoCycle:
            continue
        check_instance_triangles(res, mg, red,
                                 lambda nodes, red=red: lightest_cycle_on_support(mg, mixed_walk(mg, sp, red, nodes)),
                                 f"mixed case {i}")


def coloring_frequency(samples: int = 100_000, seed: int = 0, tol: float = 0.005) -> tuple[bool, float]:
    """Fraction of random colorings giving the witness tuple (0, 1, 2, 3) the target pattern."""
    cols = sample_colorings(4, samples, seed)
    hits = sum(c.pattern((0, 1, 2, 3)) == TARGET for c in cols)
    freq = hits / samples
    return abs(freq - 1 / 16) <= tol, freq


def deterministic_covers(n: int) -> bool:
    """Every ordered 4-tuple of distinct vertices sees the target pattern somewhere."""
    cols = np.array([c.colors for c in deterministic_colorings(n)])
    target = np.array(TARGET)
    for tup in itertools.permutations(range(n), min(4, n)):
        if not np.any(np.all(cols[:, list(tup)] == target[:len(tup)], axis=1)):
            return False
    return True


# ---------------------------------------------------------------------------
# estimates and kernel


def suite_estimates(seeds: int, base_seed: int = 0) -> SuiteResult:
    res = SuiteResult("estimates")
    for i in range(seeds):
        _, g = directed_case(i, base_seed + 7919, n_max=48)
        est = sampled_estimates(g, i)
        dist, neg = oracle_apsp(g)
        if neg:
            continue
        d = np.array([[INF if math.isinf(x) else int(x) for x in row] for row in dist], dtype=np.int64)
        res.check("D >= d", bool(np.all(est.D >= d)), f"case {i}")
        res.check("D*D == d", bool(np.array_equal(distance_product(est.D, est.D), d)), f"case {i}")
    return res


def suite_kernel(seeds: int, base_seed: int = 0, size: int = 64, big: int = 256) -> SuiteResult:
    res = SuiteResult("kernel")
    rng = np.random.default_rng([base_seed, 0x51])
    for i in range(seeds):
        A = rng.integers(-50, 50, size=(size, size)).astype(np.int64)
        B = rng.integers(-50, 50, size=(size, size)).astype(np.int64)
        A[rng.random(A.shape) < 0.2] = INF
        B[rng.random(B.shape) < 0.2] = INF
        fast = distance_product(A, B)
        slow = np.array(naive_distance_product(A.tolist(), B.tolist()), dtype=np.int64)
        res.check("blocked == naive", bool(np.array_equal(fast, slow)), f"case {i}")
    A = rng.integers(0, 1000, size=(big, big)).astype(np.int64)
    distance_product(A[:8, :8], A[:8, :8])  # compile outside the timed region
    start = time.perf_counter()
    distance_product(A, A)
    elapsed = time.perf_counter() - start
    res.timings[f"{big}x{big} product"] = elapsed
    res.check(f"{big}x{big} under 2 s", elapsed < 2.0, f"{elapsed:.3f}s")
    return res


def run_suite(name: str, seeds: int, base_seed: int = 0) -> SuiteResult:
    table = {
        "undirected": suite_undirected,
        "directed": suite_directed,
        "mixed": suite_mixed,
        "kcycle": suite_kcycle,
        "lemmas": suite_lemmas,
        "kernel": suite_kernel,
        "estimates": suite_estimates,
    }
    if name not in table:
        raise ValueError(f"unknown suite {name!r}")
    return table[name](seeds, base_seed)
