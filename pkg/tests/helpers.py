"""Shared fixtures-in-spirit: board builders, graph fuzzers, and oracles.

The oracles here are deliberately independent of the library's decision
paths: planarity by exhaustive rotation enumeration, classical realizability
by complete labeling search, and win probabilities by definition-level
replays.
"""

from __future__ import annotations

import itertools
import math
import random
import warnings

from pseudotelepathy.arrangement import Arrangement, Signing, validate
from pseudotelepathy.generate import random_arrangement
from pseudotelepathy.intersection import IntersectionGraph, RotationSystem, trace_faces


def triangle_board() -> tuple[Arrangement, Signing | None]:
    return validate({
        "vertices": ["x", "y", "z"],
        "hyperedges": [
            {"id": "ab", "vertices": ["x", "y"]},
            {"id": "bc", "vertices": ["y", "z"]},
            {"id": "ca", "vertices": ["x", "z"]},
        ],
    })


def board_from_graph(edges: dict[str, tuple[str, str]]) -> Arrangement:
    """The board whose dual is the given loop-free multigraph."""
    nodes = sorted({n for pair in edges.values() for n in pair})
    members: dict[str, list[str]] = {n: [] for n in nodes}
    for eid, (u, v) in sorted(edges.items()):
        members[u].append(eid)
        members[v].append(eid)
    raw = {
        "vertices": sorted(edges),
        "hyperedges": [{"id": n, "vertices": members[n]} for n in nodes],
    }
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        arrangement, _ = validate(raw)
    return arrangement


def complete_graph_edges(n: int) -> dict[str, tuple[str, str]]:
    nodes = [f"n{i}" for i in range(1, n + 1)]
    return {f"{u}{v}": (u, v) for u, v in itertools.combinations(nodes, 2)}


def k33_edges() -> dict[str, tuple[str, str]]:
    left = ["l1", "l2", "l3"]
    right = ["r1", "r2", "r3"]
    return {f"{u}{v}": (u, v) for u in left for v in right}


def graph_from_edges(edges: dict[str, tuple[str, str]]) -> IntersectionGraph:
    nodes = sorted({n for pair in edges.values() for n in pair})
    return IntersectionGraph(
        tuple(nodes), tuple(sorted((eid, u, v) for eid, (u, v) in edges.items()))
    )


def random_multigraph(rng: random.Random, max_nodes=20, max_edges=40,
                      allow_loops=True) -> IntersectionGraph:
    """Connected random multigraph, optionally with self-loops."""
    n = rng.randrange(1, max_nodes + 1)
    nodes = [f"n{i:02d}" for i in range(n)]
    edges: list[tuple[str, str]] = []
    for i in range(1, n):
        edges.append((nodes[rng.randrange(i)], nodes[i]))
    extra = rng.randrange(0, max_edges - len(edges) + 1)
    for _ in range(extra):
        if allow_loops and rng.random() < 0.08:
            u = v = rng.choice(nodes)
        else:
            u, v = rng.choice(nodes), rng.choice(nodes)
            if u == v:
                continue
        edges.append((u, v))
    if not edges:
        edges.append((nodes[0], nodes[0]))
    width = len(str(len(edges)))
    return IntersectionGraph(
        tuple(sorted(nodes)),
        tuple(sorted((f"x{k:0{width}d}", u, v) for k, (u, v) in enumerate(edges))),
    )


ORACLE_BUDGET = 250_000


def oracle_planar(g: IntersectionGraph) -> bool | None:
    """Planarity by enumerating every rotation system; None when infeasible.

    A graph is planar iff some cyclic ordering of the darts around each node
    traces to V - E + F = 2 faces.  One dart per node is pinned (rotations
    are cyclic), and the enumeration is skipped when the product of
    (degree - 1)! factors exceeds a desk-scale budget.
    """
    darts_at = g.incident_darts()
    nodes = sorted(darts_at)
    work = 1
    for node in nodes:
        work *= math.factorial(max(len(darts_at[node]) - 1, 0))
    if work > ORACLE_BUDGET:
        return None
    pools = []
    for node in nodes:
        ds = sorted(darts_at[node])
        if len(ds) <= 1:
            pools.append([tuple(ds)])
        else:
            pools.append([(ds[0],) + p for p in itertools.permutations(ds[1:])])
    for combo in itertools.product(*pools):
        r = RotationSystem.from_dict(dict(zip(nodes, combo)))
        if len(g.nodes) - len(g.edges) + len(trace_faces(g, r)) == 2:
            return True
    return False


def brute_force_classical_exists(a: Arrangement, s: Signing) -> bool:
    """Complete search over all 2^|V| labelings; usable for |V| <= 16."""
    vertices = list(a.vertices)
    signs = s.as_dict()
    for mask in range(1 << len(vertices)):
        labels = {v: 1 - 2 * ((mask >> i) & 1) for i, v in enumerate(vertices)}
        ok = True
        for eid, members in a.hyperedges:
            prod = 1
            for v in members:
                prod *= labels[v]
            if prod != signs[eid]:
                ok = False
                break
        if ok:
            return True
    return False


def quiet_random_arrangement(rng: random.Random, n_hyperedges: int,
                             n_extra: int | None = None):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return random_arrangement(rng, n_hyperedges, n_extra)


def corpus(seed: int, count: int, dense: bool = False):
    """Reproducible list of (arrangement, signing) boards."""
    rng = random.Random(seed)
    boards = []
    for _ in range(count):
        k = rng.randrange(4 if dense else 2, 11)
        extra = rng.randrange(k, min(2 * k, 26 - k) + 1) if dense else None
        boards.append(quiet_random_arrangement(rng, k, extra))
    return boards


def subdivided_board(pattern_edges: dict[str, tuple[str, str]],
                     counts: dict[str, int]) -> "Arrangement":
    """Board whose dual subdivides each pattern edge into counts[e]+1 segments."""
    edges = {}
    for eid, (u, v) in pattern_edges.items():
        k = counts.get(eid, 0)
        if k == 0:
            edges[eid] = (u, v)
            continue
        chain = [u] + [f"{eid}_s{i}" for i in range(k)] + [v]
        for i in range(len(chain) - 1):
            edges[f"{eid}_p{i}"] = (chain[i], chain[i + 1])
    return board_from_graph(edges)


def cyclic_equal(w1, w2) -> bool:
    """Equality of cyclic words."""
    if len(w1) != len(w2):
        return False
    if not w1:
        return True
    doubled = list(w2) + list(w2)
    return any(doubled[i:i + len(w1)] == list(w1) for i in range(len(w2)))
