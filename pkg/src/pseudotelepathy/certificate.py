"""Contraction certificates: replayable proofs that a planar dual forces
even parity.

The state is a collection of signed cyclic words over edge symbols, one word
per surviving node, seeded by a planar rotation system (each node's word is
its incident edge ids in rotation order).  Were a quantum realization of the
signed board to exist, every node's word would multiply, in cyclic order, to
its sign times the identity, and both legal moves preserve that:

* contracting an edge splices its two endpoint words at the edge's
  occurrences and multiplies the signs (the edge's operator squares away);
* cancelling a symbol whose two occurrences sit adjacent in one cyclic word
  deletes both (again an operator squared).

A full replay ending in a single node with an empty word therefore forces
that node's sign, which equals the product of all initial signs, to be +1.
Running the replay with odd-parity signs ends at -1, certifying that no
quantum realization of any odd signing exists.  The checker is adversarial:
it trusts nothing about how the trace was produced, so the certificate is
independent of its generator.  Planarity is only needed to guarantee a full
replay exists: contracting a spanning tree of a planar embedding leaves one
node whose word is a noncrossing chord diagram, and a noncrossing diagram
always has an adjacent pair to cancel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from pseudotelepathy.intersection import (
    CoverageError,
    IntersectionGraph,
    RotationSystem,
    check_coverage,
)
from pseudotelepathy.planarity import verify_embedding

CONTRACT = "contract"
CANCEL = "cancel"


class EmbeddingInvalid(ValueError):
    """generate() was handed a rotation system that fails the Euler check."""


class Stuck(RuntimeError):
    """No adjacent pair exists; impossible for a verified planar embedding."""


class IllegalStep(ValueError):
    """Replay failure, carrying the offending step index (-1 = initial state)."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"step {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class ContractionTrace:
    """Initial signed words, a step list, and the claimed final sign."""

    initial_words: tuple[tuple[str, tuple[str, ...]], ...]
    initial_signs: tuple[tuple[str, int], ...]
    steps: tuple[tuple[str, str], ...]
    final_sign: int

    def to_json_dict(self) -> dict:
        return {
            "initial": {
                "rotation": {n: list(w) for n, w in self.initial_words},
                "signs": dict(self.initial_signs),
            },
            "steps": [{"op": op, ("edge" if op == CONTRACT else "symbol"): arg}
                      for op, arg in self.steps],
            "final_sign": self.final_sign,
        }

    @classmethod
    def from_json_dict(cls, raw: dict) -> "ContractionTrace":
        words = tuple(sorted((n, tuple(w)) for n, w in raw["initial"]["rotation"].items()))
        signs = tuple(sorted(raw["initial"]["signs"].items()))
        steps = []
        for entry in raw["steps"]:
            op = entry["op"]
            if op not in (CONTRACT, CANCEL):
                raise ValueError(f"unknown step op {op!r}")
            steps.append((op, entry["edge" if op == CONTRACT else "symbol"]))
        return cls(words, signs, tuple(steps), raw["final_sign"])


class _WordState:
    """Mutable replay state: per surviving node, a sign and a cyclic word."""

    def __init__(self, words: dict[str, list[str]], signs: dict[str, int]):
        self.words = {n: list(w) for n, w in words.items()}
        self.signs = dict(signs)

    def _holders(self, symbol: str) -> list[tuple[str, list[int]]]:
        found = []
        for node in sorted(self.words):
            positions = [i for i, sym in enumerate(self.words[node]) if sym == symbol]
            if positions:
                found.append((node, positions))
        return found

    def contract(self, edge: str, index: int) -> None:
        holders = self._holders(edge)
        if len(holders) != 2 or any(len(pos) != 1 for _, pos in holders):
            raise IllegalStep(index, f"edge {edge!r} does not join two distinct nodes")
        (u, (i,)), (v, (j,)) = holders
        wu, wv = self.words[u], self.words[v]
        # v's word rotated to start just after the edge, edge removed
        self.words[u] = wu[:i] + wv[j + 1:] + wv[:j] + wu[i + 1:]
        del self.words[v]
        self.signs[u] *= self.signs.pop(v)

    def cancel(self, symbol: str, index: int) -> None:
        holders = self._holders(symbol)
        if len(holders) != 1:
            raise IllegalStep(index, f"symbol {symbol!r} does not lie in one node")
        node, positions = holders[0]
        if len(positions) != 2:
            raise IllegalStep(index, f"symbol {symbol!r} does not occur exactly twice")
        word = self.words[node]
        p, q = positions
        if q == p + 1:
            self.words[node] = word[:p] + word[q + 1:]
        elif p == 0 and q == len(word) - 1:
            self.words[node] = word[1:-1]
        else:
            raise IllegalStep(index, f"occurrences of {symbol!r} are not adjacent")

    def finished(self) -> bool:
        return len(self.words) == 1 and not next(iter(self.words.values()))

    def final_sign(self) -> int:
        (sign,) = self.signs.values()
        return sign


def _initial_words(g: IntersectionGraph, r: RotationSystem) -> dict[str, list[str]]:
    return {node: [eid for eid, _ in darts] for node, darts in r.rotations}


def generate_trace(
    g: IntersectionGraph, r: RotationSystem, signs: dict[str, int]
) -> ContractionTrace:
    """Contract a spanning tree, then cancel adjacent pairs until empty.

    The tree is breadth-first from the smallest node with lexicographic
    tie-breaking, so output is deterministic.  Requires a rotation system
    that passes the Euler check; the noncrossing structure it guarantees is
    what makes the cancellation phase total.
    """
    if set(signs) != set(g.nodes):
        raise ValueError("signs must cover exactly the graph nodes")
    if not verify_embedding(g, r):
        raise EmbeddingInvalid("rotation system fails the Euler face check")

    words = _initial_words(g, r)
    state = _WordState(words, signs)
    steps: list[tuple[str, str]] = []

    hops: dict[str, list[tuple[str, str]]] = {n: [] for n in g.nodes}
    for eid, u, v in g.edges:
        if u != v:
            hops[u].append((v, eid))
            hops[v].append((u, eid))
    for entries in hops.values():
        entries.sort()
    root = min(g.nodes)
    seen = {root}
    queue = deque([root])
    while queue:
        node = queue.popleft()
        for other, eid in hops[node]:
            if other not in seen:
                seen.add(other)
                queue.append(other)
                steps.append((CONTRACT, eid))
                state.contract(eid, len(steps) - 1)

    while not state.finished():
        (word,) = state.words.values()
        for i, sym in enumerate(word):
            if word[(i + 1) % len(word)] == sym:
                steps.append((CANCEL, sym))
                state.cancel(sym, len(steps) - 1)
                break
        else:
            raise Stuck("no adjacent equal pair in the cyclic word")

    return ContractionTrace(
        initial_words=tuple(sorted((n, tuple(w)) for n, w in words.items())),
        initial_signs=tuple(sorted(signs.items())),
        steps=tuple(steps),
        final_sign=state.final_sign(),
    )


def check_trace(
    g: IntersectionGraph, r: RotationSystem, signs: dict[str, int], trace: ContractionTrace
) -> int:
    """Adversarial replay; returns the final sign or raises IllegalStep.

    Validates that the rotation covers exactly the graph's edge-ends (the
    words must reflect the true incidence structure), that the trace's
    initial state is the one induced by (g, r, signs), that every step is
    legal, that the end state is a single node with an empty word, and that
    the recorded final sign matches.  Planarity of r is deliberately not
    required: a complete legal replay is sound from any covering start.
    """
    try:
        check_coverage(g, r)
    except CoverageError as err:
        raise IllegalStep(-1, str(err)) from None
    words = _initial_words(g, r)
    if trace.initial_words != tuple(sorted((n, tuple(w)) for n, w in words.items())):
        raise IllegalStep(-1, "initial words do not match the rotation system")
    if trace.initial_signs != tuple(sorted(signs.items())):
        raise IllegalStep(-1, "initial signs do not match")
    occurrences: dict[str, int] = {}
    for word in words.values():
        for sym in word:
            occurrences[sym] = occurrences.get(sym, 0) + 1
    if any(count != 2 for count in occurrences.values()):
        raise IllegalStep(-1, "some symbol does not occur exactly twice")

    state = _WordState(words, signs)
    for index, (op, arg) in enumerate(trace.steps):
        if op == CONTRACT:
            state.contract(arg, index)
        elif op == CANCEL:
            state.cancel(arg, index)
        else:
            raise IllegalStep(index, f"unknown op {op!r}")
    end = len(trace.steps)
    if not state.finished():
        raise IllegalStep(end, "replay did not end in a single empty word")
    if state.final_sign() != trace.final_sign:
        raise IllegalStep(end, "recorded final sign disagrees with the replay")
    return state.final_sign()
