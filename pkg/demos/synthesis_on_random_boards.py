"""Synthesis at scale: three qubits suffice for every magic board.

Run:  python3 demos/synthesis_on_random_boards.py
"""

import random
import warnings

from pseudotelepathy import exact_win_probability, synthesize
from pseudotelepathy.game import QuantumStrategy
from pseudotelepathy.generate import random_arrangement

warnings.filterwarnings("ignore", message="arrangement contains a size-1")

rng = random.Random(99)
n_magic = n_planar = 0
widths = {}
print("Deciding 200 random boards (up to 10 lines, up to 25 vertices):")
for _ in range(200):
    k = rng.randrange(4, 11)
    extra = rng.randrange(k, min(2 * k, 26 - k) + 1)
    board, _ = random_arrangement(rng, k, extra)
    verdict = synthesize(board)
    if verdict.magic:
        n_magic += 1
        widths[verdict.realization.n_qubits] = widths.get(
            verdict.realization.n_qubits, 0) + 1
    else:
        n_planar += 1
print(f"   {n_magic} magic, {n_planar} not magic")
print(f"   realization widths (qubits -> count): {dict(sorted(widths.items()))}\n")

print("Spot-checking pseudo-telepathy on the first few magic boards:")
rng = random.Random(99)
shown = 0
while shown < 3:
    k = rng.randrange(4, 11)
    extra = rng.randrange(k, min(2 * k, 26 - k) + 1)
    board, _ = random_arrangement(rng, k, extra)
    verdict = synthesize(board)
    if not verdict.magic or len(board.vertices) > 30:
        continue
    shown += 1
    p = exact_win_probability(QuantumStrategy(verdict.realization),
                              board, verdict.signing)
    print(f"   {len(board.vertices)} vertices, witness {verdict.witness.kind}, "
          f"{verdict.realization.n_qubits} qubits: exact win probability {p}")
