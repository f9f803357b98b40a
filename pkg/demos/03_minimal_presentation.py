# Minimal presentation of H1 of the running example, step by step.
from pathlib import Path

from mpcompress import ker_basis, min_gens, minimize, reparam, pipeline, read_scc
from mpcompress import testkit as tk

here = Path(__file__).resolve().parent
cx = read_scc(here.parent / "tests" / "data" / "running_example.scc")
d2, d1 = cx.boundary(2), cx.boundary(1)

G = min_gens(d2)  # minimal generators of the image of d2
K = ker_basis(d1)  # graded basis of the cycles
print("image generators:", G.columns, [g.key for g in G.col_grades])
print("cycle basis:     ", K.columns, [g.key for g in K.col_grades])

semi = reparam(G, K)  # the image generators written in the cycle basis
print("semi-minimal:    ", semi.columns, "rows", [g.key for g in semi.row_grades])

P = minimize(semi)  # the (2,2) column kills the (2,2) cycle, both go
print("minimal:         ", P.columns, "rows", [g.key for g in P.row_grades],
      "cols", [g.key for g in P.col_grades])

# coker of P restricted to each grade is the homology there
module = tk.presentation_module(P)
for y in (2, 1, 0):
    print(" ".join(str(module.dim((x, y))) for x in range(3)))

# the usual entry point compresses first and gives the same sizes
Q = pipeline(cx)[1]
print("pipeline result:", (Q.n_rows, Q.n_cols), "problems:", tk.check_presentation(Q, cx, 1))
