# A five-vertex bifiltration: A, B, C, D appear at (0,0), E at (2,0).
# Edges and triangles enter at the grades listed in the scc file.
from pathlib import Path

from mpcompress import multi_chunk, read_scc, to_scc_string
from mpcompress import testkit as tk

here = Path(__file__).resolve().parent
cx = read_scc(here.parent / "tests" / "data" / "running_example.scc")
print("input sizes (triangles, edges, vertices):", cx.sizes())

# the boundary matrices are stored in colex order (y first, then x)
for n in (2, 1):
    d = cx.boundary(n)
    print(f"d{n} column grades:", [g.key for g in d.col_grades])
    print(f"d{n} columns:      ", d.columns)

# multi-chunk labels every generator, strips local rows from the global
# columns and drops the local pairs
small, stats = multi_chunk(cx)
print("\noutput sizes:", small.sizes())
print("labels per level:", stats.label_counts)
print(to_scc_string(small))

# homology is unchanged at every grade of the hull
for z in tk.grid_hull(cx):
    assert tk.homology_dims(cx, z) == tk.homology_dims(small, z)
print("homology dims agree at", len(tk.grid_hull(cx)), "grades")
