# The grid scan touches every cell of the X-by-Y grid; the grade queue only
# the cells where some column lives or where work was pushed.
import time

from mpcompress import Grade, GradedMatrix, MpfreeCounters, min_gens, min_gens_lw

for n in (500, 1000, 2000, 4000):
    # column i has grade (i, i) and a single entry in a row at (0, 0)
    A = GradedMatrix([[i] for i in range(n)], [Grade(i, i) for i in range(n)], [Grade(0, 0)] * n)

    q = MpfreeCounters()
    t = time.perf_counter()
    fast = min_gens(A, q)
    tq = time.perf_counter() - t

    s = MpfreeCounters()
    t = time.perf_counter()
    slow = min_gens_lw(A, s)
    ts = time.perf_counter() - t

    assert fast.same_as(slow)
    print(f"n={n:5d}  queue: {q.grade_pops:5d} pops {tq:.3f} s   grid: {s.cells_visited:9d} cells {ts:.3f} s")
