"""Grid homology by hand on the trefoil and the figure-eight knot."""

from sqplink import GridDiagram, classify, grid_homology, grid_to_diagram

# 5x5 grid of the left-handed trefoil; its mirror is the right-handed one
left = GridDiagram((0, 1, 2, 3, 4), (2, 3, 4, 0, 1))
right = left.mirror()

t = grid_homology(right)
print("right trefoil, grid", right)
print(t.rank_table())
print(t.summary())

# tau flips sign under mirroring
print("left trefoil:", grid_homology(left).summary())

# a stabilization adds a row and a column but leaves everything unchanged
s = grid_homology(right.stabilize(2))
print("stabilized (N=6):", s.summary())

# figure-eight: fibered (dim_top = 1) but tau_max = 0 < s_top
fig8 = GridDiagram((0, 5, 2, 1, 3, 4), (3, 1, 0, 4, 5, 2))
f = grid_homology(fig8)
print(f.rank_table())
print(classify(grid_to_diagram(fig8), f).verdict)
