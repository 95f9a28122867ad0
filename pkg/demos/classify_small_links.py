"""Classical invariants and the fibered/SQP verdict for a few small links."""

from sqplink import braid_closure, classify, parse_braid, parse_pd

links = {
    "positive Hopf": braid_closure(parse_braid("2: 1 1")),
    "right trefoil": braid_closure(parse_braid("2: 1 1 1")),
    "figure-eight": braid_closure(parse_braid("3: 1 -2 1 -2")),
    "T(2,4)": braid_closure(parse_braid("2: 1 1 1 1")),
    "L4a1{1}": parse_pd("PD[X(6,2,7,1), X(8,4,5,3), X(2,8,3,7), X(4,6,1,5)]"),
}

for name, d in links.items():
    r = classify(d)
    print(f"{name:14s} n={r.n}  conway={str(r.conway):16s} sigma={r.signature:3d}  "
          f"g3={r.g3}  verdict={r.verdict}")

# the mirror swaps the two SQP flags; the verdict does not change
r = classify(links["right trefoil"])
m = classify(links["right trefoil"].mirror())
print("trefoil  sqp_L, sqp_mirror:", r.sqp_L, r.sqp_mirror)
print("mirror   sqp_L, sqp_mirror:", m.sqp_L, m.sqp_mirror)
print(r.to_text())
