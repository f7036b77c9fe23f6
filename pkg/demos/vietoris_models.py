"""The modal lattice of a finite carrier and its positivity models.

dia(u) says "the region meets u", box(u) says "the region sits inside u".
The models of the positivity theory over a finite carrier are exactly the
points of the modal lattice, and the translation is a bijection both ways.
"""

from overt.vietoris import (
    Box,
    Dia,
    TermJoin,
    chain,
    enumerate_models,
    grid,
    loc_to_point,
    normalize,
    point_to_loc,
    term_leq,
)

L = chain(3)  # 0 < 1 < 2
print("carrier: three-element chain")
models = enumerate_models(L)
print("positivity models:", [sorted(m) for m in models])

# Each model becomes a point: diamonds read positivity, boxes read
# "fills the space up to the non-positive part".
for pos in models:
    p = loc_to_point(pos, L)
    dias = [u for u in L.elements() if p.dia(u)]
    boxes = [u for u in L.elements() if p.box(u)]
    back = point_to_loc(p, L)
    print(f"  model {sorted(pos)!s:10} dia on {dias}, box on {boxes}; round trip ok: {back == pos}")

# The one modal law that is an inequality, not an equation:
# box(u | v) <= box(u) | dia(v), exact over all models.
print("box(2) <= box(1) | dia(2):", term_leq(Box(2), TermJoin(Box(1), Dia(2)), L))
print("dia(1) <= box(1):", term_leq(Dia(1), Box(1), L))

# Normal forms: joins of tiles box(a) & dia(b1) & ... with each b below a.
t = TermJoin(Dia(1), Dia(2))
print("normalize(dia(1) | dia(2)):", normalize(t, L))

# A bigger carrier: the 2x2 grid.
G = grid(2, 2)
print("grid 2x2 has", len(enumerate_models(G)), "models")
