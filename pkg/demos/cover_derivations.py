"""Bounded-depth derivation search for cover judgments.

The formal reals are presented by the split axiom on open rational
intervals: (p, s) is covered by {(p, r), (q, s)} whenever p <= q < r <= s.
The searcher builds finite proof trees; an independent checker validates
every node.  Unknown means "no derivation within this depth", never a
refutation - though for this base the axioms are exact covers, so a
semantically false judgment stays Unknown forever.
"""

from fractions import Fraction as F

from overt.kernel import (
    ClosedSub,
    FormalRealsBase,
    SetPredicate,
    check_derivation,
    derive_cover,
    serialize_derivation,
    sublocale_cover,
)

base = FormalRealsBase()


def iv(a, b):
    return (F(a), F(b))


# The two-interval split, found as a single axiom leaf.
fam = [iv(0, 2), iv(1, 3)]
d = derive_cover(base, iv(0, 3), fam, depth=2)
print("(0,3) covered by {(0,2), (1,3)}:")
print("   ", serialize_derivation(base, d))
assert check_derivation(base, d, iv(0, 3), fam)

# A judgment that is semantically false: (0,1) is not inside (0,1/2).
print("(0,1) covered by {(0,1/2)}:", derive_cover(base, iv(0, 1), [iv(0, F(1, 2))], depth=8))

# A two-step derivation: covering needs a chain of splits.
fam = [iv(0, F(2, 5)), iv(F(1, 4), F(3, 4)), iv(F(3, 5), 1)]
d = derive_cover(base, iv(0, 1), fam, depth=4)
print("(0,1) covered by three overlapping pieces:")
print("   ", serialize_derivation(base, d))
assert check_derivation(base, d, iv(0, 1), fam)

# Closed subspaces: covering relative to the complement of [0, 1] just
# enlarges the target with the intervals missing [0, 1].
outside = SetPredicate(
    "outside-unit",
    lambda e: e[1] <= 0 or e[0] >= 1,
    hints=(F(0), F(1)),
)
closed_unit = ClosedSub(predicates=(outside,))
d = sublocale_cover(base, closed_unit, iv(-1, 2), [iv(F(-1, 2), F(3, 2))], depth=4)
print("(-1,2) covered by {(-1/2,3/2)} relative to the closed unit interval:")
print("   ", serialize_derivation(base, d))
assert check_derivation(base, d, iv(-1, 2), [iv(F(-1, 2), F(3, 2))], sublocale=closed_unit)
