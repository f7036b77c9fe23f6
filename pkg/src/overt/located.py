"""Located sets: dichotomy oracles and two-sided epsilon-net families.

A set is *located* when its distance function is a full Dedekind real, not
just an upper real.  Computationally that is a dichotomy: for nested balls
``inner < outer`` the set either certifiably misses the inner ball or
certifiably meets the outer one.  This module carries both presentations

* :class:`EpsilonNetFamily` -- for each rational eps > 0 a finite list of
  points, each within eps of the set, jointly within eps of every set
  point; this is total boundedness made executable;
* :class:`LocatedPredicate` -- the dichotomy oracle itself;

and the constructive conversions between them: nets give distances and
hence dichotomies; a dichotomy filters an ambient net down to a net of the
set.  The round trip is the computational content of "located iff totally
bounded".

Builtin sets (closed intervals, finite point sets, the middle-thirds set,
closed disks and segments in the plane, finite unions, images under maps
with a modulus) carry exact rational distance comparisons, so their
predicates never approximate.

Intersections of located sets are deliberately absent: locatedness is not
preserved by intersection, and it depends on the metric presentation, not
just the topology; both facts are documented limitations of the notion
itself rather than of this module.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from overt import kernel
from overt.errors import (
    AmbientMismatch,
    EmptySetError,
    InvariantViolation,
    PreconditionFailed,
)
from overt.intervals import IntervalElement, gap_complement
from overt.kernel import (
    TOP,
    Derivation,
    EltSet,
    PosClosedSub,
    SetPredicate,
    derive_cover,
    sublocale_cover,
)
from overt.metric import (
    FormalBall,
    MetricSpace,
    PlaneEuclid,
    RationalLine,
    ball_lt,
    completion_base,
)
from overt.reals import DedekindReal, sqrt_bounds

LINE = RationalLine()
PLANE = PlaneEuclid()


class Decision(enum.Enum):
    NOT_POS_INNER = "not-pos-inner"  # the set misses the inner ball
    POS_OUTER = "pos-outer"  # the set meets the outer ball


@dataclass(frozen=True)
class Modulus:
    """Uniform-continuity modulus: d(x,y) < omega(eps) forces images within eps."""

    omega: Callable[[Fraction], Fraction]


class EpsilonNetFamily:
    """Two-sided eps-approximations of an inhabited set.

    ``net(eps)`` returns a nonempty finite point list; every net point lies
    within eps of the set and every set point within eps of some net point
    (strictly, with slack, for the builtin constructions).  When the set
    admits exact rational distance comparison, ``distance_compare(x, t)``
    returns the sign of d(x, set) - t.
    """

    def __init__(
        self,
        space: MetricSpace,
        net_fn: Callable[[Fraction], list],
        inhabited: bool = True,
        distance_compare: Optional[Callable[[object, Fraction], int]] = None,
        distance_value: Optional[Callable[[object], Fraction]] = None,
        name: str = "set",
    ):
        self.space = space
        self._net_fn = net_fn
        self.inhabited = inhabited
        self.distance_value = distance_value
        if distance_compare is None and distance_value is not None:
            distance_compare = lambda x, t: _sign(distance_value(x), t)
        self.distance_compare = distance_compare
        self.name = name
        self._memo: dict[Fraction, tuple] = {}
        self._indexes: dict[Fraction, object] = {}

    def net(self, eps: Fraction) -> list:
        eps = Fraction(eps)
        if eps <= 0:
            raise PreconditionFailed(f"net precision must be positive, got {eps}")
        if eps not in self._memo:
            pts = tuple(self._net_fn(eps))
            if self.inhabited and not pts:
                raise InvariantViolation(f"empty net for inhabited set {self.name}")
            self._memo[eps] = pts
        return list(self._memo[eps])

    def net_index(self, eps: Fraction):
        """Cached nearest-point structure over net(eps), when the space
        supports one (sorted values on the line, buckets in the plane)."""
        eps = Fraction(eps)
        if eps not in self._indexes:
            pts = self.net(eps)
            if pts and not isinstance(pts[0], tuple):
                self._indexes[eps] = _LineIndex(pts)
            elif pts and self.space.dist_sq_exact(pts[0], pts[0]) is not None:
                self._indexes[eps] = _PlaneIndex(self.space.dist_sq_exact, pts, 8 * eps)
            else:
                self._indexes[eps] = None
        return self._indexes[eps]

    def __repr__(self):
        return f"EpsilonNetFamily({self.name})"


class LocatedPredicate:
    """Effective dichotomy oracle over formal balls of a space.

    ``pos_exact``, when present, decides exactly whether the set meets the
    open ball; the dichotomy is then maximally informative (answers
    POS_OUTER precisely when the set meets the outer ball).
    """

    def __init__(
        self,
        space: MetricSpace,
        decide_fn: Callable[[FormalBall, FormalBall], Decision],
        pos_exact: Optional[Callable[[FormalBall], bool]] = None,
        hints: tuple = (),
        name: str = "pred",
    ):
        self.space = space
        self._decide_fn = decide_fn
        self.pos_exact = pos_exact
        self.hints = hints
        self.name = name

    def decide(self, inner: FormalBall, outer: FormalBall) -> Decision:
        if not ball_lt(self.space, inner, outer):
            raise PreconditionFailed("decide needs strictly refining balls")
        return self._decide_fn(inner, outer)

    def __repr__(self):
        return f"LocatedPredicate({self.name})"


# ---------------------------------------------------------------------------
# Nearest-point structures and distances.
# ---------------------------------------------------------------------------


class _LineIndex:
    """Sorted rational values; nearest distance by bisection, exactly."""

    def __init__(self, pts):
        import bisect

        self._bisect = bisect.bisect_left
        self.sorted = sorted(pts)

    def min_distance(self, x) -> Fraction:
        ys = self.sorted
        i = self._bisect(ys, x)
        best = None
        for j in (i - 1, i):
            if 0 <= j < len(ys):
                d = abs(ys[j] - x)
                if best is None or d < best:
                    best = d
        return best


class _PlaneIndex:
    """Bucket grid over plane points; exact minimal squared distance by
    expanding ring search."""

    def __init__(self, dist_sq, pts, cell: Fraction):
        self.dist_sq = dist_sq
        self.cell = cell
        self.buckets: dict = {}
        for q in pts:
            self.buckets.setdefault(self._key(q), []).append(q)
        ks = self.buckets.keys()
        self.minx = min(k[0] for k in ks)
        self.maxx = max(k[0] for k in ks)
        self.miny = min(k[1] for k in ks)
        self.maxy = max(k[1] for k in ks)

    def _key(self, p):
        return (int(p[0] // self.cell), int(p[1] // self.cell))

    def min_sq(self, p) -> Fraction:
        cx, cy = self._key(p)
        rmax = max(cx - self.minx, self.maxx - cx, cy - self.miny, self.maxy - cy)
        best = None
        r = 0
        while True:
            if r == 0:
                cells = [(cx, cy)]
            else:
                cells = [(cx + dx, cy - r) for dx in range(-r, r + 1)]
                cells += [(cx + dx, cy + r) for dx in range(-r, r + 1)]
                cells += [(cx - r, cy + dy) for dy in range(-r + 1, r)]
                cells += [(cx + r, cy + dy) for dy in range(-r + 1, r)]
            for c in cells:
                for q in self.buckets.get(c, ()):
                    d = self.dist_sq(p, q)
                    if best is None or d < best:
                        best = d
            # Points beyond ring r sit at least r*cell away.
            if best is not None and best <= (self.cell * r) ** 2:
                return best
            if r > rmax:
                return best
            r += 1


def distance_to_set(S: EpsilonNetFamily, x) -> DedekindReal:
    """Distance from a point to the set, as a Dedekind real.

    At precision eps the minimum over the net at eps/3 is computed (exactly
    via the nearest-point index when the space allows, with the distance
    oracle at eps/6 otherwise); it is within eps/2 of the true infimum,
    which gives an interval of width at most eps (clipped below at zero).
    """
    if not S.inhabited:
        raise EmptySetError(f"distance to possibly-empty set {S.name}")
    space = S.space

    def refine(eps: Fraction):
        index = S.net_index(eps / 3)
        if isinstance(index, _LineIndex):
            best = index.min_distance(x)
        elif isinstance(index, _PlaneIndex):
            slo, shi = sqrt_bounds(index.min_sq(x), eps / 6)
            best = (slo + shi) / 2
        else:
            best = None
            for p in S.net(eps / 3):
                q = space.dist_approx(x, p, eps / 6)
                if best is None or q < best:
                    best = q
        lo = max(Fraction(0), best - eps / 2)
        hi = best + eps / 2
        if hi - lo > eps:
            hi = lo + eps
        return (lo, hi)

    return DedekindReal(refine, name=f"d({x}, {S.name})")


def _distance_upper_bound(space: MetricSpace, x, y, start: Fraction) -> Fraction:
    """A rational upper bound on d(x, y), refined from the start tolerance."""
    eps = start
    q = space.dist_approx(x, y, eps)
    return q + eps


def decide_located_pair(S, inner: FormalBall, outer: FormalBall) -> Decision:
    """Sound dichotomy for strictly refining balls.

    Net-backed sets without exact comparison evaluate the distance at a
    fraction of the certified gap margin and compare against the inner
    radius; exactly-backed sets answer POS_OUTER precisely when the set
    meets the outer ball.
    """
    if isinstance(S, LocatedPredicate):
        return S.decide(inner, outer)
    if not isinstance(S, EpsilonNetFamily):
        raise PreconditionFailed(f"cannot decide on {S!r}")
    if not S.inhabited:
        raise EmptySetError(f"dichotomy on possibly-empty set {S.name}")
    space = S.space
    if not ball_lt(space, inner, outer):
        raise PreconditionFailed("decide needs strictly refining balls")
    if S.distance_compare is not None:
        cmp = S.distance_compare(outer.center, outer.radius)
        return Decision.POS_OUTER if cmp < 0 else Decision.NOT_POS_INNER
    # Certified lower bound on the gap margin s - r - d(centers).
    gap = outer.radius - inner.radius
    eps = gap / 8
    while True:
        ub = _distance_upper_bound(space, inner.center, outer.center, eps)
        margin = gap - ub
        if margin > 0:
            break
        eps /= 4
    lo, hi = distance_to_set(S, inner.center).approximate(margin / 2)
    if lo >= inner.radius:
        return Decision.NOT_POS_INNER
    return Decision.POS_OUTER


# ---------------------------------------------------------------------------
# Net <-> predicate conversions.
# ---------------------------------------------------------------------------


def predicate_from_net(S: EpsilonNetFamily) -> LocatedPredicate:
    """The located predicate of a net-backed set."""
    if S.distance_compare is not None:
        cmp = S.distance_compare

        def pos(ball: FormalBall) -> bool:
            if ball is TOP:
                return S.inhabited
            return cmp(ball.center, ball.radius) < 0

        return LocatedPredicate(
            S.space,
            lambda i, o: decide_located_pair(S, i, o),
            pos_exact=pos,
            name=S.name,
        )
    return LocatedPredicate(
        S.space, lambda i, o: decide_located_pair(S, i, o), name=S.name
    )


def net_from_located(ambient: EpsilonNetFamily, P, eps: Fraction) -> tuple:
    """Filter an ambient net down to a two-sided eps-net of the located set.

    Each ambient net point at eps/3 is probed with the nested pair
    (eps/3, 2*eps/3); the kept points are those certified to be within
    2*eps/3 of the set.  An empty result means nothing was certified (the
    set may be empty).
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise PreconditionFailed("net precision must be positive")
    kept = []
    for x in ambient.net(eps / 3):
        inner = FormalBall(x, eps / 3)
        outer = FormalBall(x, 2 * eps / 3)
        if decide_located_pair(P, inner, outer) is Decision.POS_OUTER:
            kept.append(x)
    return tuple(kept)


def located_from_dichotomy(
    raw: Callable[[FormalBall, FormalBall], Decision],
    space: MetricSpace,
    name: str = "dichotomy",
) -> LocatedPredicate:
    """Wrap a raw gap oracle (with upward-closure obligations) as a predicate.

    The caller promises: sound answers on strictly refining pairs, positivity
    upward closed, and every positive ball positive already on some strictly
    smaller ball.  ``spot_check_dichotomy`` samples these obligations; the
    monotonicity content is exercised through the kernel's positivity checks.
    """
    return LocatedPredicate(space, raw, name=name)


def spot_check_dichotomy(
    P: LocatedPredicate, pairs: Sequence[tuple[FormalBall, FormalBall]]
) -> list:
    """Cross-query consistency on supplied chains: a pair answered POS_OUTER
    must not be answered NOT_POS_INNER on any enclosing pair."""
    violations = []
    answers = [(i, o, P.decide(i, o)) for i, o in pairs]
    for i1, o1, a1 in answers:
        for i2, o2, a2 in answers:
            if a1 is Decision.POS_OUTER and a2 is Decision.NOT_POS_INNER:
                # outer of the positive pair inside the inner of the negative
                if ball_lt(P.space, o1, i2) or o1 == i2:
                    violations.append(((i1, o1), (i2, o2)))
    return violations


def image_located(
    S: EpsilonNetFamily,
    f: Callable,
    m: Modulus,
    target_space: Optional[MetricSpace] = None,
    name: Optional[str] = None,
) -> EpsilonNetFamily:
    """Image of a located set under a map with a uniform-continuity modulus."""
    space = target_space if target_space is not None else S.space
    return EpsilonNetFamily(
        space,
        lambda eps: [f(p) for p in S.net(m.omega(eps))],
        inhabited=S.inhabited,
        name=name or f"image({S.name})",
    )


def union_located(A: EpsilonNetFamily, B: EpsilonNetFamily) -> EpsilonNetFamily:
    """Finite unions preserve locatedness: concatenate the nets."""
    if A.space is not B.space:
        raise AmbientMismatch(f"union over different spaces {A.space.name}, {B.space.name}")
    both = A.inhabited and B.inhabited
    dv = None
    if both and A.distance_value is not None and B.distance_value is not None:
        va, vb = A.distance_value, B.distance_value
        dv = lambda x: min(va(x), vb(x))
    dc = None
    if both and A.distance_compare is not None and B.distance_compare is not None:
        ca, cb = A.distance_compare, B.distance_compare
        dc = lambda x, t: min(ca(x, t), cb(x, t))

    def net(eps):
        pts = []
        if A.inhabited:
            pts.extend(A.net(eps))
        if B.inhabited:
            pts.extend(B.net(eps))
        return pts

    return EpsilonNetFamily(
        A.space,
        net,
        inhabited=A.inhabited or B.inhabited,
        distance_compare=dc,
        distance_value=dv,
        name=f"{A.name}|{B.name}",
    )


def _directed_max_min_1d(xs_from, xs_to) -> Fraction:
    """max over the first list of the distance to the second, exactly."""
    import bisect

    ys = sorted(xs_to)
    worst = Fraction(0)
    for x in xs_from:
        i = bisect.bisect_left(ys, x)
        best = None
        for j in (i - 1, i):
            if 0 <= j < len(ys):
                d = abs(ys[j] - x)
                if best is None or d < best:
                    best = d
        if best > worst:
            worst = best
    return worst


def _max_min_sq_plane(dist_sq, pts_from, pts_to, cell: Fraction) -> Fraction:
    """max over pts_from of the squared distance to pts_to, exactly, via a
    bucket grid with expanding ring search."""
    buckets: dict = {}

    def key(p):
        return (int(p[0] // cell), int(p[1] // cell))

    for q in pts_to:
        buckets.setdefault(key(q), []).append(q)
    kx = [k[0] for k in buckets]
    ky = [k[1] for k in buckets]
    minx, maxx, miny, maxy = min(kx), max(kx), min(ky), max(ky)
    worst = Fraction(0)
    for p in pts_from:
        cx, cy = key(p)
        rmax = max(cx - minx, maxx - cx, cy - miny, maxy - cy)
        best = None
        r = 0
        while True:
            if r == 0:
                cells = [(cx, cy)]
            else:
                cells = [(cx + dx, cy - r) for dx in range(-r, r + 1)]
                cells += [(cx + dx, cy + r) for dx in range(-r, r + 1)]
                cells += [(cx - r, cy + dy) for dy in range(-r + 1, r)]
                cells += [(cx + r, cy + dy) for dy in range(-r + 1, r)]
            pruned = False
            for c in cells:
                for q in buckets.get(c, ()):
                    d = dist_sq(p, q)
                    if best is None or d < best:
                        best = d
                        if best <= worst:
                            pruned = True  # cannot raise the max any more
                            break
                if pruned:
                    break
            # Points beyond ring r sit at least r*cell away.
            if pruned or (best is not None and best <= (cell * r) ** 2):
                break
            if r > rmax:
                break  # every bucket has been scanned
            r += 1
        if best > worst:
            worst = best
    return worst


def hausdorff_distance(A: EpsilonNetFamily, B: EpsilonNetFamily) -> DedekindReal:
    """Hausdorff distance between two inhabited sets, as a Dedekind real.

    At precision eps both nets are taken at eps/6; net replacement moves the
    value by at most twice that.  The max-min sweeps are exact: sorted
    bisection on the line, bucketed ring search on squared distances in the
    plane (one square root at the end), a full approximate sweep otherwise.
    The computation is literally symmetric in A and B, so swapping the
    arguments returns identical intervals.
    """
    if not A.inhabited or not B.inhabited:
        raise EmptySetError("hausdorff distance needs inhabited sets")
    if A.space is not B.space:
        raise AmbientMismatch(f"hausdorff over different spaces {A.space.name}, {B.space.name}")
    space = A.space

    def directed_approx(pts_from, pts_to, eta):
        worst = None
        for a in pts_from:
            best = None
            for b in pts_to:
                q = space.dist_approx(a, b, eta)
                if best is None or q < best:
                    best = q
            if worst is None or best > worst:
                worst = best
        return worst

    def refine(eps: Fraction):
        delta = eps / 6
        na, nb = A.net(delta), B.net(delta)
        one_d = na and not isinstance(na[0], tuple)
        if one_d:
            h = max(_directed_max_min_1d(na, nb), _directed_max_min_1d(nb, na))
            pad = 2 * delta
        elif space.dist_sq_exact(na[0], na[0]) is not None:
            dsq = space.dist_sq_exact
            cell = 4 * delta
            msq = max(
                _max_min_sq_plane(dsq, na, nb, cell),
                _max_min_sq_plane(dsq, nb, na, cell),
            )
            slo, shi = sqrt_bounds(msq, eps / 12)
            h = (slo + shi) / 2
            pad = 2 * delta + eps / 12
        else:
            eta = eps / 12
            h = max(directed_approx(na, nb, eta), directed_approx(nb, na, eta))
            pad = 2 * delta + eta
        lo = max(Fraction(0), h - pad)
        hi = h + pad
        if hi - lo > eps:
            hi = lo + eps
        return (lo, hi)

    return DedekindReal(refine, name=f"H({A.name}, {B.name})")


# ---------------------------------------------------------------------------
# Exact distance oracles for the builtin sets.
# ---------------------------------------------------------------------------

_CANTOR_MEMO: dict[Fraction, Fraction] = {}


def cantor_distance(x) -> Fraction:
    """Exact distance from a rational to the middle-thirds set in [0, 1].

    Scaling by 3 maps the set onto two shifted copies of itself, so the
    distance satisfies d(x) = min(d(3x), d(3x - 2)) / 3 inside (0, 1).  The
    orbit of a rational under these maps is finite; a revisited state means
    a periodic digit expansion avoiding the middle digit, i.e. the state is
    itself a set point at distance zero.
    """
    x = Fraction(x)
    if x <= 0:
        return -x
    if x >= 1:
        return x - 1
    memo = _CANTOR_MEMO
    if x in memo:
        return memo[x]
    onpath: set = set()
    stack: list[list] = [[x, 0]]
    while stack:
        s, phase = stack[-1]
        if phase == 0:
            if s in memo:
                stack.pop()
                continue
            onpath.add(s)
            stack[-1][1] = 1
            for t in (3 * s, 3 * s - 2):
                if 0 < t < 1 and t not in memo and t not in onpath:
                    stack.append([t, 0])
        else:
            vals = []
            for t in (3 * s, 3 * s - 2):
                if t <= 0:
                    vals.append(-t)
                elif t >= 1:
                    vals.append(t - 1)
                elif t in memo:
                    vals.append(memo[t])
                else:
                    vals.append(Fraction(0))  # revisit: periodic expansion, in the set
            memo[s] = min(vals) / 3
            onpath.discard(s)
            stack.pop()
    return memo[x]


def _sign(d: Fraction, t: Fraction) -> int:
    return (d > t) - (d < t)


def _sq_sign(dsq: Fraction, t: Fraction) -> int:
    """Sign of sqrt(dsq) - t, decided on squares."""
    if t < 0:
        return 1
    return _sign(dsq, t * t)


# ---------------------------------------------------------------------------
# Builtin set constructors.
# ---------------------------------------------------------------------------


def interval_set(a, b, space: Optional[MetricSpace] = None) -> EpsilonNetFamily:
    """The closed interval [a, b] on the line."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise PreconditionFailed(f"empty interval [{a}, {b}]")
    space = space or LINE

    def net(eps):
        pts = []
        x = a
        while x < b:
            pts.append(x)
            x += eps
        pts.append(b)
        return pts

    def dist(x):
        return max(Fraction(0), a - x, x - b)

    return EpsilonNetFamily(space, net, distance_value=dist, name=f"[{a},{b}]")


def point_set(points, space: Optional[MetricSpace] = None) -> EpsilonNetFamily:
    """A finite set of rational points on the line."""
    pts = tuple(Fraction(p) for p in points)
    if not pts:
        raise PreconditionFailed("point set must be nonempty")
    space = space or LINE

    def dist(x):
        return min(abs(x - p) for p in pts)

    return EpsilonNetFamily(
        space, lambda eps: list(pts), distance_value=dist, name=f"points{list(pts)}"
    )


def plane_point_set(points) -> EpsilonNetFamily:
    """A finite set of rational points in the Euclidean plane."""
    pts = tuple((Fraction(x), Fraction(y)) for x, y in points)
    if not pts:
        raise PreconditionFailed("point set must be nonempty")

    def cmp(p, t):
        dsq = min((p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2 for q in pts)
        return _sq_sign(dsq, t)

    return EpsilonNetFamily(
        PLANE, lambda eps: list(pts), distance_compare=cmp, name="points2d"
    )


def cantor_set(space: Optional[MetricSpace] = None) -> EpsilonNetFamily:
    """The middle-thirds set, with level-k endpoint nets."""
    space = space or LINE

    def net(eps):
        k = 0
        while Fraction(1, 3**k) > eps / 2:
            k += 1
        pts = [Fraction(0)]
        for _ in range(k):
            third = [p / 3 for p in pts]
            pts = third + [Fraction(2, 3) + p for p in third]
        pts.append(Fraction(1))
        return sorted(set(pts))

    return EpsilonNetFamily(space, net, distance_value=cantor_distance, name="cantor")


def disk_set(cx, cy, r) -> EpsilonNetFamily:
    """The closed Euclidean disk of radius r around (cx, cy)."""
    cx, cy, r = Fraction(cx), Fraction(cy), Fraction(r)
    if r <= 0:
        raise PreconditionFailed(f"disk radius must be positive, got {r}")
    rsq = r * r

    def net(eps):
        h = eps / 2
        pts = [(cx, cy)]
        steps = int(r / h) + 1
        for i in range(-steps, steps + 1):
            for j in range(-steps, steps + 1):
                x, y = cx + i * h, cy + j * h
                if (x - cx) ** 2 + (y - cy) ** 2 <= rsq and (x, y) != (cx, cy):
                    pts.append((x, y))
        return pts

    def cmp(p, t):
        dsq = (p[0] - cx) ** 2 + (p[1] - cy) ** 2
        if dsq <= rsq:
            return _sign(Fraction(0), t)
        # d = |p - c| - r: compare |p - c| with r + t.
        if t < 0:
            return 1
        return _sign(dsq, (r + t) ** 2)

    return EpsilonNetFamily(PLANE, net, distance_compare=cmp, name=f"disk({cx},{cy};{r})")


def segment_set(x1, y1, x2, y2) -> EpsilonNetFamily:
    """The closed straight segment between two rational plane points."""
    a = (Fraction(x1), Fraction(y1))
    b = (Fraction(x2), Fraction(y2))
    dx, dy = b[0] - a[0], b[1] - a[1]
    len_sq = dx * dx + dy * dy
    if len_sq == 0:
        return plane_point_set([a])
    len_ub = sqrt_bounds(len_sq, Fraction(1, 16))[1]

    def net(eps):
        n = int(len_ub / (eps / 2)) + 1
        return [
            (a[0] + dx * Fraction(k, n), a[1] + dy * Fraction(k, n)) for k in range(n + 1)
        ]

    def cmp(p, t):
        # Projection parameter clamped to [0, 1]; all arithmetic on squares.
        s = ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / len_sq
        s = min(Fraction(1), max(Fraction(0), s))
        qx, qy = a[0] + s * dx, a[1] + s * dy
        dsq = (p[0] - qx) ** 2 + (p[1] - qy) ** 2
        return _sq_sign(dsq, t)

    return EpsilonNetFamily(PLANE, net, distance_compare=cmp, name="segment")


def box_set(x0, x1, y0, y1) -> EpsilonNetFamily:
    """The closed axis-aligned rectangle, e.g. an ambient for plane nets."""
    x0, x1, y0, y1 = Fraction(x0), Fraction(x1), Fraction(y0), Fraction(y1)
    if x0 > x1 or y0 > y1:
        raise PreconditionFailed("degenerate box")

    def net(eps):
        h = eps / 2
        xs, ys = [], []
        x = x0
        while x < x1:
            xs.append(x)
            x += h
        xs.append(x1)
        y = y0
        while y < y1:
            ys.append(y)
            y += h
        ys.append(y1)
        return [(x, y) for x in xs for y in ys]

    def cmp(p, t):
        ddx = max(Fraction(0), x0 - p[0], p[0] - x1)
        ddy = max(Fraction(0), y0 - p[1], p[1] - y1)
        return _sq_sign(ddx * ddx + ddy * ddy, t)

    return EpsilonNetFamily(PLANE, net, distance_compare=cmp, name="box")


def promote_to_plane(S: EpsilonNetFamily) -> EpsilonNetFamily:
    """Embed a line set onto the x-axis of the Euclidean plane.

    The planar distance to the embedded set splits into the 1-D distance
    and the height, so exactness is preserved when the source carries an
    exact distance value.
    """
    if S.space is PLANE:
        return S
    cmp = None
    if S.distance_value is not None:
        dv = S.distance_value

        def cmp(p, t):
            d1 = dv(p[0])
            return _sq_sign(d1 * d1 + p[1] * p[1], t)

    return EpsilonNetFamily(
        PLANE,
        lambda eps: [(x, Fraction(0)) for x in S.net(eps)],
        inhabited=S.inhabited,
        distance_compare=cmp,
        name=f"plane({S.name})",
    )


def affine_plane_map(a, b, c, d, e, f) -> tuple[Callable, Modulus]:
    """(x, y) -> (a x + b y + c, d x + e y + f) with a Euclidean modulus."""
    a, b, c, d, e, f = (Fraction(v) for v in (a, b, c, d, e, f))
    lip = abs(a) + abs(b) + abs(d) + abs(e)
    if lip == 0:
        lip = Fraction(1)

    def apply(p):
        if isinstance(p, tuple):
            x, y = p
        else:
            x, y = Fraction(p), Fraction(0)
        return (a * x + b * y + c, d * x + e * y + f)

    return apply, Modulus(lambda eps: eps / lip)


# ---------------------------------------------------------------------------
# Deriving a dichotomy from overtness data over the interval lattice.
# ---------------------------------------------------------------------------


def ball_region(ball: FormalBall, ambient: tuple) -> IntervalElement:
    """The open interval of a line ball, clipped to the lattice ambient."""
    x, r = ball.center, ball.radius
    return IntervalElement.make(ambient, [(x - r, x + r)])


def located_from_overt(
    pos_elem: Callable[[IntervalElement], bool],
    ambient: tuple,
    space: Optional[MetricSpace] = None,
    extractor: Optional[Callable] = None,
    name: str = "overt",
) -> LocatedPredicate:
    """Dichotomy from a positivity oracle plus a finite-cover extractor.

    For a strictly refining pair the gap complement of the inner region
    joins with the outer region to the whole ambient; the extractor keeps
    the positive members of that two-element cover, and the answer follows
    the outer region's membership in the kept subcover.
    """
    space = space or LINE
    if extractor is None:
        extractor = lambda family: [e for e in family if pos_elem(e)]

    def decide(inner: FormalBall, outer: FormalBall) -> Decision:
        v = ball_region(outer, ambient)
        w = gap_complement(ball_region(inner, ambient))
        kept = list(extractor([v, w]))
        if any(e is v or e == v for e in kept):
            return Decision.POS_OUTER
        return Decision.NOT_POS_INNER

    return LocatedPredicate(space, decide, name=name)


def meets_oracle(S: EpsilonNetFamily, ambient: tuple) -> Callable[[IntervalElement], bool]:
    """Positivity on interval elements: does the set meet the open element?

    Meeting an open interval is a strict distance comparison against its
    midpoint, which the builtin sets decide exactly.
    """
    if S.distance_compare is None:
        raise PreconditionFailed(f"{S.name} has no exact distance comparison")
    cmp = S.distance_compare

    def pos(e: IntervalElement) -> bool:
        return any(cmp((p + q) / 2, (q - p) / 2) < 0 for p, q in e.parts)

    return pos


# ---------------------------------------------------------------------------
# The sublocale-containment check (closed set inside an open one iff the
# complement together with the open covers the whole space).
# ---------------------------------------------------------------------------


@dataclass
class TvdReport:
    """Outcome of the two bounded-depth directions.

    ``cover_derivation`` witnesses that the open together with the
    negative balls covers the whole space; ``sample_results`` witness
    containment of sampled balls in the open within the positively closed
    sublocale.  A None entry is Unknown, never a refutation.
    """

    open_family: tuple
    cover_derivation: Optional[Derivation]
    sample_results: tuple

    @property
    def cover_found(self) -> bool:
        return self.cover_derivation is not None

    @property
    def samples_found(self) -> bool:
        return all(d is not None for _, d in self.sample_results)

    @property
    def verdict(self) -> str:
        return "holds" if (self.cover_found and self.samples_found) else "unknown"


def tvd_check(
    P: LocatedPredicate,
    Z: Sequence[FormalBall],
    depth: int,
    budget: int,
    samples: Optional[Sequence[FormalBall]] = None,
) -> TvdReport:
    """Check both directions of the located-sublocale containment statement.

    Only axiom families known to be semantically complete covers are used
    (uniform families over a grid fine enough for their radius), so a found
    derivation is true of the space itself, never an artifact of the
    truncation; the shrink families are excluded for the same reason.
    """
    if P.pos_exact is None:
        raise PreconditionFailed("tvd_check needs an exactly decidable predicate")
    Z = tuple(Z)
    base = completion_base(P.space, budget)

    def axiom_filter(name, u, family):
        if name not in ("m2", "m2loc"):
            return False
        margin = family[0].radius
        k = margin.denominator.bit_length() - 1
        return base.m2_complete(k)

    notpos = SetPredicate(
        "notpos", lambda ball: ball is not TOP and not P.pos_exact(ball)
    )
    target = EltSet(listed=Z, predicates=(notpos,))
    cover = derive_cover(base, TOP, target, depth, budget=budget, axiom_filter=axiom_filter)

    pos_pred = SetPredicate("pos", lambda ball: ball is TOP or P.pos_exact(ball))
    subl = PosClosedSub(pos_pred)
    if samples is None:
        sampled = [TOP] + [
            FormalBall(c, Fraction(1, 4)) for c in base.points[: min(6, len(base.points))]
        ]
    else:
        sampled = list(samples)
    results = []
    for u in sampled:
        d = sublocale_cover(base, subl, u, EltSet(listed=Z), depth, budget=budget,
                            axiom_filter=axiom_filter)
        results.append((u, d))
    return TvdReport(Z, cover, tuple(results))
