"""Independent oracles shared by the test modules.

Everything here is deliberately written from scratch against the math, not
against the library: bisection for square roots, triadic interval lists for
the middle-thirds set, endpoint sweeps for interval covers, and bucketed
integer arithmetic for exact finite Hausdorff bounds.
"""

from fractions import Fraction
from math import gcd


def bisect_sqrt_interval(n, eps):
    """Bracket sqrt(n) by pure bisection on [0, n+1] (n >= 1)."""
    n, eps = Fraction(n), Fraction(eps)
    lo, hi = Fraction(0), n + 1
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if mid * mid <= n:
            lo = mid
        else:
            hi = mid
    return lo, hi


def sqrt2_refiner(eps):
    return bisect_sqrt_interval(2, eps)


def cantor_level_intervals(k):
    """The closed intervals of the k-th middle-thirds stage."""
    intervals = [(Fraction(0), Fraction(1))]
    for _ in range(k):
        nxt = []
        for lo, hi in intervals:
            third = (hi - lo) / 3
            nxt.append((lo, lo + third))
            nxt.append((hi - third, hi))
        intervals = nxt
    return intervals


def cantor_oracle_distance(x, k=12):
    """Distance from x to the k-th stage (an upper approximation of the set
    containing it); exact for points whose nearest set points are stage
    endpoints, and within 3**-k in general."""
    x = Fraction(x)
    best = None
    for lo, hi in cantor_level_intervals(k):
        d = max(Fraction(0), lo - x, x - hi)
        if best is None or d < best:
            best = d
    return best


def cantor_oracle_sup_distance(k=12):
    """sup over [0, 1] of the distance to the middle-thirds set: half the
    widest gap between consecutive stage intervals."""
    intervals = sorted(cantor_level_intervals(k))
    best = Fraction(0)
    for (lo1, hi1), (lo2, hi2) in zip(intervals, intervals[1:]):
        best = max(best, (lo2 - hi1) / 2)
    return best


def sweep_cover_oracle(u_parts, family_parts, ambient):
    """Endpoint-sweep decision of 'the open set u is contained in the union
    of the open family parts', all within the open ambient interval."""
    lo_amb, hi_amb = ambient
    cuts = {lo_amb, hi_amb}
    for p, q in u_parts:
        cuts.update((p, q))
    for parts in family_parts:
        for p, q in parts:
            cuts.update((p, q))
    cuts = sorted(c for c in cuts if lo_amb <= c <= hi_amb)
    all_parts = [pq for parts in family_parts for pq in parts]

    def covered_point(z):
        return any(p < z < q for p, q in all_parts)

    def in_u(z):
        return any(p < z < q for p, q in u_parts)

    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2
        if in_u(mid) and not covered_point(mid):
            return False
    for c in cuts:
        if in_u(c) and not covered_point(c):
            return False
    return True


def _lcm(a, b):
    return a * b // gcd(a, b)


def common_denominator(points, plane):
    den = 1
    for p in points:
        if plane:
            den = _lcm(_lcm(den, p[0].denominator), p[1].denominator)
        else:
            den = _lcm(den, Fraction(p).denominator)
    return den


def finite_hausdorff_leq(A, B, bound, plane=False):
    """Exact decision of H(A, B) <= bound for finite point lists, by scaled
    integer arithmetic with spatial bucketing."""
    bound = Fraction(bound)
    den = _lcm(common_denominator(A, plane), common_denominator(B, plane))
    den = _lcm(den, bound.denominator)
    lim = bound * den
    lim_sq = int(lim) * int(lim)

    if not plane:
        a = sorted(int(Fraction(p) * den) for p in A)
        b = sorted(int(Fraction(p) * den) for p in B)
        import bisect

        def directed(xs, ys):
            for x in xs:
                i = bisect.bisect_left(ys, x)
                ok = False
                for j in (i - 1, i):
                    if 0 <= j < len(ys) and abs(ys[j] - x) <= lim:
                        ok = True
                        break
                if not ok:
                    return False
            return True

        return directed(a, b) and directed(b, a)

    cell = int(lim) + 1

    def to_int(pts):
        return [(int(p[0] * den), int(p[1] * den)) for p in pts]

    def bucket(pts):
        d = {}
        for x, y in pts:
            d.setdefault((x // cell, y // cell), []).append((x, y))
        return d

    ai, bi = to_int(A), to_int(B)

    def directed(pts, buckets):
        for x, y in pts:
            cx, cy = x // cell, y // cell
            ok = False
            for dx in (-1, 0, 1):
                for dy in (-1, 0, 1):
                    for bx, by in buckets.get((cx + dx, cy + dy), ()):
                        if (x - bx) ** 2 + (y - by) ** 2 <= lim_sq:
                            ok = True
                            break
                    if ok:
                        break
                if ok:
                    break
            if not ok:
                return False
        return True

    return directed(ai, bucket(bi)) and directed(bi, bucket(ai))


def finite_hausdorff_1d(A, B):
    """Exact Hausdorff distance between small finite 1-d point lists."""
    A = [Fraction(a) for a in A]
    B = [Fraction(b) for b in B]

    def directed(xs, ys):
        return max(min(abs(x - y) for y in ys) for x in xs)

    return max(directed(A, B), directed(B, A))


def grid_points(x0, x1, y0, y1, h):
    pts = []
    x = Fraction(x0)
    while x <= x1:
        y = Fraction(y0)
        while y <= y1:
            pts.append((x, y))
            y += h
        x += h
    return pts
