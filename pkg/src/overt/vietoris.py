"""The modal lattice on generators dia(u), box(u) over a carrier lattice.

``dia(u)`` reads "the region meets u", ``box(u)`` reads "the region is
inside u".  Terms are lattice words over these generators modulo

1. dia u | dia v = dia (u | v)
2. box u & box v = box (u & v)
3. box u & dia v <= dia (u & v)
4. box (u | v) <= box u | dia v
5. dia 0 = 0
6. box 1 = 1

Equations 1, 2, 5, 6 are used as rewrites and 3 trims diamonds inside a
tile; 4 is an inequality and is never rewritten.  The normal form is a join
of *tiles* box(a) & dia(b_1) & ... & dia(b_k) with every b_i below a.

A model assigns to the carrier a positivity predicate: empty at bottom,
upward closed, splitting joins, and answering the well-inside dichotomy.
Models evaluate dia(u) as positivity of u and box(u) as "u joins with the
non-positive part to the top".  For finite carriers the models can be
enumerated outright, which yields an exact inequality decision; the
syntactic normal-form comparison is sound but not claimed complete, and is
the only decision offered for infinite carriers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from overt import intervals as ilat
from overt.errors import InvariantViolation, ParseError, PreconditionFailed
from overt.intervals import IntervalElement


# ---------------------------------------------------------------------------
# Carriers.
# ---------------------------------------------------------------------------


class Carrier:
    name = "carrier"

    def elements(self) -> Optional[tuple]:
        """All elements, or None when the carrier is infinite."""
        raise NotImplementedError

    def leq(self, u, v) -> bool:
        raise NotImplementedError

    def meet(self, u, v):
        raise NotImplementedError

    def join(self, u, v):
        raise NotImplementedError

    @property
    def bot(self):
        raise NotImplementedError

    @property
    def top(self):
        raise NotImplementedError

    def well_inside(self, u, v) -> bool:
        raise NotImplementedError

    def format_element(self, u) -> str:
        raise NotImplementedError

    def parse_element(self, text: str):
        raise NotImplementedError


class FiniteCarrier(Carrier):
    """Finite distributive lattice given by explicit tables."""

    def __init__(self, name, elems, leq_fn, meet_fn, join_fn, bot, top, fmt, parse):
        self.name = name
        self._elems = tuple(elems)
        self._leq = leq_fn
        self._meet = meet_fn
        self._join = join_fn
        self._bot = bot
        self._top = top
        self._fmt = fmt
        self._parse = parse

    def elements(self):
        return self._elems

    def leq(self, u, v):
        return self._leq(u, v)

    def meet(self, u, v):
        return self._meet(u, v)

    def join(self, u, v):
        return self._join(u, v)

    @property
    def bot(self):
        return self._bot

    @property
    def top(self):
        return self._top

    def well_inside(self, u, v) -> bool:
        # Exhaustive witness search: some w with u & w = 0 and v | w = 1.
        return any(
            self._meet(u, w) == self._bot and self._join(v, w) == self._top
            for w in self._elems
        )

    def format_element(self, u):
        return self._fmt(u)

    def parse_element(self, text):
        return self._parse(text.strip())


def chain(n: int) -> FiniteCarrier:
    """The n-element chain 0 < 1 < ... < n-1."""
    if n < 2:
        raise PreconditionFailed("chain needs at least two elements")
    return FiniteCarrier(
        f"chain:{n}",
        range(n),
        lambda u, v: u <= v,
        min,
        max,
        0,
        n - 1,
        str,
        lambda t: _parse_index(t, n),
    )


def _parse_index(text: str, n: int) -> int:
    try:
        k = int(text)
    except ValueError:
        raise ParseError(f"expected a chain element index, got {text!r}", 0) from None
    if not 0 <= k < n:
        raise ParseError(f"chain index {k} out of range 0..{n - 1}", 0)
    return k


_ATOMS = "abcdefgh"


def boolean(n: int) -> FiniteCarrier:
    """The Boolean lattice of subsets of n atoms (2**n elements)."""
    if not 1 <= n <= len(_ATOMS):
        raise PreconditionFailed(f"boolean carrier supports 1..{len(_ATOMS)} atoms")

    def fmt(mask: int) -> str:
        if mask == 0:
            return "{}"
        return "".join(_ATOMS[i] for i in range(n) if mask >> i & 1)

    def parse(text: str) -> int:
        if text == "{}":
            return 0
        mask = 0
        for ch in text:
            if ch not in _ATOMS[:n]:
                raise ParseError(f"unknown atom {ch!r}", 0)
            mask |= 1 << _ATOMS.index(ch)
        return mask

    full = (1 << n) - 1
    return FiniteCarrier(
        f"bool:{n}",
        range(1 << n),
        lambda u, v: u & v == u,
        lambda u, v: u & v,
        lambda u, v: u | v,
        0,
        full,
        fmt,
        parse,
    )


def grid(m: int, n: int) -> FiniteCarrier:
    """Product of two chains: pairs ordered componentwise."""
    if m < 2 or n < 2:
        raise PreconditionFailed("grid needs chains of length at least two")
    elems = [(i, j) for i in range(m) for j in range(n)]

    def parse(text: str):
        halves = text.split(",")
        if len(halves) != 2:
            raise ParseError(f"expected i,j got {text!r}", 0)
        i, j = _parse_index(halves[0], m), _parse_index(halves[1], n)
        return (i, j)

    return FiniteCarrier(
        f"grid:{m},{n}",
        elems,
        lambda u, v: u[0] <= v[0] and u[1] <= v[1],
        lambda u, v: (min(u[0], v[0]), min(u[1], v[1])),
        lambda u, v: (max(u[0], v[0]), max(u[1], v[1])),
        (0, 0),
        (m - 1, n - 1),
        lambda u: f"{u[0]},{u[1]}",
        parse,
    )


class IntervalCarrier(Carrier):
    """Finite unions of open rational intervals in an ambient: infinite."""

    def __init__(self, ambient: tuple):
        lo, hi = Fraction(ambient[0]), Fraction(ambient[1])
        self.ambient = (lo, hi)
        self.name = f"intervals:({lo},{hi})"

    def elements(self):
        return None

    def leq(self, u, v):
        return ilat.lattice_leq(u, v)

    def meet(self, u, v):
        return ilat.meet(u, v)

    def join(self, u, v):
        return ilat.join(u, v)

    @property
    def bot(self):
        return IntervalElement.zero(self.ambient)

    @property
    def top(self):
        return IntervalElement.one(self.ambient)

    def well_inside(self, u, v) -> bool:
        return ilat.well_inside(u, v) is not None

    def format_element(self, u):
        return str(u)

    def parse_element(self, text):
        return ilat.parse_element(text, self.ambient)


# ---------------------------------------------------------------------------
# Terms.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Dia:
    u: object


@dataclass(frozen=True)
class Box:
    u: object


@dataclass(frozen=True)
class TermMeet:
    left: object
    right: object


@dataclass(frozen=True)
class TermJoin:
    left: object
    right: object


class _Const:
    def __init__(self, label):
        self.label = label

    def __repr__(self):
        return self.label


TERM_ZERO = _Const("0")
TERM_ONE = _Const("1")


def format_term(t, L: Carrier) -> str:
    if t is TERM_ZERO or t is TERM_ONE:
        return repr(t)
    if isinstance(t, Dia):
        return f"dia({L.format_element(t.u)})"
    if isinstance(t, Box):
        return f"box({L.format_element(t.u)})"
    if isinstance(t, TermMeet):
        return f"({format_term(t.left, L)} & {format_term(t.right, L)})"
    if isinstance(t, TermJoin):
        return f"({format_term(t.left, L)} | {format_term(t.right, L)})"
    raise PreconditionFailed(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# Models.
# ---------------------------------------------------------------------------


def is_loc_model(L: Carrier, pos: frozenset) -> bool:
    elems = L.elements()
    if elems is None:
        raise PreconditionFailed("model checking needs a finite carrier")
    if L.bot in pos:
        return False
    for u in elems:
        if u in pos:
            for v in elems:
                if L.leq(u, v) and v not in pos:
                    return False
    for u in elems:
        for v in elems:
            if L.join(u, v) in pos and u not in pos and v not in pos:
                return False
            if L.well_inside(u, v) and v not in pos and u in pos:
                return False
    return True


def enumerate_models(L: Carrier) -> list[frozenset]:
    """All positivity models of a finite carrier, deterministically ordered."""
    elems = L.elements()
    if elems is None:
        raise PreconditionFailed("model enumeration needs a finite carrier")
    idx = {e: i for i, e in enumerate(elems)}
    models = []
    for bits in itertools.product((False, True), repeat=len(elems)):
        pos = frozenset(e for e, b in zip(elems, bits) if b)
        if is_loc_model(L, pos):
            models.append(pos)
    models.sort(key=lambda m: (len(m), sorted(idx[e] for e in m)))
    return models


@dataclass
class Point:
    """A point of the modal lattice: boolean values for the generators."""

    dia: Callable[[object], bool]
    box: Callable[[object], bool]

    def evaluate(self, t) -> bool:
        if t is TERM_ZERO:
            return False
        if t is TERM_ONE:
            return True
        if isinstance(t, Dia):
            return bool(self.dia(t.u))
        if isinstance(t, Box):
            return bool(self.box(t.u))
        if isinstance(t, TermMeet):
            return self.evaluate(t.left) and self.evaluate(t.right)
        if isinstance(t, TermJoin):
            return self.evaluate(t.left) or self.evaluate(t.right)
        raise PreconditionFailed(f"not a term: {t!r}")


def nonpositive_join(L: Carrier, pos: frozenset):
    n = L.bot
    for e in L.elements():
        if e not in pos:
            n = L.join(n, e)
    return n


def loc_to_point(pos: frozenset, L: Carrier) -> Point:
    """The point with dia(u) = positivity and box(u) = "u fills the space up
    to the non-positive part".  Raises if a modal relation fails, naming it."""
    n = nonpositive_join(L, pos)
    point = Point(
        dia=lambda u: u in pos,
        box=lambda u: L.join(u, n) == L.top,
    )
    violations = validate_point(point, L)
    if violations:
        raise PreconditionFailed(
            "positivity data is not a model; failing relations: "
            + ", ".join(_describe_violation(L, v) for v in violations)
        )
    return point


def _describe_violation(L: Carrier, violation) -> str:
    rel, args = violation
    pretty = " ".join(L.format_element(a) for a in args)
    return f"relation {rel} at {pretty}" if args else f"relation {rel}"


def validate_point(point: Point, L: Carrier) -> list:
    """All failures of the six relations, each as (relation number, args)."""
    elems = L.elements()
    if elems is None:
        raise PreconditionFailed("point validation needs a finite carrier")
    out = []
    for u in elems:
        for v in elems:
            if point.dia(L.join(u, v)) != (point.dia(u) or point.dia(v)):
                out.append((1, (u, v)))
            if point.box(L.meet(u, v)) != (point.box(u) and point.box(v)):
                out.append((2, (u, v)))
            if point.box(u) and point.dia(v) and not point.dia(L.meet(u, v)):
                out.append((3, (u, v)))
            if point.box(L.join(u, v)) and not (point.box(u) or point.dia(v)):
                out.append((4, (u, v)))
    if point.dia(L.bot):
        out.append((5, (L.bot,)))
    if not point.box(L.top):
        out.append((6, (L.top,)))
    return out


def point_to_loc(point: Point, L: Carrier) -> frozenset:
    """Read the positivity model back off a point satisfying the relations."""
    violations = validate_point(point, L)
    if violations:
        raise PreconditionFailed(
            "point violates the modal relations: "
            + ", ".join(_describe_violation(L, v) for v in violations)
        )
    pos = frozenset(u for u in L.elements() if point.dia(u))
    if not is_loc_model(L, pos):
        raise InvariantViolation("diamond values of a valid point must form a model")
    return pos


def model_point(L: Carrier, pos: frozenset) -> Point:
    """loc_to_point without the validation pass (for bulk evaluation)."""
    n = nonpositive_join(L, pos)
    return Point(dia=lambda u: u in pos, box=lambda u: L.join(u, n) == L.top)


# ---------------------------------------------------------------------------
# Tile normal form.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tile:
    """box(a) & dia(b_1) & ... & dia(b_k) with each b_i <= a."""

    box: object
    diamonds: tuple


@dataclass(frozen=True)
class TileNormalForm:
    tiles: tuple

    def as_term(self, L: Carrier):
        if not self.tiles:
            return TERM_ZERO
        parts = []
        for t in self.tiles:
            term = Box(t.box)
            for d in t.diamonds:
                term = TermMeet(term, Dia(d))
            parts.append(term)
        out = parts[0]
        for p in parts[1:]:
            out = TermJoin(out, p)
        return out


def _tile_key(L: Carrier, t: Tile):
    return (L.format_element(t.box), tuple(L.format_element(d) for d in t.diamonds))


def _make_tile(L: Carrier, box, diamonds) -> Optional[Tile]:
    """Trim diamonds below the box (relation 3 as an equality inside a
    tile), drop the tile when a diamond dies (relation 5), keep diamonds as
    a minimal antichain."""
    trimmed = []
    for d in diamonds:
        d = L.meet(d, box)
        if d == L.bot:
            return None
        trimmed.append(d)
    minimal = []
    for d in trimmed:
        if any(L.leq(e, d) and e != d for e in trimmed):
            continue
        if d not in minimal:
            minimal.append(d)
    minimal.sort(key=L.format_element)
    return Tile(box, tuple(minimal))


def _tile_leq(L: Carrier, t1: Tile, t2: Tile) -> bool:
    """Sound syntactic tile comparison: boxes compare and every diamond of
    the larger is dominated from below."""
    if not L.leq(t1.box, t2.box):
        return False
    return all(any(L.leq(d1, d2) for d1 in t1.diamonds) for d2 in t2.diamonds)


def normalize(t, L: Carrier) -> TileNormalForm:
    tiles = _normalize_tiles(t, L)
    # Merge pure diamonds (relation 1).
    pure = [tile for tile in tiles if tile.box == L.top and len(tile.diamonds) == 1]
    rest = [tile for tile in tiles if not (tile.box == L.top and len(tile.diamonds) == 1)]
    if len(pure) > 1:
        u = pure[0].diamonds[0]
        for tile in pure[1:]:
            u = L.join(u, tile.diamonds[0])
        merged = _make_tile(L, L.top, (u,))
        tiles = rest + ([merged] if merged else [])
    # Absorb dominated tiles; among syntactically equivalent pairs keep the
    # one with the smaller canonical key.
    tiles = sorted(set(tiles), key=lambda x: _tile_key(L, x))
    kept = []
    for t1 in tiles:
        dominated = False
        for t2 in tiles:
            if t1 == t2 or not _tile_leq(L, t1, t2):
                continue
            if not _tile_leq(L, t2, t1) or _tile_key(L, t2) < _tile_key(L, t1):
                dominated = True
                break
        if not dominated:
            kept.append(t1)
    return TileNormalForm(tuple(kept))


def _normalize_tiles(t, L: Carrier) -> list[Tile]:
    if t is TERM_ZERO:
        return []
    if t is TERM_ONE:
        return [Tile(L.top, ())]
    if isinstance(t, Dia):
        tile = _make_tile(L, L.top, (t.u,))
        return [tile] if tile else []
    if isinstance(t, Box):
        return [Tile(t.u, ())]
    if isinstance(t, TermJoin):
        return _normalize_tiles(t.left, L) + _normalize_tiles(t.right, L)
    if isinstance(t, TermMeet):
        left = _normalize_tiles(t.left, L)
        right = _normalize_tiles(t.right, L)
        out = []
        for t1 in left:
            for t2 in right:
                tile = _make_tile(
                    L, L.meet(t1.box, t2.box), t1.diamonds + t2.diamonds
                )
                if tile:
                    out.append(tile)
        return out
    raise PreconditionFailed(f"not a term: {t!r}")


def evaluate_nf(nf: TileNormalForm, point: Point) -> bool:
    for tile in nf.tiles:
        if point.box(tile.box) and all(point.dia(d) for d in tile.diamonds):
            return True
    return False


# ---------------------------------------------------------------------------
# Inequality decision.
# ---------------------------------------------------------------------------


def term_leq(s, t, L: Carrier) -> Optional[bool]:
    """s <= t in the modal lattice.

    Finite carriers: exact, by checking every model.  Infinite carriers:
    the sound normal-form comparison; True is trustworthy, None is Unknown.
    """
    if L.elements() is not None:
        for pos in enumerate_models(L):
            p = model_point(L, pos)
            if p.evaluate(s) and not p.evaluate(t):
                return False
        return True
    ns, nt = normalize(s, L), normalize(t, L)
    if all(any(_tile_leq(L, t1, t2) for t2 in nt.tiles) for t1 in ns.tiles):
        return True
    return None


# ---------------------------------------------------------------------------
# Parsing: dia(u), box(u), &, |, 0, 1, parentheses.
# ---------------------------------------------------------------------------


def parse_term(text: str, L: Carrier):
    parser = _TermParser(text, L)
    t = parser.parse_expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise ParseError(f"trailing input {text[parser.pos:]!r}", parser.pos)
    return t


class _TermParser:
    def __init__(self, text: str, L: Carrier):
        self.text = text
        self.L = L
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def parse_expr(self):
        t = self.parse_meet()
        while True:
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == "|":
                self.pos += 1
                t = TermJoin(t, self.parse_meet())
            else:
                return t

    def parse_meet(self):
        t = self.parse_factor()
        while True:
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == "&":
                self.pos += 1
                t = TermMeet(t, self.parse_factor())
            else:
                return t

    def parse_factor(self):
        self.skip_ws()
        if self.pos >= len(self.text):
            raise ParseError("unexpected end of term", self.pos)
        c = self.text[self.pos]
        if c == "0":
            self.pos += 1
            return TERM_ZERO
        if c == "1":
            self.pos += 1
            return TERM_ONE
        if c == "(":
            self.pos += 1
            t = self.parse_expr()
            self.skip_ws()
            if self.pos >= len(self.text) or self.text[self.pos] != ")":
                raise ParseError("expected ')'", self.pos)
            self.pos += 1
            return t
        for kw, ctor in (("dia", Dia), ("box", Box)):
            if self.text.startswith(kw, self.pos):
                self.pos += len(kw)
                self.skip_ws()
                if self.pos >= len(self.text) or self.text[self.pos] != "(":
                    raise ParseError(f"expected '(' after {kw}", self.pos)
                start = self.pos
                depth = 0
                while self.pos < len(self.text):
                    if self.text[self.pos] == "(":
                        depth += 1
                    elif self.text[self.pos] == ")":
                        depth -= 1
                        if depth == 0:
                            break
                    self.pos += 1
                if depth != 0:
                    raise ParseError("unbalanced parentheses in generator", start)
                inner = self.text[start + 1 : self.pos]
                self.pos += 1
                return ctor(self.L.parse_element(inner))
        raise ParseError(f"unexpected character {c!r}", self.pos)


def parse_carrier(name: str) -> Carrier:
    s = name.strip()
    if s.startswith("chain:"):
        return chain(int(s[6:]))
    if s.startswith("bool:"):
        return boolean(int(s[5:]))
    if s.startswith("grid:"):
        parts = s[5:].split(",")
        if len(parts) != 2:
            raise ParseError(f"grid needs two sizes, got {name!r}", 0)
        return grid(int(parts[0]), int(parts[1]))
    if s.startswith("intervals:"):
        body = s[len("intervals:"):].strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError(f"intervals carrier needs (a,b), got {name!r}", 0)
        halves = body[1:-1].split(",")
        if len(halves) != 2:
            raise ParseError("intervals carrier needs two endpoints", 0)
        return IntervalCarrier((Fraction(halves[0]), Fraction(halves[1])))
    raise ParseError(f"unknown carrier {name!r}", 0)
