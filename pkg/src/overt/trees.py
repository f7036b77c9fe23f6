"""Tree-presented spaces: spread laws and bounded-horizon positivity.

Nodes are finite tuples of naturals (sequence spaces) or of bounded digits
(finitely branching spaces).  A spread law is a decidable admissibility
predicate under which every admitted node has an admitted immediate
successor; that is exactly a decidable positivity predicate on the tree.

Removing an open set of nodes (each removal deletes the whole subtree)
presents a closed subspace; positivity of a node in it is a search for a
surviving descendant chain.  With finite branching the search is complete
to any horizon; with unbounded branching only finitely many successors can
be inspected, so a negative sweep is honestly three-valued.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from overt.errors import PreconditionFailed

Node = tuple[int, ...]


class PrefixTooShort(PreconditionFailed):
    pass


def format_node(node: Node) -> str:
    if not node:
        return "()"
    return ",".join(str(k) for k in node)


def parse_node(text: str) -> Node:
    s = text.strip()
    if s in ("()", ""):
        return ()
    return tuple(int(p) for p in s.split(","))


# ---------------------------------------------------------------------------
# Spread laws.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpreadLaw:
    """Decidable admissibility; arity None means unbounded branching."""

    name: str
    admits: Callable[[Node], bool]
    arity: Optional[int] = None


def full_binary_law() -> SpreadLaw:
    return SpreadLaw("full2", lambda node: all(d in (0, 1) for d in node), arity=2)


def middle_thirds_law() -> SpreadLaw:
    """Ternary digit coding with the middle digit forbidden."""
    return SpreadLaw(
        "cantor3", lambda node: all(d in (0, 2) for d in node), arity=3
    )


@dataclass
class SpreadViolation:
    node: Node
    reason: str


@dataclass
class SpreadReport:
    law: str
    depth: int
    branch_budget: int
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def check_spread_mon(law: SpreadLaw, depth: int, branch_budget: int) -> SpreadReport:
    """Verify that every admitted node up to the depth has an admitted
    successor within the branch budget.

    For a declared arity not exceeding the budget the successor sweep is
    exhaustive and the check is complete; otherwise a missing successor
    within the budget is still reported (the law's obligation is witnessed
    boundedly).
    """
    budget = branch_budget if law.arity is None else min(branch_budget, law.arity)
    if budget <= 0:
        raise PreconditionFailed("branch budget must be positive")
    report = SpreadReport(law.name, depth, branch_budget, 0, [])
    frontier = [()]
    if not law.admits(()):
        report.violations.append(SpreadViolation((), "root not admitted"))
        return report
    for _ in range(depth + 1):
        nxt = []
        for node in frontier:
            report.checked += 1
            children = [node + (d,) for d in range(budget)]
            admitted = [c for c in children if law.admits(c)]
            if not admitted:
                report.violations.append(
                    SpreadViolation(node, "no admitted successor within budget")
                )
            nxt.extend(admitted)
        frontier = nxt
    return report


# ---------------------------------------------------------------------------
# Closed subspaces from removed opens.
# ---------------------------------------------------------------------------


class Positivity(enum.Enum):
    POSITIVE = "positive"
    NOT_POSITIVE = "not-positive"
    UNKNOWN_BEYOND_HORIZON = "unknown"


@dataclass(frozen=True)
class RemovalSet:
    """Decidable set of removed nodes; removing a node removes its subtree.

    ``arity`` bounds the branching of the ambient tree (None for sequence
    spaces); ``depth_bound`` is the deepest removal when known.
    """

    name: str
    removed_at: Callable[[Node], bool]
    arity: Optional[int] = None
    depth_bound: Optional[int] = None

    def removed(self, node: Node) -> bool:
        return any(self.removed_at(node[:k]) for k in range(len(node) + 1))


def removal_from_nodes(nodes: Sequence[Node], arity: Optional[int] = None) -> RemovalSet:
    listed = frozenset(tuple(n) for n in nodes)
    bound = max((len(n) for n in listed), default=0)
    return RemovalSet(
        "nodes", lambda node: node in listed, arity=arity, depth_bound=bound
    )


def zero_pair_removals(alpha: Sequence[int]) -> RemovalSet:
    """Removed nodes (0, n) for every n with alpha(n) = 0; pairs beyond the
    listed prefix of alpha are kept (treated as alpha(n) = 1)."""
    bits = tuple(int(b) for b in alpha)

    def removed_at(node: Node) -> bool:
        return (
            len(node) == 2
            and node[0] == 0
            and node[1] < len(bits)
            and bits[node[1]] == 0
        )

    return RemovalSet("alpha-pair", removed_at, arity=None, depth_bound=2)


def zero_run_removals(alpha: Sequence[int]) -> RemovalSet:
    """Removed nodes: runs of n zeros for every n >= 1 with alpha(n) = 0."""
    bits = tuple(int(b) for b in alpha)

    def removed_at(node: Node) -> bool:
        n = len(node)
        return (
            1 <= n < len(bits)
            and bits[n] == 0
            and all(d == 0 for d in node)
        )

    return RemovalSet("alpha-run", removed_at, arity=None, depth_bound=None)


def parse_removal_spec(text: str) -> RemovalSet:
    """Removal sets from text: ``nodes:0,0;1`` lists removed nodes,
    ``alpha:<bits>`` the pair-indexed generator, ``alpharun:<bits>`` the
    zero-run generator (the two documented readings of the same family)."""
    s = text.strip()
    if s.startswith("nodes:"):
        body = s[len("nodes:"):]
        nodes = [parse_node(c) for c in body.split(";") if c.strip()]
        return removal_from_nodes(nodes)
    if s.startswith("alpharun:"):
        return zero_run_removals([int(b) for b in s[len("alpharun:"):]])
    if s.startswith("alpha:"):
        return zero_pair_removals([int(b) for b in s[len("alpha:"):]])
    raise PreconditionFailed(f"unknown removal spec {text!r}")


def closed_from_open_pos(
    removed: RemovalSet,
    node: Node,
    horizon: int,
    branch_budget: int = 2,
) -> Positivity:
    """Positivity of a node in the closed subspace left after removal.

    POSITIVE: some descendant chain of the horizon's length survives.
    NOT_POSITIVE: every chain inside the explored branching dies.
    UNKNOWN_BEYOND_HORIZON: the negative sweep was truncated by the branch
    budget (unbounded branching only); definite answers never flip as the
    horizon grows for the builtin removal generators.
    """
    node = tuple(node)
    if removed.removed(node):
        return Positivity.NOT_POSITIVE
    arity = removed.arity
    width = arity if arity is not None else branch_budget
    if width <= 0:
        raise PreconditionFailed("branch budget must be positive")
    truncated = False

    memo: dict[tuple[Node, int], bool] = {}

    def survives(n: Node, steps: int) -> bool:
        nonlocal truncated
        if steps == 0:
            return True
        key = (n, steps)
        if key in memo:
            return memo[key]
        ok = False
        for d in range(width):
            child = n + (d,)
            if not removed.removed_at(child):
                if survives(child, steps - 1):
                    ok = True
                    break
        if not ok and arity is None:
            truncated = True
        memo[key] = ok
        return ok

    if survives(node, horizon):
        return Positivity.POSITIVE
    if truncated:
        return Positivity.UNKNOWN_BEYOND_HORIZON
    return Positivity.NOT_POSITIVE


# ---------------------------------------------------------------------------
# The sequence-space metric at dyadic scales.
# ---------------------------------------------------------------------------


def baire_ball(prefix_a: Sequence[int], prefix_b: Sequence[int], n: int) -> bool:
    """d(a, b) < 2**-n: agreement on all indices up to n."""
    a, b = tuple(prefix_a), tuple(prefix_b)
    if len(a) <= n or len(b) <= n:
        raise PrefixTooShort(f"prefixes must be longer than {n}")
    return a[: n + 1] == b[: n + 1]
