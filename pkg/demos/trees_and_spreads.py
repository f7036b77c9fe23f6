"""Tree-presented spaces: spread laws and pruned-tree positivity.

A spread law admits nodes so that every admitted node has an admitted
successor; on finitely branching trees the check is complete.  Removing an
open set of nodes leaves a closed subspace whose positivity is decided by
searching for surviving descendant chains: complete for binary branching,
honestly three-valued when branching is unbounded.
"""

from overt.trees import (
    Positivity,
    check_spread_mon,
    closed_from_open_pos,
    full_binary_law,
    middle_thirds_law,
    parse_removal_spec,
    removal_from_nodes,
)

# Spread laws on the full binary tree and the ternary digit coding with the
# middle digit forbidden.
for law in (full_binary_law(), middle_thirds_law()):
    report = check_spread_mon(law, depth=6, branch_budget=3)
    print(f"law {law.name}: ok={report.ok}, admitted nodes checked: {report.checked}")

# Prune the binary tree: remove the whole subtree under (1,).  The root
# stays positive through the 0-branch; anything under (1,) is dead.
rem = removal_from_nodes([(1,)], arity=2)
print("root:", closed_from_open_pos(rem, (), 6))
print("(1,0,1):", closed_from_open_pos(rem, (1, 0, 1), 6))

# With binary branching and finitely many removals every answer is
# definite - positivity on such presentations is decidable.
rem = removal_from_nodes([(0, 0), (0, 1), (1, 1)], arity=2)
for node in [(), (0,), (1,), (1, 0)]:
    print(node, "->", closed_from_open_pos(rem, node, 8).value)

# Unbounded branching is different: a removal family indexed by an
# undecided bit stream can only be explored within a branch budget.
rem = parse_removal_spec("alpha:0010")  # removes the pairs (0,0), (0,1), (0,3)
for budget in (2, 3):
    got = closed_from_open_pos(rem, (0,), 3, branch_budget=budget)
    print(f"(0,) with budget {budget}: {got.value}")
assert closed_from_open_pos(rem, (0,), 3, branch_budget=2) is Positivity.UNKNOWN_BEYOND_HORIZON
assert closed_from_open_pos(rem, (0,), 3, branch_budget=3) is Positivity.POSITIVE
