"""Pure-Python fixpoint kernels.

Same contract as the compiled ``_ckernels`` module.  ``succ`` is a flat
row-major int array (state position x profile index -> state position),
``groups`` a flat int array of ``n_groups`` rows of ``group_len`` profile
indices.  State sets are byte masks.
"""


def pre(succ, n_prof, groups, group_len, q):
    n_states = len(q)
    n_groups = len(groups) // group_len
    out = bytearray(n_states)
    for s in range(n_states):
        base = s * n_prof
        for g in range(n_groups):
            row = g * group_len
            for k in range(group_len):
                if not q[succ[base + groups[row + k]]]:
                    break
            else:
                out[s] = 1
                break
    return out


def until(succ, n_prof, groups, group_len, goal, hold):
    """Least fixpoint of X = goal | (hold & pre(X)); returns (mask, changes)."""
    n_states = len(goal)
    x = bytearray(goal)
    changes = 1 if any(x) else 0
    while True:
        p = pre(succ, n_prof, groups, group_len, x)
        y = bytearray(1 if (goal[i] or (hold[i] and p[i])) else 0 for i in range(n_states))
        if y == x:
            return x, changes
        x = y
        changes += 1
        if changes > n_states + 1:
            raise RuntimeError("until fixpoint failed to stabilise")


def release(succ, n_prof, groups, group_len, hold, rel):
    """Greatest fixpoint of X = hold & (rel | pre(X)); returns (mask, changes)."""
    n_states = len(hold)
    x = bytearray(hold)
    changes = 0 if all(x) else 1
    while True:
        p = pre(succ, n_prof, groups, group_len, x)
        y = bytearray(1 if (hold[i] and (rel[i] or p[i])) else 0 for i in range(n_states))
        if y == x:
            return x, changes
        x = y
        changes += 1
        if changes > n_states + 1:
            raise RuntimeError("release fixpoint failed to stabilise")
