# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fixpoint kernels; see ``_pykernels`` for the contract."""


cdef void _pre(const int[::1] succ, int n_prof, const int[::1] groups, int group_len,
               const unsigned char[::1] q, unsigned char[::1] out) noexcept nogil:
    cdef Py_ssize_t n_states = q.shape[0]
    cdef Py_ssize_t n_groups = groups.shape[0] // group_len
    cdef Py_ssize_t s, g, k, base, row
    cdef bint ok
    for s in range(n_states):
        out[s] = 0
        base = s * n_prof
        for g in range(n_groups):
            row = g * group_len
            ok = True
            for k in range(group_len):
                if not q[succ[base + groups[row + k]]]:
                    ok = False
                    break
            if ok:
                out[s] = 1
                break


def pre(const int[::1] succ, int n_prof, const int[::1] groups, int group_len,
        const unsigned char[::1] q):
    out = bytearray(q.shape[0])
    cdef unsigned char[::1] view = out
    _pre(succ, n_prof, groups, group_len, q, view)
    return out


def until(const int[::1] succ, int n_prof, const int[::1] groups, int group_len,
          const unsigned char[::1] goal, const unsigned char[::1] hold):
    cdef Py_ssize_t n = goal.shape[0]
    cdef Py_ssize_t i
    x_obj = bytearray(goal)
    p_obj = bytearray(n)
    cdef unsigned char[::1] x = x_obj
    cdef unsigned char[::1] p = p_obj
    cdef int changes = 0
    cdef bint changed
    cdef unsigned char v
    for i in range(n):
        if x[i]:
            changes = 1
            break
    while True:
        _pre(succ, n_prof, groups, group_len, x, p)
        changed = False
        for i in range(n):
            v = 1 if (goal[i] or (hold[i] and p[i])) else 0
            if v != x[i]:
                changed = True
            x[i] = v
        if not changed:
            return x_obj, changes
        changes += 1
        if changes > n + 1:
            raise RuntimeError("until fixpoint failed to stabilise")


def release(const int[::1] succ, int n_prof, const int[::1] groups, int group_len,
            const unsigned char[::1] hold, const unsigned char[::1] rel):
    cdef Py_ssize_t n = hold.shape[0]
    cdef Py_ssize_t i
    x_obj = bytearray(hold)
    p_obj = bytearray(n)
    cdef unsigned char[::1] x = x_obj
    cdef unsigned char[::1] p = p_obj
    cdef int changes = 0
    cdef bint changed
    cdef unsigned char v
    for i in range(n):
        if not x[i]:
            changes = 1
            break
    while True:
        _pre(succ, n_prof, groups, group_len, x, p)
        changed = False
        for i in range(n):
            v = 1 if (hold[i] and (rel[i] or p[i])) else 0
            if v != x[i]:
                changed = True
            x[i] = v
        if not changed:
            return x_obj, changes
        changes += 1
        if changes > n + 1:
            raise RuntimeError("release fixpoint failed to stabilise")
