"""Pure-Python propagation kernels.

Every kernel takes the flat arrays of a :class:`~acsudoku.csp.CspInstance`
and mutates ``dom`` in place, returning
``(consistent, revise_calls, values_removed, queue_pushes)``.
``_kernels.pyx`` implements the same functions with the same counters.
"""
from collections import defaultdict, deque

STRIDE = 64


def _revise(dom, x, y, rel, off):
    """Returns the number of values removed from ``x``."""
    dx = dom[x]
    dy = dom[y]
    keep = dx
    m = dx
    while m:
        low = m & -m
        if not rel[off + low.bit_length() - 1] & dy:
            keep ^= low
        m ^= low
    if keep != dx:
        dom[x] = keep
        return (dx ^ keep).bit_count()
    return 0


def ac1(dom, n, arc_from, arc_to, arc_rel, rel, pair_arc, nbr_ptr, nbr_idx):
    calls = removed = 0
    n_arcs = len(arc_from)
    while True:
        changed = False
        for arc in range(n_arcs):
            x = arc_from[arc]
            y = arc_to[arc]
            if x > y:
                continue
            back = pair_arc[y * n + x]
            r1 = _revise(dom, x, y, rel, arc_rel[arc] * STRIDE)
            r2 = _revise(dom, y, x, rel, arc_rel[back] * STRIDE)
            calls += 2
            if r1 or r2:
                changed = True
                removed += r1 + r2
                if not dom[x] or not dom[y]:
                    return False, calls, removed, 0
        if not changed:
            return True, calls, removed, 0


def ac2(dom, n, arc_from, arc_to, arc_rel, rel, pair_arc, nbr_ptr, nbr_idx, all_pairs=False):
    """Node-at-a-time AC-2.

    ``all_pairs=False``: only constrained pairs are queued, and a revised
    ``x_i`` re-queues every constrained ``(p, x_i)`` with ``p <= i``, ``p``
    not the arc partner.  ``all_pairs=True``: the loop structure exactly as
    written in the published pseudocode, over every index pair with
    ``j < i``; unconstrained pairs are revised with vacuous support.
    """
    calls = removed = pushes = 0
    for i in range(n):
        q1 = deque()
        q2 = deque()
        for j in range(i):
            if all_pairs or pair_arc[i * n + j] >= 0:
                q1.append((i, j))
                q2.append((j, i))
                pushes += 2
        queued = set(q2) if not all_pairs else None
        while q1:
            while q1:
                xi, xj = q1.popleft()
                calls += 1
                arc = pair_arc[xi * n + xj]
                if arc < 0:
                    continue
                r = _revise(dom, xi, xj, rel, arc_rel[arc] * STRIDE)
                if not r:
                    continue
                removed += r
                if not dom[xi]:
                    return False, calls, removed, pushes
                if all_pairs:
                    for p in range(i):
                        if p != xj:
                            q2.append((p, xi))
                            pushes += 1
                else:
                    for p in range(i + 1):
                        if p != xj and p != xi and pair_arc[p * n + xi] >= 0:
                            item = (p, xi)
                            if item not in queued:
                                queued.add(item)
                                q2.append(item)
                                pushes += 1
            q1 = q2
            q2 = deque()
            if queued is not None:
                queued = set()
    return True, calls, removed, pushes


def ac3(dom, n, arc_from, arc_to, arc_rel, rel, pair_arc, nbr_ptr, nbr_idx):
    n_arcs = len(arc_from)
    queue = deque(range(n_arcs))
    queued = bytearray(b"\x01") * n_arcs
    calls = removed = 0
    pushes = n_arcs
    while queue:
        arc = queue.popleft()
        queued[arc] = 0
        x = arc_from[arc]
        y = arc_to[arc]
        calls += 1
        r = _revise(dom, x, y, rel, arc_rel[arc] * STRIDE)
        if not r:
            continue
        removed += r
        if not dom[x]:
            return False, calls, removed, pushes
        for t in range(nbr_ptr[x], nbr_ptr[x + 1]):
            k = nbr_idx[t]
            if k == y:
                continue
            back = pair_arc[k * n + x]
            if not queued[back]:
                queued[back] = 1
                queue.append(back)
                pushes += 1
    return True, calls, removed, pushes


def ac4_initialize(dom, n, arc_from, arc_to, arc_rel, rel):
    """Build the support lists and counters, pruning unsupported values as it goes.

    Returns ``(consistent, supports, counter, queue, removed)``.
    """
    supports = defaultdict(list)
    counter = {}
    queue = deque()
    removed = 0
    for arc in range(len(arc_from)):
        xi = arc_from[arc]
        xj = arc_to[arc]
        off = arc_rel[arc] * STRIDE
        m = dom[xi]
        while m:
            low = m & -m
            m ^= low
            ai = low.bit_length() - 1
            compat = rel[off + ai] & dom[xj]
            c = 0
            while compat:
                lb = compat & -compat
                compat ^= lb
                supports[(xj, lb.bit_length() - 1)].append((xi, ai))
                c += 1
            counter[(xi, ai, xj)] = c
            if c == 0:
                queue.append((xi, ai))
                dom[xi] &= ~low
                removed += 1
                if not dom[xi]:
                    return False, supports, counter, queue, removed
    return True, supports, counter, queue, removed


def ac4(dom, n, arc_from, arc_to, arc_rel, rel, pair_arc, nbr_ptr, nbr_idx):
    ok, supports, counter, queue, removed = ac4_initialize(dom, n, arc_from, arc_to, arc_rel, rel)
    pushes = removed
    if not ok:
        return False, 0, removed, pushes
    while queue:
        xj, aj = queue.popleft()
        for xi, ai in supports.get((xj, aj), ()):
            bit = 1 << ai
            if dom[xi] & bit:
                key = (xi, ai, xj)
                counter[key] -= 1
                if counter[key] == 0:
                    queue.append((xi, ai))
                    pushes += 1
                    dom[xi] &= ~bit
                    removed += 1
                    if not dom[xi]:
                        return False, 0, removed, pushes
    return True, 0, removed, pushes
