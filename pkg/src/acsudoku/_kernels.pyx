# cython: language_level=3
"""Compiled propagation kernels; same signatures and counters as ``_pykernels``."""
from libc.stdlib cimport malloc, calloc, free
from libc.stdint cimport uint64_t, int32_t

cdef extern from *:
    """
    static inline int acs_ctz(unsigned long long m) { return __builtin_ctzll(m); }
    static inline int acs_popcount(unsigned long long m) { return __builtin_popcountll(m); }
    """
    int acs_ctz(unsigned long long m) nogil
    int acs_popcount(unsigned long long m) nogil

cdef enum:
    STRIDE = 64


cdef inline int _revise(uint64_t[::1] dom, int x, int y, const uint64_t[::1] rel, Py_ssize_t off) noexcept nogil:
    cdef uint64_t dx = dom[x]
    cdef uint64_t dy = dom[y]
    cdef uint64_t keep = dx
    cdef uint64_t m = dx
    cdef uint64_t low
    while m:
        low = m & (~m + 1)
        if not (rel[off + acs_ctz(m)] & dy):
            keep ^= low
        m ^= low
    if keep != dx:
        dom[x] = keep
        return acs_popcount(dx ^ keep)
    return 0


def ac1(uint64_t[::1] dom, int n, const int32_t[::1] arc_from, const int32_t[::1] arc_to,
        const int32_t[::1] arc_rel, const uint64_t[::1] rel, const int32_t[::1] pair_arc,
        const int32_t[::1] nbr_ptr, const int32_t[::1] nbr_idx):
    cdef Py_ssize_t n_arcs = arc_from.shape[0]
    cdef Py_ssize_t arc
    cdef int x, y, back, r1, r2
    cdef long long calls = 0, removed = 0
    cdef bint changed
    with nogil:
        while True:
            changed = False
            for arc in range(n_arcs):
                x = arc_from[arc]
                y = arc_to[arc]
                if x > y:
                    continue
                back = pair_arc[y * n + x]
                r1 = _revise(dom, x, y, rel, <Py_ssize_t>arc_rel[arc] * STRIDE)
                r2 = _revise(dom, y, x, rel, <Py_ssize_t>arc_rel[back] * STRIDE)
                calls += 2
                if r1 or r2:
                    changed = True
                    removed += r1 + r2
                    if dom[x] == 0 or dom[y] == 0:
                        with gil:
                            return False, calls, removed, 0
            if not changed:
                break
    return True, calls, removed, 0


def ac2(uint64_t[::1] dom, int n, const int32_t[::1] arc_from, const int32_t[::1] arc_to,
        const int32_t[::1] arc_rel, const uint64_t[::1] rel, const int32_t[::1] pair_arc,
        const int32_t[::1] nbr_ptr, const int32_t[::1] nbr_idx, bint all_pairs=False):
    # Queues hold (from, to) pairs flattened as from * n + to.  Per-wave
    # pushes are bounded by the initial fill plus one batch of <= n per
    # successful revise, so grow on demand.
    cdef Py_ssize_t cap = 4 * n * n + 16
    cdef int32_t* q1 = <int32_t*> malloc(cap * sizeof(int32_t))
    cdef int32_t* q2 = <int32_t*> malloc(cap * sizeof(int32_t))
    cdef char* queued = <char*> calloc(n * n, 1)
    cdef int32_t* tmp
    cdef Py_ssize_t len1, len2, head, k
    cdef int i, j, p, xi, xj, arc, r, item
    cdef long long calls = 0, removed = 0, pushes = 0
    cdef bint ok = True
    if q1 == NULL or q2 == NULL or queued == NULL:
        free(q1); free(q2); free(queued)
        raise MemoryError()
    try:
        for i in range(n):
            len1 = 0
            len2 = 0
            for j in range(i):
                if all_pairs or pair_arc[i * n + j] >= 0:
                    q1[len1] = i * n + j
                    len1 += 1
                    q2[len2] = j * n + i
                    len2 += 1
                    if not all_pairs:
                        queued[j * n + i] = 1
                    pushes += 2
            while len1:
                head = 0
                while head < len1:
                    item = q1[head]
                    head += 1
                    xi = item // n
                    xj = item % n
                    calls += 1
                    arc = pair_arc[item]
                    if arc < 0:
                        continue
                    r = _revise(dom, xi, xj, rel, <Py_ssize_t>arc_rel[arc] * STRIDE)
                    if not r:
                        continue
                    removed += r
                    if dom[xi] == 0:
                        ok = False
                        break
                    if len2 + n + 1 > cap:
                        cap *= 2
                        tmp = <int32_t*> malloc(cap * sizeof(int32_t))
                        if tmp == NULL:
                            raise MemoryError()
                        for k in range(len1):
                            tmp[k] = q1[k]
                        free(q1)
                        q1 = tmp
                        tmp = <int32_t*> malloc(cap * sizeof(int32_t))
                        if tmp == NULL:
                            raise MemoryError()
                        for k in range(len2):
                            tmp[k] = q2[k]
                        free(q2)
                        q2 = tmp
                    if all_pairs:
                        for p in range(i):
                            if p != xj:
                                q2[len2] = p * n + xi
                                len2 += 1
                                pushes += 1
                    else:
                        for p in range(i + 1):
                            if p != xj and p != xi and pair_arc[p * n + xi] >= 0 and not queued[p * n + xi]:
                                queued[p * n + xi] = 1
                                q2[len2] = p * n + xi
                                len2 += 1
                                pushes += 1
                if not ok:
                    break
                tmp = q1
                q1 = q2
                q2 = tmp
                len1 = len2
                len2 = 0
                if not all_pairs:
                    for k in range(len1):
                        queued[q1[k]] = 0
            if not ok:
                break
    finally:
        free(q1)
        free(q2)
        free(queued)
    return ok, calls, removed, pushes


def ac3(uint64_t[::1] dom, int n, const int32_t[::1] arc_from, const int32_t[::1] arc_to,
        const int32_t[::1] arc_rel, const uint64_t[::1] rel, const int32_t[::1] pair_arc,
        const int32_t[::1] nbr_ptr, const int32_t[::1] nbr_idx):
    cdef Py_ssize_t n_arcs = arc_from.shape[0]
    # ring buffer; at most n_arcs entries are ever pending
    cdef Py_ssize_t cap = n_arcs + 1
    cdef int32_t* queue = <int32_t*> malloc(cap * sizeof(int32_t))
    cdef char* queued = <char*> malloc(cap)
    cdef Py_ssize_t head = 0, tail = 0, t
    cdef int arc, x, y, k, back, r
    cdef long long calls = 0, removed = 0, pushes = n_arcs
    cdef bint ok = True
    if queue == NULL or queued == NULL:
        free(queue); free(queued)
        raise MemoryError()
    with nogil:
        for t in range(n_arcs):
            queue[t] = <int32_t>t
            queued[t] = 1
        tail = n_arcs
        while head != tail:
            arc = queue[head]
            head += 1
            if head == cap:
                head = 0
            queued[arc] = 0
            x = arc_from[arc]
            y = arc_to[arc]
            calls += 1
            r = _revise(dom, x, y, rel, <Py_ssize_t>arc_rel[arc] * STRIDE)
            if not r:
                continue
            removed += r
            if dom[x] == 0:
                ok = False
                break
            for t in range(nbr_ptr[x], nbr_ptr[x + 1]):
                k = nbr_idx[t]
                if k == y:
                    continue
                back = pair_arc[k * n + x]
                if not queued[back]:
                    queued[back] = 1
                    queue[tail] = back
                    tail += 1
                    if tail == cap:
                        tail = 0
                    pushes += 1
    free(queue)
    free(queued)
    return ok, calls, removed, pushes


def ac4(uint64_t[::1] dom, int n, const int32_t[::1] arc_from, const int32_t[::1] arc_to,
        const int32_t[::1] arc_rel, const uint64_t[::1] rel, const int32_t[::1] pair_arc,
        const int32_t[::1] nbr_ptr, const int32_t[::1] nbr_idx):
    # supports[(xj, aj)] is stored per incoming arc (xi, xj) as a mask of ai,
    # visited in ascending xi then ascending ai: the append order of a list.
    cdef Py_ssize_t n_arcs = arc_from.shape[0]
    cdef int32_t* counter = <int32_t*> calloc(n_arcs * STRIDE, sizeof(int32_t))
    cdef uint64_t* supmask = <uint64_t*> calloc(n_arcs * STRIDE, sizeof(uint64_t))
    cdef int32_t* queue = <int32_t*> malloc((<Py_ssize_t>n * STRIDE + 1) * sizeof(int32_t))
    cdef Py_ssize_t head = 0, tail = 0, arc, back, t
    cdef Py_ssize_t off
    cdef int xi, xj, ai, aj, c
    cdef uint64_t m, compat, low, lb, sm
    cdef long long removed = 0
    cdef bint ok = True
    if counter == NULL or supmask == NULL or queue == NULL:
        free(counter); free(supmask); free(queue)
        raise MemoryError()
    with nogil:
        for arc in range(n_arcs):
            xi = arc_from[arc]
            xj = arc_to[arc]
            off = <Py_ssize_t>arc_rel[arc] * STRIDE
            m = dom[xi]
            while m:
                low = m & (~m + 1)
                ai = acs_ctz(m)
                m ^= low
                compat = rel[off + ai] & dom[xj]
                c = 0
                while compat:
                    lb = compat & (~compat + 1)
                    supmask[arc * STRIDE + acs_ctz(compat)] |= low
                    compat ^= lb
                    c += 1
                counter[arc * STRIDE + ai] = c
                if c == 0:
                    queue[tail] = xi * STRIDE + ai
                    tail += 1
                    dom[xi] &= ~low
                    removed += 1
                    if dom[xi] == 0:
                        ok = False
                        break
            if not ok:
                break
        while ok and head < tail:
            xj = queue[head] // STRIDE
            aj = queue[head] % STRIDE
            head += 1
            for t in range(nbr_ptr[xj], nbr_ptr[xj + 1]):
                xi = nbr_idx[t]
                arc = pair_arc[xi * n + xj]
                sm = supmask[arc * STRIDE + aj]
                while sm:
                    low = sm & (~sm + 1)
                    ai = acs_ctz(sm)
                    sm ^= low
                    if dom[xi] & low:
                        counter[arc * STRIDE + ai] -= 1
                        if counter[arc * STRIDE + ai] == 0:
                            queue[tail] = xi * STRIDE + ai
                            tail += 1
                            dom[xi] &= ~low
                            removed += 1
                            if dom[xi] == 0:
                                ok = False
                                break
                if not ok:
                    break
    free(counter)
    free(supmask)
    free(queue)
    return ok, 0, removed, removed
