"""Binary CSP representation shared by every arc-consistency algorithm.

Domains are stored as bitmasks (bit ``v`` set means value ``v`` is still a
candidate) in an ``array('Q')`` so the same buffer can be handed to the
compiled kernels without copying.  Constraints are arc-indexed relations:
for arc ``(x, y)`` the relation row for value ``a`` is the mask of values
``b`` in ``y`` that are compatible with ``a`` in ``x``.
"""
from __future__ import annotations

from array import array
from typing import Callable, Iterable, Iterator, Mapping

MAX_VALUE = 63
STRIDE = 64  # rows per relation in the flat relation table

Arc = tuple[int, int]
Predicate = Callable[[int, int], bool]


def mask_of(values: Iterable[int]) -> int:
    m = 0
    for v in values:
        if not 0 <= v <= MAX_VALUE:
            raise ValueError(f"domain value {v} outside 0..{MAX_VALUE}")
        m |= 1 << v
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the values in ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def not_equal(a: int, b: int) -> bool:
    return a != b


class DomainStore:
    """Per-variable candidate sets with a LIFO snapshot stack."""

    def __init__(self, masks: Iterable[int]):
        self.masks = array("Q", masks)
        self._stack: list[array] = []

    def __len__(self) -> int:
        return len(self.masks)

    def values(self, v: int) -> list[int]:
        return list(iter_bits(self.masks[v]))

    def size(self, v: int) -> int:
        return self.masks[v].bit_count()

    def __contains__(self, item: tuple[int, int]) -> bool:
        v, a = item
        return bool(self.masks[v] >> a & 1)

    def remove(self, v: int, a: int) -> bool:
        m = self.masks[v]
        if m >> a & 1:
            self.masks[v] = m & ~(1 << a)
            return True
        return False

    def assign(self, v: int, a: int) -> None:
        """Restrict ``v`` to the singleton ``{a}``."""
        self.masks[v] = 1 << a

    def is_empty(self, v: int) -> bool:
        return self.masks[v] == 0

    def any_empty(self) -> bool:
        return 0 in self.masks

    def as_sets(self) -> list[set[int]]:
        return [set(iter_bits(m)) for m in self.masks]

    def state(self) -> tuple[int, ...]:
        """Hashable copy of all masks, for bit-exact comparisons."""
        return tuple(self.masks)

    @property
    def depth(self) -> int:
        return len(self._stack)

    def snapshot(self) -> int:
        """Push the current domains; the returned token is the stack depth before the push."""
        token = len(self._stack)
        self._stack.append(array("Q", self.masks))
        return token

    def restore(self, token: int) -> None:
        """Reinstate the domains captured by ``token`` and drop it and every later snapshot."""
        if not 0 <= token < len(self._stack):
            raise ValueError(f"no snapshot at depth {token} (stack depth {len(self._stack)})")
        self.masks[:] = self._stack[token]
        del self._stack[token:]

    def discard(self, token: int) -> None:
        """Drop snapshot ``token`` and everything above it without restoring."""
        del self._stack[token:]


def _relation_rows(pred: Predicate, universe: int) -> tuple[list[int], list[int]]:
    fwd = [0] * STRIDE
    bwd = [0] * STRIDE
    for a in iter_bits(universe):
        for b in iter_bits(universe):
            if pred(a, b):
                fwd[a] |= 1 << b
                bwd[b] |= 1 << a
    return fwd, bwd


class CspInstance:
    """A binary CSP over small integer values.

    The flat arrays (``arc_from``, ``arc_to``, ``arc_rel``, ``relations``,
    ``pair_arc``, ``nbr_ptr``, ``nbr_idx``) are the representation the
    propagation kernels consume; everything else is a convenience view.
    """

    def __init__(self, domains: Iterable[Iterable[int]], constraints: Mapping[Arc, Predicate]):
        masks = [mask_of(d) for d in domains]
        n = len(masks)
        self.n = n
        self.domains = DomainStore(masks)

        universe = 0
        for m in masks:
            universe |= m
        self.universe = universe

        relations: dict[tuple[int, ...], int] = {}
        table: list[int] = []
        arc_rel: dict[Arc, int] = {}

        def intern(rows: tuple[int, ...]) -> int:
            rid = relations.get(rows)
            if rid is None:
                rid = len(relations)
                relations[rows] = rid
                table.extend(rows)
            return rid

        row_cache: dict[Predicate, tuple[list[int], list[int]]] = {}
        for (x, y), pred in constraints.items():
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"constraint ({x}, {y}) references an unknown variable")
            if x == y:
                raise ValueError(f"constraint on ({x}, {x}) is not binary")
            rows = row_cache.get(pred)
            if rows is None:
                rows = row_cache[pred] = _relation_rows(pred, universe)
            fwd, bwd = list(rows[0]), list(rows[1])
            if (x, y) in arc_rel or (y, x) in arc_rel:
                # several constraints on one pair: conjunction
                prev_f = table[arc_rel[(x, y)] * STRIDE:(arc_rel[(x, y)] + 1) * STRIDE]
                fwd = [p & q for p, q in zip(prev_f, fwd)]
                bwd = [0] * STRIDE
                for a in range(STRIDE):
                    for b in iter_bits(fwd[a]):
                        bwd[b] |= 1 << a
            arc_rel[(x, y)] = intern(tuple(fwd))
            arc_rel[(y, x)] = intern(tuple(bwd))

        self.arcs: list[Arc] = sorted(arc_rel)
        self.arc_from = array("i", (a[0] for a in self.arcs))
        self.arc_to = array("i", (a[1] for a in self.arcs))
        self.arc_rel = array("i", (arc_rel[a] for a in self.arcs))
        self.relations = array("Q", table)
        self.pair_arc = array("i", [-1]) * (n * n)
        for idx, (x, y) in enumerate(self.arcs):
            self.pair_arc[x * n + y] = idx

        adj: list[list[int]] = [[] for _ in range(n)]
        for x, y in self.arcs:
            adj[x].append(y)
        self._neighbors = [sorted(a) for a in adj]
        self.nbr_ptr = array("i", [0])
        self.nbr_idx = array("i")
        for a in self._neighbors:
            self.nbr_idx.extend(a)
            self.nbr_ptr.append(len(self.nbr_idx))

    def __repr__(self) -> str:
        return f"CspInstance(n={self.n}, arcs={len(self.arcs)})"

    def arc_index(self, x: int, y: int) -> int:
        """Index of arc ``(x, y)`` in :attr:`arcs`, or -1 when the pair is unconstrained."""
        return self.pair_arc[x * self.n + y]

    def is_constrained(self, x: int, y: int) -> bool:
        return self.pair_arc[x * self.n + y] >= 0

    def compatible(self, x: int, a: int, y: int, b: int) -> bool:
        arc = self.arc_index(x, y)
        if arc < 0:
            return True
        return bool(self.relations[self.arc_rel[arc] * STRIDE + a] >> b & 1)

    def support_mask(self, x: int, a: int, y: int) -> int:
        """Mask of values of ``y`` compatible with ``x = a`` (ignores current domains)."""
        return self.relations[self.arc_rel[self.arc_index(x, y)] * STRIDE + a]


def neighbors(csp: CspInstance, v: int) -> list[int]:
    if not 0 <= v < csp.n:
        raise IndexError(f"variable {v} out of range 0..{csp.n - 1}")
    return list(csp._neighbors[v])


def revise(csp: CspInstance, x: int, y: int) -> bool:
    """Drop every value of ``x`` with no compatible value left in ``y``.

    Returns True iff something was removed.  ``y`` is never touched.
    """
    arc = csp.arc_index(x, y)
    if arc < 0:
        raise ValueError(f"({x}, {y}) is not a constrained arc")
    dom = csp.domains.masks
    off = csp.arc_rel[arc] * STRIDE
    rel = csp.relations
    dx = dom[x]
    dy = dom[y]
    keep = dx
    for a in iter_bits(dx):
        if not rel[off + a] & dy:
            keep &= ~(1 << a)
    if keep != dx:
        dom[x] = keep
        return True
    return False
