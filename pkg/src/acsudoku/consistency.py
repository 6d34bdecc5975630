"""Arc-consistency enforcement: AC-1, AC-2 (two variants), AC-3 and AC-4.

All algorithms reach the same arc-consistent closure on a given instance;
they differ in the work they do to get there, which is what
:class:`PropagationStats` records.
"""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass

from acsudoku import _backend, _pykernels
from acsudoku.csp import CspInstance


class AcAlgorithm(enum.Enum):
    AC1 = "1"
    AC2 = "2"
    AC2_PAPER = "2paper"
    AC3 = "3"
    AC4 = "4"

    @classmethod
    def parse(cls, text: str) -> "AcAlgorithm":
        key = text.strip().lower().removeprefix("ac").lstrip("-_")
        for alg in cls:
            if alg.value == key:
                return alg
        raise ValueError(f"unknown arc-consistency algorithm {text!r}")

    @property
    def label(self) -> str:
        return "AC-2 (paper loops)" if self is AcAlgorithm.AC2_PAPER else f"AC-{self.value}"


@dataclass
class PropagationStats:
    revise_calls: int = 0
    values_removed: int = 0
    queue_pushes: int = 0
    wall_time: float = 0.0

    def __iadd__(self, other: "PropagationStats") -> "PropagationStats":
        self.revise_calls += other.revise_calls
        self.values_removed += other.values_removed
        self.queue_pushes += other.queue_pushes
        self.wall_time += other.wall_time
        return self


@dataclass
class PropagationResult:
    consistent: bool
    stats: PropagationStats


@dataclass
class Ac4Tables:
    supports: dict[tuple[int, int], list[tuple[int, int]]]
    counter: dict[tuple[int, int, int], int]


def _empty_components(csp: CspInstance) -> int:
    """Clear every variable connected to an empty domain; returns the values dropped.

    Nothing connected to an empty domain can keep a supported value, so
    this is where revising would end up anyway.
    """
    dom = csp.domains.masks
    stack = [v for v in range(csp.n) if not dom[v]]
    seen = set(stack)
    dropped = 0
    while stack:
        v = stack.pop()
        dropped += dom[v].bit_count()
        dom[v] = 0
        for w in csp._neighbors[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return dropped


def _run(csp: CspInstance, fn_name: str, backend: str | None, settle: bool, **kw) -> PropagationResult:
    fn = getattr(_backend.kernels(backend), fn_name)
    args = (csp.domains.masks, csp.n, csp.arc_from, csp.arc_to, csp.arc_rel,
            csp.relations, csp.pair_arc, csp.nbr_ptr, csp.nbr_idx)
    t0 = time.perf_counter()
    ok, calls, removed, pushes = fn(*args, **kw)
    consistent = bool(ok)
    while settle and not ok:
        removed += _empty_components(csp)
        ok, c, r, p = fn(*args, **kw)
        calls, removed, pushes = calls + c, removed + r, pushes + p
    elapsed = time.perf_counter() - t0
    return PropagationResult(consistent, PropagationStats(calls, removed, pushes, elapsed))


def ac1(csp: CspInstance, backend: str | None = None, settle: bool = True) -> PropagationResult:
    """Sweep every constrained pair, revising both directions, until a sweep changes nothing."""
    return _run(csp, "ac1", backend, settle)


def ac2(csp: CspInstance, backend: str | None = None, settle: bool = True) -> PropagationResult:
    """Mackworth's node-at-a-time AC-2, restricted to constrained pairs."""
    return _run(csp, "ac2", backend, settle, all_pairs=False)


def ac2_paper(csp: CspInstance, backend: str | None = None, settle: bool = True) -> PropagationResult:
    """AC-2 with the loops exactly as published: every pair ``(i, j)``, ``j < i``.

    Unconstrained pairs have vacuous support, so revising them never
    removes anything; they only cost revise calls.
    """
    return _run(csp, "ac2", backend, settle, all_pairs=True)


def ac3(csp: CspInstance, backend: str | None = None, settle: bool = True) -> PropagationResult:
    return _run(csp, "ac3", backend, settle)


def ac4(csp: CspInstance, backend: str | None = None, settle: bool = True) -> PropagationResult:
    """Support-counting AC-4.  Tables are rebuilt from scratch on each call."""
    return _run(csp, "ac4", backend, settle)


_DISPATCH = {
    AcAlgorithm.AC1: ac1,
    AcAlgorithm.AC2: ac2,
    AcAlgorithm.AC2_PAPER: ac2_paper,
    AcAlgorithm.AC3: ac3,
    AcAlgorithm.AC4: ac4,
}


def enforce(
    csp: CspInstance, alg: AcAlgorithm, backend: str | None = None, settle: bool = True
) -> PropagationResult:
    """Run ``alg`` on ``csp``.

    The kernels stop at the first emptied domain.  With ``settle`` (the
    default) propagation then carries on, so ``csp`` always ends at the
    arc-consistent closure: every variable connected to a wiped-out one is
    empty and the rest of the network is fully revised.  Search passes
    ``settle=False`` since it throws a wiped-out state away.
    """
    return _DISPATCH[alg](csp, backend, settle)


def ac4_tables(csp: CspInstance) -> tuple[bool, Ac4Tables]:
    """Run only the AC-4 initialization on ``csp`` (mutating its domains) and return the tables."""
    ok, supports, counter, _queue, _removed = _pykernels.ac4_initialize(
        csp.domains.masks, csp.n, csp.arc_from, csp.arc_to, csp.arc_rel, csp.relations
    )
    return ok, Ac4Tables(dict(supports), counter)
