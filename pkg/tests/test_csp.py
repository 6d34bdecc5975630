import pytest
from hypothesis import given, strategies as st

from acsudoku.csp import CspInstance, DomainStore, iter_bits, mask_of, neighbors, not_equal, revise
from acsudoku.sudoku import SudokuGrid, to_csp


def pair(dx, dy, pred=not_equal):
    return CspInstance([dx, dy], {(0, 1): pred})


def test_mask_helpers():
    assert mask_of([1, 3]) == 0b1010
    assert list(iter_bits(0b1010)) == [1, 3]
    with pytest.raises(ValueError):
        mask_of([64])


@pytest.mark.parametrize(
    "dx, dy, changed, after",
    [({1, 2}, {1}, True, {2}), ({2}, {1}, False, {2}), ({1}, {1}, True, set())],
)
def test_revise_examples(dx, dy, changed, after):
    csp = pair(dx, dy)
    assert revise(csp, 0, 1) is changed
    assert set(csp.domains.values(0)) == after
    assert set(csp.domains.values(1)) == dy


def test_revise_rejects_unconstrained_arc():
    csp = CspInstance([{1}, {1}, {1}], {(0, 1): not_equal})
    with pytest.raises(ValueError):
        revise(csp, 0, 2)


small_domain = st.sets(st.integers(1, 6), max_size=6)
relation = st.sets(st.tuples(st.integers(1, 6), st.integers(1, 6)))


@given(small_domain, small_domain, relation)
def test_revise_properties(dx, dy, allowed):
    csp = pair(dx, dy, lambda a, b: (a, b) in allowed)
    changed = revise(csp, 0, 1)
    x_after = set(csp.domains.values(0))
    assert x_after <= dx
    assert changed == (x_after != dx)
    assert set(csp.domains.values(1)) == dy
    assert x_after == {a for a in dx if any((a, b) in allowed for b in dy)}
    assert revise(csp, 0, 1) is False


def test_reverse_arc_uses_transposed_relation():
    # x < y: revise(y, x) must read the relation the other way round
    csp = pair({1, 2, 3}, {1, 2, 3}, lambda a, b: a < b)
    assert revise(csp, 1, 0)
    assert csp.domains.values(1) == [2, 3]
    assert revise(csp, 0, 1)
    assert csp.domains.values(0) == [1, 2]


def test_multiple_constraints_on_one_pair_are_conjoined():
    csp = CspInstance([{1, 2, 3}, {1, 2, 3}], {(0, 1): lambda a, b: a <= b, (1, 0): not_equal})
    assert csp.compatible(0, 1, 1, 2)
    assert not csp.compatible(0, 2, 1, 2)
    assert not csp.compatible(0, 3, 1, 2)
    assert not csp.compatible(1, 1, 0, 2)


def test_snapshot_round_trip():
    store = DomainStore([mask_of({1, 2, 3})] * 4)
    before = store.state()
    token = store.snapshot()
    store.remove(0, 1)
    store.remove(2, 3)
    store.assign(3, 2)
    store.restore(token)
    assert store.state() == before
    assert store.depth == 0


def test_snapshot_without_mutation_is_noop():
    store = DomainStore([mask_of({4, 5})] * 3)
    before = store.state()
    store.restore(store.snapshot())
    assert store.state() == before


def test_nested_snapshots_restore_in_lifo_order():
    store = DomainStore([mask_of(range(1, 10))] * 3)
    s0 = store.state()
    t0 = store.snapshot()
    store.remove(0, 1)
    s1 = store.state()
    t1 = store.snapshot()
    store.remove(1, 2)
    store.remove(0, 9)
    store.restore(t1)
    assert store.state() == s1
    store.restore(t0)
    assert store.state() == s0
    with pytest.raises(ValueError):
        store.restore(t0)


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(1, 9), st.booleans()), max_size=40))
def test_snapshot_interleaved_is_bit_exact(ops):
    store = DomainStore([mask_of(range(1, 10))] * 5)
    saved = []
    for v, a, push in ops:
        if push:
            saved.append((store.snapshot(), store.state()))
        store.remove(v, a)
    for token, state in reversed(saved):
        store.restore(token)
        assert store.state() == state


def test_sudoku_neighbors_of_cell_zero():
    csp = to_csp(SudokuGrid.blank())
    want = set(range(1, 9)) | {9, 18, 27, 36, 45, 54, 63, 72} | {10, 11, 19, 20}
    assert neighbors(csp, 0) == sorted(want)


def test_sudoku_instance_shape():
    csp = to_csp(SudokuGrid.blank())
    assert csp.n == 81
    assert all(len(neighbors(csp, v)) == 20 for v in range(81))
    assert len(csp.arcs) == 1620 == len(set(csp.arcs))
    for x, y in csp.arcs:
        assert x != y
        assert (y, x) in csp.arcs
        assert x in neighbors(csp, y)


def test_two_variable_neighbors():
    csp = pair({1}, {2})
    assert neighbors(csp, 0) == [1]
    assert neighbors(csp, 1) == [0]


def test_bad_constraints_rejected():
    with pytest.raises(ValueError):
        CspInstance([{1}, {2}], {(0, 0): not_equal})
    with pytest.raises(ValueError):
        CspInstance([{1}, {2}], {(0, 2): not_equal})
