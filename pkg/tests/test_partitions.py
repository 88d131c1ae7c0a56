import pytest

from pibisim.partitions import Partition, discrete, enumerate_coarsenings, join_elems, rep

from oracles import all_labelings, bell, coarser_or_equal


def blocks(p):
    return frozenset(frozenset(b) for b in p.blocks())


def test_discrete():
    assert discrete(3).blocks() == [[0], [1], [2]]
    assert discrete(0).blocks() == []
    assert discrete(1).blocks() == [[0]]
    with pytest.raises(ValueError):
        discrete(-1)


def test_join_examples():
    d = discrete(3)
    part1 = join_elems(d, 1, 2)
    part2 = join_elems(d, 0, 1)
    assert part1.blocks() == [[0], [1, 2]]
    assert part2.blocks() == [[0, 1], [2]]
    assert rep(part1, 1) == 1
    assert rep(part2, 1) == 0
    assert join_elems(part1, 2, 2) == part1
    assert join_elems(part1, 1, 2) == part1
    assert all(rep(d, i) == i for i in range(3))


def test_join_does_not_mutate():
    d = discrete(3)
    d.join(0, 2)
    assert d == discrete(3)


def test_join_commutes_and_associates():
    d = discrete(5)
    for (a, b), (c, e) in [((0, 3), (3, 4)), ((1, 2), (4, 1)), ((0, 4), (2, 3))]:
        x = d.join(a, b).join(c, e)
        y = d.join(c, e).join(b, a)
        assert x == y


def test_rep_is_minimum_and_idempotent():
    p = Partition.from_blocks([[3, 1], [0, 4], [2]])
    assert [p.rep(i) for i in range(5)] == [0, 1, 2, 1, 0]
    assert all(p.rep(p.rep(i)) == p.rep(i) for i in range(5))


@pytest.mark.parametrize("n", range(7))
def test_bell_counts(n):
    got = list(enumerate_coarsenings(discrete(n)))
    assert len(got) == bell(n) == [1, 1, 2, 5, 15, 52, 203][n]
    assert len(set(got)) == len(got)
    assert got[0] == discrete(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_coarsenings_match_brute_force(n):
    everything = all_labelings(n)
    for p in map(Partition.from_blocks, ([sorted(b) for b in part] for part in everything)):
        expected = {q for q in everything if coarser_or_equal(blocks(p), q)}
        got = [blocks(q) for q in enumerate_coarsenings(p)]
        assert set(got) == expected
        assert len(got) == len(expected)
        assert got[0] == blocks(p)


def test_coarsenings_of_joined_pair():
    p = Partition.from_blocks([[0, 1], [2]])
    assert [q.blocks() for q in enumerate_coarsenings(p)] == [[[0, 1], [2]], [[0, 1, 2]]]


def test_refines():
    a = Partition.from_blocks([[0], [1, 2], [3]])
    b = Partition.from_blocks([[0, 3], [1, 2]])
    assert a.refines(b) and not b.refines(a) and a.refines(a)
