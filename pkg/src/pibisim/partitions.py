"""Integer set partitions whose class representative is the minimum element."""

from __future__ import annotations

from typing import Iterator


class Partition:
    """An immutable partition of ``{0..n-1}``.

    Stored as the representative array: ``reps[i]`` is the least element of
    the class containing ``i``. Two partitions are equal iff their arrays are.
    """

    __slots__ = ("reps",)

    def __init__(self, reps: tuple[int, ...]):
        self.reps = reps

    @classmethod
    def discrete(cls, n: int) -> Partition:
        if n < 0:
            raise ValueError("partition size must be non-negative")
        return cls(tuple(range(n)))

    @classmethod
    def from_blocks(cls, blocks) -> Partition:
        n = sum(len(b) for b in blocks)
        reps = [-1] * n
        for block in blocks:
            m = min(block)
            for i in block:
                reps[i] = m
        if -1 in reps:
            raise ValueError(f"blocks do not cover 0..{n - 1}: {blocks!r}")
        return cls(tuple(reps))

    def __len__(self) -> int:
        return len(self.reps)

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.reps == other.reps

    def __hash__(self) -> int:
        return hash(self.reps)

    def __repr__(self) -> str:
        return f"Partition({self.blocks()!r})"

    def rep(self, i: int) -> int:
        return self.reps[i]

    def join(self, i: int, j: int) -> Partition:
        ri, rj = self.reps[i], self.reps[j]
        if ri == rj:
            return self
        lo, hi = (ri, rj) if ri < rj else (rj, ri)
        return Partition(tuple(lo if r == hi else r for r in self.reps))

    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, r in enumerate(self.reps):
            out.setdefault(r, []).append(i)
        return [out[r] for r in sorted(out)]

    def refines(self, other: Partition) -> bool:
        """True iff every class of ``self`` lies inside a class of ``other``."""
        return all(other.reps[i] == other.reps[r] for i, r in enumerate(self.reps))


def discrete(n: int) -> Partition:
    return Partition.discrete(n)


def join_elems(p: Partition, i: int, j: int) -> Partition:
    return p.join(i, j)


def rep(p: Partition, i: int) -> int:
    return p.rep(i)


def _set_partitions(k: int) -> Iterator[list[int]]:
    """Restricted growth strings of length ``k``."""
    if k == 0:
        yield []
        return
    rgs = [0] * k

    def go(pos: int, top: int) -> Iterator[list[int]]:
        if pos == k:
            yield list(rgs)
            return
        for v in range(top + 2):
            rgs[pos] = v
            yield from go(pos + 1, max(top, v))

    rgs[0] = 0
    yield from go(1, 0)


def enumerate_coarsenings(p: Partition) -> Iterator[Partition]:
    """Every partition coarser than or equal to ``p``, ``p`` first.

    Order: more classes first, then by the representative array.
    """
    blocks = p.blocks()
    found = []
    for rgs in _set_partitions(len(blocks)):
        groups: dict[int, list[int]] = {}
        for block, g in zip(blocks, rgs):
            groups.setdefault(g, []).extend(block)
        found.append(Partition.from_blocks(list(groups.values())))
    found.sort(key=lambda q: (-len(set(q.reps)), q.reps))
    return iter(found)
