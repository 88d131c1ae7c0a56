"""Symbolic one-step transitions over all possible worlds.

Every step carries the equality constraint (``EqC``) under which it is enabled.
A constraint is a sorted tuple of name pairs ``(x, y)`` with ``x < y``; a
context (``Ctx``) is a tuple of quantified names, most recent first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Iterator, Union

from .partitions import Partition
from .syntax import (
    Act,
    ActB,
    Bind,
    BoundIn,
    BoundOut,
    FreeOut,
    In,
    Match,
    Name,
    Nu,
    Out,
    Par,
    Plus,
    Pr,
    Tau,
    TauPrefix,
    V,
    bind,
    instantiate,
    rename,
    unbind,
    unbind2,
)

EqC = tuple  # tuple[tuple[Name, Name], ...], canonical


@dataclass(frozen=True)
class All:
    name: Name

    def __str__(self) -> str:
        return f"∀{self.name}"


@dataclass(frozen=True)
class Nabla:
    name: Name

    def __str__(self) -> str:
        return f"∇{self.name}"


Quan = Union[All, Nabla]
Ctx = tuple  # tuple[Quan, ...]


class UnknownNameError(ValueError):
    """A constraint or formula mentions a name the context does not quantify."""


def ctx_names(ctx: Ctx) -> list[Name]:
    return [q.name for q in ctx]


def check_ctx(ctx: Ctx) -> None:
    names = ctx_names(ctx)
    if len(set(names)) != len(names):
        raise ValueError(f"context names must be distinct: {names}")


def all_ctx(names: Iterable[Name]) -> Ctx:
    """A context of universals; the first name given is the oldest."""
    return tuple(All(n) for n in reversed(list(names)))


# -- constraints ---------------------------------------------------------------


def insert_pair(pair: tuple[Name, Name], sigma: EqC) -> EqC:
    x, y = pair
    if x == y:
        return tuple(sigma)
    p = (x, y) if x < y else (y, x)
    if p in sigma:
        return tuple(sigma)
    return tuple(sorted((*sigma, p)))


def union(s1: EqC, s2: EqC) -> EqC:
    return tuple(sorted(set(s1) | set(s2)))


def eqc(*pairs: tuple[Name, Name]) -> EqC:
    sigma: EqC = ()
    for p in pairs:
        sigma = insert_pair(p, sigma)
    return sigma


@lru_cache(maxsize=1 << 16)
def mk_partition(ctx: Ctx, sigma: EqC) -> tuple[Partition, dict[Name, int], tuple[Name, ...]]:
    """Partition induced by ``sigma`` with older context names mapped lower."""
    i2n = tuple(reversed(ctx_names(ctx)))
    n2i = {n: i for i, n in enumerate(i2n)}
    part = Partition.discrete(len(i2n))
    for x, y in sigma:
        try:
            part = part.join(n2i[x], n2i[y])
        except KeyError as e:
            raise UnknownNameError(f"name {e.args[0]} is not in the context") from None
    return part, n2i, i2n


@lru_cache(maxsize=1 << 16)
def respects(sigma: EqC, ctx: Ctx) -> bool:
    """Every nabla name is the least element of its class."""
    part, n2i, _ = mk_partition(ctx, sigma)
    return all(part.rep(n2i[q.name]) == n2i[q.name] for q in ctx if isinstance(q, Nabla))


class Subst:
    """Maps every context name to the representative of its class."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: dict[Name, Name]):
        self.mapping = mapping

    def __call__(self, t: Any) -> Any:
        return rename(t, self.mapping)

    def name(self, x: Name) -> Name:
        return self.mapping.get(x, x)

    def is_identity(self) -> bool:
        return not self.mapping


@lru_cache(maxsize=1 << 16)
def mk_subst(ctx: Ctx, sigma: EqC) -> Subst:
    part, _, i2n = mk_partition(ctx, sigma)
    return Subst({i2n[i]: i2n[r] for i, r in enumerate(part.reps) if r != i})


def entails(ctx: Ctx, world: EqC, sigma: EqC) -> bool:
    """Every pair of ``sigma`` is identified in ``world``."""
    s = mk_subst(ctx, world)
    return all(s.name(x) == s.name(y) for x, y in sigma)


def partition_to_eqc(part: Partition, i2n: tuple[Name, ...]) -> EqC:
    return eqc(*((i2n[r], i2n[i]) for i, r in enumerate(part.reps) if r != i))


# -- symbolic steps ------------------------------------------------------------


def one_step_sym(ctx: Ctx, p: Pr) -> list[tuple[EqC, tuple[Act, Pr]]]:
    return list(_one_cached(ctx, p))


def one_step_sym_b(ctx: Ctx, p: Pr) -> list[tuple[EqC, tuple[ActB, Bind]]]:
    return list(_one_b_cached(ctx, p))


@lru_cache(maxsize=1 << 16)
def _one_cached(ctx: Ctx, p: Pr) -> tuple:
    return tuple(_one(ctx, p))


@lru_cache(maxsize=1 << 16)
def _one_b_cached(ctx: Ctx, p: Pr) -> tuple:
    return tuple(_one_b(ctx, p))


def _one(ctx: Ctx, p: Pr) -> Iterator[tuple[EqC, tuple[Act, Pr]]]:
    if isinstance(p, Out):
        yield (), (FreeOut(p.chan, p.payload), p.cont)
    elif isinstance(p, TauPrefix):
        yield (), (Tau(), p.cont)
    elif isinstance(p, Match):
        x, y = p.lhs.name, p.rhs.name
        if x == y:
            yield from _one_cached(ctx, p.cont)
        elif respects(eqc((x, y)), ctx):
            for sigma, r in _one_cached(ctx, p.cont):
                s2 = insert_pair((x, y), sigma)
                if respects(s2, ctx):
                    yield s2, r
    elif isinstance(p, Plus):
        yield from _one_cached(ctx, p.left)
        yield from _one_cached(ctx, p.right)
    elif isinstance(p, Par):
        left, right = p.left, p.right
        for sigma, (l, p1) in _one_cached(ctx, left):
            yield sigma, (l, Par(p1, right))
        for sigma, (l, q1) in _one_cached(ctx, right):
            yield sigma, (l, Par(left, q1))
        # close
        for sp, (lp, bp) in _one_b_cached(ctx, left):
            for sq, (lq, bq) in _one_b_cached(ctx, right):
                if isinstance(lp, BoundIn) and isinstance(lq, BoundOut):
                    y, q1, p1 = unbind2(bq, bp)
                elif isinstance(lp, BoundOut) and isinstance(lq, BoundIn):
                    y, p1, q1 = unbind2(bp, bq)
                else:
                    continue
                s2 = insert_pair((lp.chan.name, lq.chan.name), union(sp, sq))
                if respects(s2, ctx):
                    yield s2, (Tau(), Nu(bind(y, Par(p1, q1))))
        # interaction
        for sp, (l, p1) in _one_cached(ctx, left):
            if isinstance(l, FreeOut):
                for sq, (lq, bq) in _one_b_cached(ctx, right):
                    if isinstance(lq, BoundIn):
                        s2 = insert_pair((l.chan.name, lq.chan.name), union(sp, sq))
                        if respects(s2, ctx):
                            yield s2, (Tau(), Par(p1, instantiate(bq, l.payload.name)))
        for sp, (lp, bp) in _one_b_cached(ctx, left):
            if isinstance(lp, BoundIn):
                for sq, (l, q1) in _one_cached(ctx, right):
                    if isinstance(l, FreeOut):
                        s2 = insert_pair((l.chan.name, lp.chan.name), union(sp, sq))
                        if respects(s2, ctx):
                            yield s2, (Tau(), Par(instantiate(bp, l.payload.name), q1))
    elif isinstance(p, Nu):
        x, body = unbind(p.body)
        inner = (Nabla(x), *ctx)
        for sigma, (l, p1) in _one_cached(inner, body):
            s = mk_subst(inner, sigma)
            if isinstance(l, FreeOut) and (x == s.name(l.chan.name) or x == s.name(l.payload.name)):
                continue
            yield sigma, (l, Nu(bind(x, p1)))


def _one_b(ctx: Ctx, p: Pr) -> Iterator[tuple[EqC, tuple[ActB, Bind]]]:
    if isinstance(p, In):
        yield (), (BoundIn(p.chan), p.body)
    elif isinstance(p, Match):
        x, y = p.lhs.name, p.rhs.name
        if x == y:
            yield from _one_b_cached(ctx, p.cont)
        elif respects(eqc((x, y)), ctx):
            for sigma, r in _one_b_cached(ctx, p.cont):
                s2 = insert_pair((x, y), sigma)
                if respects(s2, ctx):
                    yield s2, r
    elif isinstance(p, Plus):
        yield from _one_b_cached(ctx, p.left)
        yield from _one_b_cached(ctx, p.right)
    elif isinstance(p, Par):
        left, right = p.left, p.right
        for sigma, (l, b) in _one_b_cached(ctx, left):
            x, p1 = unbind(b)
            yield sigma, (l, bind(x, Par(p1, right)))
        for sigma, (l, b) in _one_b_cached(ctx, right):
            x, q1 = unbind(b)
            yield sigma, (l, bind(x, Par(left, q1)))
    elif isinstance(p, Nu):
        x, body = unbind(p.body)
        inner = (Nabla(x), *ctx)
        for sigma, (l, b) in _one_b_cached(inner, body):
            s = mk_subst(inner, sigma)
            if x == s.name(l.chan.name):
                continue
            y, p1 = unbind(b)
            yield sigma, (l, bind(y, Nu(bind(x, p1))))
        # open scope extrusion
        for sigma, (l, p1) in _one_cached(inner, body):
            if not isinstance(l, FreeOut):
                continue
            s = mk_subst(inner, sigma)
            if x == s.name(l.payload.name) and x != s.name(l.chan.name):
                yield sigma, (BoundOut(l.chan), bind(x, p1))
