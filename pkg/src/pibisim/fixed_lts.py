"""One-step transitions in a fixed world (the identity substitution)."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .syntax import (
    Act,
    ActB,
    Bind,
    BoundIn,
    BoundOut,
    FreeOut,
    In,
    Match,
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
    unbind,
    unbind2,
)


def one_step(p: Pr) -> list[tuple[Act, Pr]]:
    """All free steps ``(label, residual)`` of ``p``."""
    return list(_one_cached(p))


def one_step_b(p: Pr) -> list[tuple[ActB, Bind]]:
    """All bound steps ``(label, abstraction)`` of ``p``."""
    return list(_one_b_cached(p))


@lru_cache(maxsize=1 << 16)
def _one_cached(p: Pr) -> tuple:
    return tuple(_one(p))


@lru_cache(maxsize=1 << 16)
def _one_b_cached(p: Pr) -> tuple:
    return tuple(_one_b(p))


def _one(p: Pr) -> Iterator[tuple[Act, Pr]]:
    if isinstance(p, Out):
        yield FreeOut(p.chan, p.payload), p.cont
    elif isinstance(p, TauPrefix):
        yield Tau(), p.cont
    elif isinstance(p, Match):
        if p.lhs == p.rhs:
            yield from _one_cached(p.cont)
    elif isinstance(p, Plus):
        yield from _one_cached(p.left)
        yield from _one_cached(p.right)
    elif isinstance(p, Par):
        left, right = p.left, p.right
        for l, p1 in _one_cached(left):
            yield l, Par(p1, right)
        for l, q1 in _one_cached(right):
            yield l, Par(left, q1)
        # close
        for lp, bp in _one_b_cached(left):
            for lq, bq in _one_b_cached(right):
                if isinstance(lp, BoundOut) and isinstance(lq, BoundIn) and lp.chan == lq.chan:
                    y, p1, q1 = unbind2(bp, bq)
                    yield Tau(), Nu(bind(y, Par(p1, q1)))
                elif isinstance(lp, BoundIn) and isinstance(lq, BoundOut) and lp.chan == lq.chan:
                    y, q1, p1 = unbind2(bq, bp)
                    yield Tau(), Nu(bind(y, Par(p1, q1)))
        # interaction
        for l, p1 in _one_cached(left):
            if isinstance(l, FreeOut):
                for lq, bq in _one_b_cached(right):
                    if isinstance(lq, BoundIn) and lq.chan == l.chan:
                        yield Tau(), Par(p1, _receive(bq, l.payload))
        for lp, bp in _one_b_cached(left):
            if isinstance(lp, BoundIn):
                for l, q1 in _one_cached(right):
                    if isinstance(l, FreeOut) and l.chan == lp.chan:
                        yield Tau(), Par(_receive(bp, l.payload), q1)
    elif isinstance(p, Nu):
        x, body = unbind(p.body)
        vx = V(x)
        for l, p1 in _one_cached(body):
            if isinstance(l, FreeOut) and (l.chan == vx or l.payload == vx):
                continue
            yield l, Nu(bind(x, p1))


def _one_b(p: Pr) -> Iterator[tuple[ActB, Bind]]:
    if isinstance(p, In):
        yield BoundIn(p.chan), p.body
    elif isinstance(p, Match):
        if p.lhs == p.rhs:
            yield from _one_b_cached(p.cont)
    elif isinstance(p, Plus):
        yield from _one_b_cached(p.left)
        yield from _one_b_cached(p.right)
    elif isinstance(p, Par):
        left, right = p.left, p.right
        for l, b in _one_b_cached(left):
            x, p1 = unbind(b)
            yield l, bind(x, Par(p1, right))
        for l, b in _one_b_cached(right):
            x, q1 = unbind(b)
            yield l, bind(x, Par(left, q1))
    elif isinstance(p, Nu):
        x, body = unbind(p.body)
        vx = V(x)
        for l, b in _one_b_cached(body):
            if l.chan == vx:
                continue
            y, p1 = unbind(b)
            yield l, bind(y, Nu(bind(x, p1)))
        # open scope extrusion
        for l, p1 in _one_cached(body):
            if isinstance(l, FreeOut) and l.payload == vx and l.chan != vx:
                yield BoundOut(l.chan), bind(x, p1)


def _receive(b: Bind, payload) -> Pr:
    """``{y := payload} q'`` for the abstraction ``y.q'``."""
    return instantiate(b, payload.name)
