"""Satisfaction of modal formulae by processes under a context and a world.

A world is an equality constraint over the context names. Box modalities range
over every world refining the current one (that respects the context), which
makes satisfaction hereditary: a process satisfying a formula in a world still
satisfies it, suitably substituted, in every refinement.
"""

from __future__ import annotations

from functools import lru_cache

from . import fixed_lts
from .open_lts import (
    All,
    Ctx,
    EqC,
    Nabla,
    UnknownNameError,
    ctx_names,
    mk_partition,
    mk_subst,
    partition_to_eqc,
    respects,
    union,
    eqc,
)
from .partitions import enumerate_coarsenings
from .syntax import (
    BoundIn,
    Box,
    BoxB,
    BoxMatch,
    Conj,
    Dia,
    DiaB,
    DiaMatch,
    Disj,
    FF,
    Form,
    Pr,
    TT,
    free_names,
    unbind2,
)

BOX_MATCH_MODES = ("least", "all")


@lru_cache(maxsize=1 << 14)
def worlds_above(ctx: Ctx, world: EqC) -> tuple[EqC, ...]:
    """Every respecting world entailing ``world``, ``world`` itself first."""
    part, _, i2n = mk_partition(ctx, world)
    out = []
    for q in enumerate_coarsenings(part):
        w = partition_to_eqc(q, i2n)
        if respects(w, ctx):
            out.append(w)
    return tuple(out)


def _eqs_names(eqs) -> EqC:
    return eqc(*((x.name, y.name) for x, y in eqs))


def om_sat(ctx: Ctx, world: EqC, p: Pr, f: Form, box_match: str = "least") -> bool:
    """Does ``p`` satisfy ``f`` in ``world`` under ``ctx``?

    ``box_match="all"`` checks a box-match against every refinement of the
    world that identifies its pairs, instead of only the least one; by
    hereditariness the two agree.
    """
    if box_match not in BOX_MATCH_MODES:
        raise ValueError(f"box_match must be one of {BOX_MATCH_MODES}")
    known = set(ctx_names(ctx))
    missing = (free_names(p) | free_names(f)) - known
    if missing:
        raise UnknownNameError(f"names not in the context: {sorted(missing)}")
    world = union((), world)
    if not respects(world, ctx):
        raise ValueError("the world does not respect the context")
    s = mk_subst(ctx, world)
    return _sat(ctx, world, s(p), s(f), box_match)


@lru_cache(maxsize=1 << 16)
def _sat(ctx: Ctx, world: EqC, p: Pr, f: Form, mode: str) -> bool:
    if isinstance(f, TT):
        return True
    if isinstance(f, FF):
        return False
    if isinstance(f, Conj):
        return all(_sat(ctx, world, p, g, mode) for g in f.parts)
    if isinstance(f, Disj):
        return any(_sat(ctx, world, p, g, mode) for g in f.parts)
    if isinstance(f, DiaMatch):
        s = mk_subst(ctx, world)
        return all(s.name(x.name) == s.name(y.name) for x, y in f.eqs) and _sat(
            ctx, world, p, s(f.body), mode)
    if isinstance(f, BoxMatch):
        eqs = _eqs_names(f.eqs)
        if mode == "least":
            w2 = union(world, eqs)
            if not respects(w2, ctx):
                return True
            targets = (w2,)
        else:
            targets = tuple(w for w in worlds_above(ctx, world) if _entails(ctx, w, eqs))
        for w2 in targets:
            s = mk_subst(ctx, w2)
            if not _sat(ctx, _canon(ctx, w2), s(p), s(f.body), mode):
                return False
        return True
    if isinstance(f, Dia):
        return any(l == f.act and _sat(ctx, world, p1, f.body, mode) for l, p1 in fixed_lts.one_step(p))
    if isinstance(f, DiaB):
        for l, bp in fixed_lts.one_step_b(p):
            if l == f.act:
                z, p1, g = unbind2(bp, f.body)
                if _sat(_extend(ctx, l, z), world, p1, g, mode):
                    return True
        return False
    if isinstance(f, Box):
        for w in worlds_above(ctx, world):
            s = mk_subst(ctx, w)
            pw, a, g = s(p), s(f.act), s(f.body)
            for l, p1 in fixed_lts.one_step(pw):
                if l == a and not _sat(ctx, w, p1, g, mode):
                    return False
        return True
    if isinstance(f, BoxB):
        for w in worlds_above(ctx, world):
            s = mk_subst(ctx, w)
            pw, a, body = s(p), s(f.act), s(f.body)
            for l, bp in fixed_lts.one_step_b(pw):
                if l == a:
                    z, p1, g = unbind2(bp, body)
                    if not _sat(_extend(ctx, l, z), w, p1, g, mode):
                        return False
        return True
    raise TypeError(f"not a formula: {f!r}")


def _extend(ctx: Ctx, label, z) -> Ctx:
    return ((All(z) if isinstance(label, BoundIn) else Nabla(z)), *ctx)


def _entails(ctx: Ctx, world: EqC, sigma: EqC) -> bool:
    s = mk_subst(ctx, world)
    return all(s.name(x) == s.name(y) for x, y in sigma)


def _canon(ctx: Ctx, world: EqC) -> EqC:
    """A canonical constraint for the partition ``world`` induces."""
    part, _, i2n = mk_partition(ctx, world)
    return partition_to_eqc(part, i2n)


def validate_certificate(ctx: Ctx, p: Pr, q: Pr, fl: Form, fr: Form, box_match: str = "least") -> bool:
    """``p`` satisfies ``fl`` but ``q`` does not, and ``q`` satisfies ``fr`` but ``p`` does not."""
    return (om_sat(ctx, (), p, fl, box_match) and not om_sat(ctx, (), q, fl, box_match)
            and om_sat(ctx, (), q, fr, box_match) and not om_sat(ctx, (), p, fr, box_match))
