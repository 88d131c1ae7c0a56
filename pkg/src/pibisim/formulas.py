"""Distinguishing formulae from a bisimulation step forest.

Each emitted pair ``(fl, fr)`` is meant to satisfy: the left process satisfies
``fl`` and the right does not; the right process satisfies ``fr`` and the left
does not.

Two constructions are provided. ``guarded=False`` builds the opponent's
formula exactly from its sibling roots whose action equals the leader's action
under the sibling's own substitution. The default ``guarded=True`` differs in
two places, both needed for the certificates to hold under :mod:`.sat`:

* a sibling contributes the constraint that makes its action *unify* with the
  leader's (its own constraint plus the label equations), and siblings already
  enabled in the leader's world are dropped since the followers cover them;
* the opponent's box formula sits under the same box-match as the leader's
  diamond, so it only has to hold in worlds refining the leader's world.

When no step depends on a name equation the two constructions agree.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .bisim import BoundLog, FreeLog, LazyForest, Side, StepForest, StepLog, StepTree
from .open_lts import Ctx, EqC, entails, insert_pair, mk_subst, respects
from .syntax import (
    Act,
    ActB,
    Box,
    BoxB,
    BoxMatch,
    BoundIn,
    BoundOut,
    Dia,
    DiaB,
    DiaMatch,
    FF,
    Form,
    FreeOut,
    Name,
    TT,
    Tau,
    V,
    bind,
    normalize_conj,
    normalize_disj,
)

PLACEHOLDER = Name("?")


# -- formula constructors ----------------------------------------------------------


def box_mat(sigma: EqC, f: Form) -> Form:
    if not sigma:
        return f
    return BoxMatch(tuple((V(x), V(y)) for x, y in sigma), f)


def dia_mat(sigma: EqC) -> Form:
    if not sigma:
        return FF()
    return DiaMatch(tuple((V(x), V(y)) for x, y in sigma), TT())


def pre(sigma: EqC, a: Act, fs: Iterable[Form] = ()) -> Form:
    return box_mat(sigma, Dia(a, normalize_conj(fs)))


def post(sigmas: Iterable[EqC], a: Act, fs: Iterable[Form] = ()) -> Form:
    return Box(a, normalize_disj([*map(dia_mat, sigmas), *fs]))


def pre_b(sigma: EqC, a: ActB, x: Name = PLACEHOLDER, fs: Iterable[Form] = ()) -> Form:
    return box_mat(sigma, DiaB(a, bind(x, normalize_conj(fs))))


def post_b(sigmas: Iterable[EqC], a: ActB, x: Name = PLACEHOLDER, fs: Iterable[Form] = ()) -> Form:
    return BoxB(a, bind(x, normalize_disj([*map(dia_mat, sigmas), *fs])))


# -- sibling constraints -----------------------------------------------------------


def subs_matching_act(a, logs: Iterable[StepLog]) -> list[EqC]:
    """Constraints of ``logs`` whose action equals ``a`` under the log's own substitution."""
    out = []
    for log in logs:
        s = mk_subst(log.ctx, log.sigma)
        if s(a) == s(log.act):
            out.append(log.sigma)
    return out


def _label_equations(a, b) -> list[tuple[Name, Name]] | None:
    """Name equations making two labels equal, or None if they never can be."""
    if isinstance(a, Tau) and isinstance(b, Tau):
        return []
    if isinstance(a, FreeOut) and isinstance(b, FreeOut):
        return [(a.chan.name, b.chan.name), (a.payload.name, b.payload.name)]
    if type(a) is type(b) and isinstance(a, (BoundIn, BoundOut)):
        return [(a.chan.name, b.chan.name)]
    return None


def subs_unifying_act(ctx: Ctx, sigma_lead: EqC, a, logs: Iterable[StepLog]) -> list[EqC]:
    """Worlds in which a sibling step carries label ``a`` but the leader's world does not."""
    out: list[EqC] = []
    for log in logs:
        eqs = _label_equations(a, log.act)
        if eqs is None:
            continue
        u = log.sigma
        for pair in eqs:
            u = insert_pair(pair, u)
        if not respects(u, log.ctx) or entails(ctx, sigma_lead, u) or u in out:
            continue
        out.append(u)
    return out


# -- the tree transformation ----------------------------------------------------------


def _roots(rs: StepForest, side: Side, kind: type) -> list[StepLog]:
    return [t.log for t in rs if t.side is side and isinstance(t.log, kind)]


def _binder_of(rss: list[StepForest]) -> Name | None:
    """The shared binder name, read off the context head of the first grandchild."""
    if not rss or not rss[0]:
        return None
    return rss[0][0].log.ctx[0].name


def _lazy_product(seqs: list[LazyForest]) -> Iterator[tuple]:
    if not seqs:
        yield ()
        return
    for h in seqs[0]:
        for t in _lazy_product(seqs[1:]):
            yield (h, *t)


def _combos(rss: list[StepForest], guarded: bool) -> Iterator[tuple[list[Form], list[Form]]]:
    """One (left formulas, right formulas) choice per combination across followers.

    Each follower's answers are computed on demand and cached, so the first
    combination costs one answer per follower.
    """
    per_follower = [LazyForest(lambda r=r: iter_df(r, guarded)) for r in rss]
    if not all(per_follower):
        return
    for combo in _lazy_product(per_follower):
        yield [c[0] for c in combo], [c[1] for c in combo]


def iter_df(rs: StepForest, guarded: bool = True) -> Iterator[tuple[Form, Form]]:
    for kind in (FreeLog, BoundLog):
        for side in (Side.LEFT, Side.RIGHT):
            yield from _base(rs, kind, side, guarded)
    for kind in (FreeLog, BoundLog):
        for side in (Side.LEFT, Side.RIGHT):
            yield from _inductive(rs, kind, side, guarded)


def _opponent_worlds(rs, t: StepTree, guarded: bool) -> list[EqC]:
    log = t.log
    siblings = _roots(rs, t.side.other(), type(log))
    if guarded:
        return subs_unifying_act(log.ctx, log.sigma, log.act, siblings)
    return subs_matching_act(log.act, siblings)


def _pair(t: StepTree, sigmas, x, dfs_lead, dfs_follow, guarded: bool) -> tuple[Form, Form]:
    log = t.log
    if isinstance(log, FreeLog):
        lead = pre(log.sigma, log.act, dfs_lead)
        follow = post(sigmas, log.act, dfs_follow)
    else:
        lead = pre_b(log.sigma, log.act, x, dfs_lead)
        follow = post_b(sigmas, log.act, x, dfs_follow)
    if guarded:
        follow = box_mat(log.sigma, follow)
    return (lead, follow) if t.side is Side.LEFT else (follow, lead)


def _base(rs, kind, side, guarded):
    for t in rs:
        if t.side is side and isinstance(t.log, kind) and not t.children:
            sigmas = _opponent_worlds(rs, t, guarded)
            yield _pair(t, sigmas, PLACEHOLDER, [], [], guarded)


def _inductive(rs, kind, side, guarded):
    for t in rs:
        if t.side is not side or not isinstance(t.log, kind) or not t.children:
            continue
        rss = [f.children for f in t.children]
        sigmas = None
        x = PLACEHOLDER
        for dfs_l, dfs_r in _combos(rss, guarded):
            if sigmas is None:
                sigmas = _opponent_worlds(rs, t, guarded)
                if kind is BoundLog:
                    x = _binder_of(rss) or PLACEHOLDER
            dfs_lead, dfs_follow = (dfs_l, dfs_r) if side is Side.LEFT else (dfs_r, dfs_l)
            yield _pair(t, sigmas, x, dfs_lead, dfs_follow, guarded)


def forest_to_df(rs: StepForest, guarded: bool = True) -> list[tuple[Form, Form]]:
    return list(iter_df(rs, guarded))
