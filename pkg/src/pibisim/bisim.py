"""Open simulation and bisimulation, as booleans and as step forests.

The leading side moves symbolically (over every world it can enable) and the
following side answers in that world with a fixed-world step. Forest children
are produced on demand, so a consumer that stops early never expands the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Union

from . import fixed_lts
from .open_lts import All, Ctx, EqC, Nabla, all_ctx, mk_subst, one_step_sym, one_step_sym_b
from .syntax import Act, ActB, Bind, BoundIn, Pr, fresh, free_names_ordered, instantiate


class Side(Enum):
    LEFT = "L"
    RIGHT = "R"

    def other(self) -> Side:
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@dataclass(frozen=True)
class FreeLog:
    ctx: Ctx
    sigma: EqC
    act: Act
    residual: Pr


@dataclass(frozen=True)
class BoundLog:
    ctx: Ctx
    sigma: EqC
    act: ActB
    residual: Bind


StepLog = Union[FreeLog, BoundLog]


class LazyForest:
    """A re-iterable sequence that pulls from a generator on demand and caches."""

    def __init__(self, make: Callable[[], Iterable]):
        self._make = make
        self._it: Iterator[StepTree] | None = None
        self._done: list[StepTree] = []
        self._exhausted = False

    def _pull(self) -> bool:
        if self._exhausted:
            return False
        if self._it is None:
            self._it = iter(self._make())
        try:
            self._done.append(next(self._it))
            return True
        except StopIteration:
            self._exhausted = True
            self._it = None
            return False

    def __iter__(self) -> Iterator[StepTree]:
        i = 0
        while True:
            if i < len(self._done):
                yield self._done[i]
                i += 1
            elif not self._pull():
                return

    def __len__(self) -> int:
        while self._pull():
            pass
        return len(self._done)

    def __bool__(self) -> bool:
        return bool(self._done) or self._pull()

    def __getitem__(self, i: int) -> StepTree:
        while i >= len(self._done) and self._pull():
            pass
        return self._done[i]

    @property
    def expanded(self) -> int:
        """Number of trees generated so far."""
        return len(self._done)


class StepTree:
    __slots__ = ("side", "log", "children")

    def __init__(self, side: Side, log: StepLog, children: LazyForest):
        self.side = side
        self.log = log
        self.children = children

    def __repr__(self) -> str:
        return f"StepTree({self.side.value}, {self.log!r})"


StepForest = LazyForest


def top_ctx(p: Pr, q: Pr) -> Ctx:
    """One universal per free name of ``(p, q)``; earlier occurrence is older."""
    return all_ctx(free_names_ordered((p, q)))


# -- forests -------------------------------------------------------------------


def _leads(ctx: Ctx, leader: Pr, follower: Pr, side: Side, recurse) -> Iterator[StepTree]:
    """Trees for every step of ``leader`` on ``side``; children answer on the other side.

    ``recurse(ctx, leader_residual, follower_residual)`` builds the next forest.
    """
    fside = side.other()

    def free_followers(s, lp, p1, sigma):
        for lq, q1 in fixed_lts.one_step(s(follower)):
            if lq == lp:
                yield StepTree(fside, FreeLog(ctx, sigma, lq, q1), LazyForest(lambda q1=q1: recurse(ctx, p1, q1)))

    def bound_followers(s, lp, bp, sigma, x):
        inner = ((All(x) if isinstance(lp, BoundIn) else Nabla(x)), *ctx)
        p1 = instantiate(bp, x)
        for lq, bq in fixed_lts.one_step_b(s(follower)):
            if lq == lp:
                q1 = instantiate(bq, x)
                yield StepTree(fside, BoundLog(ctx, sigma, lq, bq), LazyForest(lambda q1=q1: recurse(inner, p1, q1)))

    for sigma, r in one_step_sym(ctx, leader):
        s = mk_subst(ctx, sigma)
        lp, p1 = s(r)
        yield StepTree(side, FreeLog(ctx, sigma, lp, p1),
                       LazyForest(lambda s=s, lp=lp, p1=p1, sigma=sigma: free_followers(s, lp, p1, sigma)))
    for sigma, r in one_step_sym_b(ctx, leader):
        s = mk_subst(ctx, sigma)
        lp, bp = s(r)
        # one binder name shared by every follower of this step
        x = fresh(bp.hint.base)
        yield StepTree(side, BoundLog(ctx, sigma, lp, bp),
                       LazyForest(lambda s=s, lp=lp, bp=bp, sigma=sigma, x=x: bound_followers(s, lp, bp, sigma, x)))


def sim_forest(ctx: Ctx, p: Pr, q: Pr) -> StepForest:
    return LazyForest(lambda: _leads(ctx, p, q, Side.LEFT, sim_forest))


def _flip(recurse):
    return lambda ctx, lead_res, follow_res: recurse(ctx, follow_res, lead_res)


def bisim_forest(ctx: Ctx, p: Pr, q: Pr) -> StepForest:
    """All leading steps in the order: p free, p bound, q free, q bound."""

    def gen():
        yield from _leads(ctx, p, q, Side.LEFT, bisim_forest)
        yield from _leads(ctx, q, p, Side.RIGHT, _flip(bisim_forest))

    return LazyForest(gen)


# -- boolean checks --------------------------------------------------------------


def _answers(ctx: Ctx, leader: Pr, follower: Pr, recurse) -> Iterator[bool]:
    """One boolean per leading step: does some follower answer it?"""
    for sigma, r in one_step_sym(ctx, leader):
        s = mk_subst(ctx, sigma)
        lp, p1 = s(r)
        yield any(recurse(ctx, p1, q1) for lq, q1 in fixed_lts.one_step(s(follower)) if lq == lp)
    for sigma, r in one_step_sym_b(ctx, leader):
        s = mk_subst(ctx, sigma)
        lp, bp = s(r)
        x = fresh(bp.hint.base)
        inner = ((All(x) if isinstance(lp, BoundIn) else Nabla(x)), *ctx)
        p1 = instantiate(bp, x)
        yield any(recurse(inner, p1, instantiate(bq, x))
                  for lq, bq in fixed_lts.one_step_b(s(follower)) if lq == lp)


def sim_check(ctx: Ctx, p: Pr, q: Pr) -> bool:
    """True iff ``q`` openly simulates ``p``."""
    return all(_answers(ctx, p, q, sim_check))


def bisim_check(ctx: Ctx, p: Pr, q: Pr) -> bool:
    """True iff ``p`` and ``q`` are open bisimilar."""
    return all(_answers(ctx, p, q, bisim_check)) and all(
        _answers(ctx, q, p, lambda c, a, b: bisim_check(c, b, a)))


def forest_sides_alternate(forest: StepForest) -> bool:
    """Leader and follower levels alternate, and every follower answers on the other side.

    The next round of leaders below a follower may come from either side.
    """
    for t in forest:
        for f in t.children:
            if f.side is t.side or not forest_sides_alternate(f.children):
                return False
    return True
