import random

import pytest

from pibisim.bisim import FreeLog, bisim_check, bisim_forest, top_ctx
from pibisim.formulas import (
    PLACEHOLDER, box_mat, dia_mat, forest_to_df, iter_df, post, post_b, pre, pre_b,
    subs_matching_act, subs_unifying_act,
)
from pibisim.open_lts import All, eqc
from pibisim.parser import parse_formula as F, parse_process as P
from pibisim.sat import validate_certificate
from pibisim.syntax import (
    Box, BoxB, BoundIn, Dia, DiaB, DiaMatch, FF, FreeOut, Name, Null, TT, Tau, V, bind,
)

from gen import gen_process

x, y, z = Name("x"), Name("y"), Name("z")
CTX = (All(y), All(x))
MOT_P = P("tau.(tau.0) + tau.0")
MOT_Q = P("[x=y](tau.tau.0) + tau.0")


def test_constructors():
    assert pre((), Tau()) == Dia(Tau(), TT())
    assert post([()], Tau()) == Box(Tau(), FF())
    assert post([eqc((x, y))], Tau(), [Box(Tau(), FF())]) == F("[tau]or[<x=y>tt,[tau]ff]")
    assert pre(eqc((x, y)), Tau()) == F("[x=y]<tau>tt")
    assert box_mat((), TT()) == TT()
    assert dia_mat(()) == FF()
    assert dia_mat(eqc((x, y))) == DiaMatch(((V(x), V(y)),), TT())
    a = BoundIn(V(x))
    assert pre_b((), a) == DiaB(a, bind(PLACEHOLDER, TT()))
    assert post_b([()], a) == BoxB(a, bind(PLACEHOLDER, FF()))
    assert pre_b((), a, z, [Dia(FreeOut(V(z), V(z)), TT())]) == F("<x?(w)><w!w>tt")


def test_subs_matching_act():
    log = FreeLog(CTX, eqc((x, y)), Tau(), Null())
    assert subs_matching_act(Tau(), [log]) == [eqc((x, y))]
    assert subs_matching_act(Tau(), []) == []
    ctx = (All(z), All(y), All(x))
    out_log = FreeLog(ctx, eqc((x, y)), FreeOut(V(y), V(z)), Null())
    assert subs_matching_act(FreeOut(V(x), V(z)), [out_log]) == [eqc((x, y))]
    plain = FreeLog(ctx, (), FreeOut(V(y), V(z)), Null())
    assert subs_matching_act(FreeOut(V(x), V(z)), [plain]) == []


def test_subs_unifying_act():
    ctx = (All(z), All(y), All(x))
    plain = FreeLog(ctx, (), FreeOut(V(y), V(z)), Null())
    assert subs_unifying_act(ctx, (), FreeOut(V(x), V(z)), [plain]) == [eqc((x, y))]
    # already enabled in the leader's world: covered by the followers
    assert subs_unifying_act(ctx, eqc((x, y)), FreeOut(V(x), V(z)), [plain]) == []
    assert subs_unifying_act(ctx, (), Tau(), [plain]) == []


@pytest.mark.parametrize("guarded", [True, False])
def test_motivating_certificate(guarded):
    dfs = forest_to_df(bisim_forest(CTX, MOT_P, MOT_Q), guarded)
    want = (F("<tau><tau>tt"), F("[tau]or[<x=y>tt,[tau]ff]"))
    assert want in dfs
    assert all(validate_certificate(CTX, MOT_P, MOT_Q, l, r) for l, r in dfs)


def test_empty_forest_gives_nothing():
    assert forest_to_df(bisim_forest((), Null(), Null())) == []
    p = P("x!y.0 | y?(v).v!x.0")
    assert forest_to_df(bisim_forest(top_ctx(p, p), p, p)) == []


# pairs on which the verbatim construction emits a certificate that does not validate
VERBATIM_BREAKS = [
    ("x!x.0", "y!y.0"),
    ("[x=y]tau.tau.0", "[x=y]tau.0"),
]


@pytest.mark.parametrize("ps, qs", VERBATIM_BREAKS)
def test_verbatim_construction_breaks(ps, qs):
    p, q = P(ps), P(qs)
    ctx = top_ctx(p, q)
    verbatim = forest_to_df(bisim_forest(ctx, p, q), guarded=False)
    assert not all(validate_certificate(ctx, p, q, l, r) for l, r in verbatim)
    guarded = forest_to_df(bisim_forest(ctx, p, q))
    assert guarded and all(validate_certificate(ctx, p, q, l, r) for l, r in guarded)


def test_out_pair_certificate():
    p, q = P("x!x.0"), P("y!y.0")
    ctx = top_ctx(p, q)
    l, r = forest_to_df(bisim_forest(ctx, p, q))[0]
    assert l == F("<x!x>tt")
    # y!y may only do x!x in worlds where x = y
    assert r == F("[x!x]<x=y>tt")


def test_bound_inductive_binder():
    p, q = P("a?(u).u!u.0"), P("a?(u).u!a.0")
    ctx = top_ctx(p, q)
    dfs = forest_to_df(bisim_forest(ctx, p, q))
    assert dfs
    l, r = dfs[0]
    assert isinstance(l, DiaB)
    assert all(validate_certificate(ctx, p, q, a, b) for a, b in dfs)


def _random_pairs(seed, n, depth=3):
    rng = random.Random(seed)
    for _ in range(n):
        yield gen_process(rng, depth), gen_process(rng, depth)


def test_nonempty_iff_not_bisimilar():
    for p, q in _random_pairs(21, 120):
        ctx = top_ctx(p, q)
        first = next(iter_df(bisim_forest(ctx, p, q)), None)
        assert (first is None) == bisim_check(ctx, p, q)


def test_mirror_symmetry():
    for p, q in _random_pairs(23, 80):
        ctx = top_ctx(p, q)
        a = {(l, r) for l, r in forest_to_df(bisim_forest(ctx, p, q))}
        b = {(r, l) for l, r in forest_to_df(bisim_forest(ctx, q, p))}
        assert a == b


def test_first_certificate_is_lazy():
    body = "tau.(tau.tau.0 | tau.tau.0)"
    p, q = P(body), P(body + " + x!x.0")
    forest = bisim_forest(top_ctx(p, q), p, q)
    l, r = next(iter_df(forest))
    assert r == F("<x!x>tt")
    # a base case answers first; no follower's continuation is ever built
    for t in forest:
        for f in t.children:
            assert f.children.expanded == 0
