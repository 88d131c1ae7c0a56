import random
from collections import Counter

import pytest

from pibisim import fixed_lts
from pibisim.open_lts import (
    All, Nabla, UnknownNameError, all_ctx, eqc, insert_pair, mk_subst, one_step_sym,
    one_step_sym_b, respects, union,
)
from pibisim.parser import parse_process
from pibisim.syntax import (
    BoundIn, BoundOut, FreeOut, Name, Null, Nu, Par, Tau, V, bind, free_names_ordered,
    inp, match, nu, out, rename, tau,
)

from gen import gen_process
from oracles import rename_map, worlds_by_hand

x, y, z, w = (Name(s) for s in "xyzw")
TRANSCRIPT = "x!x.0 | y!y.0 | z?(w).0"


def test_fixed_transcript():
    p = parse_process(TRANSCRIPT)
    assert fixed_lts.one_step(p) == [
        (FreeOut(V(x), V(x)), parse_process("0 | y!y.0 | z?(w).0")),
        (FreeOut(V(y), V(y)), parse_process("x!x.0 | 0 | z?(w).0")),
    ]
    assert fixed_lts.one_step_b(p) == [(BoundIn(V(z)), bind(w, parse_process("x!x.0 | y!y.0 | 0")))]


def test_fixed_small_cases():
    assert fixed_lts.one_step(Null()) == []
    assert fixed_lts.one_step_b(tau()) == []
    assert fixed_lts.one_step(nu("x", out("y", "x"))) == []
    assert fixed_lts.one_step_b(nu("x", out("y", "x"))) == [(BoundOut(V(y)), bind(x, Null()))]
    assert fixed_lts.one_step(match("x", "y", tau())) == []
    assert fixed_lts.one_step(match("x", "x", tau())) == [(Tau(), Null())]


def test_interaction_and_close():
    p = parse_process("a!b.0 | a?(y).y!y.0")
    assert fixed_lts.one_step(p)[-1] == (Tau(), parse_process("0 | b!b.0"))
    q = parse_process("nu(x)(a!x.0) | a?(y).y!y.0")
    closes = [r for l, r in fixed_lts.one_step(q) if l == Tau()]
    assert closes == [parse_process("nu(x)(0 | x!x.0)")]
    # the other orientation
    q2 = parse_process("a?(y).y!y.0 | nu(x)(a!x.0)")
    assert [r for l, r in fixed_lts.one_step(q2) if l == Tau()] == [parse_process("nu(x)(x!x.0 | 0)")]


def test_restricted_labels_are_hidden():
    p = parse_process("nu(x)(x!y.0 + y!y.0 + x?(v).0)")
    assert fixed_lts.one_step(p) == [(FreeOut(V(y), V(y)), parse_process("nu(x)0"))]
    assert fixed_lts.one_step_b(p) == []


def test_constraint_canonical():
    assert insert_pair((x, y), ()) == ((x, y),)
    assert insert_pair((y, x), ()) == ((x, y),)
    assert insert_pair((x, x), ((y, z),)) == ((y, z),)
    assert union(((x, y),), ((x, y), (y, z))) == ((x, y), (y, z))


def test_respects_examples():
    ctx = (All(z), Nabla(y), All(x))
    assert respects(eqc((y, z)), ctx)
    assert not respects(eqc((x, y)), ctx)
    assert respects((), ctx)
    with pytest.raises(UnknownNameError):
        respects(eqc((x, w)), ctx)


def test_mk_subst():
    ctx = (All(z), Nabla(y), All(x))
    s = mk_subst(ctx, eqc((y, z)))
    assert (s.name(z), s.name(y), s.name(x)) == (y, y, x)
    assert mk_subst(ctx, ()).is_identity()
    p = out("z", "y", out("x", "z"))
    assert s(s(p)) == s(p)


def test_symbolic_transcript():
    p = parse_process(TRANSCRIPT)
    ctx = (All(z), All(y), All(x))
    assert one_step_sym(ctx, p) == [
        ((), (FreeOut(V(x), V(x)), parse_process("0 | y!y.0 | z?(w).0"))),
        ((), (FreeOut(V(y), V(y)), parse_process("x!x.0 | 0 | z?(w).0"))),
        (((x, z),), (Tau(), parse_process("0 | y!y.0 | 0"))),
        (((y, z),), (Tau(), parse_process("x!x.0 | 0 | 0"))),
    ]
    assert one_step_sym_b(ctx, p) == [((), (BoundIn(V(z)), bind(w, parse_process("x!x.0 | y!y.0 | 0"))))]


def test_symbolic_small_cases():
    assert one_step_sym((), Null()) == []
    assert one_step_sym((All(y), All(x)), match("x", "y", tau())) == [(((x, y),), (Tau(), Null()))]
    assert one_step_sym_b((All(y), All(x)), tau()) == []
    assert one_step_sym_b((All(y),), nu("x", out("y", "x"))) == [((), (BoundOut(V(y)), bind(x, Null())))]


def test_nabla_blocks_match():
    # a restricted name can never equal a free one
    p = parse_process("nu(v)([v=x]tau.0)")
    assert one_step_sym((All(x),), p) == []
    # ... but a later universal may equal an earlier nabla
    ctx = (All(y), Nabla(x))
    assert one_step_sym(ctx, match("x", "y", tau())) == [(((x, y),), (Tau(), Null()))]
    assert one_step_sym((Nabla(y), All(x)), match("x", "y", tau())) == []


def _ctx(p):
    return all_ctx(free_names_ordered(p))


def test_fixed_equals_empty_constraint_fragment():
    rng = random.Random(7)
    for _ in range(300):
        p = gen_process(rng, 4, names=[x, y, z, w])
        ctx = _ctx(p)
        assert Counter(fixed_lts.one_step(p)) == Counter(r for s, r in one_step_sym(ctx, p) if s == ())
        assert Counter(fixed_lts.one_step_b(p)) == Counter(r for s, r in one_step_sym_b(ctx, p) if s == ())


def _entailed(sigma, mapping):
    return all(mapping.get(a, a) == mapping.get(b, b) for a, b in sigma)


def test_symbolic_against_all_worlds():
    """Every world of an all-universal context, checked against substituted fixed steps."""
    rng = random.Random(11)
    for _ in range(120):
        p = gen_process(rng, 4, names=[x, y, z])
        order = free_names_ordered(p)
        ctx = all_ctx(order)
        sym, sym_b = one_step_sym(ctx, p), one_step_sym_b(ctx, p)
        for pairs in worlds_by_hand(order):
            m = rename_map(order, pairs, order)
            got = {rename(r, m) for s, r in sym if _entailed(s, m)}
            got_b = {rename(r, m) for s, r in sym_b if _entailed(s, m)}
            theta_p = rename(p, m)
            assert got == set(fixed_lts.one_step(theta_p)), (p, pairs)
            assert got_b == set(fixed_lts.one_step_b(theta_p)), (p, pairs)


def test_emitted_constraints_respect_and_are_minimal():
    rng = random.Random(3)
    for _ in range(200):
        p = gen_process(rng, 4, names=[x, y, z])
        ctx = _ctx(p)
        for s, _ in one_step_sym(ctx, p) + one_step_sym_b(ctx, p):
            assert respects(s, ctx)
            assert all(a < b for a, b in s)
            assert list(s) == sorted(set(s))


def test_steps_are_deterministic_up_to_alpha():
    p = parse_process("nu(a)(x!a.a?(b).0) | x?(c).c!c.0 + tau.0")
    ctx = _ctx(p)
    assert one_step_sym(ctx, p) == one_step_sym(ctx, p)
    assert fixed_lts.one_step_b(p) == fixed_lts.one_step_b(p)
