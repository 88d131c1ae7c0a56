"""Printing processes, formulae, actions and steps in the concrete syntax.

Binders are printed with their hint name when that does not clash with a free
name of the body, otherwise with the first free ``base_k``. Output parses back
to an alpha-equivalent value.
"""

from __future__ import annotations

from .syntax import (
    Bind,
    BoundIn,
    BoundOut,
    Box,
    BoxB,
    BoxMatch,
    Conj,
    Dia,
    DiaB,
    DiaMatch,
    Disj,
    FF,
    FreeOut,
    In,
    Match,
    Name,
    Nu,
    Null,
    Out,
    Par,
    Plus,
    TT,
    Tau,
    TauPrefix,
    free_names,
    instantiate,
)

PLACEHOLDER = Name("?")


def open_for_display(b: Bind, allow_placeholder: bool = False) -> tuple[Name, object]:
    """Open ``b`` with a readable name that captures nothing."""
    taken = {str(n) for n in free_names(b)}
    hint = b.hint
    if hint == PLACEHOLDER or hint.base == PLACEHOLDER.base:
        probe = instantiate(b, PLACEHOLDER)
        if allow_placeholder and PLACEHOLDER not in free_names(probe):
            return PLACEHOLDER, probe
        hint = Name("v")
    k = 0
    while str(Name(hint.base, k)) in taken:
        k += 1
    x = Name(hint.base, k)
    return x, instantiate(b, x)


# -- processes ----------------------------------------------------------------

_SUM, _PAR, _PREFIX = 0, 1, 2


def _level(p) -> int:
    if isinstance(p, Plus):
        return _SUM
    if isinstance(p, Par):
        return _PAR
    return _PREFIX


def _proc(p, ctx_level: int) -> str:
    s = _proc_raw(p)
    return f"({s})" if _level(p) < ctx_level else s


def _proc_raw(p) -> str:
    if isinstance(p, Null):
        return "0"
    if isinstance(p, TauPrefix):
        return f"tau.{_proc(p.cont, _PREFIX)}"
    if isinstance(p, Out):
        return f"{p.chan}!{p.payload}.{_proc(p.cont, _PREFIX)}"
    if isinstance(p, In):
        y, body = open_for_display(p.body)
        return f"{p.chan}?({y}).{_proc(body, _PREFIX)}"
    if isinstance(p, Match):
        return f"[{p.lhs}={p.rhs}]{_proc(p.cont, _PREFIX)}"
    if isinstance(p, Nu):
        x, body = open_for_display(p.body)
        return f"nu({x}){_proc(body, _PREFIX)}"
    if isinstance(p, Plus):
        return f"{_proc(p.left, _SUM)} + {_proc(p.right, _PAR)}"
    if isinstance(p, Par):
        return f"{_proc(p.left, _PAR)} | {_proc(p.right, _PREFIX)}"
    raise TypeError(f"not a process: {p!r}")


def pretty_process(p) -> str:
    return _proc(p, _SUM)


def pretty_abstraction(b: Bind) -> str:
    """A bound residual, written ``y.\\(p)``."""
    y, body = open_for_display(b)
    return f"{y}.\\({pretty_process(body)})"


# -- actions --------------------------------------------------------------------


def pretty_act(a) -> str:
    if isinstance(a, Tau):
        return "tau"
    if isinstance(a, FreeOut):
        return f"{a.chan}!{a.payload}"
    if isinstance(a, BoundOut):
        return f"{a.chan}!"
    if isinstance(a, BoundIn):
        return f"{a.chan}?"
    raise TypeError(f"not an action: {a!r}")


def pretty_eqc(sigma) -> str:
    return "[" + ", ".join(f"({x},{y})" for x, y in sigma) + "]"


# -- formulae -----------------------------------------------------------------------


def pretty_formula(f) -> str:
    if isinstance(f, TT):
        return "tt"
    if isinstance(f, FF):
        return "ff"
    if isinstance(f, Conj):
        return "and[" + ",".join(map(pretty_formula, f.parts)) + "]"
    if isinstance(f, Disj):
        return "or[" + ",".join(map(pretty_formula, f.parts)) + "]"
    if isinstance(f, (Dia, Box)):
        o, c = ("<", ">") if isinstance(f, Dia) else ("[", "]")
        return f"{o}{pretty_act(f.act)}{c}{pretty_formula(f.body)}"
    if isinstance(f, (DiaB, BoxB)):
        o, c = ("<", ">") if isinstance(f, DiaB) else ("[", "]")
        z, body = open_for_display(f.body, allow_placeholder=True)
        return f"{o}{pretty_act(f.act)}({z}){c}{pretty_formula(body)}"
    if isinstance(f, (DiaMatch, BoxMatch)):
        o, c = ("<", ">") if isinstance(f, DiaMatch) else ("[", "]")
        eqs = ",".join(f"{x}={y}" for x, y in f.eqs)
        return f"{o}{eqs}{c}{pretty_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


# -- steps ------------------------------------------------------------------------


def pretty_step(act, residual, sigma=None) -> str:
    """One step as ``(label, residual)``, or ``(constraint, label, residual)``."""
    res = pretty_abstraction(residual) if isinstance(residual, Bind) else pretty_process(residual)
    head = "" if sigma is None else pretty_eqc(sigma) + ", "
    return f"({head}{pretty_act(act)}, {res})"
