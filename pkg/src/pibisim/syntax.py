"""Nominal abstract syntax for finite pi-calculus processes and OM formulae.

Terms use a locally nameless representation: free names are ``V(Name)`` and
occurrences of a name bound by an enclosing :class:`Bind` are ``B(k)`` where
``k`` counts binders outward from the occurrence. A binder keeps the name it
was created with as a hint for opening and printing, but the hint takes no
part in equality or hashing, so ``==`` on any syntax value is alpha-equivalence.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field, fields
from typing import Any, Callable, Iterable, Union


@dataclass(frozen=True, order=True)
class Name:
    base: str
    index: int = 0

    def __str__(self) -> str:
        return self.base if self.index == 0 else f"{self.base}_{self.index}"


class FreshSupply:
    """Per-base monotone counters for fresh name generation.

    Names passed to :meth:`observe` (the parser observes every name it reads)
    are never handed out again.
    """

    def __init__(self) -> None:
        self._next: dict[str, int] = {}
        self._lock = threading.Lock()

    def observe(self, name: Name) -> None:
        with self._lock:
            if self._next.get(name.base, 1) <= name.index:
                self._next[name.base] = name.index + 1

    def fresh(self, base: str) -> Name:
        with self._lock:
            i = self._next.get(base, 1)
            self._next[base] = i + 1
        return Name(base, i)


_supply = FreshSupply()


def fresh(base: str = "x") -> Name:
    return _supply.fresh(base)


def observe(name: Name) -> None:
    _supply.observe(name)


# -- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class V:
    """A free name used as a term."""

    name: Name

    def __str__(self) -> str:
        return str(self.name)


@dataclass(frozen=True)
class B:
    """Bound occurrence; ``index`` 0 refers to the innermost enclosing binder."""

    index: int


Tm = Union[V, B]


@dataclass(frozen=True)
class Bind:
    """An abstraction over one name (``PrB`` or ``FormB``)."""

    hint: Name = field(compare=False)
    body: Any


# -- processes ---------------------------------------------------------------


class Pr:
    __slots__ = ()


@dataclass(frozen=True)
class Null(Pr):
    pass


@dataclass(frozen=True)
class TauPrefix(Pr):
    cont: Pr


@dataclass(frozen=True)
class Out(Pr):
    chan: Tm
    payload: Tm
    cont: Pr


@dataclass(frozen=True)
class In(Pr):
    chan: Tm
    body: Bind


@dataclass(frozen=True)
class Match(Pr):
    lhs: Tm
    rhs: Tm
    cont: Pr


@dataclass(frozen=True)
class Plus(Pr):
    left: Pr
    right: Pr


@dataclass(frozen=True)
class Par(Pr):
    left: Pr
    right: Pr


@dataclass(frozen=True)
class Nu(Pr):
    body: Bind


# -- actions -----------------------------------------------------------------


@dataclass(frozen=True)
class FreeOut:
    chan: Tm
    payload: Tm


@dataclass(frozen=True)
class Tau:
    pass


Act = Union[FreeOut, Tau]


@dataclass(frozen=True)
class BoundOut:
    chan: Tm


@dataclass(frozen=True)
class BoundIn:
    chan: Tm


ActB = Union[BoundOut, BoundIn]


# -- formulae ----------------------------------------------------------------


class Form:
    __slots__ = ()


@dataclass(frozen=True)
class FF(Form):
    pass


@dataclass(frozen=True)
class TT(Form):
    pass


@dataclass(frozen=True)
class Conj(Form):
    parts: tuple


@dataclass(frozen=True)
class Disj(Form):
    parts: tuple


@dataclass(frozen=True)
class Dia(Form):
    act: Act
    body: Form


@dataclass(frozen=True)
class Box(Form):
    act: Act
    body: Form


@dataclass(frozen=True)
class DiaB(Form):
    act: ActB
    body: Bind


@dataclass(frozen=True)
class BoxB(Form):
    act: ActB
    body: Bind


@dataclass(frozen=True)
class DiaMatch(Form):
    eqs: tuple  # of (Tm, Tm)
    body: Form


@dataclass(frozen=True)
class BoxMatch(Form):
    eqs: tuple  # of (Tm, Tm)
    body: Form


# -- generic traversal -------------------------------------------------------

_FIELDS: dict[type, tuple[str, ...]] = {}


def _field_names(cls: type) -> tuple[str, ...]:
    names = _FIELDS.get(cls)
    if names is None:
        names = _FIELDS[cls] = tuple(f.name for f in fields(cls))
    return names


def _map_tm(t: Any, fn: Callable[[Tm, int], Tm], depth: int = 0) -> Any:
    """Rebuild ``t`` with every term occurrence replaced by ``fn(tm, depth)``."""
    if isinstance(t, (V, B)):
        return fn(t, depth)
    if isinstance(t, Bind):
        return Bind(t.hint, _map_tm(t.body, fn, depth + 1))
    if isinstance(t, tuple):
        return tuple(_map_tm(x, fn, depth) for x in t)
    names = _field_names(type(t))
    if not names:
        return t
    return type(t)(*(_map_tm(getattr(t, n), fn, depth) for n in names))


def _iter_tm(t: Any, depth: int = 0) -> Iterable[tuple[Tm, int]]:
    if isinstance(t, (V, B)):
        yield t, depth
    elif isinstance(t, Bind):
        yield from _iter_tm(t.body, depth + 1)
    elif isinstance(t, tuple):
        for x in t:
            yield from _iter_tm(x, depth)
    else:
        for n in _field_names(type(t)):
            yield from _iter_tm(getattr(t, n), depth)


def free_names(t: Any) -> frozenset[Name]:
    return frozenset(tm.name for tm, _ in _iter_tm(t) if isinstance(tm, V))


def free_names_ordered(t: Any) -> list[Name]:
    """Free names in order of first occurrence (left to right)."""
    seen: dict[Name, None] = {}
    for tm, _ in _iter_tm(t):
        if isinstance(tm, V):
            seen.setdefault(tm.name)
    return list(seen)


def substitute(t: Any, old: Name, new: Tm) -> Any:
    """Replace every free occurrence of ``old`` in ``t`` by the free term ``new``."""
    if not isinstance(new, V):
        raise TypeError("substitute expects a free term V(name)")

    def fn(tm: Tm, _depth: int) -> Tm:
        return new if isinstance(tm, V) and tm.name == old else tm

    return _map_tm(t, fn)


def rename(t: Any, mapping: dict[Name, Name]) -> Any:
    """Simultaneous renaming of free names."""
    if not mapping:
        return t

    def fn(tm: Tm, _depth: int) -> Tm:
        if isinstance(tm, V):
            target = mapping.get(tm.name)
            if target is not None:
                return V(target)
        return tm

    return _map_tm(t, fn)


def bind(x: Name, body: Any) -> Bind:
    """Abstract ``x`` out of ``body``."""

    def fn(tm: Tm, depth: int) -> Tm:
        return B(depth) if isinstance(tm, V) and tm.name == x else tm

    return Bind(x, _map_tm(body, fn))


def instantiate(b: Bind, x: Name) -> Any:
    """Open ``b`` with the given name (no freshness check)."""

    def fn(tm: Tm, depth: int) -> Tm:
        return V(x) if isinstance(tm, B) and tm.index == depth else tm

    return _map_tm(b.body, fn)


def unbind(b: Bind) -> tuple[Name, Any]:
    x = fresh(b.hint.base)
    return x, instantiate(b, x)


def unbind2(b1: Bind, b2: Bind) -> tuple[Name, Any, Any]:
    """Open two binders with one common fresh name."""
    x = fresh(b1.hint.base)
    return x, instantiate(b1, x), instantiate(b2, x)


def normalize_conj(fs: Iterable[Form]) -> Form:
    parts = tuple(f for f in fs if f != TT())
    if not parts:
        return TT()
    if len(parts) == 1:
        return parts[0]
    return Conj(parts)


def normalize_disj(fs: Iterable[Form]) -> Form:
    parts = tuple(f for f in fs if f != FF())
    if not parts:
        return FF()
    if len(parts) == 1:
        return parts[0]
    return Disj(parts)


# -- small constructors used throughout tests and examples -------------------


def nm(s: str) -> Name:
    return Name(s)


def out(x: str, y: str, cont: Pr = Null()) -> Out:
    return Out(V(Name(x)), V(Name(y)), cont)


def inp(x: str, y: str, cont: Pr = Null()) -> In:
    return In(V(Name(x)), bind(Name(y), cont))


def nu(x: str, cont: Pr) -> Nu:
    return Nu(bind(Name(x), cont))


def match(x: str, y: str, cont: Pr) -> Match:
    return Match(V(Name(x)), V(Name(y)), cont)


def tau(cont: Pr = Null()) -> TauPrefix:
    return TauPrefix(cont)
