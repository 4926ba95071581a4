"""Sparse multivariate Laurent polynomials with integer coefficients.

A :class:`Polynomial` is an immutable mapping from monomials to non-zero
integer coefficients. A monomial is a tuple of ``(name, exponent)`` pairs
sorted by the fixed indeterminate order

    x < X < y < Y < z < s < w < q < t < beta... < z1 < z2 < z3

Exponents may be negative. The uppercase names ``X`` and ``Y`` are the
shifted variables ``x - 1`` and ``y - 1``.
"""

from __future__ import annotations

import enum
import re
from collections.abc import Iterable, Iterator, Mapping
from typing import Union

Monomial = tuple[tuple[str, int], ...]

_BASE = ("x", "X", "y", "Y")
_TAIL = ("z", "z1", "z2", "z3", "s", "w", "q", "t")


def _natural(name: str) -> tuple:
    return tuple(int(p) if p.isdigit() else p for p in re.split(r"(\d+)", name) if p)


def var_rank(name: str) -> tuple:
    """Sort key of an indeterminate in the fixed order."""
    if name in _BASE:
        return (0, _BASE.index(name))
    if name.startswith("beta"):
        return (1, _natural(name))
    if name in _TAIL:
        return (2, _TAIL.index(name))
    return (3, _natural(name))


class Basis(enum.Enum):
    STANDARD = "standard"
    SHIFTED = "shifted"


def _normalize(exps: Mapping[str, int] | Iterable[tuple[str, int]]) -> Monomial:
    items = exps.items() if isinstance(exps, Mapping) else exps
    merged: dict[str, int] = {}
    for name, e in items:
        merged[name] = merged.get(name, 0) + int(e)
    return tuple(sorted(((n, e) for n, e in merged.items() if e), key=lambda p: var_rank(p[0])))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return _normalize(a + b)


Coercible = Union["Polynomial", int]


class Polynomial:
    """Immutable sparse Laurent polynomial over the integers."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        if terms:
            for mono, c in terms.items():
                key = _normalize(mono)
                clean[key] = clean.get(key, 0) + int(c)
            clean = {m: c for m, c in clean.items() if c}
        self._terms = clean
        self._hash: int | None = None

    @classmethod
    def _raw(cls, terms: dict[Monomial, int]) -> Polynomial:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> Polynomial:
        return cls._raw({(): int(c)} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> Polynomial:
        return cls._raw({_normalize({name: exp}): 1})

    @classmethod
    def monomial(cls, coeff: int = 1, **exps: int) -> Polynomial:
        if not coeff:
            return cls._raw({})
        return cls._raw({_normalize(exps): int(coeff)})

    @classmethod
    def parse(cls, text: str) -> Polynomial:
        """Parse ``"2 * X z^3 s + Y^2 - t^-1"`` style text."""
        return parse(text)

    # container protocol

    def terms(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Mapping[str, int] | Monomial) -> int:
        return self._terms.get(_normalize(mono), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> tuple[str, ...]:
        names = {n for mono in self._terms for n, _ in mono}
        return tuple(sorted(names, key=var_rank))

    def degree(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self._terms), default=0)

    def min_degree(self, name: str) -> int:
        return min((dict(m).get(name, 0) for m in self._terms), default=0)

    def is_polynomial(self) -> bool:
        """True when no exponent is negative."""
        return all(e >= 0 for mono in self._terms for _, e in mono)

    # arithmetic

    @staticmethod
    def _coerce(other: Coercible) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, int):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other: Coercible) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Coercible) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Coercible) -> Polynomial:
        return (-self) + other

    def __mul__(self, other: Coercible) -> Polynomial:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                m = _mono_mul(ma, mb)
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be inverted")
            ((mono, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("coefficient is not a unit")
            return Polynomial._raw({tuple((v, e * n) for v, e in mono): c ** (-n)})
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # substitution

    def substitute(self, bindings: Mapping[str, Coercible]) -> Polynomial:
        """Replace indeterminates by polynomials.

        Negative powers of a bound variable require the binding to be a
        unit monomial.
        """
        if not bindings:
            return self
        bound = {k: Polynomial._coerce(v) for k, v in bindings.items()}
        powers: dict[tuple[str, int], Polynomial] = {}
        acc: dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            free = []
            factor = Polynomial.const(c)
            for name, e in mono:
                if name in bound:
                    key = (name, e)
                    if key not in powers:
                        powers[key] = bound[name] ** e
                    factor = factor * powers[key]
                else:
                    free.append((name, e))
            free_mono = tuple(free)
            for m, v in factor._terms.items():
                mm = _mono_mul(free_mono, m)
                s = acc.get(mm, 0) + v
                if s:
                    acc[mm] = s
                else:
                    acc.pop(mm, None)
        return Polynomial._raw(acc)

    def evaluate(self, **values: int) -> Polynomial:
        return self.substitute(values)

    def to_basis(self, src: Basis | str, dst: Basis | str) -> Polynomial:
        return to_basis(self, src, dst)

    # rendering

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        """Terms in graded-lexicographic order, highest first."""
        names = self.variables()

        def key(item: tuple[Monomial, int]):
            d = dict(item[0])
            vec = tuple(d.get(n, 0) for n in names)
            return (-sum(vec), tuple(-v for v in vec))

        return sorted(self._terms.items(), key=key)

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            if not mono:
                parts.append(str(c))
                continue
            body = " ".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            parts.append(f"{c} * {body}")
        return " + ".join(parts)

    def to_json(self) -> list[dict]:
        return [{"coeff": c, "exponents": dict(mono)} for mono, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable[Mapping]) -> Polynomial:
        return cls({_normalize(d["exponents"]): int(d["coeff"]) for d in data})

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def substitute(p: Polynomial, bindings: Mapping[str, Coercible]) -> Polynomial:
    return p.substitute(bindings)


_TO_STANDARD = {"X": Polynomial.var("x") - 1, "Y": Polynomial.var("y") - 1}
_TO_SHIFTED = {"x": Polynomial.var("X") + 1, "y": Polynomial.var("Y") + 1}


def to_basis(p: Polynomial, src: Basis | str, dst: Basis | str) -> Polynomial:
    """Rewrite ``p`` between the standard (x, y) and shifted (X, Y) bases."""
    src, dst = Basis(src), Basis(dst)
    if src is dst:
        return p
    if dst is Basis.STANDARD:
        return p.substitute(_TO_STANDARD)
    return p.substitute(_TO_SHIFTED)


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^\(?\s*-?\s*\d+\s*\)?)|([+-])|(\*))")


def parse(text: str) -> Polynomial:
    """Parse a human-written polynomial such as ``"X z^2 s - 3 * Y^2 + 1"``."""
    text = text.replace("**", "^").strip()
    if text in ("", "0"):
        return Polynomial()
    acc: dict[Monomial, int] = {}
    sign, coeff, exps, started = 1, 1, [], False
    last: list | None = None

    def flush() -> None:
        mono = _normalize(exps)
        acc[mono] = acc.get(mono, 0) + sign * coeff

    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        pos = m.end()
        num, name, power, op, _star = m.groups()
        if op:
            if started:
                flush()
            sign = -1 if op == "-" else 1
            coeff, exps, started, last = 1, [], False, None
        elif num:
            coeff *= int(num)
            started, last = True, ["#", int(num)]
        elif name:
            exps.append((name, 1))
            started, last = True, None
        elif power:
            e = int(re.sub(r"[^0-9-]", "", power))
            if exps and last is None:
                exps[-1] = (exps[-1][0], e)
            elif last is not None:
                coeff = coeff // last[1] * last[1] ** e
            else:
                raise ValueError("dangling exponent")
    if started:
        flush()
    return Polynomial(acc)


def var(name: str) -> Polynomial:
    return Polynomial.var(name)
