"""Sparse multivariate polynomials with integer coefficients over the edge
variables s_i, t_i, t_{i,k}, z_l."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from ..poset import EdgeVar

# monomial: tuple of (var, exponent) pairs, sorted by EdgeVar.sort_key
Monomial = tuple[tuple[EdgeVar, int], ...]


def _mono(pairs: Iterable[tuple[EdgeVar, int]]) -> Monomial:
    acc: dict[EdgeVar, int] = {}
    for v, e in pairs:
        if e:
            acc[v] = acc.get(v, 0) + e
    return tuple(sorted(((v, e) for v, e in acc.items() if e), key=lambda t: t[0].sort_key()))


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    return _mono(a + b)


def _mono_text(m: Monomial) -> str:
    return "*".join(v.name if e == 1 else f"{v.name}^{e}" for v, e in m)


class SparsePoly:
    """Immutable polynomial stored as ``{monomial: coefficient}`` with no zero
    coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        for m, c in (terms or {}).items():
            c = int(c)
            if c:
                clean[m] = clean.get(m, 0) + c
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def var(cls, v: EdgeVar) -> "SparsePoly":
        return cls({((v, 1),): 1})

    @classmethod
    def const(cls, c: int) -> "SparsePoly":
        return cls({(): c})

    @classmethod
    def monomial(cls, pairs: Iterable[tuple[EdgeVar, int]], coeff: int = 1) -> "SparsePoly":
        return cls({_mono(pairs): coeff})

    @classmethod
    def from_vars(cls, variables: Iterable[EdgeVar]) -> "SparsePoly":
        """The monomial product of a sequence of variables (with repetition)."""
        return cls.monomial((v, 1) for v in variables)

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, other: "SparsePoly | Monomial") -> int:
        if isinstance(other, SparsePoly):
            if len(other) != 1:
                raise ValueError("coefficient() needs a single monomial")
            (m, _), = other._terms.items()
        else:
            m = other
        return self._terms.get(m, 0)

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set[EdgeVar]:
        return {v for m in self._terms for v, _ in m}

    def exponent(self, v: EdgeVar) -> int:
        """Exponent of v in a single monomial."""
        if not self.is_monomial():
            raise ValueError("exponent() is defined for monomials only")
        (m, _), = self._terms.items()
        return dict(m).get(v, 0)

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, int):
            return SparsePoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return SparsePoly(out)

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return SparsePoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = SparsePoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = SparsePoly.const(other)
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def evaluate(self, assignment: Mapping[EdgeVar, int], p: int | None = None) -> int:
        total = 0
        for m, c in self._terms.items():
            term = c
            for v, e in m:
                term *= pow(int(assignment[v]), e, p) if p else int(assignment[v]) ** e
                if p:
                    term %= p
            total += term
        return total % p if p else total

    def _sorted_terms(self):
        def key(item):
            m, _ = item
            return (-sum(e for _, e in m), [(v.sort_key(), -e) for v, e in m])
        return sorted(self._terms.items(), key=key)

    def to_text(self, spaced: bool = False) -> str:
        """``"s_4^4*s_2^3*t_2^2*t_4*z_4"``; ``spaced`` gives the long form
        ``"1 * s_4^4 * s_2^3 * ..."`` with explicit coefficients."""
        if not self._terms:
            return "0"
        pieces = []
        for m, c in self._sorted_terms():
            if spaced:
                body = " * ".join([str(abs(c))] + _mono_text(m).split("*")) if m else str(abs(c))
            else:
                text = _mono_text(m)
                body = text if (abs(c) == 1 and m) else (f"{abs(c)}*{text}" if m else str(abs(c)))
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"SparsePoly({self.to_text()!r})"


_VAR = re.compile(r"^(s|t|z)_(\d+)$|^t_\{(\d+),(\d+)\}$")


def parse_var(text: str) -> EdgeVar:
    text = text.strip()
    m = _VAR.match(text)
    if not m:
        raise ValueError(f"unknown variable {text!r}")
    if m.group(1):
        return EdgeVar(m.group(1), int(m.group(2)))
    return EdgeVar("e", int(m.group(3)), int(m.group(4)))


def parse_poly(text: str) -> SparsePoly:
    """Inverse of :meth:`SparsePoly.to_text` (either form)."""
    text = text.strip()
    if text == "0":
        return SparsePoly()
    # split on + / - that separate terms (never inside t_{i,k})
    tokens = re.split(r"\s+([+-])\s+", text)
    signs = ["+"] + tokens[1::2]
    bodies = tokens[0::2]
    total = SparsePoly()
    for sign, body in zip(signs, bodies):
        body = body.strip()
        coeff = 1
        if body.startswith("-"):
            coeff, body = -1, body[1:].strip()
        pairs = []
        for factor in (f.strip() for f in body.split("*")):
            if re.fullmatch(r"\d+", factor):
                coeff *= int(factor)
                continue
            base, _, exp = factor.partition("^")
            pairs.append((parse_var(base), int(exp) if exp else 1))
        term = SparsePoly.monomial(pairs, coeff)
        total = total + (term if sign == "+" else -term)
    return total
