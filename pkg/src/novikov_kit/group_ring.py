"""Exact sparse arithmetic in the Laurent group ring Z[Z^m].

Elements are finite integer combinations of monomials ``t^g`` with ``g`` an
exponent vector in Z^m.  Exponent vectors are plain tuples of ints; grading
forms carry exact rational weights so every comparison ``xi(g) >= c`` is
decided exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exponent = tuple  # tuple[int, ...]
Rational = Union[int, Fraction]


class RankMismatch(ValueError):
    pass


def as_exponent(v: Iterable[int]) -> Exponent:
    out = []
    for x in v:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"non-integral exponent {x}")
            x = x.numerator
        elif not isinstance(x, int) or isinstance(x, bool):
            if int(x) != x:
                raise ValueError(f"non-integral exponent {x!r}")
        out.append(int(x))
    if not out:
        raise ValueError("exponent vectors need rank >= 1")
    return tuple(out)


def as_rational(x) -> Fraction:
    """Parse ints, Fractions and "num/den" strings; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted where exact rationals are required")
    return Fraction(x)


def exp_add(g: Exponent, h: Exponent) -> Exponent:
    return tuple(a + b for a, b in zip(g, h))


def exp_sub(g: Exponent, h: Exponent) -> Exponent:
    return tuple(a - b for a, b in zip(g, h))


def exp_scale(k: int, g: Exponent) -> Exponent:
    return tuple(k * a for a in g)


@dataclass(frozen=True)
class GradingForm:
    """A nonzero linear form Z^m -> Q with exact rational weights."""

    weights: tuple

    def __post_init__(self):
        w = tuple(as_rational(x) for x in self.weights)
        if not w:
            raise ValueError("grading form needs rank >= 1")
        if all(x == 0 for x in w):
            raise ValueError("grading form must be nonzero")
        object.__setattr__(self, "weights", w)
        integral = all(x.denominator == 1 for x in w)
        object.__setattr__(self, "_int_weights", tuple(int(x) for x in w) if integral else None)

    @property
    def rank(self) -> int:
        return len(self.weights)

    @property
    def is_integral(self) -> bool:
        return self._int_weights is not None

    @property
    def is_primitive(self) -> bool:
        """Integer-valued and surjective onto Z (weights have gcd 1)."""
        if self._int_weights is None:
            return False
        g = 0
        for x in self._int_weights:
            g = gcd(g, x)
        return g == 1

    def __call__(self, g: Sequence[int]) -> Rational:
        if len(g) != len(self.weights):
            raise RankMismatch(f"form of rank {self.rank} applied to vector of rank {len(g)}")
        if self._int_weights is not None:
            return sum(w * x for w, x in zip(self._int_weights, g))
        return sum((w * x for w, x in zip(self.weights, g)), Fraction(0))

    def eval_rational(self, v: Sequence[Rational]) -> Fraction:
        if len(v) != len(self.weights):
            raise RankMismatch(f"form of rank {self.rank} applied to vector of rank {len(v)}")
        return sum((w * Fraction(x) for w, x in zip(self.weights, v)), Fraction(0))

    def __neg__(self) -> "GradingForm":
        return GradingForm(tuple(-w for w in self.weights))

    def __add__(self, other: "GradingForm") -> "GradingForm":
        _check_rank(self.rank, other.rank)
        return GradingForm(tuple(a + b for a, b in zip(self.weights, other.weights)))

    def __sub__(self, other: "GradingForm") -> "GradingForm":
        return self + (-other)

    def scaled(self, k: Rational) -> "GradingForm":
        return GradingForm(tuple(k * w for w in self.weights))

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


def grading_eval(xi: GradingForm, g: Sequence[int]) -> Rational:
    return xi(g)


def _check_rank(m: int, n: int) -> None:
    if m != n:
        raise RankMismatch(f"rank mismatch: {m} != {n}")


class LaurentElement:
    """Immutable element of Z[Z^m] stored as a sparse exponent -> coefficient map.

    Zero coefficients are never stored.  The ambient rank is part of the value,
    so the zero element of Z[Z^2] differs from the zero element of Z[Z^3].
    """

    __slots__ = ("_terms", "_rank", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], int] | Iterable = (), rank: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        for g, c in items:
            g = as_exponent(g)
            if rank is None:
                rank = len(g)
            elif len(g) != rank:
                raise RankMismatch(f"exponent {g} does not have rank {rank}")
            if not isinstance(c, int) or isinstance(c, bool):
                if isinstance(c, Fraction) and c.denominator == 1:
                    c = c.numerator
                else:
                    raise TypeError(f"coefficients must be integers, got {c!r}")
            c = clean.get(g, 0) + c
            if c:
                clean[g] = c
            else:
                clean.pop(g, None)
        if rank is None:
            raise ValueError("rank is required for an element without terms")
        self._terms = clean
        self._rank = rank
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, rank: int) -> "LaurentElement":
        # trusted constructor: terms already normalized
        obj = object.__new__(cls)
        obj._terms = terms
        obj._rank = rank
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, rank: int) -> "LaurentElement":
        return cls._raw({}, rank)

    @classmethod
    def one(cls, rank: int) -> "LaurentElement":
        return cls._raw({(0,) * rank: 1}, rank)

    @classmethod
    def monomial(cls, g: Sequence[int], coeff: int = 1) -> "LaurentElement":
        g = as_exponent(g)
        return cls._raw({g: coeff} if coeff else {}, len(g))

    @classmethod
    def constant(cls, c: int, rank: int) -> "LaurentElement":
        return cls._raw({(0,) * rank: c} if c else {}, rank)

    @property
    def rank(self) -> int:
        return self._rank

    def items(self) -> Iterator[tuple]:
        """Terms in lexicographic exponent order."""
        return iter(sorted(self._terms.items()))

    def support(self) -> list:
        return sorted(self._terms)

    def coefficient(self, g: Sequence[int]) -> int:
        return self._terms.get(tuple(g), 0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            return self == LaurentElement.constant(other, self._rank)
        if not isinstance(other, LaurentElement):
            return NotImplemented
        return self._rank == other._rank and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._rank, frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> "LaurentElement":
        if isinstance(other, LaurentElement):
            _check_rank(self._rank, other._rank)
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return LaurentElement.constant(other, self._rank)
        return NotImplemented

    def __add__(self, other) -> "LaurentElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for g, c in b.items():
            s = out.get(g, 0) + c
            if s:
                out[g] = s
            else:
                del out[g]
        return LaurentElement._raw(out, self._rank)

    __radd__ = __add__

    def __neg__(self) -> "LaurentElement":
        return LaurentElement._raw({g: -c for g, c in self._terms.items()}, self._rank)

    def __sub__(self, other) -> "LaurentElement":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentElement":
        return (-self) + other

    def __mul__(self, other) -> "LaurentElement":
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 0:
                return LaurentElement.zero(self._rank)
            return LaurentElement._raw({g: c * other for g, c in self._terms.items()}, self._rank)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        for g, c in self._terms.items():
            for h, d in other._terms.items():
                k = tuple(a + b for a, b in zip(g, h))
                out[k] = get(k, 0) + c * d
        return LaurentElement._raw({g: c for g, c in out.items() if c}, self._rank)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentElement":
        if n < 0:
            if len(self._terms) == 1:
                (g, c), = self._terms.items()
                if abs(c) == 1:
                    return LaurentElement._raw({exp_scale(n, g): c ** (-n)}, self._rank)
            raise ValueError("only monomials with unit coefficient are invertible")
        result = LaurentElement.one(self._rank)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, g: Sequence[int]) -> "LaurentElement":
        """Multiply by the monomial t^g."""
        g = tuple(g)
        _check_rank(self._rank, len(g))
        return LaurentElement._raw({exp_add(h, g): c for h, c in self._terms.items()}, self._rank)

    def norm(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    def truncate(self, xi: GradingForm, c: Rational) -> "LaurentElement":
        return LaurentElement._raw({g: n for g, n in self._terms.items() if xi(g) >= c}, self._rank)

    def max_grade(self, xi: GradingForm):
        """Largest xi-value on the support, or None for zero."""
        return max((xi(g) for g in self._terms), default=None)

    def min_grade(self, xi: GradingForm):
        return min((xi(g) for g in self._terms), default=None)

    def grades(self, xi: GradingForm) -> set:
        return {xi(g) for g in self._terms}

    def __repr__(self) -> str:
        return f"LaurentElement({dict(self.items())!r}, rank={self._rank})"

    def __str__(self) -> str:
        return format_element(self)


def lp_add(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    return a + b


def lp_mul(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    return a * b


def lp_norm(a: LaurentElement) -> int:
    return a.norm()


def lp_truncate_at(a: LaurentElement, xi: GradingForm, c: Rational) -> LaurentElement:
    _check_rank(a.rank, xi.rank)
    return a.truncate(xi, c)


def exact_divide(a: LaurentElement, b: LaurentElement) -> LaurentElement | None:
    """Return q with a == q*b if one exists in Z[Z^m], else None.

    Long division on lexicographic leading terms.  Every term of a true
    quotient lies between low(a)-low(b) and lead(a)-lead(b), which bounds the
    loop when b does not divide a.
    """
    _check_rank(a.rank, b.rank)
    if not b:
        raise ZeroDivisionError("division by zero element")
    if not a:
        return LaurentElement.zero(a.rank)
    lead_b = max(b._terms)
    lc_b = b._terms[lead_b]
    floor = exp_sub(min(a._terms), min(b._terms))
    rem = dict(a._terms)
    q: dict = {}
    while rem:
        lead_r = max(rem)
        g = exp_sub(lead_r, lead_b)
        if g < floor:
            return None
        c, r = divmod(rem[lead_r], lc_b)
        if r:
            return None
        q[g] = c
        for h, d in b._terms.items():
            k = exp_add(h, g)
            s = rem.get(k, 0) - c * d
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return LaurentElement._raw(q, a.rank)


def format_element(a: LaurentElement, var: str = "t") -> str:
    """Plain-text rendering; rank-1 elements print as Laurent polynomials in t
    with descending exponents."""
    if not a:
        return "0"
    if a.rank == 1:
        items = sorted(a._terms.items(), key=lambda kv: -kv[0][0])
    else:
        items = sorted(a._terms.items(), reverse=True)
    parts = []
    for g, c in items:
        if a.rank == 1:
            e = g[0]
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
        else:
            mono = "" if not any(g) else f"{var}^({','.join(str(x) for x in g)})"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
