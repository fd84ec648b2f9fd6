"""Exact integer Laurent polynomials in ``v``.

Values are immutable and normalized: no zero coefficients are ever stored,
so equality is plain dictionary equality.  Coefficients are Python ints but
are held to the signed 64-bit range; leaving it raises
:class:`~heckecat.errors.CoefficientOverflow` instead of wrapping.

>>> p = LaurentPoly({1: 1}) + LaurentPoly({-1: 1})
>>> str(p)
'v^-1 + v'
>>> str(p.bar() * p)
'v^-2 + 2 + v^2'
"""

from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import CoefficientOverflow, NegativeQExponent, ParseError

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

Scalar = Union["LaurentPoly", int]


def _check(c: int) -> int:
    if c > INT64_MAX or c < INT64_MIN:
        raise CoefficientOverflow(f"coefficient {c} leaves the 64-bit range")
    return c


class LaurentPoly:
    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for k, a in coeffs.items():
                if a:
                    c[int(k)] = _check(int(a))
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        # trusted constructor: c is already normalized and range-checked
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def const(cls, a: int) -> "LaurentPoly":
        return cls({0: a})

    @classmethod
    def monomial(cls, k: int, a: int = 1) -> "LaurentPoly":
        return cls({k: a})

    @classmethod
    def coerce(cls, x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.const(x)
        raise TypeError(f"cannot interpret {type(x).__name__} as a Laurent polynomial")

    # -- container-ish access -------------------------------------------

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self._c)

    def coeff(self, k: int) -> int:
        return self._c.get(k, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def degrees(self) -> list[int]:
        return sorted(self._c)

    def min_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    def max_degree(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for k, a in other._c.items():
            b = c.get(k, 0) + a
            if b:
                c[k] = _check(b)
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: _check(-a) for k, a in self._c.items()})

    def __sub__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        elif not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "LaurentPoly":
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other: Scalar) -> "LaurentPoly":
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw({k: _check(a * other) for k, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self._c or not other._c:
            return ZERO
        if len(other._c) == 1:
            ((j, b),) = other._c.items()
            return LaurentPoly._raw({k + j: _check(a * b) for k, a in self._c.items()})
        c: dict[int, int] = {}
        for k, a in self._c.items():
            for j, b in other._c.items():
                c[k + j] = c.get(k + j, 0) + a * b
        return LaurentPoly({k: a for k, a in c.items() if a})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._c) == 1:
                ((k, a),) = self._c.items()
                if a in (1, -1):
                    return LaurentPoly({-k * (-n): a ** (-n)})
            raise ValueError("only units may be raised to negative powers")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``v**k``."""
        if k == 0:
            return self
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The involution ``v -> v^-1``."""
        return LaurentPoly._raw({-k: a for k, a in self._c.items()})

    def eval_at_one(self) -> int:
        return sum(self._c.values())

    def subs_v(self, sign: int) -> "LaurentPoly":
        """Substitute ``v -> sign * v`` for ``sign`` in {1, -1}."""
        if sign == 1:
            return self
        return LaurentPoly._raw({k: (-a if k % 2 else a) for k, a in self._c.items()})

    def positive_part(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: a for k, a in self._c.items() if k > 0})

    def negative_part(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: a for k, a in self._c.items() if k < 0})

    def is_nonnegative(self) -> bool:
        return all(a > 0 for a in self._c.values())

    # -- comparison -----------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- rendering ------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self._c.items()))!r})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i, (k, a) in enumerate(sorted(self._c.items())):
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                mono = "v" if k == 1 else f"v^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if i == 0:
                parts.append(("-" if a < 0 else "") + body)
            else:
                parts.append(("- " if a < 0 else "+ ") + body)
        return " ".join(parts)

    def to_json(self) -> dict[str, int]:
        return {str(k): a for k, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int] | str) -> "LaurentPoly":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls({int(k): int(a) for k, a in data.items()})
        except (AttributeError, ValueError) as exc:
            raise ParseError(f"bad Laurent polynomial JSON: {data!r}") from exc


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})
V_INV = LaurentPoly({-1: 1})
# v^-1 - v, the off-diagonal term of the quadratic relation
QUAD = LaurentPoly({-1: 1, 1: -1})


def from_q_coeffs(qcoeffs: Sequence[int], sign: int) -> LaurentPoly:
    """Evaluate ``sum_i qcoeffs[i] * q**i`` at ``q = v**sign`` (sign = +2 or -2)."""
    if sign not in (2, -2):
        raise ValueError("sign must be +2 or -2")
    return LaurentPoly({sign * i: a for i, a in enumerate(qcoeffs) if a})


# Function-style aliases for the operations named in the interface.

def lp_add(p: Scalar, r: Scalar) -> LaurentPoly:
    return LaurentPoly.coerce(p) + r


def lp_mul(p: Scalar, r: Scalar) -> LaurentPoly:
    return LaurentPoly.coerce(p) * r


def lp_neg(p: Scalar) -> LaurentPoly:
    return -LaurentPoly.coerce(p)


def lp_bar(p: Scalar) -> LaurentPoly:
    return LaurentPoly.coerce(p).bar()


def lp_subst_q(p_in_q: Mapping[int, int] | Sequence[int], sign: int) -> LaurentPoly:
    """Substitute ``q = v**sign`` into a polynomial in ``q``.

    ``p_in_q`` is either a coefficient list (index = q-exponent) or a mapping
    from q-exponents to coefficients.
    """
    if isinstance(p_in_q, Mapping):
        items: Iterable[tuple[int, int]] = p_in_q.items()
    else:
        items = enumerate(p_in_q)
    out = {}
    for e, a in items:
        if e < 0:
            raise NegativeQExponent(f"q-exponent {e} is negative")
        if a:
            out[e] = a
    if sign not in (2, -2):
        raise ValueError("sign must be +2 or -2")
    return LaurentPoly({sign * e: a for e, a in out.items()})


def lp_coeff(p: Scalar, k: int) -> int:
    return LaurentPoly.coerce(p).coeff(k)


def lp_eval_at_one(p: Scalar) -> int:
    return LaurentPoly.coerce(p).eval_at_one()
