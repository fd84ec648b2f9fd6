"""Grothendieck group of graded principal-block category O.

The group is a free Z[v, v^-1]-module; a :class:`CharacterVector` is a
sparse coordinate vector in one of six bases (Verma, dual Verma, simple,
projective, tilting, injective).  Shifting the grading by ``k`` multiplies
by ``v**k``.

Every basis except the projective one is expanded in the dual Verma basis;
projectives are expanded in the Verma basis.  Each expansion is
unitriangular for the Bruhat order, so conversions back are done by
peeling off one element at a time in length order.
"""

from __future__ import annotations

import enum
import re
import threading
import weakref
from typing import Callable, Iterator, Mapping

from . import _render
from .coxeter import CoxeterGroup
from .errors import GroupMismatch, ParseError, TriangularityViolation, WrongBasis
from .hecke import HeckeElement, h_inv_std, kl_cache
from .laurent import ZERO, LaurentPoly, Scalar, from_q_coeffs


class BasisTag(enum.Enum):
    DELTA = "Delta"
    NABLA = "Nabla"
    SIMPLE = "Simple"
    PROJECTIVE = "Projective"
    TILTING = "Tilting"
    INJECTIVE = "Injective"

    @property
    def symbol(self) -> str:
        return _SYMBOLS[self]

    @classmethod
    def parse(cls, text: "str | BasisTag") -> "BasisTag":
        if isinstance(text, BasisTag):
            return text
        key = text.strip()
        tag = _ALIASES.get(key) or _ALIASES.get(key.lower())
        if tag is None:
            raise ParseError(f"unknown basis {text!r}")
        return tag


_SYMBOLS = {
    BasisTag.DELTA: "Δ",
    BasisTag.NABLA: "∇",
    BasisTag.SIMPLE: "L",
    BasisTag.PROJECTIVE: "P",
    BasisTag.TILTING: "T",
    BasisTag.INJECTIVE: "I",
}

_ALIASES: dict[str, BasisTag] = {}
for _tag in BasisTag:
    _ALIASES[_tag.value] = _tag
    _ALIASES[_tag.value.lower()] = _tag
    _ALIASES[_SYMBOLS[_tag]] = _tag
_ALIASES.update(
    {
        "verma": BasisTag.DELTA,
        "dualverma": BasisTag.NABLA,
        "L": BasisTag.SIMPLE,
        "l": BasisTag.SIMPLE,
        "P": BasisTag.PROJECTIVE,
        "p": BasisTag.PROJECTIVE,
        "T": BasisTag.TILTING,
        "t": BasisTag.TILTING,
        "I": BasisTag.INJECTIVE,
        "i": BasisTag.INJECTIVE,
    }
)

DELTA, NABLA, SIMPLE, PROJECTIVE, TILTING, INJECTIVE = (
    BasisTag.DELTA,
    BasisTag.NABLA,
    BasisTag.SIMPLE,
    BasisTag.PROJECTIVE,
    BasisTag.TILTING,
    BasisTag.INJECTIVE,
)


class CharacterVector:
    """``sum_x c_x [B(x)]`` for one basis ``B``."""

    __slots__ = ("group", "basis", "_c")

    def __init__(self, group: CoxeterGroup, basis: BasisTag | str, coords: Mapping[int, Scalar] | None = None):
        self.group = group
        self.basis = BasisTag.parse(basis)
        c = {}
        if coords:
            for w, p in coords.items():
                p = LaurentPoly.coerce(p)
                if p:
                    c[int(w)] = p
        self._c = c

    @classmethod
    def _raw(cls, group, basis, c):
        out = cls.__new__(cls)
        out.group = group
        out.basis = basis
        out._c = c
        return out

    @classmethod
    def unit(cls, group: CoxeterGroup, basis: BasisTag | str, x: int, coeff: Scalar = 1) -> "CharacterVector":
        return cls(group, basis, {x: coeff})

    @classmethod
    def zero(cls, group: CoxeterGroup, basis: BasisTag | str) -> "CharacterVector":
        return cls(group, basis)

    def coeff(self, x: int) -> LaurentPoly:
        return self._c.get(x, ZERO)

    __getitem__ = coeff

    def items(self) -> Iterator[tuple[int, LaurentPoly]]:
        return iter(sorted(self._c.items()))

    def as_dict(self) -> dict[int, LaurentPoly]:
        return dict(self._c)

    def support(self) -> list[int]:
        return sorted(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def _compatible(self, other: "CharacterVector") -> None:
        if other.group is not self.group:
            raise GroupMismatch("character vectors belong to different groups")
        if other.basis is not self.basis:
            raise WrongBasis(f"cannot combine {self.basis.value} and {other.basis.value} coordinates")

    def __eq__(self, other) -> bool:
        if isinstance(other, CharacterVector):
            return self.group is other.group and self.basis is other.basis and self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    __hash__ = None

    def equals(self, other: "CharacterVector") -> bool:
        """Equality of classes, converting ``other`` to this basis first."""
        return self == change_basis(other, self.basis)

    def __add__(self, other: "CharacterVector") -> "CharacterVector":
        if not isinstance(other, CharacterVector):
            return NotImplemented
        self._compatible(other)
        c = dict(self._c)
        for w, p in other._c.items():
            q = c.get(w, ZERO) + p
            if q:
                c[w] = q
            else:
                c.pop(w, None)
        return CharacterVector._raw(self.group, self.basis, c)

    def __neg__(self) -> "CharacterVector":
        return CharacterVector._raw(self.group, self.basis, {w: -p for w, p in self._c.items()})

    def __sub__(self, other: "CharacterVector") -> "CharacterVector":
        if not isinstance(other, CharacterVector):
            return NotImplemented
        return self + (-other)

    def scale(self, a: Scalar) -> "CharacterVector":
        a = LaurentPoly.coerce(a)
        c = {}
        for w, p in self._c.items():
            q = p * a
            if q:
                c[w] = q
        return CharacterVector._raw(self.group, self.basis, c)

    def __mul__(self, a):
        if isinstance(a, (int, LaurentPoly)):
            return self.scale(a)
        return NotImplemented

    __rmul__ = __mul__

    def shift(self, k: int) -> "CharacterVector":
        """Grading shift ``<k>``, i.e. multiplication by ``v**k``."""
        return CharacterVector._raw(self.group, self.basis, {w: p.shift(k) for w, p in self._c.items()})

    def to(self, basis: BasisTag | str) -> "CharacterVector":
        return change_basis(self, basis)

    def eval_at_one(self) -> dict[int, int]:
        return {w: p.eval_at_one() for w, p in sorted(self._c.items())}

    def __repr__(self) -> str:
        return f"CharacterVector({self.group.cartan}, {self.basis.value}, {self})"

    def __str__(self) -> str:
        g = self.group
        sym = self.basis.symbol
        return _render.join(
            _render.term(p, f"[{sym}({g.word_str(w)})]") for w, p in sorted(self._c.items(), reverse=True)
        )

    def to_json(self) -> dict:
        g = self.group
        return {
            "basis": self.basis.value,
            "terms": [{"w": g.word_str(w), "coeff": p.to_json()} for w, p in sorted(self._c.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping, group: CoxeterGroup) -> "CharacterVector":
        try:
            basis = BasisTag.parse(data["basis"])
            coords: dict[int, LaurentPoly] = {}
            for t in data["terms"]:
                w = group.element(t["w"])
                coords[w] = coords.get(w, ZERO) + LaurentPoly.from_json(t["coeff"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed character vector JSON: {exc}") from exc
        return cls(group, basis, coords)


def _upper(g: CoxeterGroup, x: int, y: int) -> bool:
    return g.bruhat_leq(x, y)


def _lower(g: CoxeterGroup, x: int, y: int) -> bool:
    return g.bruhat_leq(y, x)


class _KData:
    """Per-group expansions and cached transition columns."""

    def __init__(self, group: CoxeterGroup):
        self.group = group
        self.kl = kl_cache(group)
        self._lock = threading.Lock()
        self._home: dict[tuple[BasisTag, int], dict[int, LaurentPoly]] = {}
        self._columns: dict[tuple[BasisTag, BasisTag], dict[int, dict[int, LaurentPoly]]] = {}

    # home basis, expansion, and triangularity direction for each tag
    def spec(self, tag: BasisTag) -> tuple[BasisTag, Callable[[int], dict], bool]:
        return {
            SIMPLE: (NABLA, self._simple_in_nabla, True),
            DELTA: (NABLA, self._delta_in_nabla, True),
            TILTING: (NABLA, self._tilting_in_nabla, True),
            INJECTIVE: (NABLA, self._injective_in_nabla, False),
            PROJECTIVE: (DELTA, self._projective_in_delta, False),
        }[tag]

    def home(self, tag: BasisTag, x: int) -> dict[int, LaurentPoly]:
        key = (tag, x)
        got = self._home.get(key)
        if got is None:
            _, fn, upward = self.spec(tag)
            got = fn(x)
            self._check(tag, x, got, upward)
            with self._lock:
                got = self._home.setdefault(key, got)
        return got

    def _check(self, tag, x, exp, upward):
        g = self.group
        if exp.get(x) != 1:
            raise TriangularityViolation(f"[{tag.symbol}({g.word_str(x)})] has diagonal {exp.get(x)}")
        ok = _upper if upward else _lower
        for y in exp:
            if not ok(g, x, y):
                raise TriangularityViolation(
                    f"[{tag.symbol}({g.word_str(x)})] involves {g.word_str(y)} outside its Bruhat interval"
                )

    # -- expansions -----------------------------------------------------

    def _simple_in_nabla(self, x: int) -> dict[int, LaurentPoly]:
        # [L(x)] = sum_{y >= x} (-v)^{l(x)-l(y)} P_{w0 y, w0 x}(v^2) [nabla(y)]
        g, kl = self.group, self.kl
        w0 = g.w0
        lx = g.ell(x)
        out = {}
        for y in g.above(x):
            y = int(y)
            d = g.ell(y) - lx
            p = from_q_coeffs(kl.kl_poly(g.multiply(w0, y), g.multiply(w0, x)), 2).shift(-d)
            out[y] = p * (-1 if d % 2 else 1)
        return out

    def _delta_in_nabla(self, x: int) -> dict[int, LaurentPoly]:
        # H_{(w0 x)^-1}^-1 = H_{w0 x} + sum r_{y,x} H_{w0 y}
        g = self.group
        w0 = g.w0
        h = h_inv_std(g, g.inverse(g.multiply(w0, x)))
        return {g.multiply(w0, u): p for u, p in h.items()}

    def _tilting_in_nabla(self, x: int) -> dict[int, LaurentPoly]:
        g = self.group
        return psi_from_hecke(self.kl.kl_basis(g.multiply(g.w0, x)))._c

    def _injective_in_nabla(self, x: int) -> dict[int, LaurentPoly]:
        g = self.group
        return psi_from_hecke(self.kl.dual_twisted_kl_basis(g.multiply(g.w0, x)))._c

    def _projective_in_delta(self, x: int) -> dict[int, LaurentPoly]:
        return self.kl.kl_basis(x).as_dict()

    # -- conversions ----------------------------------------------------

    def nabla_column(self, tag: BasisTag, x: int) -> dict[int, LaurentPoly]:
        if tag is NABLA:
            return {x: LaurentPoly.const(1)}
        home, _, _ = self.spec(tag)
        exp = self.home(tag, x)
        if home is NABLA:
            return exp
        return self.column(home, NABLA, exp)

    def column(self, source: BasisTag, target: BasisTag, coords: Mapping[int, LaurentPoly]) -> dict[int, LaurentPoly]:
        out: dict[int, LaurentPoly] = {}
        for x, p in coords.items():
            for y, q in self.transition(source, target, x).items():
                r = out.get(y, ZERO) + q * p
                if r:
                    out[y] = r
                else:
                    out.pop(y, None)
        return out

    def transition(self, source: BasisTag, target: BasisTag, x: int) -> dict[int, LaurentPoly]:
        """Coordinates of ``[source(x)]`` in the ``target`` basis (cached)."""
        if source is target:
            return {x: LaurentPoly.const(1)}
        table = self._columns.get((source, target))
        if table is None:
            with self._lock:
                table = self._columns.setdefault((source, target), {})
        got = table.get(x)
        if got is None:
            got = self.from_nabla(self.nabla_column(source, x), target)
            table[x] = got
        return got

    def from_nabla(self, coords: Mapping[int, LaurentPoly], target: BasisTag) -> dict[int, LaurentPoly]:
        if target is NABLA:
            return dict(coords)
        home, _, upward = self.spec(target)
        if home is not NABLA:
            coords = self.from_nabla(coords, home)
        return self._peel(coords, target, upward)

    def _peel(self, coords, tag, upward) -> dict[int, LaurentPoly]:
        rem = {w: p for w, p in coords.items() if p}
        out = {}
        order = range(self.group.order) if upward else range(self.group.order - 1, -1, -1)
        for x in order:
            if not rem:
                break
            c = rem.pop(x, None)
            if c is None:
                continue
            out[x] = c
            for y, q in self.home(tag, x).items():
                if y == x:
                    continue
                r = rem.get(y, ZERO) - q * c
                if r:
                    rem[y] = r
                else:
                    rem.pop(y, None)
        return out


_kdata: "weakref.WeakKeyDictionary[CoxeterGroup, _KData]" = weakref.WeakKeyDictionary()
_kdata_lock = threading.Lock()


def _data(group: CoxeterGroup) -> _KData:
    got = _kdata.get(group)
    if got is None:
        with _kdata_lock:
            got = _kdata.get(group)
            if got is None:
                got = _kdata[group] = _KData(group)
    return got


def change_basis(vec: CharacterVector, target: BasisTag | str) -> CharacterVector:
    target = BasisTag.parse(target)
    if vec.basis is target:
        return vec
    data = _data(vec.group)
    return CharacterVector._raw(vec.group, target, data.column(vec.basis, target, vec._c))


def basis_vector(group: CoxeterGroup, basis: BasisTag | str, x: int, coeff: Scalar = 1) -> CharacterVector:
    return CharacterVector.unit(group, basis, x, coeff)


def expand(group: CoxeterGroup, source: BasisTag | str, x: int, target: BasisTag | str) -> CharacterVector:
    """``[source(x)]`` written in the ``target`` basis."""
    return change_basis(CharacterVector.unit(group, source, x), target)


def verma_in_nabla(group: CoxeterGroup, x: int) -> CharacterVector:
    return CharacterVector(group, NABLA, _data(group).home(DELTA, x))


def r_coefficient(group: CoxeterGroup, y: int, x: int) -> LaurentPoly:
    """``r_{y,x}``: coefficient of ``[nabla(y)]`` in ``[Delta(x)]``."""
    return _data(group).home(DELTA, x).get(y, ZERO)


def delta_in_simple(group: CoxeterGroup, x: int) -> CharacterVector:
    """``[Delta(x)] = sum_{z >= x} v^{l(z)-l(x)} P_{x,z}(v^-2) [L(z)]``, read directly off P."""
    kl = kl_cache(group)
    lx = group.ell(x)
    coords = {}
    for z in group.above(x):
        z = int(z)
        coords[z] = from_q_coeffs(kl.kl_poly(x, z), -2).shift(group.ell(z) - lx)
    return CharacterVector(group, SIMPLE, coords)


def delta_to_simple(group: CoxeterGroup) -> list[list[LaurentPoly]]:
    """Matrix ``M[x][z] = [Delta(x) : L(z)]`` (graded multiplicities)."""
    n = group.order
    out = [[ZERO] * n for _ in range(n)]
    for x in range(n):
        for z, p in delta_in_simple(group, x).items():
            out[x][z] = p
    return out


def ringel_dual(vec: CharacterVector) -> CharacterVector:
    """Relabel ``[Delta(w)] -> [nabla(w0 w)]``."""
    if vec.basis is not DELTA:
        raise WrongBasis(f"Ringel duality takes Delta coordinates, got {vec.basis.value}")
    g = vec.group
    return CharacterVector._raw(g, NABLA, {g.multiply(g.w0, w): p for w, p in vec._c.items()})


# ---------------------------------------------------------------------------
# Isomorphisms with the Hecke algebra


def phi_to_hecke(vec: CharacterVector) -> HeckeElement:
    """``phi^-1``: ``[Delta(w)] -> H_w``."""
    d = change_basis(vec, DELTA)
    return HeckeElement(vec.group, d._c)


def phi_from_hecke(h: HeckeElement) -> CharacterVector:
    return CharacterVector(h.group, DELTA, h.as_dict())


def psi_to_hecke(vec: CharacterVector) -> HeckeElement:
    """``psi^-1``: ``[nabla(w0 w)] -> H_w``."""
    g = vec.group
    n = change_basis(vec, NABLA)
    return HeckeElement(g, {g.multiply(g.w0, x): p for x, p in n._c.items()})


def psi_from_hecke(h: HeckeElement) -> CharacterVector:
    g = h.group
    return CharacterVector(g, NABLA, {g.multiply(g.w0, w): p for w, p in h.items()})


def rho_twist_to_hecke(vec: CharacterVector) -> HeckeElement:
    """``rho``: ``[nabla(x)<k>] -> v^k H_{w0 x^-1}``."""
    g = vec.group
    n = change_basis(vec, NABLA)
    return HeckeElement(g, {g.multiply(g.w0, g.inverse(x)): p for x, p in n._c.items()})


def rho_twist_from_hecke(h: HeckeElement) -> CharacterVector:
    g = h.group
    # H_u with u = w0 x^-1, so x = u^-1 w0
    return CharacterVector(g, NABLA, {g.multiply(g.inverse(u), g.w0): p for u, p in h.items()})


def rho_shuffle_to_hecke(vec: CharacterVector) -> HeckeElement:
    """``rho'``: ``[nabla(x)<k>] -> v^k H_{w0 x}``."""
    return psi_to_hecke(vec)


def rho_shuffle_from_hecke(h: HeckeElement) -> CharacterVector:
    return psi_from_hecke(h)


_TRANSPORT = {
    ("phi", "to_hecke"): phi_to_hecke,
    ("phi", "from_hecke"): phi_from_hecke,
    ("psi", "to_hecke"): psi_to_hecke,
    ("psi", "from_hecke"): psi_from_hecke,
    ("rho_twist", "to_hecke"): rho_twist_to_hecke,
    ("rho_twist", "from_hecke"): rho_twist_from_hecke,
    ("rho_shuffle", "to_hecke"): rho_shuffle_to_hecke,
    ("rho_shuffle", "from_hecke"): rho_shuffle_from_hecke,
}


def transport(map_name: str, direction: str, arg):
    """Apply one of ``phi``, ``psi``, ``rho_twist``, ``rho_shuffle`` in ``direction``.

    ``to_hecke`` takes a :class:`CharacterVector` (any basis) and
    ``from_hecke`` a :class:`HeckeElement`.
    """
    try:
        fn = _TRANSPORT[(map_name, direction)]
    except KeyError:
        raise ValueError(f"unknown transport {map_name!r}/{direction!r}") from None
    return fn(arg)


# ---------------------------------------------------------------------------
# Text syntax for classes: "L[121]", "nabla[e]<1>", "P[1] + delta[w0]<-2>"

_CLASS_TERM = re.compile(r"\s*(-)?\s*([A-Za-z]+)\[([^\]]*)\]\s*(?:<\s*(-?\d+)\s*>)?\s*")


def parse_class(group: CoxeterGroup, text: str) -> CharacterVector:
    """Parse a sum of (shifted) basis classes; all terms must share one basis."""
    basis = None
    coords: dict[int, LaurentPoly] = {}
    pos = 0
    first = True
    text = text.strip()
    while pos < len(text):
        if not first:
            if text[pos] == "+":
                pos += 1
            elif text[pos] != "-":
                raise ParseError(f"expected '+' or '-' at {text[pos:]!r}")
        m = _CLASS_TERM.match(text, pos)
        if not m:
            raise ParseError(f"cannot parse class at {text[pos:]!r}")
        tag = BasisTag.parse(m.group(2))
        if basis is None:
            basis = tag
        elif tag is not basis:
            raise ParseError("all terms of a class expression must use the same basis")
        w = group.element(m.group(3))
        k = int(m.group(4) or 0)
        c = LaurentPoly.monomial(k, -1 if m.group(1) else 1)
        coords[w] = coords.get(w, ZERO) + c
        pos = m.end()
        first = False
        while pos < len(text) and text[pos].isspace():
            pos += 1
    if basis is None:
        raise ParseError("empty class expression")
    return CharacterVector(group, basis, coords)
