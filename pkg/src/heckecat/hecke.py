"""The Iwahori-Hecke algebra of a finite Weyl group and its KL-type bases.

Normalization: ``H_s^2 = (v^-1 - v) H_s + H_e``, so the Kazhdan-Lusztig
element of a simple reflection is ``H_s + v`` and the twisted one is
``H_s - v^-1``.  Hecke elements are immutable sparse maps from group-element
indices to :class:`~heckecat.laurent.LaurentPoly` coordinates in the standard
basis.
"""

from __future__ import annotations

import json
import random
import threading
import weakref
from pathlib import Path
from typing import Iterator, Mapping

import numpy as np

from . import _kernels, _render
from .coxeter import CoxeterGroup, build_group, CartanType
from .errors import CacheFormatError, GroupMismatch, Inconsistency, MissingCache, TriangularityViolation
from .laurent import ONE, QUAD, ZERO, LaurentPoly, Scalar, from_q_coeffs

FORMAT_VERSION = 1

# v - v^-1, the constant term of H_s^-1
_INV_CONST = -QUAD


class HeckeElement:
    """An element ``sum_w c_w H_w`` of the Hecke algebra of ``group``."""

    __slots__ = ("group", "_c")

    def __init__(self, group: CoxeterGroup, coeffs: Mapping[int, Scalar] | None = None):
        self.group = group
        c = {}
        if coeffs:
            for w, p in coeffs.items():
                p = LaurentPoly.coerce(p)
                if p:
                    c[int(w)] = p
        self._c = c

    @classmethod
    def _raw(cls, group, c):
        h = cls.__new__(cls)
        h.group = group
        h._c = c
        return h

    @classmethod
    def std(cls, group: CoxeterGroup, w: int, coeff: Scalar = 1) -> "HeckeElement":
        return cls(group, {w: coeff})

    @classmethod
    def zero(cls, group: CoxeterGroup) -> "HeckeElement":
        return cls._raw(group, {})

    def coeff(self, w: int) -> LaurentPoly:
        return self._c.get(w, ZERO)

    __getitem__ = coeff

    def items(self) -> Iterator[tuple[int, LaurentPoly]]:
        return iter(sorted(self._c.items()))

    def support(self) -> list[int]:
        return sorted(self._c)

    def as_dict(self) -> dict[int, LaurentPoly]:
        return dict(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def _same(self, other: "HeckeElement") -> None:
        if other.group is not self.group:
            raise GroupMismatch("Hecke elements belong to different groups")

    def __eq__(self, other) -> bool:
        if isinstance(other, HeckeElement):
            return self.group is other.group and self._c == other._c
        if other == 0:
            return not self._c
        return NotImplemented

    __hash__ = None

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self._same(other)
        c = dict(self._c)
        for w, p in other._c.items():
            q = c.get(w, ZERO) + p
            if q:
                c[w] = q
            else:
                c.pop(w, None)
        return HeckeElement._raw(self.group, c)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement._raw(self.group, {w: -p for w, p in self._c.items()})

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self + (-other)

    def scale(self, a: Scalar) -> "HeckeElement":
        a = LaurentPoly.coerce(a)
        c = {}
        for w, p in self._c.items():
            q = p * a
            if q:
                c[w] = q
        return HeckeElement._raw(self.group, c)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return h_mul(self, other)
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return self.scale(other)
        return NotImplemented

    def mul_gen(self, s: int) -> "HeckeElement":
        """Right multiplication by ``H_s``."""
        g = self.group
        c: dict[int, LaurentPoly] = {}

        def add(w, p):
            q = c.get(w, ZERO) + p
            if q:
                c[w] = q
            else:
                c.pop(w, None)

        for x, p in self._c.items():
            xs = g.rmul(x, s)
            add(xs, p)
            if g.length[xs] < g.length[x]:
                add(x, p * QUAD)
        return HeckeElement._raw(g, c)

    def bar(self) -> "HeckeElement":
        return h_bar(self)

    def star(self) -> "HeckeElement":
        return h_star(self)

    def tau(self) -> LaurentPoly:
        return self.coeff(0)

    def __repr__(self) -> str:
        return f"HeckeElement({self.group.cartan}, {self})"

    def __str__(self) -> str:
        g = self.group
        return _render.join(
            _render.term(p, f"H[{g.word_str(w)}]") for w, p in sorted(self._c.items(), reverse=True)
        )

    def to_json(self) -> dict:
        g = self.group
        return {
            "cartan": str(g.cartan),
            "terms": [{"w": g.word_str(w), "coeff": p.to_json()} for w, p in sorted(self._c.items())],
        }


def h_mul(a: HeckeElement, b: HeckeElement) -> HeckeElement:
    """Product ``a * b``.

    ``a H_y`` is built by right-multiplying along the canonical word of
    ``y``; canonical words are prefix-closed, so products for the prefixes
    are shared.
    """
    a._same(b)
    g = a.group
    memo: dict[int, HeckeElement] = {0: a}

    def times(y: int) -> HeckeElement:
        got = memo.get(y)
        if got is None:
            word = g.words[y]
            parent = g.from_word(word[:-1])
            got = times(parent).mul_gen(word[-1])
            memo[y] = got
        return got

    out: dict[int, LaurentPoly] = {}
    for y, p in sorted(b._c.items()):
        for w, q in times(y)._c.items():
            r = out.get(w, ZERO) + q * p
            if r:
                out[w] = r
            else:
                out.pop(w, None)
    return HeckeElement._raw(g, out)


_inverse_cache: "weakref.WeakKeyDictionary[CoxeterGroup, dict[int, HeckeElement]]" = weakref.WeakKeyDictionary()
_inverse_lock = threading.Lock()


def h_inv_std(group: CoxeterGroup, w: int) -> HeckeElement:
    """Standard-basis expansion of ``H_w^-1``.

    ``H_w^-1 = H_{s_k}^-1 ... H_{s_1}^-1`` for ``w = s_1 ... s_k`` with
    ``H_s^-1 = H_s + (v - v^-1)``.
    """
    with _inverse_lock:
        table = _inverse_cache.setdefault(group, {})
    got = table.get(w)
    if got is not None:
        return got
    x = HeckeElement.std(group, 0)
    for s in reversed(group.words[w]):
        x = x.mul_gen(s) + x.scale(_INV_CONST)
    table[w] = x
    return x


def h_bar(a: HeckeElement) -> HeckeElement:
    """Bar involution: ``v -> v^-1`` and ``H_w -> H_{w^-1}^-1``."""
    g = a.group
    out = HeckeElement.zero(g)
    for w, p in a._c.items():
        out = out + h_inv_std(g, g.inverse(w)).scale(p.bar())
    return out


def h_star(a: HeckeElement) -> HeckeElement:
    """Anti-involution ``H_w -> H_{w^-1}``."""
    g = a.group
    return HeckeElement._raw(g, {g.inverse(w): p for w, p in a._c.items()})


def tau(a: HeckeElement) -> LaurentPoly:
    return a.coeff(0)


# ---------------------------------------------------------------------------
# Kazhdan-Lusztig data


def _trim(coeffs) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def q_poly_str(coeffs: tuple[int, ...]) -> str:
    if not coeffs:
        return "0"
    parts = []
    for i, a in enumerate(coeffs):
        if not a:
            continue
        mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
        mag = abs(a)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if not parts:
            parts.append(("-" if a < 0 else "") + body)
        else:
            parts.append(("- " if a < 0 else "+ ") + body)
    return " ".join(parts)


class KLCache:
    """Memoized P-polynomials, mu-values and KL-type bases for one group.

    Built by :meth:`compute` (the mu-correction recursion, run through the
    dense kernels) or :meth:`load` (a JSON table validated on read).
    """

    def __init__(self, group: CoxeterGroup, P: dict[tuple[int, int], tuple[int, ...]]):
        self.group = group
        self._P = P
        self._mu: dict[tuple[int, int], int] = {}
        for (x, y), coeffs in P.items():
            d = group.ell(y) - group.ell(x)
            if d % 2 == 1 and len(coeffs) == (d - 1) // 2 + 1:
                self._mu[(x, y)] = coeffs[-1]
        self._uH: dict[int, HeckeElement] = {}
        self._ucH: dict[int, HeckeElement] = {}
        self._huH: dict[int, HeckeElement] = {}
        self._hucH: dict[int, HeckeElement] = {}
        self._lock = threading.Lock()
        self.source = "memory"

    # -- construction ---------------------------------------------------

    @classmethod
    def compute(cls, group: CoxeterGroup, *, use_numba: bool | None = None) -> "KLCache":
        n = group.order
        parent = np.zeros(n, dtype=np.int64)
        last = np.zeros(n, dtype=np.int64)
        for w in range(1, n):
            word = group.words[w]
            # last letter of the ShortLex word: w = w' s with w' s > w'
            last[w] = word[-1] - 1
            parent[w] = group.rmul(w, word[-1])
        table, lo = _kernels.kl_table(group.right, group.length, parent, last, twisted=False, use_numba=use_numba)
        ttable, tlo = _kernels.kl_table(group.right, group.length, parent, last, twisted=True, use_numba=use_numba)
        leq = group.bruhat_matrix()
        P: dict[tuple[int, int], tuple[int, ...]] = {}
        uH: dict[int, HeckeElement] = {}
        ucH: dict[int, HeckeElement] = {}
        for w in range(n):
            lw = group.ell(w)
            rows = np.flatnonzero(table[w].any(axis=1))
            trows = np.flatnonzero(ttable[w].any(axis=1))
            if not np.array_equal(rows, trows):
                raise TriangularityViolation(f"KL and twisted KL supports differ at {group.word_str(w)}")
            uc, tc = {}, {}
            for x in rows:
                x = int(x)
                if not leq[w, x]:
                    raise TriangularityViolation(f"H[{group.word_str(x)}] appears in uH[{group.word_str(w)}] but x is not below w")
                d = lw - group.ell(x)
                row = table[w, x]
                degs = np.flatnonzero(row) + lo
                if x == w:
                    if list(degs) != [0] or row[-lo] != 1:
                        raise TriangularityViolation(f"uH[{group.word_str(w)}] is not unitriangular")
                elif degs.min() < 1 or degs.max() > d or np.any((d - degs) % 2):
                    raise TriangularityViolation(
                        f"uH[{group.word_str(w)}] coefficient at H[{group.word_str(x)}] is outside vZ[v]"
                    )
                coeffs = _trim(int(row[d - 2 * i - lo]) for i in range(d // 2 + 1))
                P[(x, w)] = coeffs
                uc[x] = LaurentPoly({int(k + lo): int(row[k]) for k in np.flatnonzero(row)})
                trow = ttable[w, x]
                tc[x] = LaurentPoly({int(k + tlo): int(trow[k]) for k in np.flatnonzero(trow)})
            uH[w] = HeckeElement._raw(group, uc)
            ucH[w] = HeckeElement._raw(group, tc)
        cache = cls(group, P)
        cache._uH = uH
        cache._ucH = ucH
        # the twisted recursion ran independently; it must agree with the P table
        for w in range(n):
            if ucH[w] != cache._ucH_from_P(w):
                raise Inconsistency(f"twisted KL recursion disagrees with P at {group.word_str(w)}")
        cache.source = f"computed ({_kernels.backend()})"
        return cache

    # -- bases ----------------------------------------------------------

    def kl_poly(self, x: int, y: int) -> tuple[int, ...]:
        """Coefficients of ``P_{x,y}(q)``, lowest degree first; ``()`` when ``x`` is not below ``y``."""
        return self._P.get((x, y), ())

    def kl_poly_at(self, x: int, y: int, sign: int) -> LaurentPoly:
        """``P_{x,y}`` evaluated at ``q = v**sign``."""
        return from_q_coeffs(self.kl_poly(x, y), sign)

    def mu(self, x: int, y: int) -> int:
        if x == y:
            return 0
        if (x, y) in self._mu:
            return self._mu[(x, y)]
        return self._mu.get((y, x), 0)

    def mu_pairs(self) -> dict[tuple[int, int], int]:
        """Nonzero ``mu(x, y)`` for ``x < y``."""
        return {k: m for k, m in self._mu.items() if m}

    def _uH_from_P(self, w: int) -> HeckeElement:
        g = self.group
        lw = g.ell(w)
        c = {}
        for y in g.below(w):
            y = int(y)
            c[y] = self.kl_poly_at(y, w, -2).shift(lw - g.ell(y))
        return HeckeElement(g, c)

    def _ucH_from_P(self, w: int) -> HeckeElement:
        g = self.group
        lw = g.ell(w)
        c = {}
        for y in g.below(w):
            y = int(y)
            d = g.ell(y) - lw
            c[y] = self.kl_poly_at(y, w, 2).shift(d) * (-1 if d % 2 else 1)
        return HeckeElement(g, c)

    def kl_basis(self, w: int) -> HeckeElement:
        got = self._uH.get(w)
        if got is None:
            got = self._uH.setdefault(w, self._uH_from_P(w))
        return got

    def twisted_kl_basis(self, w: int) -> HeckeElement:
        got = self._ucH.get(w)
        if got is None:
            got = self._ucH.setdefault(w, self._ucH_from_P(w))
        return got

    def Q(self, w: int, y: int) -> tuple[int, ...]:
        """Inverse KL polynomial ``Q_{w,y} = P_{w0 y, w0 w}``."""
        g = self.group
        w0 = g.w0
        return self.kl_poly(g.multiply(w0, y), g.multiply(w0, w))

    def _dual_pair(self, w: int, twisted: bool) -> tuple[HeckeElement, HeckeElement]:
        g = self.group
        lw = g.ell(w)
        c = {}
        for y in g.above(w):
            y = int(y)
            qc = self.Q(w, y)
            d = g.ell(y) - lw
            if twisted:
                c[y] = from_q_coeffs(qc, 2).shift(-d)
            else:
                c[y] = from_q_coeffs(qc, -2).shift(d) * (-1 if d % 2 else 1)
        direct = HeckeElement(g, c)
        hw0 = HeckeElement.std(g, g.w0)
        ww0 = g.multiply(w, g.w0)
        if twisted:
            other = h_mul(self.kl_basis(ww0), hw0)
        else:
            other = h_mul(self.twisted_kl_basis(ww0), hw0)
        return direct, other

    def dual_kl_basis(self, w: int) -> HeckeElement:
        """``huH_w`` from the Q-expansion, checked against ``ucH_{w w0} H_{w0}``."""
        got = self._huH.get(w)
        if got is None:
            direct, other = self._dual_pair(w, twisted=False)
            if direct != other:
                raise Inconsistency(f"dual KL basis routes disagree at {self.group.word_str(w)}")
            got = self._huH.setdefault(w, direct)
        return got

    def dual_twisted_kl_basis(self, w: int) -> HeckeElement:
        """``hucH_w`` from the Q-expansion, checked against ``uH_{w w0} H_{w0}``."""
        got = self._hucH.get(w)
        if got is None:
            direct, other = self._dual_pair(w, twisted=True)
            if direct != other:
                raise Inconsistency(f"dual twisted KL basis routes disagree at {self.group.word_str(w)}")
            got = self._hucH.setdefault(w, direct)
        return got

    def basis(self, name: str, w: int) -> HeckeElement:
        table = {
            "H": lambda u: HeckeElement.std(self.group, u),
            "uH": self.kl_basis,
            "ucH": self.twisted_kl_basis,
            "huH": self.dual_kl_basis,
            "hucH": self.dual_twisted_kl_basis,
        }
        try:
            return table[name](w)
        except KeyError:
            raise ValueError(f"unknown basis {name!r}; expected one of {sorted(table)}") from None

    # -- persistence ----------------------------------------------------

    def to_json(self) -> dict:
        g = self.group
        ws = g.word_str
        return {
            "format_version": FORMAT_VERSION,
            "cartan": str(g.cartan),
            "P": [[ws(x), ws(y), *c] for (x, y), c in sorted(self._P.items())],
            "mu": [[ws(x), ws(y), m] for (x, y), m in sorted(self._mu.items()) if m],
        }

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(json.dumps(self.to_json()))
        tmp.replace(path)
        return path

    @classmethod
    def from_json(cls, data: dict, group: CoxeterGroup | None = None, *, seed: int = 0) -> "KLCache":
        if data.get("format_version") != FORMAT_VERSION:
            raise CacheFormatError(f"unsupported cache format {data.get('format_version')!r}")
        cartan = CartanType.parse(data["cartan"])
        if group is None:
            group = build_group(cartan)
        elif group.cartan != cartan:
            raise CacheFormatError(f"cache is for {cartan}, not {group.cartan}")
        try:
            P = {(group.element(x), group.element(y)): _trim(c) for x, y, *c in data["P"]}
            mu = {(group.element(x), group.element(y)): m for x, y, m in data["mu"]}
        except (KeyError, ValueError, TypeError) as exc:
            raise CacheFormatError(f"malformed cache: {exc}") from exc
        for w in range(group.order):
            if P.get((w, w)) != (1,):
                raise CacheFormatError(f"P[{group.word_str(w)},{group.word_str(w)}] is not 1")
        cache = cls(group, P)
        if cache.mu_pairs() != mu:
            raise CacheFormatError("mu table disagrees with the P table")
        rng = random.Random(seed)
        for w in rng.sample(range(group.order), min(10, group.order)):
            for h in (cache.kl_basis(w), cache.twisted_kl_basis(w)):
                if h_bar(h) != h:
                    raise CacheFormatError(f"cached basis element at {group.word_str(w)} is not bar-invariant")
        cache.source = "cache"
        return cache

    @classmethod
    def load(cls, path: str | Path, group: CoxeterGroup | None = None, *, seed: int = 0) -> "KLCache":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise CacheFormatError(f"{path}: {exc}") from exc
        return cls.from_json(data, group, seed=seed)


_caches: "weakref.WeakKeyDictionary[CoxeterGroup, KLCache]" = weakref.WeakKeyDictionary()
_caches_lock = threading.Lock()


def kl_cache(group: CoxeterGroup, cache_dir: str | Path | None = None, *, build: bool = True) -> KLCache:
    """The shared :class:`KLCache` of ``group``.

    With ``cache_dir`` the table is read from ``<cache_dir>/kl_<type>.json``
    when present and valid, and written there after a fresh computation.
    ``build=False`` refuses to compute and raises :class:`MissingCache`.
    """
    got = _caches.get(group)
    if got is not None:
        return got
    cache = None
    path = Path(cache_dir) / f"kl_{group.cartan}.json" if cache_dir is not None else None
    if path is not None and path.exists():
        try:
            cache = KLCache.load(path, group)
        except CacheFormatError:
            cache = None
    if cache is None:
        if not build:
            raise MissingCache(f"no KL table for {group.cartan}")
        cache = KLCache.compute(group)
        if path is not None:
            cache.save(path)
    with _caches_lock:
        return _caches.setdefault(group, cache)


def set_kl_cache(group: CoxeterGroup, cache: KLCache) -> None:
    with _caches_lock:
        _caches[group] = cache


# convenience wrappers keyed by group

def kl_basis(group: CoxeterGroup, w: int) -> HeckeElement:
    return kl_cache(group).kl_basis(w)


def twisted_kl_basis(group: CoxeterGroup, w: int) -> HeckeElement:
    return kl_cache(group).twisted_kl_basis(w)


def dual_kl_basis(group: CoxeterGroup, w: int) -> HeckeElement:
    return kl_cache(group).dual_kl_basis(w)


def dual_twisted_kl_basis(group: CoxeterGroup, w: int) -> HeckeElement:
    return kl_cache(group).dual_twisted_kl_basis(w)


def kl_poly(group: CoxeterGroup, x: int, y: int) -> tuple[int, ...]:
    return kl_cache(group).kl_poly(x, y)


def mu(group: CoxeterGroup, x: int, y: int) -> int:
    return kl_cache(group).mu(x, y)
