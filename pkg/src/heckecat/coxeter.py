"""Finite Weyl groups: enumeration, multiplication tables, Bruhat order.

Elements are plain ``int`` indices into the group's element table.  The table
is ordered by length, then by the ShortLex order of canonical words, so the
identity is index 0 and the longest element is index ``order - 1``.
Generators are numbered ``1..rank`` in every public signature and in words.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import BadElement, BadGeneratorIndex, GroupTooLarge, UnsupportedType

DEFAULT_ELEMENT_CAP = 50_000

Word = tuple[int, ...]


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        fam = self.family.upper()
        if fam == "C":
            fam = "B"
        object.__setattr__(self, "family", fam)
        ok = {
            "A": self.rank >= 1,
            "B": self.rank >= 2,
            "D": self.rank >= 4,
            "E": self.rank in (6, 7, 8),
            "F": self.rank == 4,
            "G": self.rank == 2,
        }.get(fam, False)
        if not ok:
            raise UnsupportedType(f"no finite crystallographic type {self.family}{self.rank}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Za-z])\s*(\d+)\s*", text)
        if not m:
            raise UnsupportedType(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"

    def order(self) -> int:
        n = self.rank
        return {
            "A": math.factorial(n + 1),
            "B": 2**n * math.factorial(n),
            "D": 2 ** (n - 1) * math.factorial(n) if n >= 2 else 0,
            "E": {6: 51_840, 7: 2_903_040, 8: 696_729_600}.get(n, 0),
            "F": 1152,
            "G": 12,
        }[self.family]

    def cartan_matrix(self) -> np.ndarray:
        """``C[i, j] = <alpha_i^vee, alpha_j>`` (Bourbaki numbering)."""
        n = self.rank
        c = 2 * np.eye(n, dtype=np.int64)
        fam = self.family
        if fam in "ABF" or fam == "D":
            for i in range(n - 1):
                c[i, i + 1] = c[i + 1, i] = -1
        if fam == "B":
            # alpha_n short
            c[n - 1, n - 2] = -2
        elif fam == "D":
            c[n - 2, n - 1] = c[n - 1, n - 2] = 0
            c[n - 3, n - 1] = c[n - 1, n - 3] = -1
        elif fam == "F":
            c[2, 1] = -2
        elif fam == "G":
            c[0, 1] = -3
            c[1, 0] = -1
        elif fam == "E":
            # 1-3-4-5-6(-7-8), 2 attached to 4
            edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
            for i, j in edges:
                c[i, j] = c[j, i] = -1
        return c


def _reflections(cartan: CartanType) -> list[np.ndarray]:
    # s_i(alpha_j) = alpha_j - <alpha_i^vee, alpha_j> alpha_i, acting on root coordinates
    c = cartan.cartan_matrix()
    n = cartan.rank
    mats = []
    for i in range(n):
        m = np.eye(n, dtype=np.int64)
        m[i, :] -= c[i, :]
        mats.append(m)
    return mats


@dataclass(eq=False)
class CoxeterGroup:
    """An enumerated finite Weyl group.

    Build with :func:`build_group`.  Immutable once built; the Bruhat cache
    is filled lazily under a lock.
    """

    cartan: CartanType
    words: list[Word]
    length: np.ndarray
    right: np.ndarray  # right[w, i] = w s_{i+1}
    left: np.ndarray  # left[w, i] = s_{i+1} w
    _index: dict[Word, int] = field(repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    _bruhat_rows: dict[int, np.ndarray] = field(default_factory=dict, repr=False)
    _bruhat_full: np.ndarray | None = field(default=None, repr=False)

    # -- basic data -----------------------------------------------------

    @property
    def rank(self) -> int:
        return self.cartan.rank

    @property
    def order(self) -> int:
        return len(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(range(len(self.words)))

    def __repr__(self) -> str:
        return f"CoxeterGroup({self.cartan}, order={self.order})"

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def w0(self) -> int:
        return len(self.words) - 1

    def longest_element(self) -> int:
        return self.w0

    def generators(self) -> range:
        return range(1, self.rank + 1)

    def gen(self, s: int) -> int:
        """Element index of the simple reflection ``s_s``."""
        self._check_gen(s)
        return int(self.right[0, s - 1])

    def _check_gen(self, s: int) -> None:
        if not 1 <= s <= self.rank:
            raise BadGeneratorIndex(f"generator {s} outside 1..{self.rank}")

    def ell(self, w: int) -> int:
        return int(self.length[w])

    def reduced_word(self, w: int) -> Word:
        return self.words[w]

    def word_str(self, w: int) -> str:
        word = self.words[w]
        if not word:
            return "e"
        if self.rank < 10:
            return "".join(map(str, word))
        return ",".join(map(str, word))

    def element(self, spec: str | Sequence[int] | int) -> int:
        """Parse ``"121"``, ``"e"``, ``"w0"``, a word, or pass an index through."""
        if isinstance(spec, (int, np.integer)):
            if not 0 <= spec < self.order:
                raise BadElement(f"index {spec} outside the group")
            return int(spec)
        if isinstance(spec, str):
            t = spec.strip()
            if t in ("e", ""):
                return 0
            if t.lower() == "w0":
                return self.w0
            try:
                parts = t.split(",") if "," in t else (t.split() if " " in t else t)
                word = [int(ch) for ch in parts]
            except ValueError:
                raise BadElement(f"cannot parse element {spec!r}") from None
            try:
                return self.from_word(word)
            except BadGeneratorIndex as exc:
                raise BadElement(str(exc)) from None
        return self.from_word(spec)

    # -- multiplication -------------------------------------------------

    def rmul(self, w: int, s: int) -> int:
        return int(self.right[w, s - 1])

    def lmul(self, s: int, w: int) -> int:
        return int(self.left[w, s - 1])

    def from_word(self, word: Iterable[int]) -> int:
        w = 0
        for s in word:
            self._check_gen(s)
            w = int(self.right[w, s - 1])
        return w

    def multiply(self, a: int, b: int) -> int:
        w = a
        for s in self.words[b]:
            w = int(self.right[w, s - 1])
        return w

    @cached_property
    def _inverse(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        for w, word in enumerate(self.words):
            inv[w] = self.from_word(reversed(word))
        return inv

    def inverse(self, a: int) -> int:
        return int(self._inverse[a])

    def is_involution(self, a: int) -> bool:
        return int(self._inverse[a]) == a

    # -- descents -------------------------------------------------------

    def is_left_descent(self, s: int, w: int) -> bool:
        return self.length[self.left[w, s - 1]] < self.length[w]

    def is_right_descent(self, w: int, s: int) -> bool:
        return self.length[self.right[w, s - 1]] < self.length[w]

    def descents(self, w: int, side: str = "left") -> frozenset[int]:
        if side == "left":
            return frozenset(s for s in self.generators() if self.is_left_descent(s, w))
        if side == "right":
            return frozenset(s for s in self.generators() if self.is_right_descent(w, s))
        raise ValueError("side must be 'left' or 'right'")

    # -- Bruhat order ---------------------------------------------------

    @cached_property
    def _first_left_descent(self) -> np.ndarray:
        fld = np.zeros(self.order, dtype=np.int64)
        for w in range(1, self.order):
            for i in range(self.rank):
                if self.length[self.left[w, i]] < self.length[w]:
                    fld[w] = i
                    break
        return fld

    def _row(self, b: int) -> np.ndarray:
        # row[a] == (a <= b); recursive criterion through the first left descent
        row = self._bruhat_rows.get(b)
        if row is not None:
            return row
        if self._bruhat_full is not None:
            return self._bruhat_full[b]
        if b == 0:
            row = np.zeros(self.order, dtype=np.bool_)
        else:
            s = self._first_left_descent[b]
            sa = self.left[:, s]
            prev = self._row(int(self.left[b, s]))
            row = np.where(self.length[sa] < self.length, prev[sa], prev)
        row[b] = True
        with self._lock:
            self._bruhat_rows.setdefault(b, row)
        return row

    def bruhat_leq(self, a: int, b: int) -> bool:
        if self.length[a] > self.length[b]:
            return False
        return bool(self._row(b)[a])

    def bruhat_lt(self, a: int, b: int) -> bool:
        return a != b and self.bruhat_leq(a, b)

    def bruhat_matrix(self) -> np.ndarray:
        """Dense table ``M[b, a] = (a <= b)``, filled eagerly by the kernel."""
        if self._bruhat_full is None:
            table = _kernels.bruhat_table(self.left, self.length, self._first_left_descent)
            table.setflags(write=False)
            with self._lock:
                if self._bruhat_full is None:
                    self._bruhat_full = table
        return self._bruhat_full

    def below(self, b: int) -> np.ndarray:
        """Indices ``a`` with ``a <= b``."""
        return np.flatnonzero(self._row(b))

    def above(self, a: int) -> np.ndarray:
        """Indices ``b`` with ``a <= b``."""
        m = self.bruhat_matrix()
        return np.flatnonzero(m[:, a])

    @cached_property
    def positive_root_count(self) -> int:
        """Positive roots counted from the orbit of the simple roots (equals ``l(w0)``)."""
        gens = _reflections(self.cartan)
        seen = {tuple(row) for row in np.eye(self.rank, dtype=np.int64)}
        todo = list(seen)
        while todo:
            r = np.array(todo.pop(), dtype=np.int64)
            for m in gens:
                t = tuple(int(a) for a in m @ r)
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        return sum(1 for r in seen if max(r) > 0)


def build_group(cartan: CartanType | str, *, cap: int = DEFAULT_ELEMENT_CAP) -> CoxeterGroup:
    """Enumerate ``W`` breadth-first from the identity.

    Elements are identified by their integer matrices on simple-root
    coordinates.  Parents are visited in ShortLex order and generators in
    increasing order, so the first word reaching an element is its
    ShortLex-least reduced word.
    """
    if isinstance(cartan, str):
        cartan = CartanType.parse(cartan)
    expected = cartan.order()
    if expected > cap:
        raise GroupTooLarge(f"{cartan} has {expected} elements, above the cap {cap}")
    gens = _reflections(cartan)
    r = cartan.rank
    ident = np.eye(r, dtype=np.int64)
    keys: dict[bytes, int] = {ident.tobytes(): 0}
    mats = [ident]
    words: list[Word] = [()]
    lengths = [0]
    frontier = [0]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(r):
                m = mats[w] @ gens[i]
                k = m.tobytes()
                if k not in keys:
                    keys[k] = len(mats)
                    mats.append(m)
                    words.append(words[w] + (i + 1,))
                    lengths.append(lengths[w] + 1)
                    nxt.append(keys[k])
        frontier = nxt
    n = len(mats)
    if n != expected:
        raise AssertionError(f"enumerated {n} elements of {cartan}, expected {expected}")
    right = np.empty((n, r), dtype=np.int64)
    left = np.empty((n, r), dtype=np.int64)
    for w in range(n):
        for i in range(r):
            right[w, i] = keys[(mats[w] @ gens[i]).tobytes()]
            left[w, i] = keys[(gens[i] @ mats[w]).tobytes()]
    for a in (right, left):
        a.setflags(write=False)
    length = np.array(lengths, dtype=np.int64)
    length.setflags(write=False)
    return CoxeterGroup(
        cartan=cartan,
        words=words,
        length=length,
        right=right,
        left=left,
        _index={wd: i for i, wd in enumerate(words)},
    )
