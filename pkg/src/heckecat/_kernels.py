"""Dense integer kernels behind the Bruhat table and the KL-basis recursion.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy one.
The numba path is used when numba imports and ``HECKECAT_DISABLE_NUMBA`` is
unset or ``0``; the two paths must return identical arrays.

Layout conventions shared by callers:

* group elements are row indices ``0..n-1`` in length-then-ShortLex order,
  so ``length`` is non-decreasing and the identity is row 0;
* ``right[w, i]`` / ``left[w, i]`` are the indices of ``w s_i`` / ``s_i w``
  (generator ``i`` zero-based here);
* a Hecke element is an ``(n, width)`` int64 array whose column ``j`` holds
  the coefficient of ``v**(j + lo)``.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import CoefficientOverflow

# |coefficients| stay below this so a single addition can never wrap int64
LIMIT = 2**61


def _numba_requested() -> bool:
    return os.environ.get("HECKECAT_DISABLE_NUMBA", "0").strip().lower() in ("", "0", "false", "no")


try:
    if not _numba_requested():
        raise ImportError("numba disabled by HECKECAT_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# Bruhat order


def _bruhat_table_py(left, length, first_left_descent):
    n = left.shape[0]
    leq = np.zeros((n, n), dtype=np.bool_)
    leq[0, 0] = True
    for b in range(1, n):
        s = first_left_descent[b]
        sb = left[b, s]
        row_sb = leq[sb]
        for a in range(n):
            if length[a] > length[b]:
                break
            sa = left[a, s]
            if length[sa] < length[a]:
                leq[b, a] = row_sb[sa]
            else:
                leq[b, a] = row_sb[a]
        leq[b, b] = True
    return leq


def _bruhat_table_np(left, length, first_left_descent):
    n = left.shape[0]
    leq = np.zeros((n, n), dtype=np.bool_)
    leq[0, 0] = True
    for b in range(1, n):
        s = first_left_descent[b]
        sa = left[:, s]
        row_sb = leq[left[b, s]]
        leq[b] = np.where(length[sa] < length, row_sb[sa], row_sb)
        leq[b, b] = True
    return leq


# ---------------------------------------------------------------------------
# KL-type basis recursion
#
# For w = w' s (w' s > w', s the last letter of w's canonical word):
#     B_w = B_{w'} * (H_s + c v^k) - sum_{y s < y < w'} mu(y, w') B_y
# where (c, k) = (1, 1) gives the KL basis and (-1, -1) the twisted one.
# mu(y, w') is read off B_{w'} itself: it is sign * [v^mu_deg] of the
# H_y-coordinate, nonzero only when l(w') - l(y) is odd.


def _kl_table_py(right, length, parent, last, const_coef, const_deg, mu_deg, mu_sign, lo, width):
    n = right.shape[0]
    table = np.zeros((n, n, width), dtype=np.int64)
    table[0, 0, -lo] = 1
    ok = True
    for w in range(1, n):
        wp = parent[w]
        s = last[w]
        src = table[wp]
        out = table[w]
        for x in range(n):
            xs = right[x, s]
            down = length[xs] < length[x]
            for d in range(width):
                c = src[x, d]
                if c == 0:
                    continue
                out[xs, d] += c
                if down:
                    out[x, d - 1] += c
                    out[x, d + 1] -= c
                out[x, d + const_deg] += const_coef * c
        mcol = mu_deg - lo
        for y in range(n):
            if length[right[y, s]] > length[y]:
                continue
            if (length[wp] - length[y]) % 2 == 0:
                continue
            m = mu_sign * src[y, mcol]
            if m == 0:
                continue
            for x in range(n):
                for d in range(width):
                    out[x, d] -= m * table[y, x, d]
        for x in range(n):
            for d in range(width):
                if out[x, d] >= LIMIT or out[x, d] <= -LIMIT:
                    ok = False
        if not ok:
            break
    return table, ok


def _kl_table_np(right, length, parent, last, const_coef, const_deg, mu_deg, mu_sign, lo, width):
    n = right.shape[0]
    table = np.zeros((n, n, width), dtype=np.int64)
    table[0, 0, -lo] = 1
    idx = np.arange(n)
    mcol = mu_deg - lo
    for w in range(1, n):
        wp = parent[w]
        s = last[w]
        src = table[wp]
        out = table[w]
        perm = right[:, s]
        down = length[perm] < length
        out[perm] += src
        out[down, :-1] += src[down, 1:]
        out[down, 1:] -= src[down, :-1]
        if const_deg > 0:
            out[:, const_deg:] += const_coef * src[:, :-const_deg]
        else:
            out[:, :const_deg] += const_coef * src[:, -const_deg:]
        odd = (length[wp] - length) % 2 == 1
        mu = mu_sign * src[:, mcol]
        ys = idx[down & odd & (mu != 0)]
        if ys.size:
            out -= np.tensordot(mu[ys], table[ys], axes=1)
        if np.abs(out).max() >= LIMIT:
            return table, False
    return table, True


if HAVE_NUMBA:
    _bruhat_table_nb = njit(cache=True)(_bruhat_table_py)
    _kl_table_nb = njit(cache=True)(_kl_table_py)


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def bruhat_table(left, length, first_left_descent, use_numba: bool | None = None):
    """Dense ``leq[b, a] == (a <= b)`` table, rows filled in index order."""
    use = HAVE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    args = (
        np.ascontiguousarray(left, dtype=np.int64),
        np.ascontiguousarray(length, dtype=np.int64),
        np.ascontiguousarray(first_left_descent, dtype=np.int64),
    )
    return _bruhat_table_nb(*args) if use else _bruhat_table_np(*args)


def kl_table(right, length, parent, last, *, twisted: bool, use_numba: bool | None = None):
    """All KL (or twisted KL) basis elements as one ``(n, n, width)`` array.

    Returns ``(table, lo)``; ``table[w, y, j]`` is the coefficient of
    ``v**(j + lo) H_y`` in the basis element indexed by ``w``.
    """
    use = HAVE_NUMBA if use_numba is None else (use_numba and HAVE_NUMBA)
    top = int(np.max(length)) if len(length) else 0
    # one spare column on each side absorbs the v^{+-1} spill of H_x H_s
    if twisted:
        lo, params = -top - 2, (-1, -1, -1, -1)
    else:
        lo, params = -2, (1, 1, 1, 1)
    width = top + 5
    args = (
        np.ascontiguousarray(right, dtype=np.int64),
        np.ascontiguousarray(length, dtype=np.int64),
        np.ascontiguousarray(parent, dtype=np.int64),
        np.ascontiguousarray(last, dtype=np.int64),
        *params,
        lo,
        width,
    )
    table, ok = _kl_table_nb(*args) if use else _kl_table_np(*args)
    if not ok:
        raise CoefficientOverflow("KL recursion left the checked 64-bit range")
    return table, lo
