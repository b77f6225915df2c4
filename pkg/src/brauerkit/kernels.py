"""Hot linear-algebra kernels over GF(p^n), with backend selection.

Everything above this layer funnels matrix work through two routines:
reduced row echelon form and matrix multiplication, on int64 arrays of
field-element codes.  A compiled Cython core (`brauerkit._gfcore`) is
used when available; the pure numpy implementations below are the
fallback and the reference.  Set BRAUERKIT_PURE=1 to force the fallback.

Prime fields use direct modular arithmetic.  Extension fields use dense
lookup tables (ADD, MUL, NEG q x q / q) built once per Field.
"""

from __future__ import annotations

import os

import numpy as np

_gfcore = None
if not os.environ.get("BRAUERKIT_PURE"):
    try:
        from . import _gfcore  # type: ignore[attr-defined]
    except ImportError:
        _gfcore = None

BACKEND = "compiled" if _gfcore is not None else "pure"


def _as_i64(a):
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d array")
    return a


# ---------------------------------------------------------------------------
# pure numpy backend
# ---------------------------------------------------------------------------

def rref_prime_pure(a, p, inv):
    """Reduced row echelon form over GF(p), p prime.

    Returns (r, pivots): r the RREF of a, pivots the pivot column list.
    inv is the length-p table of inverses mod p (inv[0] unused).
    """
    a = _as_i64(a) % p
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = (a[r] * int(inv[a[r, c]])) % p
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = (a[rows] - np.outer(col[rows], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rref_table_pure(a, addt, mult, negt, invt):
    """RREF over GF(p^n) via element-code lookup tables."""
    a = _as_i64(a)
    m, n = a.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = mult[a[r], int(invt[a[r, c]])]
        col = a[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col)[0]
        if rows.size:
            a[rows] = addt[a[rows], negt[mult[col[rows][:, None], a[r][None, :]]]]
        pivots.append(c)
        r += 1
    return a, pivots


def matmul_prime_pure(a, b, p):
    # entries < p <= 2**20 and inner dim <= ~4000 keep products within int64
    return (_as_i64(a) @ _as_i64(b)) % p


def matmul_table_pure(a, b, addt, mult):
    a = _as_i64(a)
    b = _as_i64(b)
    m, k = a.shape
    k2, n = b.shape
    if k != k2:
        raise ValueError("shape mismatch")
    out = np.zeros((m, n), dtype=np.int64)
    for t in range(k):
        out = addt[out, mult[a[:, t][:, None], b[t][None, :]]]
    return out


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def rref_prime(a, p, inv):
    if _gfcore is not None:
        a = _as_i64(a) % p
        piv = _gfcore.rref_prime(a, int(p), np.ascontiguousarray(inv, dtype=np.int64))
        return a, list(piv)
    return rref_prime_pure(a, p, inv)


def rref_table(a, addt, mult, negt, invt):
    if _gfcore is not None:
        a = _as_i64(a)
        piv = _gfcore.rref_table(a, addt, mult, negt,
                                 np.ascontiguousarray(invt, dtype=np.int64))
        return a, list(piv)
    return rref_table_pure(a, addt, mult, negt, invt)


def matmul_prime(a, b, p):
    if _gfcore is not None:
        return _gfcore.matmul_prime(_as_i64(a), _as_i64(b), int(p))
    return matmul_prime_pure(a, b, p)


def matmul_table(a, b, addt, mult):
    if _gfcore is not None:
        return _gfcore.matmul_table(_as_i64(a), _as_i64(b), addt, mult)
    return matmul_table_pure(a, b, addt, mult)
