"""Finite fields GF(p^n) on integer element codes.

An element is an int in [0, q), q = p^n, encoding a polynomial
sum(c_i x^i) over GF(p) as sum(c_i p^i), reduced modulo a fixed monic
irreducible of degree n.  Prime fields (n = 1) skip the tables and use
modular arithmetic directly.  All array operations accept/return numpy
int64 arrays of codes.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import kernels

_TABLE_CAP = 4096  # largest q for which dense q x q tables are built


class SplittingError(Exception):
    """The ground field is too small to split the algebra at hand."""


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


@lru_cache(maxsize=None)
def default_modulus(p: int, n: int) -> tuple:
    """Lexicographically least monic irreducible of degree n over GF(p).

    Coefficients little-endian, length n+1, leading coefficient 1.
    Determinism matters: every run picks the same modulus.
    """
    if n == 1:
        return (0, 1)
    # sieve monic irreducibles of degree <= n/2 for trial division
    smaller = []
    for d in range(1, n // 2 + 1):
        for code in range(p ** d, 2 * p ** d):
            poly = _code_to_poly(code, p)
            if _is_irreducible_naive(poly, smaller, p):
                smaller.append(poly)
    for code in range(p ** n, 2 * p ** n):
        poly = _code_to_poly(code, p)
        if _is_irreducible_naive(poly, smaller, p):
            return tuple(poly)
    raise RuntimeError("no irreducible found (unreachable)")


def _code_to_poly(code: int, p: int) -> list:
    out = []
    while code:
        out.append(code % p)
        code //= p
    return out


def _poly_to_code(poly, p: int) -> int:
    code = 0
    for c in reversed(list(poly)):
        code = code * p + int(c)
    return code


def _polymod_prime(a, m, p):
    """a mod m over GF(p), both little-endian int lists, m monic."""
    a = [x % p for x in a]
    _poly_trim(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1]
        shift = len(a) - 1 - dm
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        _poly_trim(a)
    return a


def _is_irreducible_naive(poly, smaller_irreds, p):
    if len(poly) <= 1:
        return False
    if len(poly) == 2:
        return True
    half = (len(poly) - 1) // 2
    for f in smaller_irreds:
        if len(f) - 1 > half:
            break
        if not _polymod_prime(poly, f, p):
            return False
    return True


class Field:
    """GF(p^n) with exact arithmetic on integer codes."""

    def __init__(self, p: int, n: int = 1, modulus: tuple | None = None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if n < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = int(p)
        self.n = int(n)
        self.q = p ** n
        if modulus is None:
            modulus = default_modulus(p, n)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        self.modulus = modulus
        if n > 1:
            if self.q > _TABLE_CAP:
                raise ValueError(f"q = {self.q} exceeds table cap {_TABLE_CAP}")
            # table build also proves irreducibility: a multiplicative
            # generator of order q-1 exists iff the quotient is a field
            self._build_tables()
        else:
            self._inv = self._prime_inverse_table(p)

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def _prime_inverse_table(p):
        inv = np.zeros(p, dtype=np.int64)
        inv[1:] = np.array([pow(a, p - 2, p) for a in range(1, p)], dtype=np.int64)
        return inv

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        codes = np.arange(q, dtype=np.int64)
        digits = np.zeros((q, n), dtype=np.int64)
        c = codes.copy()
        for i in range(n):
            digits[:, i] = c % p
            c //= p
        self._digits = digits
        pows = p ** np.arange(n, dtype=np.int64)

        # ADD / NEG: digitwise mod p
        sums = (digits[:, None, :] + digits[None, :, :]) % p
        self.ADD = (sums * pows).sum(axis=2).astype(np.int64)
        self.NEG = (((-digits) % p) * pows).sum(axis=1).astype(np.int64)

        # reduction rows: x^k mod modulus for k < 2n-1, as code digit rows
        red = np.zeros((2 * n - 1, n), dtype=np.int64)
        cur = [0] * n
        cur[0] = 1
        for k in range(2 * n - 1):
            red[k] = cur
            # multiply by x
            carry = cur[-1]
            cur = [0] + cur[:-1]
            if carry:
                for i in range(n):
                    cur[i] = (cur[i] - carry * self.modulus[i]) % p
        # MUL: convolution + reduction, vectorized over the second factor
        MUL = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = digits[a]
            conv = np.zeros((q, 2 * n - 1), dtype=np.int64)
            for i in range(n):
                if da[i]:
                    conv[:, i:i + n] += da[i] * digits
            resd = (conv[:, :, None] * red[None, :, :]).sum(axis=1) % p
            MUL[a] = (resd * pows).sum(axis=1)
        self.MUL = MUL

        # multiplicative inverse via a generator
        order = q - 1
        self.INV = np.zeros(q, dtype=np.int64)
        gen = None
        for g in range(2, q):
            seen = 1
            x = g
            while x != 1:
                x = int(MUL[x, g])
                seen += 1
                if seen > order:
                    break
            if seen == order:
                gen = g
                break
        if gen is None:
            raise ValueError("modulus is reducible (no multiplicative generator)")
        self._gen = gen
        exp = np.zeros(order, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = int(MUL[x, gen])
        self.EXP, self.LOG = exp, log
        self.INV[1:] = exp[(order - log[1:]) % order]

    # -- scalar ops ----------------------------------------------------------

    def add(self, a, b):
        if self.n == 1:
            return (np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.p
        return self.ADD[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def sub(self, a, b):
        if self.n == 1:
            return (np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64)) % self.p
        return self.ADD[np.asarray(a, dtype=np.int64),
                        self.NEG[np.asarray(b, dtype=np.int64)]]

    def mul(self, a, b):
        if self.n == 1:
            return (np.asarray(a, dtype=np.int64) * np.asarray(b, dtype=np.int64)) % self.p
        return self.MUL[np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)]

    def neg(self, a):
        if self.n == 1:
            return (-np.asarray(a, dtype=np.int64)) % self.p
        return self.NEG[np.asarray(a, dtype=np.int64)]

    def inv_el(self, a: int) -> int:
        a = int(a)
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.n == 1:
            return int(self._inv[a])
        return int(self.INV[a])

    def pow_el(self, a: int, e: int) -> int:
        a = int(a)
        e = int(e)
        if e < 0:
            a, e = self.inv_el(a), -e
        out, base = 1, a
        while e:
            if e & 1:
                out = int(self.mul(out, base))
            base = int(self.mul(base, base))
            e >>= 1
        return out

    def _pow_arr(self, a, e: int):
        arr = np.asarray(a, dtype=np.int64)
        out = np.zeros_like(arr)
        nz = arr != 0
        out[nz] = self.EXP[(self.LOG[arr[nz]] * e) % (self.q - 1)]
        return out

    def frobenius(self, a):
        """Elementwise a ** p (additive over arrays)."""
        arr = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            return arr.copy()
        return self._pow_arr(arr, self.p)

    def frobenius_root(self, a):
        """Elementwise unique p-th root (Frobenius is bijective)."""
        arr = np.asarray(a, dtype=np.int64)
        if self.n == 1:
            return arr.copy()
        # a^(p^(n-1)) is the p-th root in GF(p^n)
        return self._pow_arr(arr, self.q // self.p)

    # -- matrix ops (delegated to kernels) ------------------------------------

    def matmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[0]:
            raise ValueError(f"matmul shape mismatch {a.shape} x {b.shape}")
        if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
            return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        if self.n == 1:
            return kernels.matmul_prime(a, b, self.p)
        return kernels.matmul_table(a, b, self.ADD, self.MUL)

    def rref(self, a):
        a = np.asarray(a, dtype=np.int64)
        if a.size == 0:
            return a.reshape(a.shape).copy(), []
        if self.n == 1:
            return kernels.rref_prime(a, self.p, self._inv)
        return kernels.rref_table(a, self.ADD, self.MUL, self.NEG, self.INV)

    def eye(self, m):
        return np.eye(m, dtype=np.int64)

    def zeros(self, m, n):
        return np.zeros((m, n), dtype=np.int64)

    # -- embeddings ----------------------------------------------------------

    def extension(self, m: int) -> "Field":
        return Field(self.p, self.n * m)

    def embedding_into(self, big: "Field"):
        """Code map GF(p^n) -> GF(p^(nm)) as an int64 array of length q.

        Found by locating a root of this field's modulus in `big`;
        deterministic (least root).  For n = 1 the map is the identity
        on codes since constants encode identically.
        """
        if big.p != self.p or big.n % self.n:
            raise ValueError("not an extension")
        if self.n == 1:
            return np.arange(self.q, dtype=np.int64)
        root = None
        for cand in range(big.q):
            acc = 0
            for c in reversed(self.modulus):
                acc = int(big.add(big.mul(acc, cand), c % big.p))
            if acc == 0:
                root = cand
                break
        if root is None:
            raise RuntimeError("no root of modulus in extension (unreachable)")
        emb = np.zeros(self.q, dtype=np.int64)
        powers = [1]
        for _ in range(1, self.n):
            powers.append(int(big.mul(powers[-1], root)))
        for code in range(self.q):
            digs = self._digits[code] if self.n > 1 else [code]
            acc = 0
            for d, pw in zip(digs, powers):
                acc = int(big.add(acc, big.mul(int(d) % big.p, pw)))
            emb[code] = acc
        return emb

    # -- misc ----------------------------------------------------------------

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (isinstance(other, Field) and other.p == self.p
                and other.n == self.n and other.modulus == self.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))
