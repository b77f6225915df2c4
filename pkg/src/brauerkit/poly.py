"""Univariate polynomial arithmetic and factorization over a Field.

Polynomials are little-endian lists of element codes with no trailing
zeros ([] is the zero polynomial).  Factorization is squarefree +
distinct-degree + Cantor-Zassenhaus equal-degree splitting, seeded for
reproducibility.
"""

from __future__ import annotations

import numpy as np


def trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def deg(f):
    return len(f) - 1


def add(F, f, g):
    n = max(len(f), len(g))
    out = [0] * n
    for i, c in enumerate(f):
        out[i] = c
    for i, c in enumerate(g):
        out[i] = int(F.add(out[i], c))
    return trim(out)


def neg(F, f):
    return [int(F.neg(c)) for c in f]


def sub(F, f, g):
    return add(F, f, neg(F, g))


def scale(F, f, a):
    if a == 0:
        return []
    return [int(F.mul(c, a)) for c in f]


def mul(F, f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            if b:
                out[i + j] = int(F.add(out[i + j], F.mul(a, b)))
    return trim(out)


def divmod_(F, f, g):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    f = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    inv_lead = F.inv_el(g[-1])
    while len(f) >= len(g) and f:
        c = int(F.mul(f[-1], inv_lead))
        s = len(f) - len(g)
        q[s] = c
        for i, b in enumerate(g):
            f[s + i] = int(F.sub(f[s + i], F.mul(c, b)))
        trim(f)
    return trim(q), f


def mod(F, f, g):
    return divmod_(F, f, g)[1]


def monic(F, f):
    if not f:
        return []
    return scale(F, f, F.inv_el(f[-1]))


def gcd(F, f, g):
    f, g = list(f), list(g)
    while g:
        f, g = g, mod(F, f, g)
    return monic(F, f)


def xgcd(F, f, g):
    """(d, u, v) with u*f + v*g = d = gcd(f, g), d monic."""
    r0, r1 = list(f), list(g)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, sub(F, u0, mul(F, q, u1))
        v0, v1 = v1, sub(F, v0, mul(F, q, v1))
    if not r0:
        return [], u0, v0
    c = F.inv_el(r0[-1])
    return scale(F, r0, c), scale(F, u0, c), scale(F, v0, c)


def pow_mod(F, f, e, m):
    out = [1]
    base = mod(F, f, m)
    while e:
        if e & 1:
            out = mod(F, mul(F, out, base), m)
        base = mod(F, mul(F, base, base), m)
        e >>= 1
    return out


def derivative(F, f):
    out = []
    for i in range(1, len(f)):
        out.append(int(F.mul(f[i], i % F.p)))
    return trim(out)


def eval_at(F, f, a):
    acc = 0
    for c in reversed(f):
        acc = int(F.add(F.mul(acc, a), c))
    return acc


def p_th_root(F, f):
    """g with g(x)^p = f(x), assuming f is a polynomial in x^p."""
    out = []
    for i in range(0, len(f), F.p):
        out.append(int(F.frobenius_root(np.array(f[i]))))
    return trim(out)


def squarefree_decomposition(F, f):
    """List of (g_i, m_i): f = prod g_i^{m_i}, g_i squarefree, pairwise coprime."""
    f = monic(F, f)
    out = []
    if deg(f) < 1:
        return out
    d = derivative(F, f)
    if not d:  # f = h(x^p)
        for g, m in squarefree_decomposition(F, p_th_root(F, f)):
            out.append((g, m * F.p))
        return out
    c = gcd(F, f, d)
    w, _ = divmod_(F, f, c)
    i = 1
    while deg(w) > 0:
        y = gcd(F, w, c)
        fac, _ = divmod_(F, w, y)
        if deg(fac) > 0:
            out.append((fac, i))
        w = y
        c, _ = divmod_(F, c, y)
        i += 1
    if deg(c) > 0:
        # leftover c is a perfect p-th power
        for g, m in squarefree_decomposition(F, p_th_root(F, c)):
            out.append((g, m * F.p))
    return out


def distinct_degree(F, f):
    """For squarefree monic f: list of (product-of-irreducibles, degree)."""
    out = []
    x = [0, 1]
    h = list(x)
    d = 0
    f = list(f)
    while deg(f) >= 1:
        d += 1
        if 2 * d > deg(f):
            out.append((f, deg(f)))
            break
        h = pow_mod(F, h, F.q, f)
        g = gcd(F, sub(F, h, x), f)
        if deg(g) > 0:
            out.append((g, d))
            f, _ = divmod_(F, f, g)
            h = mod(F, h, f)
    return out


def _edf_split(F, f, d, rng):
    """Split monic squarefree f (all factors of degree d) via Cantor-Zassenhaus."""
    n = deg(f)
    if n == d:
        return [f]
    while True:
        a = [int(rng.integers(0, F.q)) for _ in range(n)]
        trim(a)
        if deg(a) < 1:
            continue
        if F.p == 2:
            # trace map sum a^(2^i) over the degree-d*... extension
            b = list(a)
            t = list(a)
            for _ in range(d * F.n - 1):
                b = pow_mod(F, b, 2, f)
                t = add(F, t, b)
            g = gcd(F, t, f)
        else:
            e = (F.q ** d - 1) // 2
            b = pow_mod(F, a, e, f)
            g = gcd(F, sub(F, b, [1]), f)
        if 0 < deg(g) < n:
            left = _edf_split(F, g, d, rng)
            right = _edf_split(F, divmod_(F, f, g)[0], d, rng)
            return left + right


def factor(F, f, seed=0):
    """Full factorization: list of (irreducible monic, multiplicity)."""
    rng = np.random.default_rng(seed)
    out = []
    lead = f[-1] if f else 0
    if lead == 0:
        raise ValueError("cannot factor the zero polynomial")
    for g, m in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in _edf_split(F, h, d, rng):
                out.append((monic(F, irr), m))
    out.sort(key=lambda t: (deg(t[0]), t[0]))
    return out


def roots(F, f):
    """All roots in F, found by scanning (q is small by construction)."""
    return [a for a in range(F.q) if eval_at(F, f, a) == 0]


def is_irreducible(F, f, seed=0):
    f = monic(F, f)
    if deg(f) < 1:
        return False
    fac = factor(F, f, seed=seed)
    return len(fac) == 1 and fac[0][1] == 1
