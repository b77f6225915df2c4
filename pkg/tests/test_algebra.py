import numpy as np
import pytest

from brauerkit.gf import Field, SplittingError
from brauerkit import linalg as la
from brauerkit import poly
from brauerkit.algebra import (FDAlgebra, central_primitive_idempotents,
                               primitive_idempotents, radical,
                               radical_commutative)


def poly_quotient_algebra(F, modulus):
    """F[x]/(modulus) as an FDAlgebra (basis 1, x, ..., x^{d-1})."""
    d = len(modulus) - 1
    sc = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            prod = [0] * (i + j) + [1]
            rem = poly.mod(F, prod, list(modulus))
            for k, c in enumerate(rem):
                sc[i, j, k] = c
    unit = np.zeros(d, dtype=np.int64)
    unit[0] = 1
    return FDAlgebra(F, sc, unit)


def matrix_algebra(F, n):
    """Full n x n matrix algebra, basis e_{rc} ordered row-major."""
    d = n * n
    sc = np.zeros((d, d, d), dtype=np.int64)
    for r1 in range(n):
        for c1 in range(n):
            for r2 in range(n):
                for c2 in range(n):
                    if c1 == r2:
                        sc[r1 * n + c1, r2 * n + c2, r1 * n + c2] = 1
    unit = np.zeros(d, dtype=np.int64)
    for r in range(n):
        unit[r * n + r] = 1
    return FDAlgebra(F, sc, unit)


def triangular_algebra(F, n):
    """Upper triangular n x n matrices; radical = strict uppers."""
    pos = [(r, c) for r in range(n) for c in range(r, n)]
    idx = {rc: i for i, rc in enumerate(pos)}
    d = len(pos)
    sc = np.zeros((d, d, d), dtype=np.int64)
    for (r1, c1) in pos:
        for (r2, c2) in pos:
            if c1 == r2:
                sc[idx[(r1, c1)], idx[(r2, c2)], idx[(r1, c2)]] = 1
    unit = np.zeros(d, dtype=np.int64)
    for r in range(n):
        unit[idx[(r, r)]] = 1
    return FDAlgebra(F, sc, unit), pos


def group_algebra_cyclic(F, m):
    """k[C_m] with basis the group elements."""
    sc = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            sc[i, j, (i + j) % m] = 1
    unit = np.zeros(m, dtype=np.int64)
    unit[0] = 1
    return FDAlgebra(F, sc, unit)


F2, F3, F4, F5 = Field(2), Field(3), Field(2, 2), Field(5)


def test_radical_field_is_zero():
    assert radical(poly_quotient_algebra(F5, (2, 1))).shape[0] == 0  # GF(5)
    assert radical(poly_quotient_algebra(F2, (1, 1, 1))).shape[0] == 0  # GF(4)


def test_radical_dual_numbers():
    # GF(2)[x]/(x^2): radical is (x)
    A = poly_quotient_algebra(F2, (0, 0, 1))
    J = radical(A)
    assert J.shape[0] == 1 and list(J[0]) == [0, 1]


def test_radical_matrix_algebra_semisimple():
    for F, n in [(F2, 2), (F3, 2), (F4, 2)]:
        assert radical(matrix_algebra(F, n)).shape[0] == 0


def test_radical_triangular():
    for F in (F2, F3):
        A, pos = triangular_algebra(F, 3)
        J = radical(A)
        assert J.shape[0] == 3  # strict upper triangle
        strict = [i for i, (r, c) in enumerate(pos) if r != c]
        space = la.RowSpace(F, J)
        for i in strict:
            v = np.zeros(A.dim, dtype=np.int64)
            v[i] = 1
            assert space.contains(v)


def test_radical_group_algebras():
    # k[C_p] over GF(p): augmentation-style radical of dim p-1
    assert radical(group_algebra_cyclic(F2, 2)).shape[0] == 1
    assert radical(group_algebra_cyclic(F3, 3)).shape[0] == 2
    # k[C_6] over GF(2): C_6 = C_2 x C_3, radical dim = 1*3 = 3
    assert radical(group_algebra_cyclic(F2, 6)).shape[0] == 3
    # k[C_3] over GF(2) is semisimple
    assert radical(group_algebra_cyclic(F2, 3)).shape[0] == 0


def test_radical_commutative_oracle_agrees():
    rng = np.random.default_rng(0)
    for F, m in [(F2, 4), (F3, 6), (F2, 6), (F5, 5), (F4, 3)]:
        A = group_algebra_cyclic(F, m)
        J1 = la.row_space(F, radical(A))
        J2 = la.row_space(F, radical_commutative(A))
        assert J1.shape == J2.shape and np.array_equal(J1, J2)
    del rng


def test_radical_quotient_is_semisimple():
    A = group_algebra_cyclic(F3, 9)
    J = radical(A)
    assert J.shape[0] == 8
    Abar, _ = A.quotient_algebra(J)
    assert radical(Abar).shape[0] == 0


def test_min_poly():
    A = group_algebra_cyclic(F2, 3)
    g = np.array([0, 1, 0])
    assert A.min_poly(g) == [1, 0, 0, 1]  # x^3 - 1
    assert A.min_poly(A.unit) == [1, 1]


def test_cpi_product_of_fields():
    # GF(2)[x]/(x^3 - 1) = GF(2) x GF(4): two blocks
    A = group_algebra_cyclic(F2, 3)
    cpis = central_primitive_idempotents(A)
    assert len(cpis) == 2
    s = np.zeros(3, dtype=np.int64)
    for e in cpis:
        assert A.is_idempotent(e)
        s = F2.add(s, e)
    assert np.array_equal(s, A.unit)
    for i in range(len(cpis)):
        for j in range(i + 1, len(cpis)):
            assert not np.any(A.mult(cpis[i], cpis[j]))


def test_cpi_local_algebra():
    # k[C_4] over GF(2) is local: one block
    A = group_algebra_cyclic(F2, 4)
    assert len(central_primitive_idempotents(A)) == 1


def test_cpi_exhaustive_oracle_c6():
    # oracle: enumerate all idempotents of k[C_6] over GF(2) (2^6 elements)
    A = group_algebra_cyclic(F2, 6)
    idems = []
    for code in range(2 ** 6):
        v = np.array([(code >> i) & 1 for i in range(6)], dtype=np.int64)
        if A.is_idempotent(v):
            idems.append(v)
    # primitive = nonzero idempotents not splittable as e = e1 + e2
    prims = []
    for v in idems:
        if not np.any(v):
            continue
        splittable = False
        for w in idems:
            if np.any(w) and not np.array_equal(w, v):
                rest = F2.sub(v, w)
                if np.any(rest) and A.is_idempotent(rest) and \
                   not np.any(A.mult(w, rest)) and \
                   np.array_equal(F2.add(w, rest), v):
                    splittable = True
                    break
        if not splittable:
            prims.append(v)
    cpis = central_primitive_idempotents(A)
    assert len(cpis) == len(prims)
    keyed = {tuple(e) for e in cpis}
    assert keyed == {tuple(e) for e in prims}


def test_primitive_idempotents_matrix_algebra():
    A = matrix_algebra(F3, 2)
    dec = primitive_idempotents(A)
    assert len(dec.idempotents) == 2
    assert dec.blocks[0]["n"] == 2 and dec.blocks[0]["center_dim"] == 1
    s = np.zeros(A.dim, dtype=np.int64)
    for e in dec.idempotents:
        assert A.is_idempotent(e)
        s = F3.add(s, e)
    assert np.array_equal(s, A.unit)


def test_primitive_idempotents_triangular():
    A, _ = triangular_algebra(F2, 2)
    dec = primitive_idempotents(A)
    assert len(dec.idempotents) == 2
    for i, e in enumerate(dec.idempotents):
        assert A.is_idempotent(e)
        for j in range(i + 1, len(dec.idempotents)):
            f = dec.idempotents[j]
            assert not np.any(A.mult(e, f)) and not np.any(A.mult(f, e))


def test_primitive_idempotents_nonsplit_detection():
    # GF(4) as GF(2)-algebra: one idempotent, but not split
    A = poly_quotient_algebra(F2, (1, 1, 1))
    dec = primitive_idempotents(A)
    assert len(dec.idempotents) == 1
    assert dec.blocks[0]["center_dim"] == 2
    with pytest.raises(SplittingError):
        primitive_idempotents(A, require_split=True)


def test_primitive_idempotents_deterministic():
    A = matrix_algebra(F3, 2)
    a = primitive_idempotents(A, seed=0)
    b = primitive_idempotents(A, seed=0)
    assert all(np.array_equal(x, y) for x, y in zip(a.idempotents, b.idempotents))
