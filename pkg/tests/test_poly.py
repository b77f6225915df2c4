import numpy as np
import pytest

from brauerkit.gf import Field
from brauerkit import poly


F2 = Field(2)
F3 = Field(3)
F9 = Field(3, 2)


def test_arith_roundtrip():
    f = [1, 2, 0, 1]  # 1 + 2x + x^3 over GF(3)
    g = [2, 1]
    q, r = poly.divmod_(F3, poly.mul(F3, f, g), g)
    assert q == f and r == []


def test_xgcd():
    f = [1, 0, 1]      # 1 + x^2 = (1+x)^2 over GF(2)
    g = [1, 1]
    d, u, v = poly.xgcd(F2, f, g)
    assert d == [1, 1]
    assert poly.add(F2, poly.mul(F2, u, f), poly.mul(F2, v, g)) == d


@pytest.mark.parametrize("F,seed", [(F2, 0), (F3, 1), (F9, 2)])
def test_factor_products_of_randoms(F, seed):
    rng = np.random.default_rng(seed)
    for trial in range(8):
        f = [1]
        for _ in range(3):
            d = int(rng.integers(1, 4))
            g = [int(rng.integers(0, F.q)) for _ in range(d)] + [1]
            f = poly.mul(F, f, g)
        fac = poly.factor(F, f, seed=trial)
        back = [1]
        for irr, m in fac:
            assert poly.is_irreducible(F, irr)
            for _ in range(m):
                back = poly.mul(F, back, irr)
        assert back == poly.monic(F, f)


def test_known_factorizations():
    # x^3 - 1 = (x-1)(x^2+x+1) over GF(2)
    fac = poly.factor(F2, [1, 0, 0, 1])
    assert sorted((poly.deg(f), m) for f, m in fac) == [(1, 1), (2, 1)]
    # x^3 - 1 = (x-1)^3 over GF(3)
    fac3 = poly.factor(F3, [2, 0, 0, 1])
    assert fac3 == [([2, 1], 3)]
    # x^2 + 1 over GF(3) is irreducible; over GF(9) it splits
    assert poly.is_irreducible(F3, [1, 0, 1])
    fac9 = poly.factor(F9, [1, 0, 1])
    assert all(poly.deg(f) == 1 for f, _ in fac9) and len(fac9) == 2


def test_roots():
    # x^2 - 1 over GF(3): roots 1 and 2
    assert poly.roots(F3, [2, 0, 1]) == [1, 2]


def test_squarefree_decomposition_p_power():
    # (x+1)^4 over GF(2): derivative vanishes, needs p-th root path
    f = poly.mul(F2, poly.mul(F2, [1, 1], [1, 1]), poly.mul(F2, [1, 1], [1, 1]))
    sf = poly.squarefree_decomposition(F2, f)
    assert sf == [([1, 1], 4)]
