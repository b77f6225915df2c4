import itertools

import numpy as np
import pytest

from brauerkit.groups import (Group, GroupIso, ProductSubgroup, Subgroup,
                              centralizer, closure, compose_subgroups,
                              conjugate_product_subgroup, conjugate_subgroup,
                              coset_reps, diagonal, direct_product,
                              double_coset_reps, isomorphisms, n_phi,
                              normalizer, p_subgroups_up_to_conjugacy,
                              subgroup_conjugacy_witness, sylow_subgroup,
                              twisted_diagonal)


S3 = Group.symmetric(3)
S4 = Group.symmetric(4)
A4 = Group.alternating(4)
D8 = Group.dihedral(4)
C2 = Group.cyclic(2)
C6 = Group.cyclic(6)


def brute_all_subgroups(g):
    """Oracle: closures of all <=2-element subsets (enough for tiny groups)."""
    subs = {closure(g, [])}
    for a in range(g.order):
        for b in range(g.order):
            subs.add(closure(g, [a, b]))
    return {frozenset(s) for s in subs}


def test_constructions():
    assert S3.order == 6 and S4.order == 24 and A4.order == 12 and D8.order == 8
    assert C6.element_order(1) == 6
    # exponent of C2 x C2 is 2
    v4 = direct_product(C2, C2)
    assert v4.order == 4
    assert all(v4.element_order(x) in (1, 2) for x in range(4))


def test_direct_product_structure():
    gh = direct_product(S3, S3)
    assert gh.order == 36
    a, b = 3, 4
    x = gh.product_encode(a, b)
    assert gh.product_parts(x) == (a, b)
    # componentwise product
    y = gh.product_encode(1, 2)
    assert gh.product_parts(gh.mul(x, y)) == (S3.mul(a, 1), S3.mul(b, 2))
    # identity factor: S3 x C1 isomorphic to S3 (orders of elements match)
    triv = Group.cyclic(1)
    g1 = direct_product(S3, triv)
    assert g1.order == 6
    assert sorted(g1.element_order(x) for x in range(6)) == \
        sorted(S3.element_order(x) for x in range(6))


def test_direct_product_cached():
    assert direct_product(S3, A4) is direct_product(S3, A4)


def test_subgroup_closure_and_validation():
    s = Subgroup.generated(S3, [1])
    assert s.order in (2, 3)
    with pytest.raises(ValueError):
        Subgroup(S3, (0, 1, 2, 3))  # arbitrary slice is generally not closed


def test_conjugacy_classes_s3():
    cls = S3.conjugacy_classes()
    assert sorted(len(c) for c in cls) == [1, 2, 3]


def test_normalizer_centralizer():
    c3 = sylow_subgroup(S3, 3)
    assert c3.order == 3
    assert normalizer(S3, c3).order == 6  # C3 normal in S3
    assert centralizer(S3, Subgroup.trivial(S3)).order == 6
    # N_{GxG}(Delta(P)) = Delta(N_G(P)) . (C_G(P) x 1)
    p = sylow_subgroup(S3, 3)
    dp = diagonal(p)
    n = normalizer(dp.parent, dp)
    ng = normalizer(S3, p)
    cg = centralizer(S3, p)
    expected = set()
    for d in ng.members:
        for c in cg.members:
            expected.add(dp.parent.product_encode(S3.mul(c, d), d))
    assert set(n.members) == expected


def test_p_subgroups_up_to_conjugacy_oracle():
    # oracle: brute-force subgroup enumeration
    for g, p, expect_orders in [(S3, 3, [1, 3]), (S3, 2, [1, 2]),
                                (A4, 2, [1, 2, 4]), (S4, 3, [1, 3])]:
        classes = p_subgroups_up_to_conjugacy(g, p)
        assert sorted(s.order for s in classes) == expect_orders
        allsubs = brute_all_subgroups(g)
        targets = {fs for fs in allsubs
                   if all(_is_ppow(g.element_order(x), p) for x in fs)}
        # every class rep appears in the oracle and reps are class-least
        reps = {frozenset(s.members) for s in classes}
        assert reps <= targets
        # class count matches: orbit-partition the oracle
        orbits = set()
        for fs in targets:
            orbit = frozenset(
                frozenset(conjugate_subgroup(g, x, Subgroup(g, fs, check=False)).members)
                for x in range(g.order))
            orbits.add(orbit)
        assert len(orbits) == len(classes)


def _is_ppow(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def test_sylow_d8_in_s4():
    syl = sylow_subgroup(S4, 2)
    assert syl.order == 8
    assert p_subgroups_up_to_conjugacy(D8, 2)[-1].order == 8


def test_twisted_diagonal_basics():
    p = Subgroup.generated(S3, [S3.generators()[1]])  # some C2
    delta = diagonal(p)
    assert delta.order == p.order
    assert delta.is_twisted_diagonal()
    p2, phi, q2 = delta.as_twisted_diagonal()
    assert p2.members == p.members and q2.members == p.members
    assert all(phi(x) == x for x in p.members)


def test_twisted_diagonal_conjugation_formula():
    # ^(g,h) Delta(P, phi, Q) = Delta(^gP, c_g phi c_{h^-1}, ^hQ)
    p = sylow_subgroup(S3, 3)
    for phi in isomorphisms(p, p):
        delta = twisted_diagonal(p, phi, p)
        for g in range(6):
            for h in range(6):
                lhs = conjugate_product_subgroup(delta, g, h)
                tw = phi.precompose_conj(S3.inv(h)).postcompose_conj(g)
                rhs = twisted_diagonal(conjugate_subgroup(S3, g, p), tw,
                                       conjugate_subgroup(S3, h, p))
                assert lhs.members == rhs.members


def test_compose_twisted_diagonals():
    # Delta(P, phi, Q) * Delta(Q, psi, R) = Delta(P, phi psi, R)
    p = sylow_subgroup(S3, 3)
    isos = isomorphisms(p, p)
    for phi in isos:
        for psi in isos:
            left = compose_subgroups(twisted_diagonal(p, phi, p),
                                     twisted_diagonal(p, psi, p))
            rhs = twisted_diagonal(p, phi.compose(psi), p)
            assert left.members == rhs.members


def test_composition_lemma_identities():
    # X * X^o = Delta(p1 X) . (k1 X x 1), X * X^o * X = X
    gh = direct_product(S3, C6)
    # X = P x T for P <= S3, T <= C6 has k1 = P, k2 = T
    pmem = Subgroup.generated(S3, [1])
    tmem = Subgroup.generated(C6, [2])
    mem = [gh.product_encode(a, b) for a in pmem.members for b in tmem.members]
    x = ProductSubgroup(gh, mem)
    xo = x.opposite()
    comp = compose_subgroups(x, xo)
    gg = comp.parent
    expected = set()
    for d in x.p1().members:
        for c in x.k1().members:
            expected.add(gg.product_encode(S3.mul(c, d), d))
    assert set(comp.members) == expected
    back = compose_subgroups(comp, x)
    assert back.members == x.members
    # (X * Y)^o = Y^o * X^o on twisted diagonals
    p = sylow_subgroup(S3, 3)
    phi = isomorphisms(p, p)[1]
    x2 = twisted_diagonal(p, phi, p)
    y2 = twisted_diagonal(p, phi.inverse_iso(), p)
    assert compose_subgroups(x2, y2).opposite().members == \
        compose_subgroups(y2.opposite(), x2.opposite()).members


def test_compose_conjugation_equivariance():
    # ^(g,h)X * ^(h,k)Y = ^(g,k)(X*Y), random conjugators
    rng = np.random.default_rng(1)
    p = sylow_subgroup(S3, 3)
    phi = isomorphisms(p, p)[0]
    x = twisted_diagonal(p, phi, p)
    y = twisted_diagonal(p, phi, p)
    for _ in range(10):
        g, h, k = rng.integers(0, 6, size=3)
        lhs = compose_subgroups(conjugate_product_subgroup(x, g, h),
                                conjugate_product_subgroup(y, h, k))
        rhs = conjugate_product_subgroup(compose_subgroups(x, y), g, k)
        assert lhs.members == rhs.members


def test_product_counting_invariant():
    # |X| = |k1| |p2| = |k2| |p1|
    gh = direct_product(S3, S3)
    found = set()
    for gens in itertools.combinations(range(0, 36, 5), 2):
        mem = closure(gh, gens)
        found.add(mem)
    for mem in found:
        x = ProductSubgroup(gh, mem, check=False)
        assert x.order == x.k1().order * x.p2().order
        assert x.order == x.k2().order * x.p1().order


def test_n_phi():
    p = sylow_subgroup(S3, 3)
    ng = normalizer(S3, p)
    # phi = id, S = T = N_G(P) -> N_G(P)
    out = n_phi(ng, GroupIso.identity(p), ng)
    assert out.members == ng.members
    # contains C_G(P) whenever S does
    cg = centralizer(S3, p)
    assert set(cg.members) <= set(out.members)
    # p1(N_{SxT}(Delta(P, phi, Q))) = N_{(S, phi, T)}
    for phi in isomorphisms(p, p):
        delta = twisted_diagonal(p, phi, p)
        n = normalizer(delta.parent, delta)
        nst = ProductSubgroup(delta.parent, n.members, check=False)
        lhs = nst.p1()
        rhs = n_phi(ng, phi, ng)
        assert lhs.members == rhs.members


def test_isomorphisms_count():
    p = sylow_subgroup(S3, 3)  # C3: two automorphisms
    assert len(isomorphisms(p, p)) == 2
    v4 = sylow_subgroup(A4, 2)
    assert len(isomorphisms(v4, v4)) == 6  # Aut(V4) = S3
    c2a = Subgroup.generated(S3, [next(x for x in range(1, 6) if S3.element_order(x) == 2)])
    c4 = Subgroup.generated(D8, [1]) if D8.element_order(1) == 4 else None
    if c4 is not None and c4.order == 4:
        assert isomorphisms(c2a, c4) == []


def test_coset_and_double_coset_reps():
    c3 = sylow_subgroup(S3, 3)
    reps = coset_reps(S3, c3)
    assert len(reps) == 2 and reps[0] == 0
    dreps = double_coset_reps(S3, c3, c3)
    assert len(dreps) == 2
    # C3 g C2 has full size 6, so there is a single double coset
    t = next(x for x in range(1, 6) if S3.element_order(x) == 2)
    c2 = Subgroup.generated(S3, [t])
    assert len(double_coset_reps(S3, c3, c2)) == 1


def test_conjugacy_witness():
    subs2 = [Subgroup.generated(S3, [x]) for x in range(1, 6)
             if S3.element_order(x) == 2]
    for a in subs2:
        for b in subs2:
            w = subgroup_conjugacy_witness(S3, a, b)
            assert w is not None
            assert conjugate_subgroup(S3, w, a).members == b.members


def test_as_group_roundtrip():
    c3 = sylow_subgroup(S3, 3)
    grp, to_parent = c3.as_group()
    assert grp.order == 3
    for i in range(3):
        for j in range(3):
            assert to_parent[grp.mul(i, j)] == S3.mul(to_parent[i], to_parent[j])
