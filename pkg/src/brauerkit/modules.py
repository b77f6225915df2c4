"""Modules over group algebras kG: construction, functors, Brauer construction.

A Module stores matrices for a generating set of its group (column
convention: vectors are columns, action(g) @ v), with the full element
action derived through a word tree and cached.  Permutation modules
carry a perm_basis certificate (the G-set action on basis indices).
Subgroups handed to operations are Subgroups of the module's own group.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .groups import (Group, Subgroup, all_subgroups_of_p_group, coset_reps,
                     normalizer)


class PermBasis:
    """G-set structure on the basis: images of points under each generator."""

    def __init__(self, gen_images):
        self.gen_images = [np.asarray(g, dtype=np.int64) for g in gen_images]

    @property
    def npoints(self):
        return len(self.gen_images[0]) if self.gen_images else 0


def _perm_matrix(img, n):
    m = np.zeros((n, n), dtype=np.int64)
    m[np.asarray(img, dtype=np.int64), np.arange(n)] = 1
    return m


class Module:
    def __init__(self, group: Group, field, dim, gens, gen_action,
                 perm_basis: PermBasis | None = None, check=True):
        self.group = group
        self.field = field
        self.dim = int(dim)
        self.gens = list(gens)
        self.gen_action = [np.asarray(m, dtype=np.int64) for m in gen_action]
        self.perm_basis = perm_basis
        self._cache = {0: np.eye(self.dim, dtype=np.int64)}
        for g, m in zip(self.gens, self.gen_action):
            self._cache[int(g)] = m
        self._words = None
        if check:
            self._spot_check()

    def _spot_check(self):
        for m in self.gen_action:
            if m.shape != (self.dim, self.dim):
                raise ValueError("generator matrix has wrong shape")
        from .groups import closure
        if len(closure(self.group, self.gens)) != self.group.order:
            raise ValueError("gens do not generate the group")
        rng = np.random.default_rng(0)
        n = self.group.order
        for _ in range(min(10, n * n)):
            a, b = int(rng.integers(0, n)), int(rng.integers(0, n))
            lhs = self.field.matmul(self.action_of(a), self.action_of(b))
            if not np.array_equal(lhs, self.action_of(self.group.mul(a, b))):
                raise ValueError("action is not multiplicative")
        if self.perm_basis is not None:
            for m in self.gen_action:
                if np.any(m.sum(axis=0) != 1) or not np.all((m == 0) | (m == 1)):
                    raise ValueError("perm_basis given but generator is not a permutation matrix")

    def _word_tree(self):
        if self._words is None:
            n = self.group.order
            parent = np.full(n, -1, dtype=np.int64)
            via = np.full(n, -1, dtype=np.int64)
            parent[0] = 0
            frontier = [0]
            while frontier:
                nxt = []
                for x in frontier:
                    for gi, g in enumerate(self.gens):
                        y = self.group.mul(g, x)
                        if parent[y] < 0 and y != 0:
                            parent[y] = x
                            via[y] = gi
                            nxt.append(y)
                frontier = nxt
            if np.any(parent < 0):
                raise RuntimeError("gens do not generate the group")
            self._words = (parent, via)
        return self._words

    def action_of(self, x):
        x = int(x)
        if x in self._cache:
            return self._cache[x]
        parent, via = self._word_tree()
        m = self.field.matmul(self.gen_action[int(via[x])], self.action_of(int(parent[x])))
        self._cache[x] = m
        return m

    def sum_action(self, elements, coeffs=None):
        """Matrix of sum c_x * x acting on the module."""
        F = self.field
        out = F.zeros(self.dim, self.dim)
        for i, x in enumerate(elements):
            m = self.action_of(x)
            if coeffs is not None:
                c = int(coeffs[i])
                if c == 0:
                    continue
                m = F.mul(c, m)
            out = F.add(out, m)
        return out

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def trivial(group: Group, field):
        gens = group.generators()
        one = np.eye(1, dtype=np.int64)
        return Module(group, field, 1, gens, [one] * len(gens),
                      PermBasis([np.zeros(1, dtype=np.int64)] * len(gens)), check=False)

    @staticmethod
    def zero(group: Group, field):
        gens = group.generators()
        z = np.zeros((0, 0), dtype=np.int64)
        return Module(group, field, 0, gens, [z] * len(gens), None, check=False)

    @staticmethod
    def from_gset(group: Group, field, gens, gen_images):
        """Permutation module from generator images on points."""
        n = len(gen_images[0]) if gen_images else 0
        mats = [_perm_matrix(img, n) for img in gen_images]
        return Module(group, field, n, gens, mats, PermBasis(gen_images))

    @staticmethod
    def permutation_on_cosets(group: Group, field, s: Subgroup):
        """k[G/S] on the left cosets of S (least-element representatives)."""
        reps = coset_reps(group, s)
        coset_of = np.full(group.order, -1, dtype=np.int64)
        mem = np.array(s.members, dtype=np.int64)
        for i, r in enumerate(reps):
            coset_of[group.table[r, mem]] = i
        gens = group.generators()
        imgs = [coset_of[group.table[g, np.array(reps, dtype=np.int64)]] for g in gens]
        mod = Module.from_gset(group, field, gens, imgs)
        mod.coset_data = (s, reps, coset_of)
        return mod

    @staticmethod
    def regular(group: Group, field):
        """kG under left translation."""
        gens = group.generators()
        imgs = [group.table[g, np.arange(group.order)] for g in gens]
        return Module.from_gset(group, field, gens, imgs)

    # -- functors --------------------------------------------------------------

    def restrict(self, s: Subgroup):
        """Restriction along s <= group, as a module over s.as_group()."""
        if s.parent is not self.group:
            raise ValueError("subgroup of a different group")
        grp, to_parent = s.as_group()
        lgens = grp.generators()
        mats = [self.action_of(int(to_parent[g])) for g in lgens]
        pb = None
        if self.perm_basis is not None:
            pb = PermBasis([_matrix_to_perm(m) for m in mats])
        return Module(grp, self.field, self.dim, lgens, mats, pb, check=False)

    def dual(self):
        mats = [self.action_of(self.group.inv(g)).T for g in self.gens]
        pb = PermBasis([_matrix_to_perm(m) for m in mats]) if self.perm_basis else None
        return Module(self.group, self.field, self.dim, self.gens, mats, pb, check=False)

    def conjugate(self, t: int):
        """^t M: same space, g acts as t^{-1} g t."""
        g = self.group
        mats = [self.action_of(g.mul(g.mul(g.inv(t), x), t)) for x in self.gens]
        return Module(g, self.field, self.dim, self.gens, mats, None, check=False)

    def direct_sum(self, other: "Module"):
        if other.group is not self.group or other.field != self.field:
            raise ValueError("summands over different algebras")
        gens = self.gens
        mats = []
        for g in gens:
            a, b = self.action_of(g), other.action_of(g)
            m = self.field.zeros(self.dim + other.dim, self.dim + other.dim)
            m[: self.dim, : self.dim] = a
            m[self.dim:, self.dim:] = b
            mats.append(m)
        pb = None
        if self.perm_basis is not None and other.perm_basis is not None:
            pb = PermBasis([np.concatenate([
                _matrix_to_perm(self.action_of(g)),
                _matrix_to_perm(other.action_of(g)) + self.dim]) for g in gens])
        return Module(self.group, self.field, self.dim + other.dim, gens, mats, pb,
                      check=False)

    def tensor(self, other: "Module"):
        """M (x)_k N with diagonal action (product G-set for perm modules)."""
        if other.group is not self.group or other.field != self.field:
            raise ValueError("tensor over different algebras")
        gens = self.gens
        mats = [la.kron(self.field, self.action_of(g), other.action_of(g)) for g in gens]
        pb = None
        if self.perm_basis is not None and other.perm_basis is not None:
            d2 = other.dim
            imgs = []
            for g in gens:
                i1 = _matrix_to_perm(self.action_of(g))
                i2 = _matrix_to_perm(other.action_of(g))
                imgs.append((i1[:, None] * d2 + i2[None, :]).ravel())
            pb = PermBasis(imgs)
        return Module(self.group, self.field, self.dim * other.dim, gens, mats, pb,
                      check=False)

    # -- invariants ------------------------------------------------------------

    def fixed_points(self, s: Subgroup | None = None, gens=None):
        """Row basis of {v : gv = v for g in S} (S = whole group if None)."""
        F = self.field
        if gens is None:
            gens = s.generators() if s is not None else self.group.generators()
        if not gens:
            return np.eye(self.dim, dtype=np.int64)
        rows = [F.sub(self.action_of(g), np.eye(self.dim, dtype=np.int64)) for g in gens]
        return la.nullspace(F, np.vstack(rows))


def _is_perm(m):
    return np.all((m == 0) | (m == 1)) and np.all(m.sum(axis=0) == 1) and \
        np.all(m.sum(axis=1) == 1)


def _matrix_to_perm(m):
    rows, cols = np.nonzero(m)
    img = np.zeros(m.shape[0], dtype=np.int64)
    img[cols] = rows
    return img


def induce(module: Module, s: Subgroup, big: Group | None = None):
    """Ind_S^G of a module over s.as_group(); returns a module over s.parent.

    Basis x_i (x) m on the least-element left-coset transversal:
    g (x_i (x) m) = x_j (x) (h m) with g x_i = x_j h.
    """
    g = big or s.parent
    if s.parent is not g:
        raise ValueError("subgroup parent mismatch")
    sub_grp, to_parent = s.as_group()
    if module.group is not sub_grp:
        raise ValueError("module must live over s.as_group()")
    reps = coset_reps(g, s)
    coset_of = np.full(g.order, -1, dtype=np.int64)
    mem = np.array(s.members, dtype=np.int64)
    for i, r in enumerate(reps):
        coset_of[g.table[r, mem]] = i
    d = module.dim
    n = len(reps) * d
    gens = g.generators()
    F = module.field
    mats = []
    for gg in gens:
        m = F.zeros(n, n)
        for i, r in enumerate(reps):
            gx = g.mul(gg, r)
            j = int(coset_of[gx])
            h = g.mul(g.inv(reps[j]), gx)
            blk = module.action_of(s.parent_to_local(h))
            m[j * d:(j + 1) * d, i * d:(i + 1) * d] = blk
        mats.append(m)
    pb = None
    if module.perm_basis is not None and all(_is_perm(m) for m in mats):
        pb = PermBasis([_matrix_to_perm(m) for m in mats])
    return Module(g, F, n, gens, mats, pb, check=False)


def relative_trace_matrix(module: Module, q: Subgroup, p: Subgroup):
    """Matrix of tr^P_Q = sum over x in [P/Q] of action(x)."""
    if not q._member_set <= p._member_set:
        raise ValueError("tr^P_Q needs Q <= P")
    seen = set()
    reps = []
    qmem = np.array(q.members, dtype=np.int64)
    t = module.group.table
    for x in p.members:
        if x in seen:
            continue
        reps.append(x)
        seen.update(int(v) for v in t[x, qmem])
    return module.sum_action(reps)


def relative_trace(module: Module, q: Subgroup, p: Subgroup):
    """Row basis of tr^P_Q(M^Q) inside M^P coordinates... returned in
    ambient coordinates (rows)."""
    F = module.field
    fix_q = module.fixed_points(q)
    tr = relative_trace_matrix(module, q, p)
    img = F.matmul(tr, fix_q.T).T
    return la.row_space(F, img)


class BrauerModule:
    """M(P) with its quotient presentation and the acting normalizer.

    module:  the quotient as a module over nsub.as_group()
    quot:    linalg.Quotient of (fixed points) / (sum of traces)
    """

    def __init__(self, module, quot, p_sub, nsub):
        self.module = module
        self.quot = quot
        self.p_sub = p_sub
        self.nsub = nsub

    @property
    def dim(self):
        return self.module.dim

    def induced_map(self, f, target: "BrauerModule"):
        """Matrix M(P) -> N(P) induced by an equivariant f: M -> N."""
        return la.induced_on_quotient(self.module.field, target.quot, f, self.quot)

    def brauer_map_on_fixed(self):
        """Matrix sending M^P (coords in the fixed basis) onto M(P)."""
        eye = np.eye(self.quot.v_basis.shape[0], dtype=np.int64)
        return self.quot.project_v(eye).T


def brauer_construction(module: Module, p: Subgroup, nsub: Subgroup | None = None):
    """M(P) = M^P / sum of tr^P_Q(M^Q) over maximal Q < P.

    Returns a BrauerModule over nsub.as_group() (default N_G(P)); P acts
    trivially on the result, which is asserted.  If P is not a p-group
    the zero module is returned per the convention M(P) = 0.
    """
    g = module.group
    F = module.field
    if nsub is None:
        nsub = normalizer(g, p)
    if not _subgroup_is_primary(p):
        ngrp, _ = nsub.as_group()
        zero = Module.zero(ngrp, F)
        quot = la.Quotient(F, np.zeros((0, module.dim), dtype=np.int64), None)
        return BrauerModule(zero, quot, p, nsub)
    fixed = module.fixed_points(p)
    trace_rows = []
    if p.order > 1:
        pgrp, to_parent = p.as_group()
        for sub in all_subgroups_of_p_group(Subgroup.full(pgrp)):
            if sub.order * _p_of_order(p.order) != p.order:
                continue
            q = Subgroup(g, [int(to_parent[m]) for m in sub.members], check=False)
            trace_rows.append(relative_trace(module, q, p))
    w = la.stack_rows(trace_rows) if trace_rows else None
    quot = la.Quotient(F, fixed, w if w is not None and w.size else None)
    ngrp, n_to_parent = nsub.as_group()
    lgens = ngrp.generators()
    mats = []
    for lg in lgens:
        f = module.action_of(int(n_to_parent[lg]))
        mats.append(la.induced_on_quotient(F, quot, f, quot))
    out = Module(ngrp, F, quot.dim, lgens, mats, None, check=False)
    bm = BrauerModule(out, quot, p, nsub)
    # P acts trivially on M(P)
    for x in p.generators():
        loc = nsub.parent_to_local(x)
        if not np.array_equal(out.action_of(loc), np.eye(out.dim, dtype=np.int64)):
            raise RuntimeError("P does not act trivially on M(P)")
    return bm


def _p_of_order(n):
    d = 2
    while n % d:
        d += 1
    return d


def _subgroup_is_primary(p: Subgroup):
    if p.order == 1:
        return True
    q = _p_of_order(p.order)
    n = p.order
    while n % q == 0:
        n //= q
    return n == 1


def module_from_action_on_subspace(module: Module, basis_rows):
    """Submodule on an invariant subspace, with embedding/projection.

    Returns (sub, emb, proj): emb (dim x r) columns are the basis, proj
    (r x dim) a left inverse; action is proj @ g @ emb.
    """
    F = module.field
    space = la.RowSpace(F, basis_rows)
    b = space.basis
    emb = b.T
    proj = np.zeros((b.shape[0], module.dim), dtype=np.int64)
    for i, c in enumerate(space.pivots):
        proj[i, c] = 1
    # proj @ emb = I because basis is in RREF
    mats = []
    for g in module.gens:
        img = F.matmul(module.action_of(g), emb)
        mats.append(space.coords(img.T).T)
    sub = Module(module.group, F, b.shape[0], module.gens, mats, None, check=False)
    return sub, emb, proj


def cut_by_idempotent(module: Module, idem_matrix):
    """Image of an equivariant idempotent as a module, with witnesses."""
    F = module.field
    img = la.row_space(F, idem_matrix.T)
    sub, emb, _ = module_from_action_on_subspace(module, img)
    # projection: coordinates of e's columns w.r.t. the image basis
    space = la.RowSpace(F, img)
    proj = space.coords(idem_matrix.T).T  # r x dim ... e = emb @ proj
    return sub, emb, proj
