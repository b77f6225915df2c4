"""Hom spaces, endomorphism rings, and Krull-Schmidt decomposition.

hom_space uses spinning: a module is generated by few vectors, homs are
determined by the seed images, and the non-tree relations cut them out
of N^(#seeds) -- far cheaper than the naive intertwiner system.  The
decomposition of a module comes from one endomorphism ring computation
plus primitive-idempotent splitting; isomorphism of indecomposables is
decided exactly (a composition outside the radical of the local
endomorphism ring is a split mono, hence an iso in equal dimension).
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .algebra import (algebra_from_matrices, primitive_idempotents, radical)
from .groups import Subgroup, p_subgroups_up_to_conjugacy, sylow_subgroup
from .modules import Module, brauer_construction, cut_by_idempotent

_CHUNK = 1024


def _spin(module: Module):
    """Seeds + spanning data: for every basis vector of the spun basis,
    either a seed index or (parent, gen) with b = gen_action @ b_parent."""
    F = module.field
    d = module.dim
    seeds = []
    exprs = []        # ('seed', i) or ('mul', parent_index, gen_pos)
    vecs = []
    space = la.RowSpace(F, np.zeros((0, d), dtype=np.int64))
    queue = []
    next_seed = 0
    while space.dim < d:
        while next_seed < d and space.contains(np.eye(d, dtype=np.int64)[next_seed]):
            next_seed += 1
        v = np.eye(d, dtype=np.int64)[next_seed]
        seeds.append(next_seed)
        exprs.append(("seed", len(seeds) - 1))
        vecs.append(v)
        space = la.RowSpace(F, np.vstack(vecs))
        queue.append(len(vecs) - 1)
        while queue:
            k = queue.pop(0)
            for gi in range(len(module.gens)):
                w = F.matmul(module.gen_action[gi], vecs[k][:, None])[:, 0]
                if not space.contains(w):
                    vecs.append(w)
                    exprs.append(("mul", k, gi))
                    space = la.RowSpace(F, np.vstack(vecs))
                    queue.append(len(vecs) - 1)
    return seeds, exprs, np.vstack(vecs) if vecs else np.zeros((0, d), dtype=np.int64)


def hom_space(m: Module, n: Module):
    """Basis of Hom_kG(M, N) as a list of (dim N x dim M) matrices."""
    if m.group is not n.group or m.field != n.field:
        raise ValueError("hom between modules over different algebras")
    if m.gens != n.gens:
        # re-derive n's action on m's generating set
        n = Module(n.group, n.field, n.dim, m.gens,
                   [n.action_of(g) for g in m.gens], None, check=False)
    F = m.field
    if m.dim == 0 or n.dim == 0:
        return []
    seeds, exprs, basis = _spin(m)
    s = len(seeds)
    dn = n.dim
    nvars = s * dn
    binv = la.inverse(F, basis.T)  # spun-basis coordinates of a column vector
    # U_k: images of spun basis vectors as functions of the seed images
    us = []
    tree_pairs = set()
    for expr in exprs:
        if expr[0] == "seed":
            u = np.zeros((dn, nvars), dtype=np.int64)
            u[:, expr[1] * dn:(expr[1] + 1) * dn] = np.eye(dn, dtype=np.int64)
        else:
            _, parent, gi = expr
            u = F.matmul(n.gen_action[gi], us[parent])
            tree_pairs.add((parent, gi))
        us.append(u)
    # constraints: for every (k, g) pair that is not a tree edge,
    # rho_N(g) U_k must equal the U-combination of rho_M(g) b_k
    sol = np.eye(nvars, dtype=np.int64)  # rows span the remaining freedom
    pending = []

    def flush():
        nonlocal sol, pending
        if not pending:
            return
        c = np.vstack(pending)
        pending = []
        ker = la.nullspace(F, F.matmul(c, sol.T))
        sol = la.row_space(F, F.matmul(ker, sol))

    for k in range(len(exprs)):
        for gi in range(len(m.gens)):
            if (k, gi) in tree_pairs:
                continue  # consistent by construction of U
            w = F.matmul(m.gen_action[gi], basis[k][:, None])
            lam = F.matmul(binv, w)[:, 0]
            acc = F.matmul(n.gen_action[gi], us[k])
            for c_idx in np.nonzero(lam)[0]:
                acc = F.sub(acc, F.mul(int(lam[c_idx]), us[c_idx]))
            pending.append(acc)
            if sum(x.shape[0] for x in pending) >= _CHUNK:
                flush()
                if sol.shape[0] == 0:
                    return []
    flush()
    if sol.shape[0] == 0:
        return []
    # rebuild full matrices: H @ basis.T = [U_k w]_k
    out = []
    for w in sol:
        cols = np.stack([F.matmul(us[k], w[:, None])[:, 0] for k in range(len(exprs))],
                        axis=1)
        out.append(F.matmul(cols, binv))
    return out


def hom_space_naive(m: Module, n: Module):
    """Reference implementation: solve the full intertwiner system."""
    F = m.field
    if m.dim == 0 or n.dim == 0:
        return []
    rows = []
    eye_m = np.eye(m.dim, dtype=np.int64)
    eye_n = np.eye(n.dim, dtype=np.int64)
    for g in m.gens:
        a = m.action_of(g)
        b = n.action_of(g)
        # X a = b X  <->  (a^T (x) I - I (x) b) vec(X) = 0 for X row-major
        rows.append(F.sub(la.kron(F, a.T, eye_n), la.kron(F, eye_m, b)))
    ns = la.nullspace(F, np.vstack(rows))
    return [v.reshape(m.dim, n.dim).T for v in ns]


def endomorphism_algebra(m: Module):
    """(FDAlgebra, matrices) for End_kG(M)."""
    mats = hom_space(m, m)
    return algebra_from_matrices(m.field, mats), mats


class Summand:
    def __init__(self, module, embedding, projection, block):
        self.module = module          # the summand as a Module
        self.embedding = embedding    # dim_M x dim_S, a module map
        self.projection = projection  # dim_S x dim_M, a module map
        self.block = block            # Wedderburn block index (iso class key)


class DecompositionReport:
    """Full decomposition into indecomposables with witnesses.

    summands are ordered deterministically; summands with equal .block
    are isomorphic, and distinct blocks are non-isomorphic.
    """

    def __init__(self, module, summands, end_dim):
        self.module = module
        self.summands = summands
        self.end_dim = end_dim

    def multiplicities(self):
        out = {}
        for s in self.summands:
            out[s.block] = out.get(s.block, 0) + 1
        return out

    def check_witnesses(self):
        F = self.module.field
        total = F.zeros(self.module.dim, self.module.dim)
        for s in self.summands:
            if not np.array_equal(
                    F.matmul(s.projection, s.embedding),
                    np.eye(s.module.dim, dtype=np.int64)):
                return False
            total = F.add(total, F.matmul(s.embedding, s.projection))
        return np.array_equal(total, np.eye(self.module.dim, dtype=np.int64))


def decompose(m: Module, seed=0) -> DecompositionReport:
    """Krull-Schmidt decomposition via End(M) idempotents."""
    if m.dim == 0:
        return DecompositionReport(m, [], 0)
    end, mats = endomorphism_algebra(m)
    dec = primitive_idempotents(end, seed=seed)
    F = m.field
    summands = []
    for e_coords, blk in zip(dec.idempotents, dec.block_of):
        e_mat = F.zeros(m.dim, m.dim)
        for i in np.nonzero(e_coords)[0]:
            e_mat = F.add(e_mat, F.mul(int(e_coords[i]), mats[i]))
        sub, emb, proj = cut_by_idempotent(m, e_mat)
        summands.append(Summand(sub, emb, proj, blk))
    summands.sort(key=lambda s: (-s.module.dim, s.block))
    rep = DecompositionReport(m, summands, end.dim)
    if not rep.check_witnesses():
        raise RuntimeError("decomposition witnesses failed to verify")
    if sum(s.module.dim for s in summands) != m.dim:
        raise RuntimeError("summand dimensions do not add up")
    return rep


def indecomposable_iso_witness(m: Module, n: Module):
    """Exact isomorphism test for indecomposables; returns a matrix or None.

    m is assumed indecomposable (local End).  Soundness: if some g o f
    avoids the radical of End(m) it is invertible, so f is a split mono
    and equal dimensions force an isomorphism; if all compositions lie
    in the radical no isomorphism exists.
    """
    if m.dim != n.dim:
        return None
    F = m.field
    fwd = hom_space(m, n)
    if not fwd:
        return None
    bwd = hom_space(n, m)
    for f in fwd:
        if la.is_invertible(F, f):
            return f
    end, mats = endomorphism_algebra(m)
    j = radical(end)
    flat = np.vstack([mm.reshape(1, -1) for mm in mats])
    space = la.RowSpace(F, flat)
    jspace = la.RowSpace(F, F.matmul(j, flat)) if j.shape[0] else None
    for f in fwd:
        for g in bwd:
            comp = F.matmul(g, f)
            coords = space.coords(comp.reshape(1, -1))
            vec = F.matmul(coords, flat)[0]
            if jspace is None:
                inj = np.any(vec)
            else:
                inj = not jspace.contains(vec)
            if inj:
                return f  # g o f invertible in local End(m), so f is iso
    return None


def iso_witness(m: Module, n: Module, seed=0):
    """Isomorphism witness for arbitrary modules, or None (exact)."""
    if m.dim != n.dim:
        return None
    if m.dim == 0:
        return np.zeros((0, 0), dtype=np.int64)
    F = m.field
    fwd = hom_space(m, n)
    if not fwd:
        return None
    rng = np.random.default_rng(seed)
    for _ in range(32):
        cand = F.zeros(n.dim, m.dim)
        for h in fwd:
            cand = F.add(cand, F.mul(int(rng.integers(0, F.q)), h))
        if la.is_invertible(F, cand):
            return cand
    for h in fwd:
        if la.is_invertible(F, h):
            return h
    # exact route: match indecomposable summands
    dm = decompose(m, seed=seed)
    dn = decompose(n, seed=seed)
    used = [False] * len(dn.summands)
    total = F.zeros(n.dim, m.dim)
    for sm in dm.summands:
        found = False
        for j, sn in enumerate(dn.summands):
            if used[j] or sn.module.dim != sm.module.dim:
                continue
            w = indecomposable_iso_witness(sm.module, sn.module)
            if w is not None:
                used[j] = True
                total = F.add(total, F.matmul(sn.embedding, F.matmul(w, sm.projection)))
                found = True
                break
        if not found:
            return None
    return total if la.is_invertible(F, total) else None


def modules_isomorphic(m: Module, n: Module, seed=0) -> bool:
    return iso_witness(m, n, seed=seed) is not None


# ---------------------------------------------------------------------------
# p-permutation structure
# ---------------------------------------------------------------------------

def is_p_permutation(m: Module, p: int, seed=0):
    """(verdict, certificate): restriction to a Sylow p-subgroup is a
    direct sum of coset permutation modules k[S/Q]."""
    from .groups import all_subgroups_of_p_group
    syl = sylow_subgroup(m.group, p)
    res = m.restrict(syl)
    sgrp = res.group
    if res.perm_basis is not None:
        return True, [("perm_basis", None)]
    dec = decompose(res, seed=seed)
    subs = all_subgroups_of_p_group(Subgroup.full(sgrp))
    cert = []
    matched_cache = {}
    for s in dec.summands:
        key = (s.block, s.module.dim)
        if key in matched_cache:
            cert.append(matched_cache[key])
            continue
        hit = None
        for q in subs:
            if sgrp.order % q.order or sgrp.order // q.order != s.module.dim:
                continue
            cand = Module.permutation_on_cosets(sgrp, m.field, q)
            w = indecomposable_iso_witness(s.module, cand)
            if w is not None:
                hit = ("coset_module", tuple(q.members))
                break
        if hit is None:
            return False, [("no_permutation_form", s.module.dim)]
        matched_cache[key] = hit
        cert.append(hit)
    return True, cert


def vertex(m: Module, p: int, classes=None):
    """Vertex of an indecomposable trivial source module.

    The unique maximal conjugacy class of p-subgroups with M(P) != 0;
    classes may be passed to reuse a precomputed class list.
    """
    if classes is None:
        classes = p_subgroups_up_to_conjugacy(m.group, p)
    nonzero = []
    for cl in classes:
        bm = brauer_construction(m, cl)
        if bm.dim:
            nonzero.append(cl)
    if not nonzero:
        raise ValueError("zero module has no vertex")
    top = max(s.order for s in nonzero)
    tops = [s for s in nonzero if s.order == top]
    if len(tops) != 1:
        raise ValueError("no unique maximal class: module is not an "
                         "indecomposable trivial source module")
    # Prop 3.4(c) sanity: nonzero exactly below the vertex
    return tops[0]
