"""Dense exact linear algebra over a Field.

Vectors are rows unless noted; "basis" matrices carry basis vectors as
rows.  Everything is deterministic: pivots are leftmost, representatives
lexicographically least.
"""

from __future__ import annotations

import numpy as np

NO_SOLUTION = None


def rank(field, a) -> int:
    _, piv = field.rref(a)
    return len(piv)


def rref(field, a):
    return field.rref(a)


def solve(field, a, b):
    """Any x with a @ x = b (column stacking), or None if inconsistent.

    a: (m, n), b: (m, k) -> x: (n, k).
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.ndim == 1:
        x = solve(field, a, b[:, None])
        return None if x is None else x[:, 0]
    if a.shape[0] != b.shape[0]:
        raise ValueError("solve: row mismatch")
    m, n = a.shape
    k = b.shape[1]
    aug, piv = field.rref(np.hstack([a, b]))
    x = field.zeros(n, k)
    for r, c in enumerate(piv):
        if c >= n:
            return None  # pivot in the rhs block: inconsistent
        x[c] = aug[r, n:]
    return x


def nullspace(field, a):
    """Basis of {x : a @ x = 0} as rows of the returned matrix."""
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    r, piv = field.rref(a)
    free = [c for c in range(n) if c not in piv]
    out = field.zeros(len(free), n)
    for i, c in enumerate(free):
        out[i, c] = 1
        for rr, pc in enumerate(piv):
            out[i, pc] = field.neg(r[rr, c])
    return out


def inverse(field, a):
    a = np.asarray(a, dtype=np.int64)
    m, n = a.shape
    if m != n:
        raise ValueError("inverse of a non-square matrix")
    aug, piv = field.rref(np.hstack([a, field.eye(m)]))
    if piv != list(range(m)):
        raise np.linalg.LinAlgError("matrix is singular")
    return aug[:, m:]


def is_invertible(field, a) -> bool:
    a = np.asarray(a, dtype=np.int64)
    return a.shape[0] == a.shape[1] and rank(field, a) == a.shape[0]


def kron(field, a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = field.mul(a[:, None, :, None], b[None, :, None, :])
    return out.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])


def row_space(field, a):
    """Canonical (RREF, zero rows dropped) basis of the row space."""
    r, piv = field.rref(a)
    return r[: len(piv)]


def stack_rows(mats):
    mats = [m for m in mats if m.shape[0]]
    if not mats:
        return np.zeros((0, 0), dtype=np.int64)
    return np.vstack(mats)


class RowSpace:
    """A subspace of F^n held in RREF for membership and coordinates."""

    def __init__(self, field, basis_rows):
        self.field = field
        basis_rows = np.asarray(basis_rows, dtype=np.int64)
        r, piv = field.rref(basis_rows)
        self.basis = r[: len(piv)]
        self.pivots = list(piv)
        self.n = basis_rows.shape[1]

    @property
    def dim(self):
        return self.basis.shape[0]

    def reduce(self, v):
        """Residue of v after elimination against the basis (row vector)."""
        f = self.field
        v = np.asarray(v, dtype=np.int64).copy()
        for r, c in enumerate(self.pivots):
            coef = v[..., c]
            if np.any(coef):
                v = f.sub(v, f.mul(np.asarray(coef)[..., None], self.basis[r]))
        return v

    def contains(self, v) -> bool:
        return not np.any(self.reduce(v))

    def coords(self, v):
        """Coordinates of v in the RREF basis; raises if v is outside."""
        f = self.field
        v = np.asarray(v, dtype=np.int64)
        single = v.ndim == 1
        if single:
            v = v[None, :]
        out = np.zeros((v.shape[0], self.dim), dtype=np.int64)
        v = v.copy()
        for r, c in enumerate(self.pivots):
            coef = v[:, c].copy()
            out[:, r] = coef
            nz = np.nonzero(coef)[0]
            if nz.size:
                v[nz] = f.sub(v[nz], f.mul(coef[nz, None], self.basis[r][None, :]))
        if np.any(v):
            raise ValueError("vector not in subspace")
        return out[0] if single else out


class Quotient:
    """Presentation of V/W for subspaces W <= V <= F^n.

    V is given by basis rows (not necessarily RREF); W by vectors inside
    V (ambient coordinates).  Provides the projection V -> V/W and a
    section, both in terms of V-coordinates, so maps preserving V and W
    descend to explicit matrices.
    """

    def __init__(self, field, v_basis, w_rows):
        self.field = field
        self.v_basis = np.asarray(v_basis, dtype=np.int64)
        self.v_space = RowSpace(field, self.v_basis)
        vdim = self.v_basis.shape[0]
        if w_rows is None or np.asarray(w_rows).size == 0:
            w_in_v = np.zeros((0, vdim), dtype=np.int64)
        else:
            w_in_v = self._v_coords(np.asarray(w_rows, dtype=np.int64))
        self.w_space = RowSpace(field, w_in_v)
        wpiv = set(self.w_space.pivots)
        self.section_cols = [c for c in range(vdim) if c not in wpiv]

    def _v_coords(self, rows):
        # coordinates w.r.t. the possibly non-RREF v_basis
        sol = solve(self.field, self.v_basis.T, rows.T)
        if sol is None:
            raise ValueError("rows not inside V")
        return sol.T

    @property
    def dim(self):
        return len(self.section_cols)

    def project_v(self, v_coords):
        """V-coordinates (rows) -> quotient coordinates (rows)."""
        red = self.w_space.reduce(np.asarray(v_coords, dtype=np.int64))
        return red[..., self.section_cols]

    def project_ambient(self, rows):
        return self.project_v(self._v_coords(np.atleast_2d(rows)))

    def section(self, q_coords):
        """Quotient coordinates -> representative V-coordinates."""
        q_coords = np.atleast_2d(np.asarray(q_coords, dtype=np.int64))
        out = np.zeros((q_coords.shape[0], self.v_basis.shape[0]), dtype=np.int64)
        out[:, self.section_cols] = q_coords
        return out

    def section_ambient_cols(self):
        """Ambient representatives of the quotient basis, as columns (n x dim)."""
        sec = self.section(np.eye(self.dim, dtype=np.int64))
        return self.field.matmul(self.v_basis.T, sec.T)


def induced_on_quotient(field, target_q, phi, source_q):
    """Matrix V_s/W_s -> V_t/W_t induced by phi (column convention).

    phi is an ambient matrix mapping source into target with
    phi(V_s) <= V_t and phi(W_s) <= W_t; the caller guarantees this
    (it is checked implicitly: project_ambient raises if violated).
    """
    img = field.matmul(phi, source_q.section_ambient_cols())
    return target_q.project_ambient(img.T).T
