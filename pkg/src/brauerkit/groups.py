"""Finite groups, subgroups of direct products, and twisted diagonals.

Groups live on element indices 0..order-1 with 0 the identity, backed by
permutation generators or an explicit multiplication table (built lazily
for direct products).  Everything "choose a representative" takes the
least candidate in the fixed index order, so all outputs are
reproducible.  Brute-force subgroup machinery is deliberate: desk scale
(|G x H| up to ~2500) makes it affordable and auditable.
"""

from __future__ import annotations

import itertools

import numpy as np

_UID = itertools.count()

GROUP_ORDER_CAP = 3000


class Group:
    """A finite group with exact multiplication on element indices."""

    def __init__(self, table=None, perms=None, product_of=None, name=""):
        self.uid = next(_UID)
        self.name = name
        self.product_of = product_of
        self._perms = perms
        self._table = None
        self._inverse = None
        if table is not None:
            table = np.asarray(table, dtype=np.int32)
            if table.shape[0] != table.shape[1]:
                raise ValueError("multiplication table must be square")
            self.order = table.shape[0]
            self._table = table
            self._validate_table()
        elif perms is not None:
            self.order = len(perms)
        elif product_of is not None:
            self.order = product_of[0].order * product_of[1].order
        else:
            raise ValueError("need table, perms, or product factors")
        if self.order > GROUP_ORDER_CAP:
            raise ValueError(f"group order {self.order} exceeds cap {GROUP_ORDER_CAP}")

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_table(table, name=""):
        return Group(table=table, name=name)

    @staticmethod
    def from_permutations(gen_images, degree, name=""):
        """Closure of permutation generators; gen_images are length-degree
        image tuples.  Elements are sorted so the identity gets index 0."""
        ident = tuple(range(degree))
        gens = [tuple(int(x) for x in g) for g in gen_images]
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise ValueError(f"not a permutation of 0..{degree - 1}: {g}")
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple(g[a[i]] for i in range(degree))
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
            if len(seen) > GROUP_ORDER_CAP:
                raise ValueError("permutation closure exceeds the order cap")
        elements = sorted(seen)
        grp = Group(perms=elements, name=name)
        grp._gen_indices = [elements.index(g) for g in gens]
        return grp

    @staticmethod
    def cyclic(m, name=None):
        table = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
        return Group.from_table(table, name=name or f"C{m}")

    @staticmethod
    def symmetric(n, name=None):
        cycle = tuple(list(range(1, n)) + [0])
        swap = tuple([1, 0] + list(range(2, n))) if n >= 2 else tuple(range(n))
        return Group.from_permutations([cycle, swap], n, name=name or f"S{n}")

    @staticmethod
    def alternating(n, name=None):
        three = tuple([1, 2, 0] + list(range(3, n)))
        if n <= 3:
            return Group.from_permutations([three], n, name=name or f"A{n}")
        rest = tuple(list(range(n - 3)) + [n - 2, n - 1, n - 3])
        return Group.from_permutations([three, rest], n, name=name or f"A{n}")

    @staticmethod
    def dihedral(m, name=None):
        """Dihedral group of order 2m acting on an m-gon."""
        rot = tuple([(i + 1) % m for i in range(m)])
        flip = tuple([(-i) % m for i in range(m)])
        return Group.from_permutations([rot, flip], m, name=name or f"D{2 * m}")

    # -- internals ------------------------------------------------------------

    def _validate_table(self):
        t = self._table
        n = self.order
        if not np.array_equal(t[0], np.arange(n)) or not np.array_equal(t[:, 0], np.arange(n)):
            raise ValueError("index 0 must be the identity")
        if np.any(t < 0) or np.any(t >= n):
            raise ValueError("table entries out of range")
        # inverse law; associativity is spot-checked
        for a in range(n):
            if not np.any(t[a] == 0):
                raise ValueError("an element has no inverse")
        rng = np.random.default_rng(0)
        for _ in range(min(40, n * n)):
            a, b, c = rng.integers(0, n, size=3)
            if t[t[a, b], c] != t[a, t[b, c]]:
                raise ValueError("table is not associative")

    @property
    def table(self):
        if self._table is None:
            if self._perms is not None:
                idx = {p: i for i, p in enumerate(self._perms)}
                perms = np.array(self._perms, dtype=np.int32)
                n = self.order
                t = np.zeros((n, n), dtype=np.int32)
                for a in range(n):
                    # (a*b)(x) = a(b(x))
                    composed = perms[a][perms]
                    t[a] = [idx[tuple(row)] for row in composed]
                self._table = t
            else:
                g, h = self.product_of
                tg = g.table.astype(np.int32)
                th = h.table.astype(np.int32)
                nh = h.order
                a1, b1 = np.divmod(np.arange(self.order, dtype=np.int32), nh)
                left = tg[np.ix_(a1, a1)].astype(np.int64) * nh
                right = th[np.ix_(b1, b1)].astype(np.int64)
                self._table = (left + right).astype(np.int32)
            if self._table[0, 0] != 0:
                raise RuntimeError("identity is not at index 0")
        return self._table

    @property
    def inverse(self):
        if self._inverse is None:
            n = self.order
            inv = np.zeros(n, dtype=np.int32)
            t = self.table
            rows, cols = np.nonzero(t == 0)
            inv[rows] = cols
            self._inverse = inv
        return self._inverse

    # -- basic ops ------------------------------------------------------------

    def mul(self, a, b) -> int:
        return int(self.table[a, b])

    def inv(self, a) -> int:
        return int(self.inverse[a])

    def conj(self, g, x) -> int:
        """g x g^{-1}."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def conj_all_by(self, g):
        """Array x -> g x g^{-1} for every x."""
        return self.table[self.table[g, np.arange(self.order)], self.inverse[g]]

    def element_order(self, a) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul(x, a)
            k += 1
        return k

    def generators(self):
        """A small deterministic generating list (least-first greedy)."""
        if hasattr(self, "_gen_indices"):
            return list(self._gen_indices)
        gens = []
        sub = {0}
        while len(sub) < self.order:
            cand = min(set(range(self.order)) - sub)
            gens.append(cand)
            sub = set(closure(self, gens))
        self._gen_indices = gens
        return list(gens)

    def conjugacy_classes(self):
        if hasattr(self, "_classes"):
            return self._classes
        n = self.order
        seen = np.zeros(n, dtype=bool)
        classes = []
        allg = np.arange(n)
        for x in range(n):
            if seen[x]:
                continue
            orbit = np.unique(self.table[self.table[allg, x], self.inverse[allg]])
            seen[orbit] = True
            classes.append(tuple(int(v) for v in orbit))
        self._classes = classes
        return classes

    def product_parts(self, x):
        """Decode an element of a direct product into factor indices."""
        if self.product_of is None:
            raise ValueError("not a direct product")
        nh = self.product_of[1].order
        return x // nh, x % nh

    def product_encode(self, a, b):
        if self.product_of is None:
            raise ValueError("not a direct product")
        return int(a) * self.product_of[1].order + int(b)

    def __repr__(self):
        return f"Group({self.name or 'order ' + str(self.order)})"


_products = {}


def direct_product(g: Group, h: Group) -> Group:
    """G x H with element index a*|H| + b; cached per factor pair."""
    key = (g.uid, h.uid)
    if key not in _products:
        _products[key] = Group(product_of=(g, h),
                               name=f"{g.name or 'G'}x{h.name or 'H'}")
    return _products[key]


def closure(group: Group, gens):
    """Sorted tuple of the subgroup generated by gens."""
    t = group.table
    cur = np.unique(np.array([0] + list(gens), dtype=np.int32))
    while True:
        prods = np.unique(t[np.ix_(cur, cur)])
        if prods.size == cur.size:
            return tuple(int(x) for x in cur)
        cur = prods


class Subgroup:
    """Subgroup of a parent Group as a sorted member tuple."""

    def __init__(self, parent: Group, members, check=True):
        self.parent = parent
        self.members = tuple(sorted(int(m) for m in set(members)))
        if check:
            t = parent.table
            idx = np.array(self.members, dtype=np.int32)
            prods = np.unique(t[np.ix_(idx, idx)])
            if 0 not in self.members or set(int(x) for x in prods) != set(self.members):
                raise ValueError("member set is not a subgroup")

    @staticmethod
    def generated(parent: Group, gens) -> "Subgroup":
        return Subgroup(parent, closure(parent, gens), check=False)

    @staticmethod
    def trivial(parent: Group) -> "Subgroup":
        return Subgroup(parent, (0,), check=False)

    @staticmethod
    def full(parent: Group) -> "Subgroup":
        return Subgroup(parent, range(parent.order), check=False)

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, x):
        return int(x) in self._member_set

    @property
    def _member_set(self):
        if not hasattr(self, "_mset"):
            self._mset = frozenset(self.members)
        return self._mset

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self):
        return hash((self.parent.uid, self.members))

    def __le__(self, other):
        return self._member_set <= other._member_set

    def __repr__(self):
        return f"Subgroup(order {self.order} of {self.parent!r})"

    def generators(self):
        gens = []
        sub = {0}
        for m in self.members:
            if m not in sub:
                gens.append(m)
                sub = set(closure(self.parent, gens))
                if len(sub) == self.order:
                    break
        return gens

    def is_normal_in(self, other: "Subgroup") -> bool:
        g = self.parent
        return all(conjugate_subgroup(g, x, self).members == self.members
                   for x in other.generators())

    def as_group(self):
        """(Group on 0..order-1, to_parent array); identity stays first."""
        if not hasattr(self, "_as_group"):
            to_parent = np.array(self.members, dtype=np.int32)
            pos = {int(m): i for i, m in enumerate(self.members)}
            t = self.parent.table[np.ix_(to_parent, to_parent)]
            local = np.vectorize(pos.__getitem__, otypes=[np.int32])(t)
            grp = Group.from_table(local, name=f"sub{self.order}of{self.parent.name}")
            self._as_group = (grp, to_parent, pos)
        return self._as_group[0], self._as_group[1]

    def parent_to_local(self, x):
        self.as_group()
        return self._as_group[2][int(x)]

    def is_p_group(self, p):
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def conjugacy_classes_of_subgroup(self):
        grp, to_parent = self.as_group()
        return [tuple(int(to_parent[i]) for i in cls) for cls in grp.conjugacy_classes()]


def conjugate_subgroup(group: Group, g: int, s: Subgroup) -> Subgroup:
    mem = group.table[group.table[g, np.array(s.members, dtype=np.int32)],
                      group.inverse[g]]
    return Subgroup(group, mem, check=False)


def centralizer(group: Group, s: Subgroup) -> Subgroup:
    gens = s.generators()
    keep = np.arange(group.order)
    t = group.table
    for m in gens:
        keep = keep[t[keep, m] == t[m, keep]]
    return Subgroup(group, keep, check=False)


def normalizer(group: Group, s: Subgroup) -> Subgroup:
    mset = s._member_set
    mem = np.array(s.members, dtype=np.int32)
    t = group.table
    inv = group.inverse
    out = []
    for g in range(group.order):
        conj = t[t[g, mem], inv[g]]
        if set(int(x) for x in conj) == mset:
            out.append(g)
    return Subgroup(group, out, check=False)


def subgroup_conjugacy_witness(group: Group, a: Subgroup, b: Subgroup):
    """g with gag^{-1} = b, or None."""
    if a.order != b.order:
        return None
    bset = b._member_set
    mem = np.array(a.members, dtype=np.int32)
    t = group.table
    inv = group.inverse
    for g in range(group.order):
        conj = t[t[g, mem], inv[g]]
        if set(int(x) for x in conj) == bset:
            return g
    return None


def coset_reps(group: Group, s: Subgroup, side="left"):
    """Deterministic (least-member) transversal of gS (or Sg)."""
    seen = set()
    reps = []
    mem = np.array(s.members, dtype=np.int32)
    t = group.table
    for g in range(group.order):
        if g in seen:
            continue
        reps.append(g)
        coset = t[g, mem] if side == "left" else t[mem, g]
        seen.update(int(x) for x in coset)
    return reps


def double_coset_reps(group: Group, s: Subgroup, t_sub: Subgroup):
    """Least-element representatives of S\\G/T."""
    seen = set()
    reps = []
    smem = np.array(s.members, dtype=np.int32)
    tmem = np.array(t_sub.members, dtype=np.int32)
    tab = group.table
    for g in range(group.order):
        if g in seen:
            continue
        reps.append(g)
        block = tab[np.ix_(tab[smem, g], tmem)]
        seen.update(int(x) for x in np.unique(block))
    return reps


# ---------------------------------------------------------------------------
# p-subgroup machinery
# ---------------------------------------------------------------------------

def sylow_subgroup(group: Group, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown by normalizer extensions (deterministic)."""
    cur = Subgroup.trivial(group)
    while True:
        n = normalizer(group, cur)
        ext = None
        for x in n.members:
            if x in cur:
                continue
            o = group.element_order(x)
            if o != 1 and _is_p_power(o, p):
                ext = x
                break
        if ext is None:
            return cur
        cur = Subgroup.generated(group, list(cur.generators()) + [ext])


def _is_p_power(n, p):
    while n % p == 0:
        n //= p
    return n == 1


def all_subgroups_of_p_group(s: Subgroup):
    """Every subgroup of a p-group, by index-p normal extensions."""
    group = s.parent
    p = _p_of(s)
    found = {Subgroup.trivial(group).members: Subgroup.trivial(group)}
    layer = [Subgroup.trivial(group)]
    while layer:
        nxt = []
        for h in layer:
            # normalizer within s
            cand = [x for x in s.members if x not in h]
            for x in cand:
                xp = _power(group, x, p)
                if xp not in h:
                    continue
                if conjugate_subgroup(group, x, h).members != h.members:
                    continue
                new = Subgroup.generated(group, list(h.generators()) + [x])
                if new.members not in found and set(new.members) <= s._member_set:
                    found[new.members] = new
                    nxt.append(new)
        layer = nxt
    return sorted(found.values(), key=lambda t: (t.order, t.members))


def _p_of(s: Subgroup):
    if s.order == 1:
        return 2
    o = s.parent.element_order(s.members[1])
    d = 2
    while o % d:
        d += 1
    return d


def _power(group, x, e):
    out = 0
    for _ in range(e):
        out = group.mul(out, x)
    return out


def p_subgroups_up_to_conjugacy(group: Group, p: int):
    """One representative per conjugacy class of p-subgroups.

    Representatives are the lexicographically least member sets in their
    class; the trivial subgroup is included.  All p-subgroups lie in a
    Sylow up to conjugacy, so classes are G-orbits of Sylow subgroups'
    subgroups.
    """
    syl = sylow_subgroup(group, p)
    if syl.order == 1:
        return [Subgroup.trivial(group)]
    subs = all_subgroups_of_p_group(syl)
    classes = []
    seen = set()
    for s in subs:
        if s.members in seen:
            continue
        orbit = set()
        for g in range(group.order):
            orbit.add(conjugate_subgroup(group, g, s).members)
        seen.update(orbit)
        rep = min(orbit)
        classes.append(Subgroup(group, rep, check=False))
    classes.sort(key=lambda s: (s.order, s.members))
    return classes


# ---------------------------------------------------------------------------
# isomorphisms between subgroups
# ---------------------------------------------------------------------------

class GroupIso:
    """An isomorphism source -> target between subgroups (possibly of
    different parent groups), stored as an image map on member indices."""

    def __init__(self, source: Subgroup, target: Subgroup, images: dict, check=True):
        self.source = source
        self.target = target
        self.images = dict(images)
        if check:
            self._validate()

    def _validate(self):
        src, tgt = self.source, self.target
        if set(self.images) != set(src.members):
            raise ValueError("image map must cover the source")
        vals = set(self.images.values())
        if vals != set(tgt.members):
            raise ValueError("image map must be a bijection onto the target")
        tp, ts = tgt.parent, src.parent
        for a in src.members:
            for b in src.members:
                if self.images[ts.mul(a, b)] != tp.mul(self.images[a], self.images[b]):
                    raise ValueError("image map is not multiplicative")

    def __call__(self, x):
        return self.images[int(x)]

    def inverse_iso(self):
        return GroupIso(self.target, self.source,
                        {v: k for k, v in self.images.items()}, check=False)

    def compose(self, other: "GroupIso"):
        """self o other (apply other first)."""
        if other.target.members != self.source.members or \
           other.target.parent is not self.source.parent:
            raise ValueError("composition mismatch")
        return GroupIso(other.source, self.target,
                        {k: self.images[v] for k, v in other.images.items()},
                        check=False)

    @staticmethod
    def identity(s: Subgroup):
        return GroupIso(s, s, {m: m for m in s.members}, check=False)

    @staticmethod
    def conjugation(s: Subgroup, g: int):
        """c_g : s -> gsg^{-1} inside s.parent."""
        grp = s.parent
        imgs = {m: grp.conj(g, m) for m in s.members}
        tgt = Subgroup(grp, imgs.values(), check=False)
        return GroupIso(s, tgt, imgs, check=False)

    def precompose_conj(self, h: int):
        """self o c_h, where c_h maps ^{h^{-1}}source -> source."""
        grp = self.source.parent
        src = conjugate_subgroup(grp, grp.inv(h), self.source)
        imgs = {m: self.images[grp.conj(h, m)] for m in src.members}
        return GroupIso(src, self.target, imgs, check=False)

    def postcompose_conj(self, g: int):
        """c_g o self."""
        grp = self.target.parent
        tgt = conjugate_subgroup(grp, g, self.target)
        imgs = {m: grp.conj(g, v) for m, v in self.images.items()}
        return GroupIso(self.source, tgt, imgs, check=False)

    def key(self):
        return tuple(sorted(self.images.items()))


def isomorphisms(q: Subgroup, p: Subgroup):
    """All isomorphisms q -> p, by backtracking on a generating sequence."""
    if q.order != p.order:
        return []
    gq = q.parent
    gp = p.parent
    gens = q.generators()
    if not gens:  # trivial group
        return [GroupIso(q, p, {0: 0}, check=False)]
    orders = [gq.element_order(g) for g in gens]
    cands = [[x for x in p.members if gp.element_order(x) == o] for o in orders]
    out = []
    for choice in itertools.product(*cands):
        imgs = _extend_hom(gq, gp, q, gens, choice)
        if imgs is None:
            continue
        if len(set(imgs.values())) != q.order:
            continue
        if set(imgs.values()) != p._member_set:
            continue
        out.append(GroupIso(q, p, imgs, check=False))
    out.sort(key=lambda i: i.key())
    return out


def _extend_hom(gq, gp, q, gens, images):
    """Extend gen -> image to a hom on all of q, or None on conflict."""
    imgs = {0: 0}
    frontier = [0]
    gen_pairs = list(zip(gens, images))
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in gen_pairs:
                xg = gq.mul(x, g)
                val = gp.mul(imgs[x], h)
                if xg in imgs:
                    if imgs[xg] != val:
                        return None
                else:
                    imgs[xg] = val
                    nxt.append(xg)
        frontier = nxt
    if set(imgs) != q._member_set:
        return None
    # full multiplicativity check (words guarantee it, but cheap and safe)
    for a in imgs:
        for g, h in gen_pairs:
            if imgs[gq.mul(a, g)] != gp.mul(imgs[a], h):
                return None
    return imgs


# ---------------------------------------------------------------------------
# subgroups of direct products (section-2 calculus)
# ---------------------------------------------------------------------------

class ProductSubgroup(Subgroup):
    """Subgroup of a direct product, with the projection/kernel calculus."""

    def __init__(self, parent: Group, members, check=True):
        if parent.product_of is None:
            raise ValueError("parent must be a direct product")
        super().__init__(parent, members, check=check)
        self.g, self.h = parent.product_of

    def pairs(self):
        nh = self.h.order
        return [(m // nh, m % nh) for m in self.members]

    def p1(self) -> Subgroup:
        return Subgroup(self.g, {a for a, _ in self.pairs()}, check=False)

    def p2(self) -> Subgroup:
        return Subgroup(self.h, {b for _, b in self.pairs()}, check=False)

    def k1(self) -> Subgroup:
        return Subgroup(self.g, {a for a, b in self.pairs() if b == 0}, check=False)

    def k2(self) -> Subgroup:
        return Subgroup(self.h, {b for a, b in self.pairs() if a == 0}, check=False)

    def opposite(self) -> "ProductSubgroup":
        hg = direct_product(self.h, self.g)
        mem = [hg.product_encode(b, a) for a, b in self.pairs()]
        return ProductSubgroup(hg, mem, check=False)

    def is_twisted_diagonal(self) -> bool:
        return self.k1().order == 1 and self.k2().order == 1

    def as_twisted_diagonal(self):
        """(P, phi, Q) presentation when both kernels are trivial."""
        if not self.is_twisted_diagonal():
            raise ValueError("subgroup has nontrivial kernels")
        pairs = self.pairs()
        qmem = [b for _, b in pairs]
        pmem = [a for a, _ in pairs]
        qsub = Subgroup(self.h, qmem, check=False)
        psub = Subgroup(self.g, pmem, check=False)
        images = {b: a for a, b in pairs}
        return psub, GroupIso(qsub, psub, images, check=False), qsub


def twisted_diagonal(p: Subgroup, phi: GroupIso, q: Subgroup) -> ProductSubgroup:
    """Delta(P, phi, Q) = {(phi(q), q)} inside G x H."""
    if phi.source.members != q.members or phi.target.members != p.members:
        raise ValueError("phi must map q isomorphically onto p")
    gh = direct_product(p.parent, q.parent)
    mem = [gh.product_encode(phi(b), b) for b in q.members]
    return ProductSubgroup(gh, mem, check=False)


def diagonal(p: Subgroup) -> ProductSubgroup:
    return twisted_diagonal(p, GroupIso.identity(p), p)


def conjugate_product_subgroup(x: ProductSubgroup, g: int, h: int) -> ProductSubgroup:
    gh = x.parent
    t = gh.product_encode(g, h)
    return ProductSubgroup(gh, [gh.conj(t, m) for m in x.members], check=False)


def compose_subgroups(x: ProductSubgroup, y: ProductSubgroup) -> ProductSubgroup:
    """X * Y = {(g, k) : exists h with (g,h) in X, (h,k) in Y}."""
    if x.h is not y.g:
        raise ValueError("middle factors do not agree")
    gk = direct_product(x.g, y.h)
    by_h = {}
    for a, b in x.pairs():
        by_h.setdefault(b, []).append(a)
    mem = set()
    for b, c in y.pairs():
        for a in by_h.get(b, ()):
            mem.add(gk.product_encode(a, c))
    return ProductSubgroup(gk, mem, check=False)


def n_phi(s: Subgroup, phi: GroupIso, t: Subgroup) -> Subgroup:
    """N_{(S, phi, T)}: g in S such that c_g phi c_h = phi for some h in T."""
    p, q = phi.target, phi.source
    gp, gq = p.parent, q.parent
    for g in s.generators():
        if conjugate_subgroup(gp, g, p).members != p.members:
            raise ValueError("S must normalize P")
    for h in t.generators():
        if conjugate_subgroup(gq, h, q).members != q.members:
            raise ValueError("T must normalize Q")
    qgens = q.generators() or [0]
    out = []
    for g in s.members:
        for h in t.members:
            ok = True
            for x in qgens:
                # c_g(phi(c_h(x))) == phi(x)
                if gp.conj(g, phi(gq.conj(h, x))) != phi(x):
                    ok = False
                    break
            if ok:
                out.append(g)
                break
    return Subgroup(s.parent, out, check=False)
