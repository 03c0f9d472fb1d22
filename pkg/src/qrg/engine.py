"""Finite groups as index tables with batched multiplication.

A GroupTable stores every element of a finite group, indexed from 0 with the
identity at index 0, and answers products, inverses, conjugacy classes,
normal subgroups, cosocles, quotients and commutator questions.  Elements
are carried either as permutations, as matrices over a prime field, as pairs
(direct products) or as cosets (quotients).  Hot paths multiply whole index
arrays at once through numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .errors import CapExceeded
from .gf import FFMatrix, PrimeField, ff_inv, matrix_literal
from .permutations import Permutation, cycle_string

DEFAULT_ORDER_CAP = 500_000
# Full order x order tables are only materialized below this size; everything
# larger multiplies through batched carrier arithmetic instead.
DENSE_TABLE_CAP = 4096
CLASS_CAP = 64
WIDTH_ORDER_CAP = 5000


class MixedCarriers(TypeError):
    """Generators of different kinds (or degrees, or fields) were mixed."""


class ClassCapExceeded(CapExceeded):
    """More conjugacy classes than the normal-subgroup lattice supports."""


class NotNormal(ValueError):
    """The given subset is not a normal subgroup."""


class TrivialGroup(ValueError):
    """The operation is undefined for the one-element group."""


@dataclass(frozen=True)
class ConjClass:
    index: int
    rep: int
    size: int
    members: np.ndarray  # sorted element indices

    def __repr__(self):
        return f"ConjClass(index={self.index}, rep={self.rep}, size={self.size})"


class NormalSubgroup:
    """A normal subgroup, recorded as the union of the classes it contains."""

    __slots__ = ("group", "class_bits", "order", "_members")

    def __init__(self, group: "GroupTable", class_bits: int):
        self.group = group
        self.class_bits = class_bits
        self.order = sum(
            c.size for c in group.classes if class_bits >> c.index & 1
        )
        self._members = None

    @property
    def members(self) -> np.ndarray:
        if self._members is None:
            parts = [
                c.members for c in self.group.classes if self.class_bits >> c.index & 1
            ]
            self._members = np.sort(np.concatenate(parts))
        return self._members

    @property
    def num_classes(self) -> int:
        return bin(self.class_bits).count("1")

    def contains(self, idx: int) -> bool:
        return bool(self.class_bits >> int(self.group.class_of[idx]) & 1)

    def __eq__(self, other):
        return (
            isinstance(other, NormalSubgroup)
            and other.group is self.group
            and other.class_bits == self.class_bits
        )

    def __hash__(self):
        return hash((id(self.group), self.class_bits))

    def __repr__(self):
        return f"NormalSubgroup(order={self.order}, classes={self.num_classes})"


class GroupTable:
    """Fully enumerated finite group.  Built by the module-level factories."""

    def __init__(self):
        self.kind = None  # 'perm' | 'mat' | 'prod' | 'quot'
        self.order = 0
        self.gens: list[int] = []
        self.inv: np.ndarray | None = None
        self.label = ""
        # perm carrier
        self.degree = None
        self._P = None
        # mat carrier
        self.field = None
        self._M = None
        # code lookup (perm/mat)
        self._pow = None
        self._sorted_codes = None
        self._sorted_pos = None
        self._key_index = None
        # prod carrier
        self.factors = None
        # quot carrier
        self.parent = None
        self.coset_reps = None
        self.proj = None
        # lazy state
        self._dense = None
        self._classes = None
        self._class_of = None
        self._inv_class = None
        self._elt_order: dict[int, int] = {}
        self._normals = None
        self._cosocle = None
        self._derived_bits = None
        self._closure_bits_cache: dict[int, int] = {}
        self._pair_prod_cache: dict[tuple[int, int], int] = {}
        self._set_prod_cache: dict[tuple[int, int], int] = {}
        self._quotients: dict[int, "GroupTable"] = {}
        self.cache: dict = {}

    # -- scalar ops ---------------------------------------------------------

    def mul(self, i: int, j: int) -> int:
        if self._dense is not None:
            return int(self._dense[i, j])
        return int(self.mul_left_batch(i, np.array([j], dtype=np.int64))[0])

    def inv_of(self, i: int) -> int:
        return int(self.inv[i])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inv_of(i), -k)
        result = 0
        base = i
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def order_of(self, i: int) -> int:
        got = self._elt_order.get(i)
        if got is None:
            k = 1
            j = i
            while j != 0:
                j = self.mul(j, i)
                k += 1
            got = self._elt_order[i] = k
        return got

    def exponent(self) -> int:
        out = 1
        for c in self.classes:
            o = self.order_of(c.rep)
            out = out * o // gcd(out, o)
        return out

    # -- batched ops --------------------------------------------------------

    def _lookup_perm_rows(self, rows: np.ndarray) -> np.ndarray:
        if self._pow is not None:
            codes = rows @ self._pow
            pos = np.searchsorted(self._sorted_codes, codes)
            return self._sorted_pos[pos]
        return np.fromiter(
            (self._key_index[r.tobytes()] for r in np.ascontiguousarray(rows)),
            dtype=np.int64,
            count=len(rows),
        )

    def _lookup_mat_stack(self, stack: np.ndarray) -> np.ndarray:
        flat = stack.reshape(len(stack), -1)
        if self._pow is not None:
            codes = flat @ self._pow
            pos = np.searchsorted(self._sorted_codes, codes)
            return self._sorted_pos[pos]
        return np.fromiter(
            (self._key_index[r.tobytes()] for r in np.ascontiguousarray(flat)),
            dtype=np.int64,
            count=len(flat),
        )

    def mul_left_batch(self, i: int, js: np.ndarray) -> np.ndarray:
        """Indices of element(i) * element(j) for each j in js."""
        js = np.asarray(js, dtype=np.int64)
        if js.size == 0:
            return js
        if self._dense is not None:
            return self._dense[i, js].astype(np.int64)
        if self.kind == "perm":
            rows = self._P[i][self._P[js]]
            return self._lookup_perm_rows(rows)
        if self.kind == "mat":
            stack = np.einsum("ij,ajk->aik", self._M[i], self._M[js]) % self.field.p
            return self._lookup_mat_stack(stack)
        if self.kind == "prod":
            g1, g2 = self.factors
            o2 = g2.order
            i1, i2 = divmod(int(i), o2)
            j1, j2 = np.divmod(js, o2)
            return g1.mul_left_batch(i1, j1) * o2 + g2.mul_left_batch(i2, j2)
        # quot
        parent = self.parent
        t = parent.mul_left_batch(int(self.coset_reps[i]), self.coset_reps[js])
        return self.proj[t].astype(np.int64)

    def mul_right_batch(self, is_: np.ndarray, j: int) -> np.ndarray:
        """Indices of element(i) * element(j) for each i in is_."""
        is_ = np.asarray(is_, dtype=np.int64)
        if is_.size == 0:
            return is_
        if self._dense is not None:
            return self._dense[is_, j].astype(np.int64)
        if self.kind == "perm":
            rows = self._P[is_][:, self._P[j]]
            return self._lookup_perm_rows(rows)
        if self.kind == "mat":
            stack = np.einsum("aij,jk->aik", self._M[is_], self._M[j]) % self.field.p
            return self._lookup_mat_stack(stack)
        if self.kind == "prod":
            g1, g2 = self.factors
            o2 = g2.order
            i1, i2 = np.divmod(is_, o2)
            j1, j2 = divmod(int(j), o2)
            return g1.mul_right_batch(i1, j1) * o2 + g2.mul_right_batch(i2, j2)
        parent = self.parent
        t = parent.mul_right_batch(self.coset_reps[is_], int(self.coset_reps[j]))
        return self.proj[t].astype(np.int64)

    def mul_pairwise(self, is_: np.ndarray, js: np.ndarray) -> np.ndarray:
        """Indices of element(is_[k]) * element(js[k]) for each k."""
        is_ = np.asarray(is_, dtype=np.int64)
        js = np.asarray(js, dtype=np.int64)
        if is_.size == 0:
            return is_
        if self._dense is not None:
            return self._dense[is_, js].astype(np.int64)
        if self.kind == "perm":
            rows = np.take_along_axis(self._P[is_], self._P[js], axis=1)
            return self._lookup_perm_rows(rows)
        if self.kind == "mat":
            stack = np.einsum("aij,ajk->aik", self._M[is_], self._M[js]) % self.field.p
            return self._lookup_mat_stack(stack)
        if self.kind == "prod":
            g1, g2 = self.factors
            o2 = g2.order
            i1, i2 = np.divmod(is_, o2)
            j1, j2 = np.divmod(js, o2)
            return g1.mul_pairwise(i1, j1) * o2 + g2.mul_pairwise(i2, j2)
        parent = self.parent
        t = parent.mul_pairwise(self.coset_reps[is_], self.coset_reps[js])
        return self.proj[t].astype(np.int64)

    def dense(self) -> np.ndarray | None:
        """Materialize the full multiplication table when small enough."""
        if self._dense is None and self.order <= DENSE_TABLE_CAP:
            all_idx = np.arange(self.order, dtype=np.int64)
            table = np.empty((self.order, self.order), dtype=np.int32)
            for i in range(self.order):
                table[i] = self.mul_left_batch(i, all_idx)
            self._dense = table
        return self._dense

    # -- elements -----------------------------------------------------------

    def element(self, i: int):
        if self.kind == "perm":
            return Permutation(self._P[i])
        if self.kind == "mat":
            return FFMatrix(self.field, self._M[i])
        if self.kind == "prod":
            g1, g2 = self.factors
            i1, i2 = divmod(int(i), g2.order)
            return (g1.element(i1), g2.element(i2))
        return frozenset(
            int(x)
            for x in np.nonzero(self.proj == i)[0]
        )

    def element_label(self, i: int) -> str:
        if self.kind == "perm":
            return cycle_string(Permutation(self._P[i]), with_degree=False)
        if self.kind == "mat":
            return matrix_literal(FFMatrix(self.field, self._M[i]))
        if self.kind == "prod":
            g1, g2 = self.factors
            i1, i2 = divmod(int(i), g2.order)
            return f"({g1.element_label(i1)}, {g2.element_label(i2)})"
        return f"coset({self.parent.element_label(int(self.coset_reps[i]))})"

    def index_of(self, elt) -> int:
        """Index of a carrier element (Permutation or FFMatrix)."""
        if self.kind == "perm":
            if not isinstance(elt, Permutation) or elt.degree != self.degree:
                raise KeyError("element does not belong to this group")
            row = np.array(elt.images, dtype=np.int64)
            return int(self._lookup_checked(row))
        if self.kind == "mat":
            if not isinstance(elt, FFMatrix) or elt.field != self.field:
                raise KeyError("element does not belong to this group")
            return int(self._lookup_checked(elt.entries.reshape(-1)))
        raise KeyError(f"index_of is not supported for {self.kind} groups")

    def _lookup_checked(self, flat_row: np.ndarray) -> int:
        if self._pow is not None:
            code = int(flat_row @ self._pow)
            pos = int(np.searchsorted(self._sorted_codes, code))
            if pos < self.order and self._sorted_codes[pos] == code:
                return int(self._sorted_pos[pos])
            raise KeyError("element not in group")
        key = np.ascontiguousarray(flat_row, dtype=np.int64).tobytes()
        if key not in self._key_index:
            raise KeyError("element not in group")
        return self._key_index[key]

    # -- conjugacy ----------------------------------------------------------

    @property
    def classes(self) -> list[ConjClass]:
        self._ensure_classes()
        return self._classes

    @property
    def class_of(self) -> np.ndarray:
        self._ensure_classes()
        return self._class_of

    def inverse_class(self, ci: int) -> int:
        """Index of the class of inverses of class ci."""
        if self._inv_class is None:
            self._ensure_classes()
            self._inv_class = np.array(
                [int(self._class_of[self.inv_of(c.rep)]) for c in self._classes],
                dtype=np.int64,
            )
        return int(self._inv_class[ci])

    def _ensure_classes(self):
        if self._classes is not None:
            return
        if self.kind == "prod":
            self._classes_from_factors()
            return
        order = self.order
        class_of = np.full(order, -1, dtype=np.int64)
        raw: list[list[int]] = []
        gens = [g for g in self.gens if g != 0]
        inv_gens = [self.inv_of(g) for g in gens]
        for start in range(order):
            if class_of[start] >= 0:
                continue
            label = len(raw)
            class_of[start] = label
            members = [start]
            frontier = np.array([start], dtype=np.int64)
            while frontier.size:
                batches = []
                for g, gi in zip(gens, inv_gens):
                    t = self.mul_left_batch(g, frontier)
                    batches.append(self.mul_right_batch(t, gi))
                if not batches:
                    break
                cand = np.unique(np.concatenate(batches))
                fresh = cand[class_of[cand] < 0]
                class_of[fresh] = label
                members.extend(int(x) for x in fresh)
                frontier = fresh
            raw.append(sorted(members))
        self._finish_classes(raw, class_of)

    def _classes_from_factors(self):
        g1, g2 = self.factors
        o2 = g2.order
        raw = []
        for c1 in g1.classes:
            for c2 in g2.classes:
                members = (c1.members[:, None] * o2 + c2.members[None, :]).reshape(-1)
                raw.append([int(x) for x in members])
        class_of = np.empty(self.order, dtype=np.int64)
        for label, members in enumerate(raw):
            class_of[members] = label
        self._finish_classes(raw, class_of)

    def _finish_classes(self, raw, class_of):
        # deterministic numbering: ascending (size, smallest member)
        order_keys = sorted(range(len(raw)), key=lambda k: (len(raw[k]), raw[k][0]))
        relabel = np.empty(len(raw), dtype=np.int64)
        classes = []
        for new_idx, old_idx in enumerate(order_keys):
            relabel[old_idx] = new_idx
            members = np.array(raw[old_idx], dtype=np.int64)
            classes.append(
                ConjClass(
                    index=new_idx,
                    rep=int(members[0]),
                    size=len(members),
                    members=members,
                )
            )
        self._class_of = relabel[class_of]
        self._classes = classes

    # -- class products (shared by covering and width computations) ---------

    def class_pair_product_bits(self, ci: int, cj: int) -> int:
        """Bitmask of classes met by C_i * C_j.

        Since both factors are conjugation invariant, multiplying one
        representative of C_i against all of C_j already meets every class
        of the product set.
        """
        key = (ci, cj)
        got = self._pair_prod_cache.get(key)
        if got is None:
            rep = self.classes[ci].rep
            out = self.mul_left_batch(rep, self.classes[cj].members)
            got = 0
            for c in np.unique(self.class_of[out]):
                got |= 1 << int(c)
            self._pair_prod_cache[key] = got
        return got

    def class_set_product_bits(self, bits_a: int, bits_b: int) -> int:
        key = (bits_a, bits_b)
        got = self._set_prod_cache.get(key)
        if got is None:
            got = 0
            for i in _iter_bits(bits_a):
                for j in _iter_bits(bits_b):
                    got |= self.class_pair_product_bits(i, j)
            self._set_prod_cache[key] = got
        return got

    def full_class_bits(self) -> int:
        return (1 << len(self.classes)) - 1

    def class_bits_size(self, bits: int) -> int:
        return sum(c.size for c in self.classes if bits >> c.index & 1)

    # -- subgroup machinery ---------------------------------------------------

    def subgroup_closure(self, gen_idxs) -> np.ndarray:
        """Sorted member indices of the subgroup generated by gen_idxs."""
        member = np.zeros(self.order, dtype=bool)
        member[0] = True
        gens = sorted({int(g) for g in gen_idxs} - {0})
        frontier = np.array([0], dtype=np.int64)
        while frontier.size and gens:
            batches = [self.mul_right_batch(frontier, g) for g in gens]
            cand = np.unique(np.concatenate(batches))
            fresh = cand[~member[cand]]
            member[fresh] = True
            frontier = fresh
        return np.nonzero(member)[0].astype(np.int64)

    def normal_closure_bits(self, seed_class_idxs) -> int:
        """Class bitmask of the normal closure of the given classes."""
        seed_bits = 0
        for c in seed_class_idxs:
            seed_bits |= 1 << int(c)
        got = self._closure_bits_cache.get(seed_bits)
        if got is not None:
            return got
        classes = self.classes
        gen_elts = {classes[c].rep for c in _iter_bits(seed_bits)}
        while True:
            members = self.subgroup_closure(gen_elts)
            mask = np.zeros(self.order, dtype=bool)
            mask[members] = True
            touched = {int(c) for c in np.unique(self.class_of[members])}
            size = sum(classes[c].size for c in touched)
            if size == len(members):
                bits = 0
                for c in touched:
                    bits |= 1 << c
                self._closure_bits_cache[seed_bits] = bits
                return bits
            # for every class the closure only partially contains, pull in one
            # member from outside; each sits inside the normal closure, so the
            # subgroup grows strictly and the loop terminates
            for c in touched:
                outside = classes[c].members[~mask[classes[c].members]]
                if outside.size:
                    gen_elts.add(int(outside[0]))


def _iter_bits(bits: int):
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


# -- construction -------------------------------------------------------------


def _perm_codes(P: np.ndarray):
    order, degree = P.shape
    if degree == 0:
        return np.zeros(order, dtype=np.int64)
    if degree ** degree <= (1 << 62):
        powers = np.array([degree**k for k in range(degree)], dtype=np.int64)
        return P @ powers
    return None


def _mat_codes(M: np.ndarray, p: int):
    order = M.shape[0]
    n2 = M.shape[1] * M.shape[2]
    if p**n2 <= (1 << 62):
        powers = np.array([p**k for k in range(n2)], dtype=np.int64)
        return M.reshape(order, n2) @ powers
    return None


def _install_lookup(g: GroupTable, codes, flat_keys):
    if codes is not None:
        order = np.argsort(codes, kind="stable")
        g._sorted_codes = codes[order]
        g._sorted_pos = order.astype(np.int64)
        if g.kind == "perm":
            degree = g._P.shape[1]
            g._pow = np.array(
                [max(degree, 1) ** k for k in range(degree)], dtype=np.int64
            )
        else:
            n2 = g._M.shape[1] * g._M.shape[2]
            g._pow = np.array([g.field.p**k for k in range(n2)], dtype=np.int64)
    else:
        g._key_index = {row.tobytes(): i for i, row in enumerate(flat_keys)}


def enumerate_group(generators, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Closure of a generating set under multiplication, identity at index 0.

    All generators must share one carrier: permutations of equal degree or
    matrices over one field and size.  Raises MixedCarriers otherwise and
    CapExceeded when the closure grows past cap.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("at least one generator is required")
    if all(isinstance(x, Permutation) for x in gens):
        degrees = {x.degree for x in gens}
        if len(degrees) != 1:
            raise MixedCarriers(f"permutation degrees differ: {sorted(degrees)}")
        degree = degrees.pop()
        identity = Permutation.identity(degree)
        kind = "perm"
    elif all(isinstance(x, FFMatrix) for x in gens):
        fields = {x.field for x in gens}
        sizes = {x.n for x in gens}
        if len(fields) != 1 or len(sizes) != 1:
            raise MixedCarriers("matrix generators must share field and size")
        identity = FFMatrix.identity(gens[0].field, gens[0].n)
        kind = "mat"
    else:
        raise MixedCarriers(
            "generators must be all Permutation or all FFMatrix, not a mixture"
        )

    index = {identity: 0}
    elements = [identity]
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for h in gens:
                y = x * h
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    new.append(y)
                    if len(elements) > cap:
                        raise CapExceeded(
                            f"group enumeration passed cap {cap}; "
                            "raise the cap to continue"
                        )
        frontier = new

    g = GroupTable()
    g.kind = kind
    g.order = len(elements)
    if kind == "perm":
        g.degree = degree
        g._P = np.array([e.images for e in elements], dtype=np.int64)
        g._P.setflags(write=False)
        codes = _perm_codes(g._P)
        _install_lookup(g, codes, g._P)
        inv_rows = np.argsort(g._P, axis=1)
        g.inv = g._lookup_perm_rows(inv_rows)
        g.label = f"permutation group on {degree} points"
    else:
        field = elements[0].field
        g.field = field
        g._M = np.array([e.entries for e in elements], dtype=np.int64)
        g._M.setflags(write=False)
        codes = _mat_codes(g._M, field.p)
        _install_lookup(g, codes, g._M.reshape(g.order, -1))
        inv_stack = np.array(
            [ff_inv(e.entries, field.p) for e in elements], dtype=np.int64
        )
        g.inv = g._lookup_mat_stack(inv_stack)
        g.label = f"matrix group over {field}"
    seen = set()
    for h in gens:
        idx = index[h]
        if idx != 0 and idx not in seen:
            seen.add(idx)
            g.gens.append(idx)
    if not g.gens:
        g.gens = [0]
    return g


def direct_product(g1: GroupTable, g2: GroupTable) -> GroupTable:
    g = GroupTable()
    g.kind = "prod"
    g.factors = (g1, g2)
    g.order = g1.order * g2.order
    o2 = g2.order
    g.inv = (g1.inv[:, None] * o2 + g2.inv[None, :]).reshape(-1)
    g.gens = [int(i) * o2 for i in g1.gens] + [int(j) for j in g2.gens]
    g.gens = [i for i in g.gens if i != 0] or [0]
    g.label = f"({g1.label}) x ({g2.label})"
    return g


def quotient(g: GroupTable, n: NormalSubgroup) -> GroupTable:
    """Quotient group G/N with the projection map attached.

    The cosets are numbered in order of their smallest member, so the coset
    of the identity is index 0.
    """
    if n.group is not g:
        raise ValueError("normal subgroup belongs to a different group")
    cached = g._quotients.get(n.class_bits)
    if cached is not None:
        return cached
    # a union of classes is automatically conjugation invariant; still verify
    # it is a subgroup
    members = n.members
    closed = g.subgroup_closure(int(x) for x in members)
    if len(closed) != n.order or not np.array_equal(closed, members):
        raise NotNormal("the given class union is not a subgroup")

    proj = np.full(g.order, -1, dtype=np.int64)
    reps = []
    for i in range(g.order):
        if proj[i] >= 0:
            continue
        c = len(reps)
        reps.append(i)
        coset = g.mul_left_batch(i, members)
        proj[coset] = c
    q = GroupTable()
    q.kind = "quot"
    q.parent = g
    q.coset_reps = np.array(reps, dtype=np.int64)
    q.proj = proj
    q.order = len(reps)
    q.inv = proj[g.inv[q.coset_reps]]
    q.gens = []
    seen = set()
    for gi in g.gens:
        c = int(proj[gi])
        if c != 0 and c not in seen:
            seen.add(c)
            q.gens.append(c)
    if not q.gens:
        q.gens = [0]
    q.label = f"({g.label}) / N of order {n.order}"
    g._quotients[n.class_bits] = q
    return q


def conjugacy_classes(g: GroupTable) -> list[ConjClass]:
    return g.classes


def normal_subgroup_from_classes(g: GroupTable, class_idxs) -> NormalSubgroup:
    """Build a NormalSubgroup from class indices, verifying it is a subgroup."""
    bits = 0
    for c in class_idxs:
        bits |= 1 << int(c)
    n = NormalSubgroup(g, bits)
    closed = g.subgroup_closure(int(x) for x in n.members)
    if len(closed) != n.order:
        raise NotNormal("class union is not closed under multiplication")
    return n


def normal_subgroup_from_elements(g: GroupTable, idxs) -> NormalSubgroup:
    """Build a NormalSubgroup from element indices; raises NotNormal unless
    the set is a union of classes forming a subgroup."""
    idxs = np.unique(np.fromiter((int(i) for i in idxs), dtype=np.int64))
    cls = {int(c) for c in np.unique(g.class_of[idxs])}
    size = sum(g.classes[c].size for c in cls)
    if size != len(idxs):
        raise NotNormal("set is not a union of conjugacy classes")
    return normal_subgroup_from_classes(g, cls)


def normal_subgroups(g: GroupTable) -> list[NormalSubgroup]:
    """All normal subgroups: closures of class unions, closed under join."""
    if g._normals is not None:
        return list(g._normals)
    classes = g.classes
    if len(classes) > CLASS_CAP:
        raise ClassCapExceeded(
            f"{len(classes)} conjugacy classes exceed the lattice cap {CLASS_CAP}"
        )
    found: set[int] = {1}  # trivial subgroup: the identity class alone
    for c in range(len(classes)):
        found.add(g.normal_closure_bits([c]))
    # close under pairwise join until stable
    while True:
        current = sorted(found)
        added = False
        for idx_a, a in enumerate(current):
            for b in current[idx_a + 1 :]:
                u = a | b
                if u in found:
                    continue
                j = g.normal_closure_bits(list(_iter_bits(u)))
                if j not in found:
                    found.add(j)
                    added = True
        if not added:
            break
    out = [NormalSubgroup(g, bits) for bits in found]
    out.sort(key=lambda n: (n.order, n.class_bits))
    g._normals = out
    return list(out)


def cosocle(g: GroupTable) -> NormalSubgroup:
    """Intersection of all maximal proper normal subgroups.

    For the trivial group (no proper normal subgroups) this is the whole
    group, by the empty-intersection convention.
    """
    if g._cosocle is not None:
        return g._cosocle
    normals = normal_subgroups(g)
    proper = [n for n in normals if n.order < g.order]
    if not proper:
        g._cosocle = NormalSubgroup(g, g.full_class_bits())
        return g._cosocle
    maximal = [
        n
        for n in proper
        if not any(
            m is not n and m.class_bits & n.class_bits == n.class_bits
            for m in proper
        )
    ]
    bits = g.full_class_bits()
    for n in maximal:
        bits &= n.class_bits
    g._cosocle = NormalSubgroup(g, bits)
    return g._cosocle


def center(g: GroupTable) -> NormalSubgroup:
    all_idx = np.arange(g.order, dtype=np.int64)
    mask = np.ones(g.order, dtype=bool)
    for gi in g.gens:
        mask &= g.mul_right_batch(all_idx, gi) == g.mul_left_batch(gi, all_idx)
    return normal_subgroup_from_elements(g, np.nonzero(mask)[0])


def commutator_subgroup(g: GroupTable) -> NormalSubgroup:
    """Derived subgroup, as the normal closure of generator commutators."""
    if g._derived_bits is None:
        seeds = set()
        for a in g.gens:
            for b in g.gens:
                ab = g.mul(a, b)
                ba = g.mul(b, a)
                seeds.add(int(g.class_of[g.mul(ab, g.inv_of(ba))]))
        g._derived_bits = g.normal_closure_bits(seeds)
    return NormalSubgroup(g, g._derived_bits)


def is_perfect(g: GroupTable) -> bool:
    return commutator_subgroup(g).order == g.order


def commutator_set_bits(g: GroupTable) -> int:
    """Class bitmask of the set of all commutators [x, y]."""
    got = g.cache.get("commutator_bits")
    if got is not None:
        return got
    if g.order > WIDTH_ORDER_CAP:
        raise CapExceeded(
            f"commutator set computation capped at order {WIDTH_ORDER_CAP}"
        )
    all_idx = np.arange(g.order, dtype=np.int64)
    inv_all = g.inv[all_idx]
    seen = np.zeros(g.order, dtype=bool)
    for a in range(g.order):
        t = g.mul_left_batch(a, all_idx)
        t = g.mul_right_batch(t, g.inv_of(a))
        y = g.mul_pairwise(t, inv_all)
        seen[y] = True
    bits = 0
    for c in np.unique(g.class_of[np.nonzero(seen)[0]]):
        bits |= 1 << int(c)
    g.cache["commutator_bits"] = bits
    return bits


def commutator_width(g: GroupTable, x: int) -> int | None:
    """Minimal k with x in S^k for S the set of all commutators.

    S contains the identity, so the k-fold product sets grow monotonically.
    Returns 0 for the identity and None when x is outside the derived
    subgroup.
    """
    if x == 0:
        return 0
    derived = commutator_subgroup(g)
    if not derived.contains(x):
        return None
    s_bits = commutator_set_bits(g)
    target = 1 << int(g.class_of[x])
    bits = s_bits
    k = 1
    while not bits & target:
        nxt = g.class_set_product_bits(bits, s_bits)
        if nxt == bits:
            return None
        bits = nxt
        k += 1
    return k
