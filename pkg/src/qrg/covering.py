"""Covering numbers and covering properties of conjugacy classes.

All product sets here are unions of conjugacy classes, stored as class
bitmasks on a GroupTable.  Products are exact k-fold products (no identity
padding): S^k means S * S * ... * S with k factors.  The symmetric variant
replaces a class C by C union C^{-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce

from .engine import GroupTable, NormalSubgroup, cosocle, direct_product, quotient


class GroupMismatch(ValueError):
    """Class sets over two different groups cannot be combined."""


@dataclass(frozen=True)
class ClassSet:
    """A union of conjugacy classes of one group, as a bitmask."""

    group: GroupTable
    bits: int

    @property
    def element_count(self) -> int:
        return self.group.class_bits_size(self.bits)

    @property
    def class_count(self) -> int:
        return bin(self.bits).count("1")

    def is_full(self) -> bool:
        return self.bits == self.group.full_class_bits()

    def class_indices(self) -> list[int]:
        return [c.index for c in self.group.classes if self.bits >> c.index & 1]


def class_of_element(g: GroupTable, x: int, symmetric: bool = False) -> ClassSet:
    """C(x), or C(x) union C(x^{-1}) for the symmetric variant."""
    c = int(g.class_of[x])
    bits = 1 << c
    if symmetric:
        bits |= 1 << g.inverse_class(c)
    return ClassSet(g, bits)


def class_product(a: ClassSet, b: ClassSet) -> ClassSet:
    """Exact product set a*b, again a union of classes.

    Computed by multiplying one representative of each class in a against
    every element of b; conjugation invariance of both sides makes this
    reach exactly the classes of the full product set.
    """
    if a.group is not b.group:
        raise GroupMismatch("class sets live over different groups")
    return ClassSet(a.group, a.group.class_set_product_bits(a.bits, b.bits))


def kfold_product(base: ClassSet, k: int) -> ClassSet:
    """Exact k-fold product base^k, k >= 1, memoized on the group."""
    if k < 1:
        raise ValueError("k must be >= 1")
    g = base.group
    key = ("kfold", base.bits, k)
    got = g.cache.get(key)
    if got is None:
        if k == 1:
            got = base.bits
        else:
            prev = kfold_product(base, k - 1)
            got = g.class_set_product_bits(prev.bits, base.bits)
        g.cache[key] = got
    return ClassSet(g, got)


@dataclass
class CoveringReport:
    element: str
    element_index: int
    symmetric: bool
    K: int | None
    m_checked: int
    property_holds: bool
    growth_trace: list[tuple[int, int]] = field(default_factory=list)
    reason: str | None = None


def resolve_m(g: GroupTable, x: int, m) -> int:
    """Powers to check: m = infinity means the order of the element."""
    if m == math.inf:
        return g.order_of(x)
    m = int(m)
    if m < 1:
        raise ValueError("m must be >= 1")
    return m


def covering_number(
    g: GroupTable, x: int, symmetric: bool = False, max_k: int | None = None
) -> CoveringReport:
    """Minimal K with (C(x))^K = G under the exact-product reading.

    Returns K = None when the class is trivial (x is the identity), when the
    normal closure of x is proper, when the growth becomes periodic without
    covering, or when max_k (default: the number of conjugacy classes) is
    exhausted.
    """
    label = g.element_label(x)
    if max_k is None:
        max_k = len(g.classes)
    if g.order == 1:
        return CoveringReport(
            element=label,
            element_index=x,
            symmetric=symmetric,
            K=1,
            m_checked=1,
            property_holds=True,
            growth_trace=[(1, 1)],
        )
    if x == 0:
        return CoveringReport(
            element=label,
            element_index=x,
            symmetric=symmetric,
            K=None,
            m_checked=1,
            property_holds=False,
            reason="trivial class",
        )
    closure_bits = g.normal_closure_bits([int(g.class_of[x])])
    if closure_bits != g.full_class_bits():
        return CoveringReport(
            element=label,
            element_index=x,
            symmetric=symmetric,
            K=None,
            m_checked=1,
            property_holds=False,
            reason="proper normal closure",
        )
    base = class_of_element(g, x, symmetric)
    trace = []
    seen = set()
    s = base
    k = 1
    while True:
        trace.append((k, s.element_count))
        if s.is_full():
            return CoveringReport(
                element=label,
                element_index=x,
                symmetric=symmetric,
                K=k,
                m_checked=1,
                property_holds=True,
                growth_trace=trace,
            )
        if s.bits in seen:
            return CoveringReport(
                element=label,
                element_index=x,
                symmetric=symmetric,
                K=None,
                m_checked=1,
                property_holds=False,
                growth_trace=trace,
                reason="periodic growth without covering",
            )
        if k >= max_k:
            return CoveringReport(
                element=label,
                element_index=x,
                symmetric=symmetric,
                K=None,
                m_checked=1,
                property_holds=False,
                growth_trace=trace,
                reason="max_k exceeded",
            )
        seen.add(s.bits)
        s = class_product(s, base)
        k += 1


def covering_property(
    g: GroupTable, x: int, K: int, m, symmetric: bool = False
) -> bool:
    """Whether (C(x^i))^K = G for every power 1 <= i <= m."""
    m = resolve_m(g, x, m)
    for i in range(1, m + 1):
        y = g.power(x, i)
        s = kfold_product(class_of_element(g, y, symmetric), K)
        if not s.is_full():
            return False
    return True


def double_covering_feasible(
    g: GroupTable, x: int, y: int, k1: int, m1, k2: int, m2
) -> bool:
    """Symmetric double covering: for all i <= m1, j <= m2,

        (C(x^i) u C(x^-i))^k1 * (C(y^j) u C(y^-j))^k2 = G.
    """
    m1 = resolve_m(g, x, m1)
    m2 = resolve_m(g, y, m2)
    full = g.full_class_bits()
    for i in range(1, m1 + 1):
        a = kfold_product(class_of_element(g, g.power(x, i), symmetric=True), k1)
        for j in range(1, m2 + 1):
            b = kfold_product(class_of_element(g, g.power(y, j), symmetric=True), k2)
            if g.class_set_product_bits(a.bits, b.bits) != full:
                return False
    return True


def covering_mod(
    g: GroupTable, n: NormalSubgroup, x: int, K: int, m, symmetric: bool = False
) -> bool:
    """covering_property computed in the quotient G/N for the image of x."""
    q = quotient(g, n)
    return covering_property(q, int(q.proj[x]), K, m, symmetric)


def double_covering_mod(
    g: GroupTable, n: NormalSubgroup, x: int, y: int, k1: int, m1, k2: int, m2
) -> bool:
    q = quotient(g, n)
    return double_covering_feasible(
        q, int(q.proj[x]), int(q.proj[y]), k1, m1, k2, m2
    )


@dataclass
class InflationReport:
    cosocle_classes: int
    factor: int
    mod_holds: bool
    lifted_holds: bool | None
    minimal_factor: int | None
    slack: int | None


def verify_cosocle_inflation(
    g: GroupTable, x: int, y: int, k1: int, m1, k2: int, m2
) -> InflationReport:
    """Check the cosocle inflation bound on one witness pair.

    If the symmetric double covering with (k1, m1), (k2, m2) holds modulo the
    cosocle, the same powers must cover absolutely once both exponents are
    multiplied by 3n - 2, where n is the number of whole-group conjugacy
    classes lying inside the cosocle.  The report also carries the smallest
    inflation factor that actually suffices, so the slack is visible.
    """
    cos = cosocle(g)
    n = cos.num_classes
    factor = 3 * n - 2
    mod_holds = double_covering_mod(g, cos, x, y, k1, m1, k2, m2)
    lifted = None
    minimal = None
    slack = None
    if mod_holds:
        lifted = double_covering_feasible(
            g, x, y, factor * k1, m1, factor * k2, m2
        )
        for f in range(1, factor + 1):
            if double_covering_feasible(g, x, y, f * k1, m1, f * k2, m2):
                minimal = f
                break
        if minimal is not None:
            slack = factor - minimal
    return InflationReport(
        cosocle_classes=n,
        factor=factor,
        mod_holds=mod_holds,
        lifted_holds=lifted,
        minimal_factor=minimal,
        slack=slack,
    )


def product_witness_index(groups: list[GroupTable], idxs: list[int]) -> int:
    """Element index of a witness tuple inside reduce(direct_product, groups)."""
    out = idxs[0]
    for g, i in zip(groups[1:], idxs[1:]):
        out = out * g.order + i
    return out


def verify_product_preservation(
    witnessed: list[tuple[GroupTable, int, int]], k1: int, m1, k2: int, m2
) -> bool:
    """Symmetric double covering parameters transfer to a direct product.

    Each entry of witnessed is (group, x, y).  Verifies the parameters on
    every factor, then builds the direct product and re-verifies the same
    parameters on the tuple witnesses.  Returns False as soon as any factor
    fails.
    """
    if not witnessed:
        raise ValueError("at least one factor is required")
    for g, x, y in witnessed:
        if not double_covering_feasible(g, x, y, k1, m1, k2, m2):
            return False
    groups = [g for g, _, _ in witnessed]
    prod = reduce(direct_product, groups)
    xt = product_witness_index(groups, [x for _, x, _ in witnessed])
    yt = product_witness_index(groups, [y for _, _, y in witnessed])
    return double_covering_feasible(prod, xt, yt, k1, m1, k2, m2)
