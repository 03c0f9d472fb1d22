"""Character degrees, quasirandom degree, and the Gowers mixing statistic.

Degrees come from the class-algebra eigenvalue method run over a prime
field F_ell with ell = 1 (mod exp(G)): the class-sum multiplication
matrices commute, their simultaneous eigenvectors are the primitive
central idempotents, and the degrees fall out of the orthogonality
normalization.  Everything is exact integer arithmetic; no floating
point appears anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .engine import GroupTable, TrivialGroup, normal_subgroups
from .errors import CapExceeded
from .gf import is_prime

DEGREE_ORDER_CAP = 20_000
_PRIME_ATTEMPTS = 8


class NoSuitablePrime(RuntimeError):
    """No working modulus found among the first candidate primes."""


@dataclass(frozen=True)
class CharacterDegrees:
    """Multiset of irreducible character degrees of a finite group."""

    degrees: tuple[int, ...]
    group_order: int

    def __post_init__(self):
        if sum(d * d for d in self.degrees) != self.group_order:
            raise ValueError("sum of squared degrees must equal the group order")
        if not self.degrees or self.degrees.count(1) < 1:
            raise ValueError("the trivial character must be present")


@dataclass(frozen=True)
class MixingReport:
    alpha: Fraction
    eps1: Fraction
    eps2: Fraction
    good_x_count: int
    threshold_pairs: int
    passes: bool


def _suitable_primes(exponent: int, order: int, num_classes: int):
    """Yield primes ell = 1 mod exp(G) with ell^2 > 4|G| and ell > r."""
    t = 1
    while True:
        ell = exponent * t + 1
        if is_prime(ell) and ell * ell > 4 * order and ell > num_classes:
            yield ell
        t += 1


def _class_coefficients(g: GroupTable, i: int) -> np.ndarray:
    """a[j, k] = #{(x, y) in C_i x C_j : x y = rep_k}, as an r x r array.

    For x in C_i and class rep t_k, the partner is y = x^-1 t_k; counting
    the class of y over all x gives the k-column in one pass.
    """
    classes = g.classes
    r = len(classes)
    reps = np.fromiter((c.rep for c in classes), dtype=np.int64, count=r)
    xs = classes[i].members
    xinv = g.inv[xs]
    left = np.repeat(xinv, r)
    right = np.tile(reps, len(xs))
    ys = g.mul_pairwise(left, right)
    a = np.zeros((r, r), dtype=np.int64)
    np.add.at(a, (g.class_of[ys], np.tile(np.arange(r), len(xs))), 1)
    return a


def _charpoly_mod(a: np.ndarray, ell: int) -> list[int]:
    """Characteristic polynomial coefficients mod ell, leading first.

    Newton's identities over F_ell; valid because ell exceeds the
    matrix dimension, so the divisions by k are invertible.
    """
    m = len(a)
    power = np.eye(m, dtype=np.int64)
    psums = []
    for _ in range(m):
        power = (power @ a) % ell
        psums.append(int(np.trace(power)) % ell)
    e = [1]
    for k in range(1, m + 1):
        acc = 0
        for s in range(1, k + 1):
            term = e[k - s] * psums[s - 1]
            acc = (acc - term) if s % 2 == 0 else (acc + term)
        e.append(acc * pow(k, -1, ell) % ell)
    return [(-1) ** k * e[k] % ell for k in range(m + 1)]


def _poly_roots_mod(coeffs: Sequence[int], ell: int) -> list[int]:
    xs = np.arange(ell, dtype=np.int64)
    acc = np.full(ell, coeffs[0], dtype=np.int64)
    for c in coeffs[1:]:
        acc = (acc * xs + c) % ell
    return [int(x) for x in xs[acc == 0]]


def _nullspace_mod(a: np.ndarray, ell: int) -> np.ndarray:
    """Column basis of ker(a) over F_ell, shape (n, dim)."""
    m = a.copy() % ell
    rows, cols = m.shape
    pivots = []
    rank = 0
    for c in range(cols):
        sub = np.nonzero(m[rank:, c])[0]
        if len(sub) == 0:
            continue
        p = rank + int(sub[0])
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        m[rank] = m[rank] * pow(int(m[rank, c]), -1, ell) % ell
        others = np.nonzero(m[:, c])[0]
        others = others[others != rank]
        if len(others):
            m[others] = (m[others] - np.outer(m[others, c], m[rank])) % ell
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for idx, fc in enumerate(free):
        basis[fc, idx] = 1
        for ri, pc in enumerate(pivots):
            basis[pc, idx] = (-int(m[ri, fc])) % ell
    return basis


def _column_reduce(b: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    """Column-reduce b mod ell so that b[pivots] is the identity."""
    m = (b.T % ell).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    rank = 0
    for c in range(cols):
        sub = np.nonzero(m[rank:, c])[0]
        if len(sub) == 0:
            continue
        p = rank + int(sub[0])
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        m[rank] = m[rank] * pow(int(m[rank, c]), -1, ell) % ell
        others = np.nonzero(m[:, c])[0]
        others = others[others != rank]
        if len(others):
            m[others] = (m[others] - np.outer(m[others, c], m[rank])) % ell
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    if rank != rows:
        raise ArithmeticError("subspace basis lost rank during reduction")
    return m.T, pivots


class _SplitFailure(Exception):
    """The class matrices failed to separate characters at this prime."""


def _degrees_at_prime(g: GroupTable, ell: int) -> list[int]:
    classes = g.classes
    r = len(classes)
    order = g.order
    inv_class = np.fromiter((g.inverse_class(j) for j in range(r)), dtype=np.int64, count=r)
    sizes = np.fromiter((c.size for c in classes), dtype=np.int64, count=r)

    # Subspaces of the class algebra, column-reduced; split until 1-dim.
    spaces: list[tuple[np.ndarray, list[int]]] = [(np.eye(r, dtype=np.int64), list(range(r)))]
    for i in range(1, r):
        if all(b.shape[1] == 1 for b, _ in spaces):
            break
        m_i = _class_coefficients(g, i).T % ell
        next_spaces: list[tuple[np.ndarray, list[int]]] = []
        for b, piv in spaces:
            dim = b.shape[1]
            if dim == 1:
                next_spaces.append((b, piv))
                continue
            action = (m_i @ b)[piv] % ell
            found = 0
            for lam in _poly_roots_mod(_charpoly_mod(action, ell), ell):
                shifted = (action - lam * np.eye(dim, dtype=np.int64)) % ell
                kern = _nullspace_mod(shifted, ell)
                if kern.shape[1] == 0:
                    continue
                next_spaces.append(_column_reduce((b @ kern) % ell, ell))
                found += kern.shape[1]
            if found != dim:
                raise _SplitFailure(f"defective action at class {i}")
        spaces = next_spaces
    if any(b.shape[1] != 1 for b, _ in spaces):
        raise _SplitFailure("class matrices exhausted before full split")

    # Eigenvector coordinates are proportional to chi(rep^-1); the degree
    # follows from row orthogonality: d^2 = v_0^2 |G| / sum_j |C_j| v_j v_{j*}.
    degrees = []
    bound = math.isqrt(order)
    for b, _ in spaces:
        v = b[:, 0] % ell
        if v[0] == 0:
            raise _SplitFailure("eigenvector vanishes at the identity class")
        norm = int(np.sum(sizes * v * v[inv_class]) % ell)
        if norm == 0:
            raise _SplitFailure("orthogonality norm vanished")
        target = int(v[0]) ** 2 % ell * order * pow(norm, -1, ell) % ell
        for d in range(1, bound + 1):
            if d * d % ell == target:
                degrees.append(d)
                break
        else:
            raise _SplitFailure("no degree matches the normalization")
    if len(degrees) != r or sum(d * d for d in degrees) != order or min(degrees) != 1:
        raise _SplitFailure("degree multiset failed validation")
    return sorted(degrees)


def character_degrees(g: GroupTable, cap: int = DEGREE_ORDER_CAP) -> CharacterDegrees:
    """Exact multiset of irreducible character degrees of g.

    Runs the deterministic class-algebra method at the smallest usable
    prime and retries at the next few candidates before giving up.
    """
    if g.order > cap:
        raise CapExceeded(f"order {g.order} exceeds degree cap {cap}")
    cached = g.cache.get("chardeg")
    if cached is not None:
        return cached
    r = len(g.classes)
    if r == g.order:
        result = CharacterDegrees((1,) * r, g.order)
        g.cache["chardeg"] = result
        return result
    failures = []
    gen = _suitable_primes(g.exponent(), g.order, r)
    for _ in range(_PRIME_ATTEMPTS):
        ell = next(gen)
        try:
            degs = _degrees_at_prime(g, ell)
        except _SplitFailure as exc:
            failures.append(f"ell={ell}: {exc}")
            continue
        result = CharacterDegrees(tuple(degs), g.order)
        g.cache["chardeg"] = result
        return result
    raise NoSuitablePrime("; ".join(failures))


def quasirandom_degree(g: GroupTable, cap: int = DEGREE_ORDER_CAP):
    """Minimal nontrivial irreducible degree D(G); math.inf for the trivial group."""
    if g.order == 1:
        return math.inf
    degs = character_degrees(g, cap=cap).degrees
    return degs[1]


def min_normal_index(g: GroupTable) -> int:
    """Minimal index of a proper normal subgroup; |G| when G is simple."""
    if g.order == 1:
        raise TrivialGroup("the trivial group has no proper normal subgroup")
    proper = [n for n in normal_subgroups(g) if n.order < g.order]
    return g.order // max(n.order for n in proper)


def element_count_bound_check(g: GroupTable, cap: int = DEGREE_ORDER_CAP) -> bool:
    """Check |G| > (D(G) - 1)^2.

    The trivial group carries the infinity sentinel and fails the literal
    inequality; callers exercise nontrivial groups.
    """
    d = quasirandom_degree(g, cap=cap)
    if d == math.inf:
        return False
    return g.order > (d - 1) ** 2


def _as_fraction(x) -> Fraction:
    # str() round-trip so that eps given as 0.1 means the decimal 1/10,
    # not the nearest binary double.
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def _ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def gowers_mixing(g: GroupTable, subset: Iterable[int], eps1, eps2) -> MixingReport:
    """Count x with |A and xA| >= (1-eps2) alpha^2 |G|, exactly.

    passes is the strict comparison good_x_count > (1-eps1) alpha^2 |G|;
    both thresholds are exact rationals so boundary cases cannot be lost
    to floating point.
    """
    a_idx = np.unique(np.asarray(list(subset), dtype=np.int64))
    if len(a_idx) == 0:
        raise ValueError("subset must be nonempty")
    if a_idx[0] < 0 or a_idx[-1] >= g.order:
        raise ValueError("subset contains out-of-range element indices")
    e1 = _as_fraction(eps1)
    e2 = _as_fraction(eps2)
    alpha = Fraction(len(a_idx), g.order)
    pair_target = (1 - e2) * alpha * alpha * g.order
    threshold_pairs = _ceil_fraction(pair_target)

    mask = np.zeros(g.order, dtype=bool)
    mask[a_idx] = True
    table = g.dense()
    if table is not None:
        counts = mask[table[:, a_idx]].sum(axis=1)
        good = int(np.count_nonzero(counts >= threshold_pairs))
    else:
        good = 0
        for x in range(g.order):
            shifted = g.mul_left_batch(x, a_idx)
            if int(mask[shifted].sum()) >= threshold_pairs:
                good += 1
    x_target = (1 - e1) * alpha * alpha * g.order
    return MixingReport(
        alpha=alpha,
        eps1=e1,
        eps2=e2,
        good_x_count=good,
        threshold_pairs=threshold_pairs,
        passes=Fraction(good) > x_target,
    )
