"""Independent reference computations for the test suite.

Everything here works on raw carriers: image tuples for permutations,
entry tuples for 2x2 matrices, plain lists for mod-p elimination.  None
of it calls into the package, so a bug there cannot leak into the
expected values.  Slow is fine; these run on groups of a few hundred
elements (the class-algebra degree oracle scales to a few tens of
thousands).
"""

from fractions import Fraction

import mpmath as mp
import numpy as np


# -- permutations ------------------------------------------------------------

def parity_by_inversions(images) -> str:
    inv = 0
    n = len(images)
    for i in range(n):
        for j in range(i + 1, n):
            inv += images[i] > images[j]
    return "even" if inv % 2 == 0 else "odd"


def compose(a, b):
    """Image tuple of a after b: (a.b)(i) = a(b(i))."""
    return tuple(a[b[i]] for i in range(len(a)))


def invert(a):
    out = [0] * len(a)
    for i, img in enumerate(a):
        out[img] = i
    return tuple(out)


def cycle_lengths(images):
    seen = [False] * len(images)
    out = []
    for start in range(len(images)):
        if seen[start]:
            continue
        length = 0
        pt = start
        while not seen[pt]:
            seen[pt] = True
            pt = images[pt]
            length += 1
        out.append(length)
    return sorted(out, reverse=True)


def sn_class_size(n: int, lengths) -> int:
    """n! / centralizer order for the cycle type, fixed points included."""
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    cent = 1
    for ln in lengths:
        cent *= ln
    for ln in set(lengths):
        mult = list(lengths).count(ln)
        for i in range(2, mult + 1):
            cent *= i
    return fact // cent


def an_class_size(n: int, lengths) -> int:
    """Size of the A_n class: the S_n class, halved when it splits."""
    size = sn_class_size(n, lengths)
    if all(ln % 2 == 1 for ln in lengths) and len(set(lengths)) == len(lengths):
        return size // 2
    return size


# -- generic group closure on hashable carriers ------------------------------

def group_closure(gens, mul):
    """All nonempty products of the generators; in a finite group that set
    is closed and already contains the identity and all inverses."""
    if not gens:
        raise ValueError("need at least one generator")
    elements = set(gens)
    frontier = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(g, x)
                if y not in elements:
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return elements


def conjugacy_partition(elements, gens, mul, inv):
    """Classes as frozensets, via conjugation orbits under the generators."""
    pending = set(elements)
    classes = []
    while pending:
        start = pending.pop()
        orbit = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mul(mul(g, x), inv(g))
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        pending -= orbit
        classes.append(frozenset(orbit))
    return classes


def exact_product_sizes(cls, mul, k: int):
    """Sizes of the exact j-fold products of a class, j = 1..k."""
    base = frozenset(cls)
    cur = base
    sizes = [len(cur)]
    for _ in range(k - 1):
        cur = frozenset(mul(a, b) for a in cur for b in base)
        sizes.append(len(cur))
    return sizes


def covering_number_bruteforce(cls, mul, order: int, max_k: int = 16):
    """Least k with the exact k-fold product full, None on a repeated state."""
    base = frozenset(cls)
    cur = base
    seen = set()
    for k in range(1, max_k + 1):
        if len(cur) == order:
            return k
        if cur in seen:
            return None
        seen.add(cur)
        cur = frozenset(mul(a, b) for a in cur for b in base)
    raise RuntimeError(f"undecided after {max_k} steps")


def exact_product_sizes_rows(class_tuples, k: int):
    """Row-array version of exact_product_sizes for permutation classes too
    large for the set-of-tuples route (thousands of elements)."""
    base = np.array(sorted(class_tuples), dtype=np.uint8)
    cur = base
    sizes = [len(cur)]
    for _ in range(k - 1):
        stacked = np.concatenate([cur[:, b] for b in base])
        cur = np.unique(stacked, axis=0)
        sizes.append(len(cur))
    return sizes


# -- SL2(p) carrier ----------------------------------------------------------

def sl2_gens(p: int):
    """Standard generators (1,1;0,1) and (0,1;-1,0) as entry 4-tuples."""
    return [(1, 1, 0, 1), (0, 1, p - 1, 0)]


def sl2_mul(p: int):
    def mul(x, y):
        a, b, c, d = x
        e, f, g, h = y
        return (
            (a * e + b * g) % p,
            (a * f + b * h) % p,
            (c * e + d * g) % p,
            (c * f + d * h) % p,
        )
    return mul


def sl2_inv(p: int):
    def inv(x):
        a, b, c, d = x
        # det is 1 throughout SL2
        return (d % p, -b % p, -c % p, a % p)
    return inv


# -- character degrees, two independent routes -------------------------------

def degrees_regular_rep(gens, mul, inv, seed: int = 7):
    """Degrees from eigenvalue clusters of a random central element in the
    regular representation; each irreducible contributes a d^2 cluster."""
    elements = sorted(group_closure(gens, mul))
    order = len(elements)
    index = {x: i for i, x in enumerate(elements)}
    classes = conjugacy_partition(elements, gens, mul, inv)
    rng = np.random.default_rng(seed)
    z = np.zeros((order, order), dtype=complex)
    cols = np.arange(order)
    for cls in classes:
        w = complex(rng.standard_normal(), rng.standard_normal())
        for x in cls:
            rows = np.array([index[mul(x, h)] for h in elements])
            z[rows, cols] += w
    eig = np.linalg.eigvals(z)
    return _degrees_from_clusters(eig, order)


def _degrees_from_clusters(eig, order: int):
    tol = 1e-6 * (1.0 + float(np.abs(eig).max()))
    centers = []
    counts = []
    for e in sorted(eig, key=lambda v: (v.real, v.imag)):
        for i, c in enumerate(centers):
            if abs(e - c) < tol:
                counts[i] += 1
                break
        else:
            centers.append(e)
            counts.append(1)
    degs = []
    for c in counts:
        d = round(c ** 0.5)
        if d * d != c:
            raise RuntimeError(f"cluster size {c} is not a perfect square")
        degs.append(d)
    degs.sort()
    if sum(d * d for d in degs) != order:
        raise RuntimeError("degree squares do not sum to the order")
    return tuple(degs)


def degrees_class_algebra(gens, mul, inv, seed: int = 11):
    """Degrees from the class algebra over C.

    Multiplication by a class sum acts on the span of the class sums; the
    simultaneous eigenvectors give the central characters omega_i(C_j) =
    |C_j| chi_i(g_j) / d_i, and the second orthogonality relation turns
    each eigenvector into its degree:
    d_i^2 = |G| / sum_j |omega_ij|^2 / |C_j|.
    """
    elements = group_closure(gens, mul)
    order = len(elements)
    classes = conjugacy_partition(elements, gens, mul, inv)
    classes.sort(key=lambda c: (len(c), sorted(c)[0]))
    r = len(classes)
    reps = [sorted(c)[0] for c in classes]
    class_of = {x: i for i, c in enumerate(classes) for x in c}

    a = np.zeros((r, r, r))  # a[i, j, k] = #{(x, y) in C_i x C_j : xy = rep_k}
    for i, cls in enumerate(classes):
        for x in cls:
            xi = inv(x)
            for k, rep in enumerate(reps):
                a[i, class_of[mul(xi, rep)], k] += 1

    rng = np.random.default_rng(seed)
    coeff = rng.standard_normal(r) + 1j * rng.standard_normal(r)
    m_all = [a[i].T for i in range(r)]
    combo = sum(c * m for c, m in zip(coeff, m_all))
    _, vecs = np.linalg.eig(combo)

    sizes = np.array([len(c) for c in classes], dtype=float)
    degs = []
    for t in range(r):
        v = vecs[:, t]
        pivot = int(np.argmax(np.abs(v)))
        omega = np.array([(m @ v)[pivot] / v[pivot] for m in m_all])
        d_sq = order / float(np.sum(np.abs(omega) ** 2 / sizes))
        d = round(d_sq ** 0.5)
        if abs(d * d - d_sq) > 1e-4 * max(1.0, d_sq):
            raise RuntimeError(f"non-integer degree estimate {d_sq ** 0.5}")
        degs.append(d)
    degs.sort()
    if sum(d * d for d in degs) != order:
        raise RuntimeError("degree squares do not sum to the order")
    return tuple(degs)


# -- mod-p elimination, written small and slow -------------------------------

def rank_mod_p(rows, p: int) -> int:
    rows = [[int(x) % p for x in row] for row in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        scale = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(x * scale) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def det_mod_p(rows, p: int) -> int:
    rows = [[int(x) % p for x in row] for row in rows]
    n = len(rows)
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det = (det * rows[col][col]) % p
        scale = pow(rows[col][col], p - 2, p)
        for i in range(col + 1, n):
            f = (rows[i][col] * scale) % p
            rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[col])]
    return det % p


def jordan_length_reference(entries, p: int) -> Fraction:
    """(n - max_a dim ker(a - g))/n over a in F_p^*, by plain elimination."""
    n = len(entries)
    best = 0
    for a in range(1, p):
        shifted = [
            [((a if i == j else 0) - entries[i][j]) % p for j in range(n)]
            for i in range(n)
        ]
        best = max(best, n - rank_mod_p(shifted, p))
    return Fraction(n - best, n)


# -- unitary geometry at 50 digits -------------------------------------------

def packing_m_highprec(eps: Fraction) -> int:
    """Least m >= 2 with 2 sin(pi/m) < eps; the two rational ties are
    detected by a 1e-40 window and count as not-below."""
    with mp.workdps(50):
        target = mp.mpf(eps.numerator) / eps.denominator
        m = 2
        while True:
            chord = 2 * mp.sin(mp.pi / m)
            if abs(chord - target) > mp.mpf("1e-40") and chord < target:
                return m
            m += 1


def power_witness_highprec(angles, d: int, kmax: int = 10**5):
    """Smallest k with sum_j |e^(ik theta) - 1|^2 > 2, plus the length."""
    with mp.workdps(50):
        for k in range(1, kmax + 1):
            sq = 2 * d - 2 * sum(mp.cos(k * t) for t in angles)
            if sq - 2 > mp.mpf("1e-30"):
                return k, float(mp.sqrt(sq))
        return None


def chord_highprec(k: int, m: int) -> float:
    """|e^(2 pi i k / m) - 1| = 2 sin(pi k / m) at 50 digits, as a float."""
    with mp.workdps(50):
        return float(2 * mp.sin(mp.pi * k / m))


# -- small arithmetic oracles ------------------------------------------------

def solve_two_prime_bruteforce(n: int, p: int, q: int):
    """Minimal-a solution of n = ap + bq with a, b >= 1 and max(a, b) >= 2."""
    for a in range(1, n // p + 1):
        rest = n - a * p
        if rest < q:
            break
        if rest % q == 0 and max(a, rest // q) >= 2:
            return a, rest // q
    return None
