"""Exact integer lattice linear algebra.

All arithmetic is over plain Python ints (arbitrary precision) and
fractions.Fraction; there is no floating point anywhere.  Vectors are
tuples of ints, matrices are tuples of row tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

from .errors import NotCodimOne, NotSaturated, ZeroVector

Vec = tuple[int, ...]
Mat = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# basic vector / matrix helpers


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v, strict=True))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: int, v: Vec) -> Vec:
    return tuple(c * a for a in v)


def vec_neg(v: Vec) -> Vec:
    return tuple(-a for a in v)


def is_zero(v) -> bool:
    return all(a == 0 for a in v)


def identity_matrix(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_vec(M, v) -> Vec:
    return tuple(dot(row, v) for row in M)


def mat_mul(A, B) -> Mat:
    cols = list(zip(*B)) if B else []
    return tuple(tuple(dot(row, col) for col in cols) for row in A)


def transpose(A) -> Mat:
    return tuple(zip(*A)) if A else ()


def sign_normalize(v: Vec) -> Vec:
    """Flip the sign so the first nonzero entry is positive."""
    for a in v:
        if a > 0:
            return v
        if a < 0:
            return vec_neg(v)
    return v


def primitive(v: Vec) -> Vec:
    """Divide a nonzero vector by the gcd of its entries."""
    if is_zero(v):
        raise ZeroVector("cannot take the primitive vector of 0")
    g = 0
    for a in v:
        g = gcd(g, a)
    return tuple(a // g for a in v)


# ---------------------------------------------------------------------------
# Smith normal form with transforms


@dataclass(frozen=True)
class SNF:
    S: Mat
    U: Mat
    V: Mat
    Uinv: Mat
    Vinv: Mat

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def _snf_ext(A) -> SNF:
    m = len(A)
    n = len(A[0]) if m else 0
    S = [list(row) for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vi = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_sub(i, j, q):
        S[i] = [a - q * b for a, b in zip(S[i], S[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]
        for r in range(m):
            Ui[r][j] += q * Ui[r][i]

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for r in range(m):
            Ui[r][i], Ui[r][j] = Ui[r][j], Ui[r][i]

    def row_neg(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]
        for r in range(m):
            Ui[r][i] = -Ui[r][i]

    def col_sub(j, k, q):
        # column j -= q * column k
        for r in range(m):
            S[r][j] -= q * S[r][k]
        for r in range(n):
            V[r][j] -= q * V[r][k]
        Vi[k] = [a + q * b for a, b in zip(Vi[k], Vi[j])]

    def col_swap(j, k):
        for r in range(m):
            S[r][j], S[r][k] = S[r][k], S[r][j]
        for r in range(n):
            V[r][j], V[r][k] = V[r][k], V[r][j]
        Vi[j], Vi[k] = Vi[k], Vi[j]

    def clear_at(t):
        pi = pj = -1
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = S[i][j]
                if v != 0 and (best is None or abs(v) < best):
                    best = abs(v)
                    pi, pj = i, j
        if best is None:
            return False
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        while True:
            for i in range(t + 1, m):
                while S[i][t] != 0:
                    q = S[i][t] // S[t][t]
                    row_sub(i, t, q)
                    if S[i][t] != 0:
                        row_swap(i, t)
            for j in range(t + 1, n):
                while S[t][j] != 0:
                    q = S[t][j] // S[t][t]
                    col_sub(j, t, q)
                    if S[t][j] != 0:
                        col_swap(j, t)
            if all(S[i][t] == 0 for i in range(t + 1, m)) and all(
                S[t][j] == 0 for j in range(t + 1, n)
            ):
                break
        return True

    t = 0
    while t < min(m, n):
        if not clear_at(t):
            break
        t += 1
    r = sum(1 for i in range(min(m, n)) if S[i][i] != 0)

    # enforce the divisibility chain d_i | d_{i+1}
    changed = True
    while changed:
        changed = False
        for t in range(r - 1):
            a, b = S[t][t], S[t + 1][t + 1]
            if b % a != 0:
                col_sub(t, t + 1, -1)  # col t += col t+1, so S[t+1][t] = b
                clear_at(t)
                clear_at(t + 1)
                changed = True

    for t in range(r):
        if S[t][t] < 0:
            row_neg(t)

    result = SNF(
        S=tuple(tuple(row) for row in S),
        U=tuple(tuple(row) for row in U),
        V=tuple(tuple(row) for row in V),
        Uinv=tuple(tuple(row) for row in Ui),
        Vinv=tuple(tuple(row) for row in Vi),
    )
    # postconditions are cheap at desk scale, so always check them
    assert mat_mul(mat_mul(result.U, tuple(tuple(r_) for r_ in A)), result.V) == result.S
    assert mat_mul(result.U, result.Uinv) == identity_matrix(m)
    assert mat_mul(result.V, result.Vinv) == identity_matrix(n)
    return result


@lru_cache(maxsize=None)
def _snf_cached(A: Mat) -> SNF:
    return _snf_ext(A)


def snf(A) -> SNF:
    return _snf_cached(tuple(tuple(row) for row in A))


def smith_normal_form(A) -> tuple[Mat, Mat, Mat]:
    """Return (S, U, V) with U A V = S, U and V unimodular, S diagonal
    with nonnegative entries satisfying d_i | d_{i+1}."""
    r = snf(A)
    return r.S, r.U, r.V


# ---------------------------------------------------------------------------
# rational Gaussian elimination


def _rref(rows):
    """Reduced row echelon form over Fraction. Returns (rows, pivot_cols)."""
    rows = [[Fraction(a) for a in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [a / pv for a in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rational_rank(rows) -> int:
    if not rows:
        return 0
    return len(_rref(rows)[1])


def solve_rational(A_rows, b):
    """One solution x of A x = b over Fraction, or None if inconsistent."""
    m = len(A_rows)
    n = len(A_rows[0]) if m else 0
    aug = [list(A_rows[i]) + [b[i]] for i in range(m)]
    rows, pivots = _rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return x


def invert_rational(A_rows):
    """Inverse of a square matrix over Fraction, or None if singular."""
    n = len(A_rows)
    aug = [list(A_rows[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows, pivots = _rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in rows]


# ---------------------------------------------------------------------------
# sublattices


@dataclass(frozen=True)
class Sublattice:
    """A sublattice of Z^n given by a Z-linearly independent basis."""

    ambient_rank: int
    basis: tuple[Vec, ...]

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_rank:
                raise ValueError("basis vector has wrong length")
        if self.basis and snf(self.basis).rank != len(self.basis):
            raise ValueError("basis vectors are not linearly independent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        """Integral membership test."""
        if self.rank == 0:
            return is_zero(v)
        return _solve_integer(self.basis, tuple(v)) is not None

    def same_lattice(self, other: "Sublattice") -> bool:
        return (
            self.ambient_rank == other.ambient_rank
            and self.rank == other.rank
            and all(other.contains(v) for v in self.basis)
            and all(self.contains(v) for v in other.basis)
        )


def zero_sublattice(ambient_rank: int) -> Sublattice:
    return Sublattice(ambient_rank, ())


def full_sublattice(ambient_rank: int) -> Sublattice:
    return Sublattice(ambient_rank, identity_matrix(ambient_rank))


def saturated_span(ambient_rank: int, generators) -> Sublattice:
    """The saturated sublattice containing the span of the generators."""
    gens = tuple(tuple(v) for v in generators)
    if not gens:
        return zero_sublattice(ambient_rank)
    r = snf(gens)
    basis = tuple(tuple(r.Vinv[i]) for i in range(r.rank))
    return Sublattice(ambient_rank, basis)


def saturation(L: Sublattice) -> Sublattice:
    """Basis of {x : k*x in span(L) for some k >= 1}."""
    return saturated_span(L.ambient_rank, L.basis)


def is_saturated(L: Sublattice) -> bool:
    if not L.basis:
        return True
    r = snf(L.basis)
    return all(d == 1 for d in r.diagonal[: r.rank])


class LatticeIndex(Enum):
    INFINITE = "infinite"


INFINITE = LatticeIndex.INFINITE


def lattice_index(ambient_rank: int, generators):
    """Index of the subgroup generated by `generators` in Z^n (or INFINITE)."""
    gens = tuple(tuple(v) for v in generators)
    if ambient_rank == 0:
        return 1
    if not gens:
        return INFINITE
    r = snf(gens)
    if r.rank < ambient_rank:
        return INFINITE
    out = 1
    for d in r.diagonal[:ambient_rank]:
        out *= d
    return out


@dataclass(frozen=True)
class QuotientMap:
    """Projection Z^n -> Z^(n-k) with prescribed saturated kernel."""

    ambient_rank: int
    kernel: Sublattice
    projection: Mat
    section: Mat  # rows are preimages of the standard basis of the quotient

    def __post_init__(self):
        for v in self.kernel.basis:
            assert is_zero(mat_vec(self.projection, v))
        proj_of_section = tuple(mat_vec(self.projection, row) for row in self.section)
        assert proj_of_section == identity_matrix(self.quotient_rank)

    @property
    def quotient_rank(self) -> int:
        return self.ambient_rank - self.kernel.rank

    def project(self, v: Vec) -> Vec:
        return mat_vec(self.projection, v)

    def lift(self, u: Vec) -> Vec:
        out = (0,) * self.ambient_rank
        for c, row in zip(u, self.section, strict=True):
            out = vec_add(out, vec_scale(c, row))
        return out


def quotient_map(kernel: Sublattice) -> QuotientMap:
    """Quotient by a saturated sublattice; raises NotSaturated otherwise."""
    if not is_saturated(kernel):
        raise NotSaturated("quotient by a non-saturated sublattice has torsion")
    n = kernel.ambient_rank
    k = kernel.rank
    if k == 0:
        return QuotientMap(n, kernel, identity_matrix(n), identity_matrix(n))
    r = snf(kernel.basis)
    projection = tuple(tuple(r.V[row][j] for row in range(n)) for j in range(k, n))
    section = tuple(tuple(r.Vinv[i]) for i in range(k, n))
    return QuotientMap(n, kernel, projection, section)


def perp_basis(L: Sublattice):
    """Basis of {m : <m, v> = 0 for all v in L}; saturated by construction."""
    n = L.ambient_rank
    if not L.basis:
        return [tuple(row) for row in identity_matrix(n)]
    r = snf(L.basis)
    out = []
    for j in range(r.rank, n):
        col = tuple(r.V[row][j] for row in range(n))
        out.append(sign_normalize(col))
    return out


def _solve_integer(B, target):
    """One integer solution y of y . B = target (rows B), or None."""
    r = snf(B)
    g = len(B)
    w = len(target)
    t = tuple(dot(target, tuple(r.V[row][j] for row in range(w))) for j in range(w))
    z = []
    for i in range(g):
        d = r.S[i][i] if i < min(g, w) else 0
        ti = t[i] if i < w else 0
        if d == 0:
            if ti != 0:
                return None
            z.append(0)
        else:
            if ti % d != 0:
                return None
            z.append(ti // d)
    for i in range(g, w):
        if t[i] != 0:
            return None
    y = mat_vec(transpose(r.U), tuple(z))  # y = z . U
    return y


def _norm_sq(v: Vec) -> int:
    return sum(a * a for a in v)


def _min_norm_rep(x0: Vec, tau_basis) -> Vec:
    """Representative of x0 + span_Z(tau_basis) of minimal Euclidean norm,
    ties broken by lexicographic greatness."""
    r = len(tau_basis)
    if r == 0:
        return x0
    gram = [[Fraction(dot(a, b)) for b in tau_basis] for a in tau_basis]
    ginv = invert_rational(gram)
    target = _norm_sq(x0)
    bounds = []
    for i in range(r):
        bexpr = 4 * target * ginv[i][i]
        bounds.append(isqrt(bexpr.numerator // bexpr.denominator) + 1)
    best = x0
    best_n = _norm_sq(x0)
    for combo in itertools.product(*[range(-b, b + 1) for b in bounds]):
        cand = x0
        for c, b in zip(combo, tau_basis):
            cand = vec_add(cand, vec_scale(c, b))
        nn = _norm_sq(cand)
        if nn < best_n or (nn == best_n and cand > best):
            best, best_n = cand, nn
    return best


@lru_cache(maxsize=None)
def normal_generator(tau: Sublattice, sigma: Sublattice, witness: Vec) -> Vec:
    """A lattice point of sigma generating the rank-one quotient sigma/tau.

    The sign is fixed so that the image pairs positively with the image of
    `witness` (a point of the relevant cone); the representative modulo tau
    is the minimal-norm one, ties broken lexicographically.
    """
    if tau.ambient_rank != sigma.ambient_rank:
        raise ValueError("ambient rank mismatch")
    if sigma.rank != tau.rank + 1:
        raise NotCodimOne("rank(sigma) must equal rank(tau) + 1")
    if not is_saturated(tau) or not is_saturated(sigma):
        raise NotSaturated("normal_generator requires saturated sublattices")
    q = quotient_map(tau)
    images = tuple(q.project(v) for v in sigma.basis)
    r = snf(images)
    if r.rank != 1:
        raise NotCodimOne("quotient sigma/tau is not of rank one")
    d = r.S[0][0]
    gen_image = vec_scale(d, tuple(r.Vinv[0]))
    w_img = q.project(witness)
    lam = None
    for a, b in zip(w_img, gen_image):
        if b != 0:
            lam = Fraction(a, b)
            break
    if lam is None or lam == 0 or not is_zero(vec_sub(w_img, tuple(int(lam * b) for b in gen_image))):
        raise ValueError("witness does not lie on the sigma side")
    target = gen_image if lam > 0 else vec_neg(gen_image)
    y = _solve_integer(images, target)
    assert y is not None
    x0 = (0,) * sigma.ambient_rank
    for c, b in zip(y, sigma.basis):
        x0 = vec_add(x0, vec_scale(c, b))
    return _min_norm_rep(x0, tau.basis)
