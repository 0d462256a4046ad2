"""Finite-field subspace machinery.

Supports F_q for prime q plus q in {4, 8, 9} with fixed irreducible
polynomials (x^2+x+1, x^3+x+1 over F_2; x^2+2x+2 over F_3).  Field elements
are encoded as integers 0..q-1 read as base-p coefficient vectors, so any
k x n basis matrix is a plain nested list of small ints.

Subspaces are kept in reduced row echelon form, which makes equality a tuple
comparison and gives a total canonical order on each Grassmannian: pivot
column sets in colexicographic order, then the free entries read row-major
as base-q digits.  ``enumerate_subspaces`` produces exactly that order and
``canonical_index`` inverts it without materializing the enumeration.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cache
from math import comb

from .exactq import choose2, gauss_binom, prime_power_parts, q_int

# const-first coefficient tuples of the fixed irreducible polynomials
_IRREDUCIBLE = {
    4: (1, 1, 1),  # x^2 + x + 1 over F_2
    8: (1, 1, 0, 1),  # x^3 + x + 1 over F_2
    9: (2, 2, 1),  # x^2 + 2x + 2 over F_3
}

_ENUMERABLE_LIMIT = 1 << 16


class FieldSpec:
    """Arithmetic for F_q with the fixed element encoding.

    Prime fields use modular arithmetic directly; the supported extension
    fields use multiplication tables built from the fixed polynomial.
    """

    def __init__(self, q: int):
        p, e = prime_power_parts(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self._mul_table = None
            self._inv_table = None
        else:
            if q not in _IRREDUCIBLE:
                raise ValueError(f"unsupported extension field order {q}")
            self.modulus = _IRREDUCIBLE[q]
            self._mul_table = self._build_mul_table()
            self._inv_table = self._build_inv_table()
        if q <= 9:
            self._check_axioms()

    def _coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, coeffs: list[int]) -> int:
        val = 0
        for c in reversed(coeffs):
            val = val * self.p + c
        return val

    def _build_mul_table(self) -> list[list[int]]:
        q, p, e = self.q, self.p, self.e
        table = [[0] * q for _ in range(q)]
        for a in range(q):
            ca = self._coeffs(a)
            for b in range(q):
                cb = self._coeffs(b)
                prod = [0] * (2 * e - 1)
                for i, x in enumerate(ca):
                    if x:
                        for j, y in enumerate(cb):
                            prod[i + j] = (prod[i + j] + x * y) % p
                # reduce by the monic modulus: x^e = -(lower coefficients)
                for d in range(2 * e - 2, e - 1, -1):
                    c = prod[d]
                    if c:
                        prod[d] = 0
                        for i in range(e):
                            prod[d - e + i] = (prod[d - e + i] - c * self.modulus[i]) % p
                table[a][b] = self._encode(prod[:e])
        return table

    def _build_inv_table(self) -> list[int]:
        inv = [0] * self.q
        for a in range(1, self.q):
            inv[a] = next(b for b in range(1, self.q) if self._mul_table[a][b] == 1)
        return inv

    def _check_axioms(self) -> None:
        q = self.q
        for a in range(q):
            for b in range(q):
                ab = self.mul(a, b)
                if ab != self.mul(b, a):
                    raise AssertionError("multiplication not commutative")
                for c in range(q):
                    if self.mul(a, self.add(b, c)) != self.add(ab, self.mul(a, c)):
                        raise AssertionError("distributivity fails")
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                        raise AssertionError("associativity fails")
        for a in range(1, q):
            if self.mul(a, self.inv(a)) != 1:
                raise AssertionError("inverse fails")

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        ca, cb = self._coeffs(a), self._coeffs(b)
        return self._encode([(x + y) % self.p for x, y in zip(ca, cb)])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return self._encode([(-x) % self.p for x in self._coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self._inv_table is not None:
            return self._inv_table[a]
        return pow(a, self.p - 2, self.p)


@cache
def field(q: int) -> FieldSpec:
    return FieldSpec(q)


def rref(rows, fld: FieldSpec) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form over F_q.

    Returns (nonzero rows as tuples, pivot columns).  Idempotent on its own
    output; the zero space comes back as an empty row tuple.
    """
    m = [list(r) for r in rows]
    if not m:
        return (), ()
    n = len(m[0])
    piv_r = 0
    pivots = []
    for c in range(n):
        hit = next((i for i in range(piv_r, len(m)) if m[i][c] != 0), None)
        if hit is None:
            continue
        m[piv_r], m[hit] = m[hit], m[piv_r]
        inv = fld.inv(m[piv_r][c])
        if inv != 1:
            m[piv_r] = [fld.mul(inv, x) for x in m[piv_r]]
        prow = m[piv_r]
        for i in range(len(m)):
            if i != piv_r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [fld.sub(x, fld.mul(f, y)) for x, y in zip(m[i], prow)]
        pivots.append(c)
        piv_r += 1
        if piv_r == len(m):
            break
    return tuple(tuple(r) for r in m[:piv_r]), tuple(pivots)


def rows_rank(rows, fld: FieldSpec) -> int:
    """Rank of a coefficient matrix over F_q (forward elimination only).

    F_2 rows are packed into ints and eliminated by xor; prime fields use
    modular arithmetic; extension fields go through the tables.
    """
    m = [list(r) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    rank = 0
    if fld.q == 2:
        basis: dict[int, int] = {}  # lowest set bit -> reduced row
        for row in m:
            word = sum(bit << j for j, bit in enumerate(row))
            while word:
                low = word & -word
                other = basis.get(low)
                if other is None:
                    basis[low] = word
                    break
                word ^= other
        return len(basis)
    if fld.e == 1:
        p = fld.p
        for c in range(ncols):
            piv = next((i for i in range(rank, nrows) if m[i][c]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            prow = m[rank]
            inv = pow(prow[c], -1, p)
            for i in range(rank + 1, nrows):
                f = m[i][c]
                if f:
                    mult = f * inv % p
                    ri = m[i]
                    for j in range(c, ncols):
                        ri[j] = (ri[j] - mult * prow[j]) % p
            rank += 1
            if rank == nrows:
                break
        return rank
    for c in range(ncols):
        piv = next((i for i in range(rank, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        prow = m[rank]
        for i in range(rank + 1, nrows):
            f = m[i][c]
            if f:
                mult = fld.mul(f, fld.inv(prow[c]))
                ri = m[i]
                for j in range(c, ncols):
                    ri[j] = fld.sub(ri[j], fld.mul(mult, prow[j]))
        rank += 1
        if rank == nrows:
            break
    return rank


class Subspace:
    """A subspace of F_q^n held as its canonical RREF basis.

    Equality and hashing go through (ambient, q, basis), so two subspaces
    are equal exactly when their RREF matrices coincide.
    """

    __slots__ = ("ambient", "q", "basis", "pivots", "_hash")

    def __init__(self, ambient: int, q: int, basis: tuple[tuple[int, ...], ...],
                 pivots: tuple[int, ...]):
        self.ambient = ambient
        self.q = q
        self.basis = basis
        self.pivots = pivots
        self._hash = hash((ambient, q, basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.q == other.q
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(n={self.ambient}, q={self.q}, basis={self.basis})"

    def contains(self, other: "Subspace") -> bool:
        """True iff other is a subspace of self."""
        if other.ambient != self.ambient or other.q != self.q:
            raise ValueError("ambient mismatch")
        fld = field(self.q)
        for row in other.basis:
            if not _reduces_to_zero(row, self.basis, self.pivots, fld):
                return False
        return True

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def _reduces_to_zero(vec, basis, pivots, fld: FieldSpec) -> bool:
    v = list(vec)
    for row, p in zip(basis, pivots):
        c = v[p]
        if c:
            for j in range(p, len(v)):
                if row[j]:
                    v[j] = fld.sub(v[j], fld.mul(c, row[j]))
    return not any(v)


def subspace_from_rows(rows, n: int, q: int, expect_dim: int | None = None) -> Subspace:
    """Canonicalize a spanning set into a Subspace of F_q^n."""
    fld = field(q)
    for r in rows:
        if len(r) != n:
            raise ValueError(f"row length {len(r)} != ambient {n}")
        if any(not (0 <= x < q) for x in r):
            raise ValueError("entry outside 0..q-1")
    basis, pivots = rref(rows, fld)
    if expect_dim is not None and len(basis) != expect_dim:
        raise ValueError(f"expected dimension {expect_dim}, got {len(basis)}")
    return Subspace(n, q, basis, pivots)


def zero_subspace(n: int, q: int) -> Subspace:
    return Subspace(n, q, (), ())


def _pivot_sets_colex(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])


def _free_positions(pivots: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    """Row-major list of the unconstrained (row, col) slots of an RREF shape."""
    pivot_set = set(pivots)
    out = []
    for i, p in enumerate(pivots):
        for j in range(p + 1, n):
            if j not in pivot_set:
                out.append((i, j))
    return out


def _subspace_for(pivots: tuple[int, ...], digits, n: int, q: int,
                  free: list[tuple[int, int]]) -> Subspace:
    rows = [[0] * n for _ in pivots]
    for i, p in enumerate(pivots):
        rows[i][p] = 1
    for (i, j), d in zip(free, digits):
        rows[i][j] = d
    return Subspace(n, q, tuple(tuple(r) for r in rows), pivots)


def iter_subspaces(n: int, k: int, q: int):
    """Lazily yield the k-dim subspaces of F_q^n in canonical order."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    field(q)  # validates q
    for pivots in _pivot_sets_colex(n, k):
        free = _free_positions(pivots, n)
        for digits in itertools.product(range(q), repeat=len(free)):
            yield _subspace_for(pivots, digits, n, q, free)


def enumerate_subspaces(n: int, k: int, q: int) -> list[Subspace]:
    """All k-dim subspaces of F_q^n in canonical order.

    Order: pivot sets colexicographically, then free entries read row-major
    as base-q digits (first slot most significant).  Length is [n k]_q.
    """
    return list(iter_subspaces(n, k, q))


def gf_matmul(a, b, fld: FieldSpec) -> list[list[int]]:
    """Product of two coefficient matrices over F_q (nested int lists)."""
    cols_b = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols_b
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] = fld.add(acc[j], fld.mul(x, y))
        out.append(acc)
    return out


def canonical_index(s: Subspace) -> int:
    """Position of s in enumerate_subspaces(s.ambient, s.dim, s.q)."""
    n, q, k = s.ambient, s.q, s.dim
    idx = 0
    for pivots in _pivot_sets_colex(n, k):
        free = _free_positions(pivots, n)
        if pivots == s.pivots:
            val = 0
            for (i, j) in free:
                val = val * q + s.basis[i][j]
            return idx + val
        idx += q ** len(free)
    raise ValueError("subspace not in canonical form")


def intersection_dim(a: Subspace, b: Subspace) -> int:
    """dim(a ^ b) via dim a + dim b - rank of the stacked bases."""
    if a.ambient != b.ambient or a.q != b.q:
        raise ValueError("ambient mismatch")
    stacked = list(a.basis) + list(b.basis)
    return a.dim + b.dim - rows_rank(stacked, field(a.q))


def mobius_interval(d: int, q: int) -> int:
    """Value of the subspace-lattice Mobius function on an interval of height d."""
    if d < 0:
        raise ValueError("interval height must be nonnegative")
    return (-1) ** d * q ** choose2(d)


def mobius_delta_check(w: Subspace) -> bool:
    """Verify sum over U <= W of mu(dim W - dim U) collapses to the delta.

    Concretely sum_j (#j-dim subspaces of W) * mu(d-j) must be 1 for d == 0
    and 0 otherwise.  Subspace counts come from explicit enumeration, so the
    check does not lean on any closed form.  Guarded to dim <= 4, q <= 3.
    """
    d, q = w.dim, w.q
    if d > 4 or q > 3:
        raise ValueError("mobius_delta_check guard exceeded (dim <= 4, q <= 3)")
    total = 0
    for j in range(d + 1):
        count = len(enumerate_subspaces(d, j, q))
        total += count * mobius_interval(d - j, q)
    return total == (1 if d == 0 else 0)


def spanning_count_formula(m: int, d: int, q: int) -> int:
    """Number of m-sets of pairwise non-collinear nonzero vectors spanning F_q^d.

    Closed form: sum_j [d j] (-1)^(d-j) q^C(d-j,2) C([j]_q, m).
    """
    if m < 1:
        raise ValueError("m must be positive")
    total = Fraction(0)
    for j in range(d + 1):
        pts = q_int(j, q)
        assert pts.denominator == 1
        total += (
            gauss_binom(d, j, q)
            * (-1) ** (d - j)
            * q ** choose2(d - j)
            * comb(int(pts), m)
        )
    assert total.denominator == 1
    return int(total)


_DIRECT_ENUM_LIMIT = 200_000


def _projective_points(d: int, q: int) -> list[tuple[int, ...]]:
    """One representative vector per 1-dim subspace of F_q^d."""
    return [s.basis[0] for s in enumerate_subspaces(d, 1, q)] if d else []


@cache
def _subspace_counts(d: int, q: int) -> tuple[int, ...]:
    """(#0-dim, ..., #d-dim) subspaces of F_q^d, counted by enumeration."""
    return tuple(len(enumerate_subspaces(d, j, q)) for j in range(d + 1))


@cache
def _spanning_count_sieve(m: int, d: int, q: int) -> int:
    """Defining sieve: subtract the spanning counts of all proper subspaces
    from the number of m-subsets of points.  Counts per dimension come from
    explicit enumeration."""
    if d == 0:
        return 0
    pts = len(_projective_points(d, q))
    total = comb(pts, m)
    counts = _subspace_counts(d, q)
    for j in range(d):
        total -= counts[j] * _spanning_count_sieve(m, j, q)
    return total


def spanning_count_bruteforce(m: int, d: int, q: int) -> int:
    """Independent oracle for spanning_count_formula.

    Enumerates m-subsets of projective points directly when that is feasible;
    otherwise falls back to the defining lattice sieve over concretely
    enumerated subspaces.  Guarded to q^d <= 2^16.
    """
    if m < 1:
        raise ValueError("m must be positive")
    if q**d > _ENUMERABLE_LIMIT:
        raise ValueError("spanning_count_bruteforce guard exceeded (q^d <= 2^16)")
    pts = _projective_points(d, q)
    if m > len(pts):
        return 0
    if m * comb(len(pts), m) <= _DIRECT_ENUM_LIMIT:
        fld = field(q)
        count = 0
        for combo in itertools.combinations(pts, m):
            if rows_rank(combo, fld) == d:
                count += 1
        return count
    return _spanning_count_sieve(m, d, q)


def count_fixed_intersection(a: int, b: int, u: int, n: int, q: int) -> tuple[int, int]:
    """Closed-form counts for intersections with a fixed b-dim space B.

    Returns (#{u-dim U with U ^ B = A} for a fixed a-dim A <= B,
             #{u-dim U with dim(U ^ B) = a}).
    """
    if not (0 <= a <= min(b, u) <= max(b, u) <= n):
        raise ValueError("need 0 <= a <= min(b,u) <= max(b,u) <= n")
    base = q ** ((b - a) * (u - a)) * gauss_binom(n - b, u - a, q)
    both = base * gauss_binom(b, a, q)
    assert base.denominator == 1 and both.denominator == 1
    return int(base), int(both)


_PROFILE_GUARD = 2000


@cache
def _fixed_intersection_profile(b: int, u: int, n: int, q: int) -> tuple[tuple[int, int], ...]:
    """One pass over Gr_{n,u} against B = span(e_1..e_b).

    Returns, indexed by a, the pair (#{U : U ^ B = span(e_1..e_a)},
    #{U : dim(U ^ B) = a}).  dim(U ^ B) is dim U minus the rank of the
    basis columns outside B, and U ^ B = A iff additionally A <= U.
    Refuses rather than truncates when Gr_{n,u} is too large to walk.
    """
    if gauss_binom(n, u, q) > _PROFILE_GUARD:
        raise ValueError(
            f"count_fixed_intersection_bruteforce guard exceeded: "
            f"[{n} {u}]_{q} > {_PROFILE_GUARD}"
        )
    fld = field(q)
    amax = min(b, u)
    exact = [0] * (amax + 1)
    dim_only = [0] * (amax + 1)
    for uspace in iter_subspaces(n, u, q):
        tails = [row[b:] for row in uspace.basis]
        d = uspace.dim - rows_rank(tails, fld)
        dim_only[d] += 1
        prefix = 0
        for i in range(min(d, b)):
            e_i = tuple(1 if j == i else 0 for j in range(n))
            if _reduces_to_zero(e_i, uspace.basis, uspace.pivots, fld):
                prefix += 1
            else:
                break
        if prefix >= d:
            exact[d] += 1
    return tuple(zip(exact, dim_only))


def count_fixed_intersection_bruteforce(
    a: int, b: int, u: int, n: int, q: int
) -> tuple[int, int]:
    """Exhaustive companion of count_fixed_intersection.

    Fixes B = span(e_1..e_b) and A = span(e_1..e_a), walks all u-dim
    subspaces and counts intersection dimensions directly.
    """
    if not (0 <= a <= min(b, u) <= max(b, u) <= n):
        raise ValueError("need 0 <= a <= min(b,u) <= max(b,u) <= n")
    return _fixed_intersection_profile(b, u, n, q)[a]
