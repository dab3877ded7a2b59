"""Exact arithmetic over small finite fields F_q, q a prime power up to 16.

Elements are plain integer indices in [0, q).  For prime q the index is the
residue itself.  For q = p^d the base-p digits of the index are the
coefficients (constant term first) of a polynomial reduced modulo a fixed
irreducible polynomial: the monic irreducible of degree d with the smallest
integer encoding, so that tables are reproducible bit for bit.  All
arithmetic goes through precomputed q x q lookup tables; a FiniteField is
immutable after construction and safe to share.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NotAPrimePower, Singular, ZeroVector

# Largest supported field; exhaustive axiom checks and q x q tables stay cheap.
FIELD_SIZE_CAP = 16

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


def _factor_prime_power(q: int):
    """Return (p, d) with q = p^d and p prime, or None."""
    if q < 2:
        return None
    p = None
    for cand in range(2, q + 1):
        if q % cand == 0:
            p = cand
            break
    d = 0
    m = q
    while m % p == 0:
        m //= p
        d += 1
    if m != 1:
        return None
    return p, d


def _digits(x: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(x % p)
        x //= p
    return out


def _poly_rem(num: Sequence[int], den: Sequence[int], p: int) -> list[int]:
    """Remainder of num modulo monic den, coefficients constant-term first."""
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    return num[:dd] + [0] * max(0, dd - len(num))


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..d//2."""
    d = len(coeffs) - 1
    for e in range(1, d // 2 + 1):
        for code in range(p**e):
            div = _digits(code, p, e) + [1]
            if not any(_poly_rem(coeffs, div, p)):
                return False
    return True


def _smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    for code in range(p**d):
        coeffs = _digits(code, p, d) + [1]
        if _is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FiniteField:
    """Arithmetic context for F_q with full add/mul lookup tables.

    Attributes:
        q: field cardinality.
        p: characteristic.
        degree: extension degree (q = p^degree).
        add_table, mul_table: q x q nested tuples.
        primitive_element: smallest-index generator of the multiplicative group.
        modulus: irreducible polynomial coefficients (constant first), or None
            for prime fields.
    """

    __slots__ = (
        "q", "p", "degree", "add_table", "mul_table",
        "primitive_element", "modulus", "_neg", "_inv",
    )

    def __init__(self, q: int):
        factored = _factor_prime_power(q)
        if factored is None:
            raise NotAPrimePower(f"{q} is not a prime power")
        p, d = factored
        self.q = q
        self.p = p
        self.degree = d

        if d == 1:
            self.modulus = None
            add = [[(a + b) % q for b in range(q)] for a in range(q)]
            mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        else:
            self.modulus = _smallest_irreducible(p, d)
            polys = [_digits(x, p, d) for x in range(q)]

            def encode(cs):
                return sum(c * p**i for i, c in enumerate(cs))

            add = [
                [encode([(x + y) % p for x, y in zip(polys[a], polys[b])])
                 for b in range(q)]
                for a in range(q)
            ]
            mul = [
                [encode(_poly_rem(_poly_mul(polys[a], polys[b], p),
                                  self.modulus, p))
                 for b in range(q)]
                for a in range(q)
            ]

        self.add_table = tuple(tuple(row) for row in add)
        self.mul_table = tuple(tuple(row) for row in mul)

        neg = [0] * q
        for a in range(q):
            for b in range(q):
                if self.add_table[a][b] == 0:
                    neg[a] = b
                    break
        self._neg = tuple(neg)

        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = tuple(inv)

        self.primitive_element = self._find_primitive()

    def _find_primitive(self) -> int:
        target = self.q - 1
        for g in range(1, self.q):
            x = g
            order = 1
            while x != 1:
                x = self.mul_table[x][g]
                order += 1
            if order == target:
                return g
        raise AssertionError("multiplicative group has no generator")

    # -- element arithmetic ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self._neg[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        return self._inv[a]

    def div(self, a: int, b: int) -> int:
        return self.mul_table[a][self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        for _ in range(e):
            out = self.mul_table[out][a]
        return out

    def elements(self) -> range:
        return range(self.q)

    def nonzero_elements(self) -> range:
        return range(1, self.q)

    def __repr__(self) -> str:
        return f"FiniteField(q={self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("FiniteField", self.q))


@lru_cache(maxsize=None)
def make_field(q: int) -> FiniteField:
    """Construct (and cache) the field with q elements.

    Raises NotAPrimePower for non-prime-powers and for q outside
    [2, FIELD_SIZE_CAP].
    """
    if q < 2 or q > FIELD_SIZE_CAP:
        raise NotAPrimePower(f"q={q} outside supported range [2, {FIELD_SIZE_CAP}]")
    return FiniteField(q)


# -- vectors ---------------------------------------------------------------


class FVector:
    """Immutable length-k vector of field element indices."""

    __slots__ = ("field", "coords")

    def __init__(self, field: FiniteField, coords: Iterable[int]):
        coords = tuple(coords)
        if not coords:
            raise DimensionMismatch("vector must have length >= 1")
        for c in coords:
            if not 0 <= c < field.q:
                raise DimensionMismatch(f"coordinate {c} outside field of size {field.q}")
        self.field = field
        self.coords = coords

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FVector)
            and other.field.q == self.field.q
            and other.coords == self.coords
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.coords))

    def __repr__(self) -> str:
        return f"FVector(q={self.field.q}, {self.coords})"


def vector(field: FiniteField, coords: Iterable[int]) -> FVector:
    return FVector(field, coords)


def unit_vector(field: FiniteField, k: int, position: int) -> FVector:
    """Standard basis vector with a one at the given 0-based position."""
    if not 0 <= position < k:
        raise DimensionMismatch(f"position {position} outside length {k}")
    return FVector(field, tuple(1 if i == position else 0 for i in range(k)))


def inner(v: FVector, w: FVector) -> int:
    """Symmetric bilinear inner product sum_i v_i * w_i."""
    if len(v) != len(w) or v.field.q != w.field.q:
        raise DimensionMismatch("inner product needs equal lengths over one field")
    f = v.field
    acc = 0
    for a, b in zip(v.coords, w.coords):
        acc = f.add_table[acc][f.mul_table[a][b]]
    return acc


def scale(v: FVector, lam: int) -> FVector:
    f = v.field
    return FVector(f, tuple(f.mul_table[lam][c] for c in v.coords))


def is_normal(v: FVector) -> bool:
    """True when the first nonzero coordinate equals one."""
    for c in v.coords:
        if c:
            return c == 1
    return False


def normalize(a: FVector) -> FVector:
    """Scale a nonzero vector so its first nonzero coordinate becomes one."""
    for c in a.coords:
        if c:
            return scale(a, a.field.inv(c))
    raise ZeroVector("cannot normalize the zero vector")


def enumerate_normal_vectors(field: FiniteField, k: int) -> tuple[FVector, ...]:
    """All (q^k - 1)/(q - 1) normal vectors, in lexicographic coordinate order."""
    if k < 1:
        raise DimensionMismatch("k must be >= 1")
    out = []
    for coords in itertools.product(field.elements(), repeat=k):
        for c in coords:
            if c:
                if c == 1:
                    out.append(FVector(field, coords))
                break
    return tuple(out)


# -- linear algebra over F_q ------------------------------------------------
#
# Matrices are sequences of equal-length rows of element indices; functions
# return tuples of tuples.  All work is plain Gaussian elimination through
# the field tables.


def _as_rows(rows) -> list[list[int]]:
    rows = [list(r) for r in rows]
    if rows:
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise DimensionMismatch("ragged matrix")
    return rows


def rref(field: FiniteField, rows) -> tuple[tuple[tuple[int, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = _as_rows(rows)
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        lam = field.inv(m[r][c])
        m[r] = [field.mul(lam, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(field: FiniteField, rows) -> int:
    return len(rref(field, rows)[1])


def invert(field: FiniteField, rows) -> tuple[tuple[int, ...], ...]:
    """Inverse of a square matrix; raises Singular when rank < dimension."""
    m = _as_rows(rows)
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatch("inversion needs a square matrix")
    aug = [r + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m)]
    reduced, pivots = rref(field, aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) != n:
        raise Singular("matrix is not invertible")
    return tuple(tuple(row[n:]) for row in reduced)


def solve_linear(field: FiniteField, a_rows, b: Sequence[int]):
    """One solution x of A x = b (free variables set to 0), or None."""
    m = _as_rows(a_rows)
    if len(m) != len(b):
        raise DimensionMismatch("right-hand side length mismatch")
    if not m:
        return ()
    ncols = len(m[0])
    aug = [row + [bv] for row, bv in zip(m, b)]
    reduced, pivots = rref(field, aug)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for i, c in enumerate(pivots):
        x[c] = reduced[i][ncols]
    return tuple(x)


def nullspace(field: FiniteField, rows, ncols: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Deterministic kernel basis from the echelon form, free columns ascending."""
    m = _as_rows(rows)
    if ncols is None:
        if not m:
            raise DimensionMismatch("ncols required for an empty matrix")
        ncols = len(m[0])
    reduced, pivots = rref(field, m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = field.neg(reduced[i][f])
        basis.append(tuple(v))
    return tuple(basis)


def mat_vec(field: FiniteField, rows, v: Sequence[int]) -> tuple[int, ...]:
    out = []
    for row in rows:
        if len(row) != len(v):
            raise DimensionMismatch("matrix-vector size mismatch")
        acc = 0
        for a, b in zip(row, v):
            acc = field.add_table[acc][field.mul_table[a][b]]
        out.append(acc)
    return tuple(out)


def mat_mul(field: FiniteField, a_rows, b_rows) -> tuple[tuple[int, ...], ...]:
    b = _as_rows(b_rows)
    if not b:
        return tuple(() for _ in a_rows)
    cols = list(zip(*b))
    out = []
    for row in a_rows:
        if len(row) != len(b):
            raise DimensionMismatch("matrix product size mismatch")
        out.append(tuple(
            _dot(field, row, col) for col in cols
        ))
    return tuple(out)


def _dot(field: FiniteField, xs, ys) -> int:
    acc = 0
    for a, b in zip(xs, ys):
        acc = field.add_table[acc][field.mul_table[a][b]]
    return acc


def identity_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
