"""Projective geometry over GF(q): points, subspaces, and fast point sets.

A projective point of PG(n-1, q) is the canonical representative of a line
through the origin of GF(q)^n: the unique scaling whose first nonzero
coordinate is 1.  A k-dimensional linear subspace is stored as the tuple of
rows of its reduced row echelon basis, which makes equal subspaces compare
equal as values.

`Geometry` indexes all points of a fixed (n, q) and represents point sets
as int bitmasks, bit i standing for the i-th point in global lexicographic
order.  Everything downstream that filters candidate lines works on these
masks.
"""

from __future__ import annotations

import itertools
import json
import re
import warnings
from dataclasses import dataclass
from functools import lru_cache

from .gf import GF, field


class ZeroVector(ValueError):
    """The zero vector spans nothing and has no projective representative."""


class DimensionMismatch(ValueError):
    """Operands live in different ambient spaces or fields."""


class WrongDimension(ValueError):
    """Subspace has the wrong dimension for the requested operation."""


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q).

    Exact integer; 0 when k is outside [0, n], matching the convention for
    binomial coefficients.
    """
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------


def normalize(q: int, vec) -> tuple[int, ...]:
    """Canonical projective representative: scale so the first nonzero
    coordinate becomes 1."""
    F = field(q)
    v = tuple(vec)
    for c in v:
        if c:
            if c == 1:
                return v
            s = F.inv(c)
            return tuple(F.mul(s, x) for x in v)
    raise ZeroVector(f"cannot normalize the zero vector in GF({q})^{len(v)}")


def enumerate_points(n: int, q: int):
    """All points of PG(n-1, q), streamed in lexicographic order of their
    canonical coordinate vectors (more leading zeros come first)."""
    for lead in range(n - 1, -1, -1):
        prefix = (0,) * lead + (1,)
        for suffix in itertools.product(range(q), repeat=n - 1 - lead):
            yield prefix + suffix


Point = tuple  # alias for readability in signatures


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


def rref(q: int, rows) -> tuple[tuple[int, ...], ...]:
    """Reduced row echelon form over GF(q); zero rows are dropped."""
    F = field(q)
    mat = [list(r) for r in rows]
    if mat and any(len(r) != len(mat[0]) for r in mat):
        raise DimensionMismatch("ragged matrix")
    nrows = len(mat)
    ncols = len(mat[0]) if mat else 0
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        s = F.inv(mat[rank][col])
        mat[rank] = [F.mul(s, x) for x in mat[rank]]
        for r in range(nrows):
            if r != rank and mat[r][col]:
                c = mat[r][col]
                mat[r] = [F.sub(x, F.mul(c, y)) for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == nrows:
            break
    return tuple(tuple(r) for r in mat[:rank])


@dataclass(frozen=True)
class Subspace:
    """Linear subspace of GF(q)^n in reduced row echelon basis form."""

    q: int
    n: int
    basis: tuple[tuple[int, ...], ...]

    @staticmethod
    def span(q: int, n: int, vectors) -> "Subspace":
        rows = [tuple(v) for v in vectors]
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch(f"vector {r} not of length {n}")
        return Subspace(q, n, rref(q, rows))

    @staticmethod
    def zero(q: int, n: int) -> "Subspace":
        return Subspace(q, n, ())

    @property
    def k(self) -> int:
        return len(self.basis)

    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.basis)

    def contains(self, vec) -> bool:
        """Membership test by reducing vec against the echelon basis."""
        F = field(self.q)
        v = list(vec)
        if len(v) != self.n:
            raise DimensionMismatch(f"vector {vec!r} not of length {self.n}")
        for row, pc in zip(self.basis, self.pivots()):
            c = v[pc]
            if c:
                v = [F.sub(x, F.mul(c, y)) for x, y in zip(v, row)]
        return not any(v)

    def __le__(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(other.contains(row) for row in self.basis)

    def _check_compatible(self, other: "Subspace") -> None:
        if (self.q, self.n) != (other.q, other.n):
            raise DimensionMismatch(
                f"mixing GF({self.q})^{self.n} with GF({other.q})^{other.n}"
            )

    def literal(self) -> str:
        """One-line text form, parseable by Subspace.parse."""
        basis = json.dumps([list(r) for r in self.basis], separators=(",", ","))
        return f"q={self.q} n={self.n} k={self.k} basis={basis}"

    _LITERAL = re.compile(r"^q=(\d+) n=(\d+) k=(\d+) basis=(\[.*\])$")

    @staticmethod
    def parse(line: str) -> "Subspace":
        m = Subspace._LITERAL.match(line.strip())
        if not m:
            raise ValueError(f"malformed subspace literal: {line!r}")
        q, n, k = int(m.group(1)), int(m.group(2)), int(m.group(3))
        rows = json.loads(m.group(4))
        for r in rows:
            if len(r) != n:
                raise DimensionMismatch(f"basis row {r} not of length {n}")
            if any(not 0 <= x < q for x in r):
                raise ValueError(f"entry out of range for GF({q}) in {r}")
        sub = Subspace.span(q, n, rows)
        if sub.k != k:
            raise ValueError(
                f"declared k={k} but basis spans a {sub.k}-dimensional space"
            )
        if sub.basis != tuple(tuple(r) for r in rows):
            warnings.warn(f"basis not in reduced echelon form, canonicalized: {line!r}")
        return sub


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._check_compatible(b)
    return Subspace.span(a.q, a.n, a.basis + b.basis)


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: row reduce [A|A; B|0]; rows with zero left block carry the
    intersection in their right block."""
    a._check_compatible(b)
    n = a.n
    block = [row + row for row in a.basis] + [row + (0,) * n for row in b.basis]
    out = []
    for row in rref(a.q, block):
        if not any(row[:n]):
            out.append(row[n:])
    return Subspace.span(a.q, n, out)


def nullspace_basis(q: int, rows) -> tuple[tuple[int, ...], ...]:
    """Basis of the right nullspace {v : M v = 0} of the matrix with the
    given rows."""
    F = field(q)
    red = rref(q, rows)
    if not red:
        n = len(next(iter(rows)))
        return tuple(tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    n = len(red[0])
    pivots = [next(j for j, x in enumerate(row) if x) for row in red]
    free = [j for j in range(n) if j not in pivots]
    out = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for row, pc in zip(red, pivots):
            v[pc] = F.neg(row[fc])
        out.append(tuple(v))
    return tuple(out)


def orthogonal_complement(s: Subspace) -> Subspace:
    if s.k == 0:
        return Subspace.span(
            s.q, s.n, [tuple(1 if j == i else 0 for j in range(s.n)) for i in range(s.n)]
        )
    return Subspace.span(s.q, s.n, nullspace_basis(s.q, s.basis))


def hyperplanes_through(u: Subspace) -> list[Subspace]:
    """The q+1 hyperplanes containing a subspace of dimension n-2, sorted by
    basis tuple."""
    if u.k != u.n - 2:
        raise WrongDimension(f"need dimension {u.n - 2}, got {u.k}")
    F = field(u.q)
    if u.k == 0:
        normals = tuple(
            tuple(1 if j == i else 0 for j in range(u.n)) for i in range(u.n)
        )
    else:
        normals = nullspace_basis(u.q, u.basis)
    a, b = normals[0], normals[1]
    combos = [a] + [
        tuple(F.add(F.mul(t, x), y) for x, y in zip(a, b)) for t in range(u.q)
    ]
    out = [Subspace.span(u.q, u.n, nullspace_basis(u.q, [c])) for c in combos]
    out.sort(key=lambda s: s.basis)
    return out


def enumerate_subspaces(n: int, q: int, k: int):
    """All k-dimensional subspaces of GF(q)^n, streamed in a deterministic
    order, built directly in echelon form: choose pivot columns, then fill
    the free slots."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield Subspace.zero(q, n)
        return
    for pivots in itertools.combinations(range(n), k):
        slots = [
            (i, j)
            for i in range(k)
            for j in range(n)
            if j not in pivots and j > pivots[i]
        ]
        for fill in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), v in zip(slots, fill):
                rows[i][j] = v
            yield Subspace(q, n, tuple(tuple(r) for r in rows))


# ---------------------------------------------------------------------------
# bitmask geometry
# ---------------------------------------------------------------------------


class Geometry:
    """Point index for one (n, q); subsets of PG(n-1, q) as int bitmasks."""

    def __init__(self, n: int, q: int):
        self.n = n
        self.q = q
        self.F: GF = field(q)
        self.points: list[tuple[int, ...]] = list(enumerate_points(n, q))
        self.index: dict[tuple[int, ...], int] = {
            p: i for i, p in enumerate(self.points)
        }
        self.full_mask: int = (1 << len(self.points)) - 1
        self._mask_cache: dict[Subspace, int] = {}
        self._pencil_cache: dict[Subspace, list[Subspace]] = {}
        self._subspace_cache: dict[int, list[Subspace]] = {}

    def mask(self, s: Subspace) -> int:
        """Bitmask of the projective points inside a subspace.

        The canonical local coordinate tuples of PG(k-1, q), pushed through
        an echelon basis, land directly on canonical ambient points, so no
        renormalization is needed.
        """
        got = self._mask_cache.get(s)
        if got is not None:
            return got
        F = self.F
        m = 0
        for combo in enumerate_points(s.k, self.q) if s.k else []:
            vec = [0] * self.n
            for c, row in zip(combo, s.basis):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            vec[j] = F.add(vec[j], F.mul(c, x))
            m |= 1 << self.index[tuple(vec)]
        self._mask_cache[s] = m
        return m

    def point_mask(self, p: tuple[int, ...]) -> int:
        return 1 << self.index[normalize(self.q, p)]

    def pencil(self, u: Subspace) -> list[Subspace]:
        got = self._pencil_cache.get(u)
        if got is None:
            got = hyperplanes_through(u)
            self._pencil_cache[u] = got
        return got

    def subspaces(self, k: int) -> list[Subspace]:
        got = self._subspace_cache.get(k)
        if got is None:
            got = list(enumerate_subspaces(self.n, self.q, k))
            self._subspace_cache[k] = got
        return got

    def iter_mask(self, m: int):
        """Points selected by a mask, in index order."""
        while m:
            low = m & -m
            yield self.points[low.bit_length() - 1]
            m ^= low


@lru_cache(maxsize=None)
def geometry(n: int, q: int) -> Geometry:
    return Geometry(n, q)
