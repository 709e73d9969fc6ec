"""Non-adaptive separating systems of subspace membership queries.

A query set over GF(q)^n is separating when every projective point gets a
distinct yes/no signature across the queries; asking them all in one batch
then identifies any unknown 1-dimensional subspace.  This module builds
such systems (deterministic and randomized), verifies and reduces them,
rewrites point queries into hyperplane queries in dimension 3, and finds
exact minima by exhaustive search on small instances.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from pathlib import Path

from .gf import field
from .projspace import (
    DimensionMismatch,
    Subspace,
    WrongDimension,
    gaussian_binomial,
    geometry,
    nullspace_basis,
)


class NotSeparating(ValueError):
    """Operation requires a separating query set."""


class RetriesExhausted(RuntimeError):
    """Randomized construction failed every allowed attempt."""


class UniquenessViolation(RuntimeError):
    """More than one point shares a signature where at most one may."""


class TooLarge(ValueError):
    """Instance exceeds the configured exhaustive-search caps."""


class Exhausted(RuntimeError):
    """Exhaustive search ran out of sizes without finding a system."""


DEFAULT_POINT_CAP = 10**6


def point_cap() -> int:
    """Enumeration cap on the number of projective points; the environment
    variable QSEARCH_POINT_CAP overrides the default."""
    raw = os.environ.get("QSEARCH_POINT_CAP")
    return int(raw) if raw else DEFAULT_POINT_CAP


def _check_cap(n: int, q: int) -> None:
    count = gaussian_binomial(n, 1, q)
    cap = point_cap()
    if count > cap:
        raise TooLarge(f"{count} points exceeds the cap of {cap}")


@dataclass(frozen=True)
class QuerySet:
    """An ordered batch of subspace membership queries over GF(q)^n."""

    q: int
    n: int
    queries: tuple[Subspace, ...]
    provenance: str = ""

    def __post_init__(self):
        for s in self.queries:
            if (s.q, s.n) != (self.q, self.n):
                raise DimensionMismatch(
                    f"query over GF({s.q})^{s.n} in a GF({self.q})^{self.n} set"
                )
            if not 1 <= s.k <= self.n - 1:
                raise WrongDimension(
                    f"query dimension {s.k} outside [1, {self.n - 1}]"
                )

    def __len__(self) -> int:
        return len(self.queries)

    def __iter__(self):
        return iter(self.queries)

    def save(self, path) -> None:
        lines = [f"{self.q} {self.n} {len(self.queries)}"]
        lines += [s.literal() for s in self.queries]
        Path(path).write_text("\n".join(lines) + "\n")

    @staticmethod
    def load(path) -> "QuerySet":
        text = Path(path).read_text().strip().splitlines()
        if not text:
            raise ValueError(f"empty query set file: {path}")
        head = text[0].split()
        if len(head) != 3:
            raise ValueError(f"bad header {text[0]!r}, expected 'q n count'")
        q, n, count = (int(x) for x in head)
        body = [ln for ln in text[1:] if ln.strip()]
        if len(body) != count:
            raise ValueError(f"header promises {count} queries, found {len(body)}")
        queries = tuple(Subspace.parse(ln) for ln in body)
        return QuerySet(q, n, queries, provenance="user")


def signatures(qs: QuerySet) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Map each projective point to its 0/1 answer vector."""
    _check_cap(qs.n, qs.q)
    geom = geometry(qs.n, qs.q)
    masks = [geom.mask(s) for s in qs.queries]
    out = {}
    for i, p in enumerate(geom.points):
        out[p] = tuple((m >> i) & 1 for m in masks)
    return out


def _refine(classes: list[int], m: int) -> list[int]:
    out = []
    for c in classes:
        a = c & m
        b = c & ~m
        if a:
            out.append(a)
        if b:
            out.append(b)
    return out


def separating_witness(qs: QuerySet) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """None when separating, else the lexicographically first colliding pair."""
    _check_cap(qs.n, qs.q)
    geom = geometry(qs.n, qs.q)
    classes = [geom.full_mask]
    for s in qs.queries:
        classes = _refine(classes, geom.mask(s))
    bad = [c for c in classes if c.bit_count() > 1]
    if not bad:
        return None
    c = min(bad, key=lambda x: x & -x)
    low = c & -c
    u = geom.points[low.bit_length() - 1]
    rest = c ^ low
    v = geom.points[(rest & -rest).bit_length() - 1]
    return (u, v)


def is_separating(qs: QuerySet) -> bool:
    return separating_witness(qs) is None


# ---------------------------------------------------------------------------
# deterministic constructions
# ---------------------------------------------------------------------------


def coordinate_hyperplane(q: int, n: int, i: int) -> Subspace:
    """The hyperplane v_i = 0, spanned by the other standard vectors."""
    rows = tuple(
        tuple(1 if c == j else 0 for c in range(n)) for j in range(n) if j != i
    )
    return Subspace(q, n, rows)


def ratio_hyperplane(q: int, n: int, i: int, j: int, lam: int) -> Subspace:
    """The hyperplane v_j = lam * v_i for coordinates i < j."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got i={i} j={j} n={n}")
    if not 1 <= lam < q:
        raise ValueError(f"ratio must be a nonzero field element, got {lam}")
    F = field(q)
    normal = [0] * n
    normal[i] = lam
    normal[j] = F.neg(1)
    return Subspace.span(q, n, nullspace_basis(q, [tuple(normal)]))


def explicit_construction(n: int, q: int) -> QuerySet:
    """Separating system of n + C(n,2)(q-2) hyperplanes.

    Coordinate hyperplanes fix the zero pattern of the hidden point; the
    ratio hyperplanes v_j = lam v_i, with lam running over all but one
    nonzero element, pin down each coordinate ratio.  One ratio value per
    pair can be dropped because only one of the q-1 possible values ever
    needs ruling out implicitly.
    """
    queries = [coordinate_hyperplane(q, n, i) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for lam in range(1, q - 1):
                queries.append(ratio_hyperplane(q, n, i, j, lam))
    return QuerySet(q, n, tuple(queries), provenance="explicit")


# ---------------------------------------------------------------------------
# randomized construction
# ---------------------------------------------------------------------------


def _random_subspace(rng: random.Random, n: int, q: int, k: int) -> Subspace:
    """Uniform k-dimensional subspace by rejection on full-rank matrices."""
    if k == 0:
        return Subspace.zero(q, n)
    while True:
        rows = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k)]
        s = Subspace.span(q, n, rows)
        if s.k == k:
            return s


def random_construction_trace(
    n: int, q: int, seed: int, max_retries: int = 64
) -> tuple[QuerySet, int]:
    """Random pencil construction; returns the system and the attempt count.

    Each attempt draws 2n independent uniform (n-2)-dimensional subspaces
    and takes, for each, all hyperplanes through it except the last in
    basis order: 2nq queries total.
    """
    if n < 3:
        raise WrongDimension(f"need n >= 3 for nonzero (n-2)-subspaces, got n={n}")
    geom = geometry(n, q)
    rng = random.Random(f"construct:{seed}")
    label = f"random:seed={seed},l={2 * n}"
    for attempt in range(1, max_retries + 1):
        queries = []
        for _ in range(2 * n):
            u = _random_subspace(rng, n, q, n - 2)
            queries.extend(geom.pencil(u)[:-1])
        qs = QuerySet(q, n, tuple(queries), provenance=label)
        if is_separating(qs):
            return qs, attempt
    raise RetriesExhausted(
        f"no separating system for n={n} q={q} seed={seed} in {max_retries} attempts"
    )


def random_construction(n: int, q: int, seed: int, max_retries: int = 64) -> QuerySet:
    return random_construction_trace(n, q, seed, max_retries)[0]


def unseparated_pencil_count(n: int, q: int) -> int:
    """For any fixed pair of distinct points, the number of (n-2)-dimensional
    subspaces whose full pencil of hyperplanes fails to tell them apart."""
    return (q - 1) * gaussian_binomial(n - 1, n - 3, q) - (q - 2) * gaussian_binomial(
        n - 2, n - 4, q
    )


def count_unseparated_bruteforce(
    n: int, q: int, u: tuple[int, ...], v: tuple[int, ...]
) -> int:
    """Direct count behind unseparated_pencil_count, one pair at a time."""
    _check_cap(n, q)
    geom = geometry(n, q)
    mu = geom.point_mask(u)
    mv = geom.point_mask(v)
    if mu == mv:
        raise ValueError("points must be distinct")
    count = 0
    for s in geom.subspaces(n - 2):
        if all(
            bool(geom.mask(h) & mu) == bool(geom.mask(h) & mv) for h in geom.pencil(s)
        ):
            count += 1
    return count


# ---------------------------------------------------------------------------
# reduction and rewriting
# ---------------------------------------------------------------------------


def minimal_subsystem(qs: QuerySet) -> QuerySet:
    """Greedy one-pass reduction to an irredundant separating subsystem.

    A query dropped here stays droppable after later removals shrink the
    set further, so a single reverse sweep reaches a minimal system.
    """
    if not is_separating(qs):
        raise NotSeparating("cannot reduce a non-separating system")
    kept = list(qs.queries)
    for i in range(len(kept) - 1, -1, -1):
        trial = kept[:i] + kept[i + 1 :]
        if is_separating(QuerySet(qs.q, qs.n, tuple(trial), qs.provenance)):
            kept = trial
    return QuerySet(qs.q, qs.n, tuple(kept), provenance=f"minimal:{qs.provenance}")


def points_to_lines(qs: QuerySet) -> QuerySet:
    """Rewrite a mixed point/line system over GF(q)^3 into an all-line
    separating system of the same (minimal) size.

    In a minimal system a point query P can collide with at most one other
    point Q once removed; a line through P avoiding Q restores separation.
    Such a line is never already present: any line of the system through P
    would give Q a matching yes.
    """
    if qs.n != 3:
        raise WrongDimension(f"point-to-line rewriting needs n=3, got n={qs.n}")
    qs = minimal_subsystem(qs)
    geom = geometry(3, qs.q)
    queries = list(qs.queries)
    while True:
        idx = next((i for i, s in enumerate(queries) if s.k == 1), None)
        if idx is None:
            break
        p = queries[idx].basis[0]
        rest = QuerySet(
            qs.q, 3, tuple(queries[:idx] + queries[idx + 1 :]), qs.provenance
        )
        sig = signatures(rest)
        partners = [x for x in geom.points if x != p and sig[x] == sig[p]]
        if len(partners) > 1:
            raise UniquenessViolation(
                f"point {p} collides with {len(partners)} points without its query"
            )
        pencil = geom.pencil(queries[idx])
        if partners:
            choice = next(ln for ln in pencil if not ln.contains(partners[0]))
        else:
            present = set(queries)
            choice = next((ln for ln in pencil if ln not in present), None)
            if choice is None:
                choice = next(ln for ln in geom.subspaces(2) if ln not in present)
        queries[idx] = choice
    out = QuerySet(qs.q, 3, tuple(queries), provenance="lines-from-mixed")
    if not is_separating(out):
        raise AssertionError("rewriting broke separation")  # unreachable
    return out


# ---------------------------------------------------------------------------
# exact minima
# ---------------------------------------------------------------------------

BRUTE_POINT_CAP = 48
BRUTE_SIZE_CAP = 8


def brute_force_minimum(
    n: int,
    q: int,
    max_size: int = BRUTE_SIZE_CAP,
    restrict_to_hyperplanes: bool = True,
) -> QuerySet:
    """Smallest separating system of hyperplane queries (or of arbitrary
    proper subspaces when the flag is off), by iterative deepening over the
    query count with partition-refinement pruning.  Deterministic: returns
    the first witness in enumeration order."""
    if max_size > BRUTE_SIZE_CAP:
        raise TooLarge(f"size cap is {BRUTE_SIZE_CAP}, asked for {max_size}")
    geom = geometry(n, q)
    npoints = len(geom.points)
    if npoints > BRUTE_POINT_CAP:
        raise TooLarge(f"{npoints} points exceeds the cap of {BRUTE_POINT_CAP}")
    if restrict_to_hyperplanes:
        universe = list(geom.subspaces(n - 1))
    else:
        universe = [s for k in range(1, n) for s in geom.subspaces(k)]
    masks = [geom.mask(s) for s in universe]

    def dfs(start: int, classes: list[int], chosen: list[int], budget: int):
        # classes holds only the unfinished (multi-point) cells
        if not classes:
            return list(chosen)
        if budget == 0:
            return None
        worst = max(c.bit_count() for c in classes)
        if (worst - 1).bit_length() > budget:
            return None
        for i in range(start, len(masks)):
            m = masks[i]
            if all(not (c & m) or (c & m) == c for c in classes):
                continue
            chosen.append(i)
            nxt = [c for c in _refine(classes, m) if c.bit_count() > 1]
            got = dfs(i + 1, nxt, chosen, budget - 1)
            if got is not None:
                return got
            chosen.pop()
        return None

    start_classes = [geom.full_mask] if npoints > 1 else []
    for size in range(0 if npoints <= 1 else 1, max_size + 1):
        got = dfs(0, start_classes, [], size)
        if got is not None:
            return QuerySet(
                q, n, tuple(universe[i] for i in got), provenance="brute-minimum"
            )
    raise Exhausted(f"no separating system of at most {max_size} hyperplanes")
