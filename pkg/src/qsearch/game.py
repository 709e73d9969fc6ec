"""Adaptive search for a hidden 1-dimensional subspace of GF(q)^n.

A searcher asks subspace membership queries ("is the hidden line inside
this subspace?"); an oracle answers yes or no, optionally volunteering a
side constraint of the form "the hidden line is (not) inside L".  The game
runner tracks the set of points still consistent with all answers and
referees the final announcement.

Searchers are stateless: decide() recomputes the whole plan from the
recorded history, so any finished game can be replayed bit for bit from
its transcript.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache

from .gf import field
from .projspace import (
    DimensionMismatch,
    Geometry,
    Subspace,
    WrongDimension,
    gaussian_binomial,
    geometry,
    hyperplanes_through,
    normalize,
)
from .separating import coordinate_hyperplane, ratio_hyperplane


class InconsistentOracle(RuntimeError):
    """The answers rule out every point."""


class BadAnnounce(RuntimeError):
    """Announcement made while uncertain, or of an inconsistent point."""


class InternalInconsistency(RuntimeError):
    """An oracle invariant failed; indicates a bug, not a bad input."""


@dataclass(frozen=True)
class Answer:
    yes: bool
    volunteered: tuple[str, Subspace] | None = None  # ("in-line"|"not-in-line", L)


@dataclass(frozen=True)
class GameView:
    """What a searcher sees: past queries with answers, and the bitmask of
    points still consistent with everything said so far."""

    n: int
    q: int
    geom: Geometry
    history: tuple[tuple[Subspace, Answer], ...]
    candidates: int


@dataclass(frozen=True)
class Transcript:
    """Self-contained record of one game.  Entries hold the asked queries
    with their verdicts; the outcome is either {"identified": point} or
    {"aborted": reason}."""

    n: int
    q: int
    searcher: str
    oracle: str
    entries: tuple
    outcome: dict
    count: int

    def to_json(self) -> str:
        payload = {
            "n": self.n,
            "q": self.q,
            "searcher": self.searcher,
            "oracle": self.oracle,
            "entries": list(self.entries),
            "outcome": self.outcome,
            "count": self.count,
        }
        return json.dumps(payload, sort_keys=True, indent=2)

    @staticmethod
    def from_json(text: str) -> "Transcript":
        d = json.loads(text)
        return Transcript(
            n=d["n"],
            q=d["q"],
            searcher=d["searcher"],
            oracle=d["oracle"],
            entries=tuple(d["entries"]),
            outcome=d["outcome"],
            count=d["count"],
        )

    @property
    def identified(self) -> tuple[int, ...] | None:
        got = self.outcome.get("identified")
        return tuple(got) if got is not None else None


def run_game(searcher, oracle, n: int, q: int, limit: int | None = None) -> Transcript:
    """Referee one game.  Announcing costs nothing; each query spends one
    unit of the limit, which defaults to the number of points (asking every
    point one by one always suffices)."""
    geom = geometry(n, q)
    if limit is None:
        limit = gaussian_binomial(n, 1, q)
    cand = geom.full_mask
    history: list[tuple[Subspace, Answer]] = []
    entries: list[dict] = []
    outcome: dict | None = None
    while outcome is None:
        view = GameView(n, q, geom, tuple(history), cand)
        kind, payload = searcher.decide(view)
        if kind == "announce":
            p = normalize(q, payload)
            if cand.bit_count() != 1 or geom.point_mask(p) != cand:
                raise BadAnnounce(
                    f"announced {p} with {cand.bit_count()} consistent points"
                )
            outcome = {"identified": list(p)}
            break
        qry: Subspace = payload
        if (qry.q, qry.n) != (q, n):
            raise DimensionMismatch(
                f"query over GF({qry.q})^{qry.n} in a GF({q})^{n} game"
            )
        if not 1 <= qry.k <= n - 1:
            raise WrongDimension(f"query dimension {qry.k} outside [1, {n - 1}]")
        if len(history) >= limit:
            outcome = {"aborted": "query-limit"}
            break
        ans = oracle.answer(qry, tuple(history))
        m = geom.mask(qry)
        cand = (cand & m) if ans.yes else (cand & ~m)
        if ans.volunteered is not None:
            vkind, vline = ans.volunteered
            vm = geom.mask(vline)
            cand = (cand & vm) if vkind == "in-line" else (cand & ~vm)
        if cand == 0:
            raise InconsistentOracle(f"no point is consistent after {qry.literal()}")
        history.append((qry, ans))
        entry = {"query": qry.literal(), "verdict": "YES" if ans.yes else "NO"}
        if ans.volunteered is not None:
            entry["volunteered"] = {
                "kind": ans.volunteered[0],
                "line": ans.volunteered[1].literal(),
            }
        entries.append(entry)
    return Transcript(
        n=n,
        q=q,
        searcher=getattr(searcher, "name", searcher.__class__.__name__),
        oracle=getattr(oracle, "name", oracle.__class__.__name__),
        entries=tuple(entries),
        outcome=outcome,
        count=len(history),
    )


def _lone_point(geom: Geometry, mask: int) -> tuple[int, ...]:
    return geom.points[(mask & -mask).bit_length() - 1]


# ---------------------------------------------------------------------------
# searchers
# ---------------------------------------------------------------------------


class PlaneSearcher:
    """Dimension-3 strategy: sweep q of the q+1 lines through a fixed point,
    then probe the surviving candidates one point at a time.  At most 2q-1
    queries against any consistent oracle."""

    def __init__(self, q: int):
        self.q = q
        self.name = "plane"

    def decide(self, view: GameView):
        if view.candidates.bit_count() == 1:
            return ("announce", _lone_point(view.geom, view.candidates))
        x = view.geom.points[0]
        pencil = view.geom.pencil(Subspace.span(self.q, 3, [x]))
        got_yes = any(a.yes for _, a in view.history)
        if not got_yes and len(view.history) < self.q:
            return ("ask", pencil[len(view.history)])
        probe = _lone_point(view.geom, view.candidates)
        return ("ask", Subspace.span(self.q, 3, [probe]))


@lru_cache(maxsize=None)
def _pencil_within(ctx: Subspace, u: Subspace) -> tuple[Subspace, ...]:
    """The q+1 subspaces of ctx that sit one dimension below it and contain
    u, computed in coordinates local to ctx and mapped back."""
    q, k = ctx.q, ctx.k
    F = field(q)
    pivots = ctx.pivots()
    local_u = Subspace.span(q, k, [tuple(r[p] for p in pivots) for r in u.basis])

    def back(local_rows):
        rows = []
        for lrow in local_rows:
            vec = [0] * ctx.n
            for c, brow in zip(lrow, ctx.basis):
                if c:
                    vec = [F.add(x, F.mul(c, y)) for x, y in zip(vec, brow)]
            rows.append(tuple(vec))
        return Subspace.span(q, ctx.n, rows)

    out = [back(h.basis) for h in hyperplanes_through(local_u)]
    out.sort(key=lambda s: s.basis)
    return tuple(out)


class InductiveSearcher:
    """General strategy using at most (n-1)(q-1)+1 hyperplane queries.

    Maintains a subspace ctx known to contain the hidden line and descends
    one dimension per round through a pencil of co-dimension-1 subspaces of
    ctx.  Once some subspace of ctx is known NOT to contain the hidden
    line, each later round needs only q-1 questions: the pencil through a
    hyperplane of the excluded subspace has one member ruled out for free,
    and the last member is inferred when all others fail.
    """

    def __init__(self, n: int, q: int):
        self.n = n
        self.q = q
        self.name = "inductive"
        self._gen = None
        self._fed: tuple[bool, ...] = ()
        self._pending: Subspace | None = None

    def _lift(self, w: Subspace, ctx: Subspace) -> Subspace:
        """Extend w by a complement of ctx, giving a hyperplane of the full
        space whose intersection with ctx is exactly w."""
        n, q = self.n, self.q
        comp = []
        cur = ctx
        for i in range(n):
            if cur.k == n:
                break
            e = tuple(1 if j == i else 0 for j in range(n))
            if not cur.contains(e):
                comp.append(e)
                cur = Subspace.span(q, n, cur.basis + (e,))
        return Subspace.span(q, n, w.basis + tuple(comp))

    def _plan(self):
        n, q = self.n, self.q
        ctx = Subspace.span(
            q, n, [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        )
        known_not: Subspace | None = None
        while ctx.k > 1:
            base = known_not if known_not is not None else ctx
            u = Subspace(q, n, base.basis[: ctx.k - 2])
            pencil = _pencil_within(ctx, u)
            if known_not is None:
                to_ask, fallback = list(pencil[:q]), pencil[q]
            else:
                others = [w for w in pencil if w != known_not]
                to_ask, fallback = others[: q - 1], others[q - 1]
            hit = None
            for j, w in enumerate(to_ask):
                if (yield self._lift(w, ctx)):
                    hit = j, w
                    break
            if hit is None:
                ctx, known_not = fallback, u
            else:
                j, w = hit
                known_not = None if (j == 0 and known_not is None) else u
                ctx = w

    def _advance(self, answers: tuple[bool, ...]) -> Subspace:
        """Plan query following the given answer prefix.  A pure function of
        `answers`; the kept generator only memoizes the common case where
        each call extends the previous history by one answer."""
        if self._gen is None or answers[: len(self._fed)] != self._fed:
            self._gen = self._plan()
            self._fed = ()
            self._pending = next(self._gen)
        for a in answers[len(self._fed) :]:
            self._pending = self._gen.send(a)
            self._fed = self._fed + (a,)
        return self._pending

    def decide(self, view: GameView):
        if view.candidates.bit_count() == 1:
            return ("announce", _lone_point(view.geom, view.candidates))
        try:
            qry = self._advance(tuple(past.yes for _, past in view.history))
        except StopIteration:
            self._gen = None
            raise InternalInconsistency(
                "plan finished with more than one consistent point"
            ) from None
        return ("ask", qry)


class TwoRoundSearcher:
    """Non-interleaved strategy: one batch fixing the zero pattern, one
    batch of coordinate-ratio questions, then announce.  Never announces
    early, so its count is an exact function of the hidden point."""

    def __init__(self, n: int, q: int):
        self.n = n
        self.q = q
        self.name = "two-round"

    def decide(self, view: GameView):
        n, q = self.n, self.q
        hist = view.history
        if len(hist) < n:
            return ("ask", coordinate_hyperplane(q, n, len(hist)))
        nz = [i for i in range(n) if not hist[i][1].yes]
        if q == 2 or len(nz) <= 1:
            return ("announce", tuple(1 if i in nz else 0 for i in range(n)))
        c = nz[0]
        script = [(j, lam) for j in nz[1:] for lam in range(1, q - 1)]
        idx = len(hist) - n
        if idx < len(script):
            j, lam = script[idx]
            return ("ask", ratio_hyperplane(q, n, c, j, lam))
        vec = [0] * n
        vec[c] = 1
        for pos, j in enumerate(nz[1:]):
            block = hist[n + pos * (q - 2) : n + (pos + 1) * (q - 2)]
            vec[j] = next(
                (lam for lam, (_, a) in enumerate(block, start=1) if a.yes), q - 1
            )
        return ("announce", tuple(vec))


class RandomLineSearcher:
    """Asks the hyperplanes in a seeded random order until only one point
    survives.  A baseline for adversary experiments."""

    def __init__(self, n: int, q: int, seed: int):
        self.n = n
        self.q = q
        self.name = f"random-lines:{seed}"
        order = list(geometry(n, q).subspaces(n - 1))
        random.Random(f"lines:{seed}").shuffle(order)
        self.order = order

    def decide(self, view: GameView):
        if view.candidates.bit_count() == 1 or len(view.history) >= len(self.order):
            return ("announce", _lone_point(view.geom, view.candidates))
        return ("ask", self.order[len(view.history)])


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


class FixedOracle:
    """Truthful oracle for a concrete hidden point."""

    def __init__(self, q: int, point):
        self.q = q
        self.point = normalize(q, point)
        self.name = "fixed:" + ",".join(str(c) for c in self.point)

    def answer(self, query: Subspace, history) -> Answer:
        return Answer(yes=query.contains(self.point))


def _completions(geom: Geometry, lines) -> list[Subspace]:
    """Lines h such that lines + [h] cover every point of the plane, in
    lexicographic basis order."""
    cov = 0
    for ln in lines:
        cov |= geom.mask(ln)
    unc = geom.full_mask & ~cov
    if unc == 0:
        return sorted(geom.subspaces(2), key=lambda s: s.basis)
    if unc.bit_count() == 1:
        p = geom.points[(unc & -unc).bit_length() - 1]
        return list(geom.pencil(Subspace.span(geom.q, 3, [p])))
    low = unc & -unc
    p1 = geom.points[low.bit_length() - 1]
    rest = unc ^ low
    p2 = geom.points[(rest & -rest).bit_length() - 1]
    ln = Subspace.span(geom.q, 3, [p1, p2])
    return [ln] if (geom.mask(ln) & unc) == unc else []


def cover_extension_check(lines, q: int) -> Subspace | None:
    """Lexicographically first hyperplane completing `lines` to a cover of
    the projective plane, or None when no single hyperplane can."""
    geom = geometry(3, q)
    comps = _completions(geom, list(lines))
    if not comps:
        return None
    return min(comps, key=lambda s: s.basis)


class AdversaryOracle:
    """Answer-delaying adversary for the plane (n=3).

    Keeps the set L of lines declared not to contain the hidden point.  It
    answers NO to a line as long as L plus that line stays at least two
    lines away from covering the whole plane; the first line whose denial
    would break this gets a YES, committing the hidden point to it.  Point
    questions are deflected by volunteering a line constraint instead of a
    bare answer.  Every game against it costs any searcher at least 2q-1
    questions."""

    def __init__(self, q: int):
        self.q = q
        self.geom = geometry(3, q)
        self.name = "adversary"

    def _replay(self, history):
        geom = self.geom
        declared: list[Subspace] = []
        committed = False
        cand = geom.full_mask
        for qry, ans in history:
            m = geom.mask(qry)
            cand = (cand & m) if ans.yes else (cand & ~m)
            if ans.volunteered is not None:
                vkind, vline = ans.volunteered
                vm = geom.mask(vline)
                cand = (cand & vm) if vkind == "in-line" else (cand & ~vm)
            if not committed:
                if ans.yes and qry.k == 2:
                    committed = True
                elif ans.volunteered is not None and ans.volunteered[0] == "in-line":
                    committed = True
                elif not ans.yes and qry.k == 2:
                    declared.append(qry)
                elif ans.volunteered is not None:
                    declared.append(ans.volunteered[1])
        return declared, committed, cand

    def _extendable(self, lines) -> bool:
        return bool(_completions(self.geom, lines))

    def answer(self, query: Subspace, history) -> Answer:
        if (query.q, query.n) != (self.q, 3):
            raise DimensionMismatch(f"adversary plays GF({self.q})^3 only")
        declared, committed, cand = self._replay(history)
        geom = self.geom
        if committed:
            m = geom.mask(query)
            if cand & ~m == 0:
                return Answer(True)
            if cand.bit_count() >= 2:
                return Answer(False)
            return Answer(bool(cand & m))
        if query.k == 2:
            if self._extendable(declared + [query]):
                return Answer(True)
            return Answer(False)
        # point question: volunteer a line constraint instead
        p = query.basis[0]
        pencil = geom.pencil(query)
        for ln in pencil:
            if not self._extendable(declared + [ln]):
                return Answer(False, ("not-in-line", ln))
        for m in pencil:
            for lstar in _completions(geom, declared + [m]):
                if not lstar.contains(p):
                    return Answer(False, ("in-line", lstar))
        raise InternalInconsistency("no consistent deflection for a point question")


# ---------------------------------------------------------------------------
# registries
# ---------------------------------------------------------------------------


def searcher_from_name(name: str, n: int, q: int):
    if name == "plane":
        if n != 3:
            raise WrongDimension("the plane strategy needs n=3")
        return PlaneSearcher(q)
    if name == "inductive":
        return InductiveSearcher(n, q)
    if name == "two-round":
        return TwoRoundSearcher(n, q)
    if name.startswith("random-lines:"):
        return RandomLineSearcher(n, q, int(name.split(":", 1)[1]))
    raise ValueError(f"unknown searcher {name!r}")


def oracle_from_name(name: str, n: int, q: int):
    if name == "adversary":
        if n != 3:
            raise WrongDimension("the adversary plays n=3 only")
        return AdversaryOracle(q)
    if name.startswith("fixed:"):
        coords = [int(c) for c in name.split(":", 1)[1].split(",")]
        if len(coords) != n:
            raise DimensionMismatch(f"point {coords} not of length {n}")
        return FixedOracle(q, coords)
    raise ValueError(f"unknown oracle {name!r}")


def replay(transcript: Transcript) -> tuple[bool, Transcript]:
    """Re-run a finished game from its recorded strategy names and compare."""
    s = searcher_from_name(transcript.searcher, transcript.n, transcript.q)
    o = oracle_from_name(transcript.oracle, transcript.n, transcript.q)
    fresh = run_game(s, o, transcript.n, transcript.q)
    return fresh.to_json() == transcript.to_json(), fresh
