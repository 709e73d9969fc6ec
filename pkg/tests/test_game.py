import json

import pytest

from qsearch.projspace import DimensionMismatch, Subspace, WrongDimension, geometry
from qsearch.game import (
    AdversaryOracle,
    Answer,
    BadAnnounce,
    FixedOracle,
    GameView,
    InconsistentOracle,
    InductiveSearcher,
    PlaneSearcher,
    RandomLineSearcher,
    Transcript,
    TwoRoundSearcher,
    cover_extension_check,
    oracle_from_name,
    replay,
    run_game,
    searcher_from_name,
)


def sweep_max(searcher_name: str, n: int, q: int) -> int:
    geom = geometry(n, q)
    worst = 0
    for p in geom.points:
        t = run_game(searcher_from_name(searcher_name, n, q), FixedOracle(q, p), n, q)
        assert t.identified == p
        worst = max(worst, t.count)
    return worst


def test_plane_worst_case_frozen():
    assert sweep_max("plane", 3, 3) == 5  # 2q - 1 reached
    assert sweep_max("plane", 3, 4) == 7


def test_plane_needs_dimension_three():
    with pytest.raises(WrongDimension):
        searcher_from_name("plane", 4, 3)


def test_two_round_frozen_game_q2():
    t = run_game(TwoRoundSearcher(3, 2), FixedOracle(2, (1, 0, 1)), 3, 2)
    assert [e["verdict"] for e in t.entries] == ["NO", "YES", "NO"]
    assert t.count == 3
    assert t.identified == (1, 0, 1)


def test_two_round_frozen_game_q3():
    t = run_game(TwoRoundSearcher(3, 3), FixedOracle(3, (1, 1, 0)), 3, 3)
    assert t.count == 4
    assert t.identified == (1, 1, 0)


def test_two_round_frozen_game_n4():
    t = run_game(TwoRoundSearcher(4, 3), FixedOracle(3, (1, 1, 1, 1)), 4, 3)
    assert t.count == 7
    assert t.identified == (1, 1, 1, 1)


def test_two_round_count_formula():
    n, q = 4, 5
    geom = geometry(n, q)
    for p in list(geom.points)[::7]:
        t = run_game(TwoRoundSearcher(n, q), FixedOracle(q, p), n, q)
        nz = sum(1 for c in p if c)
        want = n if nz <= 1 else n + (nz - 1) * (q - 2)
        assert t.count == want
        assert t.identified == p


def test_inductive_within_bound():
    assert sweep_max("inductive", 2, 5) <= 5
    assert sweep_max("inductive", 4, 3) <= 7


def test_inductive_first_query_is_history_function():
    geom = geometry(3, 3)
    view0 = GameView(3, 3, geom, (), geom.full_mask)
    q1 = InductiveSearcher(3, 3).decide(view0)
    q2 = InductiveSearcher(3, 3).decide(view0)
    assert q1 == q2


def test_random_lines_searcher_identifies():
    for seed in range(5):
        t = run_game(RandomLineSearcher(3, 3, seed), FixedOracle(3, (1, 2, 2)), 3, 3)
        assert t.identified == (1, 2, 2)


@pytest.mark.parametrize("q", (2, 3, 4, 5))
def test_adversary_forces_lower_bound(q):
    for name in ("plane", "inductive", "random-lines:3"):
        t = run_game(searcher_from_name(name, 3, q), AdversaryOracle(q), 3, q)
        assert t.identified is not None
        assert t.count >= 2 * q - 1, (name, q, t.count)


def test_adversary_is_stateless():
    o = AdversaryOracle(3)
    line = Subspace.span(3, 3, [(1, 0, 0), (0, 1, 0)])
    a1 = o.answer(line, ())
    a2 = o.answer(line, ())
    assert a1 == a2


def test_adversary_volunteers_on_point_query():
    o = AdversaryOracle(3)
    point_query = Subspace.span(3, 3, [(1, 1, 1)])
    ans = o.answer(point_query, ())
    assert not ans.yes
    kind, line = ans.volunteered
    assert kind in ("in-line", "not-in-line")
    assert line.k == 2


def test_volunteered_lines_recorded_in_transcript():
    class PointProber:
        name = "point-prober"

        def __init__(self, q):
            self.inner = PlaneSearcher(q)

        def decide(self, view):
            if not view.history:
                return ("ask", Subspace.span(view.q, 3, [(1, 1, 1)]))
            return self.inner.decide(view)

    t = run_game(PointProber(3), AdversaryOracle(3), 3, 3)
    assert t.identified is not None
    assert "volunteered" in t.entries[0]
    assert t.entries[0]["volunteered"]["kind"] in ("in-line", "not-in-line")


def test_cover_extension_check_empty():
    assert cover_extension_check([], 3) is None


def test_cover_extension_check_concurrent_pencil():
    geom = geometry(3, 3)
    center = Subspace.span(3, 3, [(1, 0, 0)])
    pencil = geom.pencil(center)
    got = cover_extension_check(list(pencil[:-1]), 3)
    assert got == pencil[-1]


def test_cover_extension_check_triangle():
    tri = [
        Subspace.span(3, 3, [(0, 1, 0), (0, 0, 1)]),
        Subspace.span(3, 3, [(1, 0, 0), (0, 0, 1)]),
        Subspace.span(3, 3, [(1, 0, 0), (0, 1, 0)]),
    ]
    assert cover_extension_check(tri, 3) is None


def test_transcript_json_round_trip():
    t = run_game(PlaneSearcher(3), FixedOracle(3, (1, 0, 2)), 3, 3)
    back = Transcript.from_json(t.to_json())
    assert back == t
    payload = json.loads(t.to_json())
    assert payload["outcome"] == {"identified": [1, 0, 2]}
    assert all(e["verdict"] in ("YES", "NO") for e in payload["entries"])
    assert payload["count"] == len(payload["entries"])


def test_replay_matches():
    t = run_game(PlaneSearcher(4), FixedOracle(4, (1, 3, 2)), 3, 4)
    same, fresh = replay(t)
    assert same
    assert fresh.to_json() == t.to_json()


def test_replay_detects_divergence():
    t = run_game(PlaneSearcher(3), FixedOracle(3, (1, 0, 0)), 3, 3)
    tampered = Transcript(
        n=t.n,
        q=t.q,
        searcher=t.searcher,
        oracle="fixed:1,0,1",
        entries=t.entries,
        outcome=t.outcome,
        count=t.count,
    )
    same, _ = replay(tampered)
    assert not same


def test_fixed_oracle_normalizes():
    o = FixedOracle(3, (2, 1, 0))
    assert o.point == (1, 2, 0)
    assert o.name == "fixed:1,2,0"


def test_registry_errors():
    with pytest.raises(ValueError):
        searcher_from_name("nonsense", 3, 3)
    with pytest.raises(ValueError):
        oracle_from_name("fixed:all", 3, 3)
    with pytest.raises(DimensionMismatch):
        oracle_from_name("fixed:1,0", 3, 3)
    with pytest.raises(WrongDimension):
        oracle_from_name("adversary", 4, 2)


def test_query_limit_aborts():
    t = run_game(RandomLineSearcher(3, 3, 0), FixedOracle(3, (1, 1, 1)), 3, 3, limit=1)
    assert t.outcome == {"aborted": "query-limit"}
    assert t.count == 1
    assert t.identified is None


def test_bad_announce_guard():
    class Eager:
        name = "eager"

        def decide(self, view):
            return ("announce", (1, 0, 0))

    with pytest.raises(BadAnnounce):
        run_game(Eager(), FixedOracle(3, (1, 0, 0)), 3, 3)


def test_inconsistent_oracle_guard():
    class Liar:
        name = "liar"

        def answer(self, query, history):
            return Answer(yes=False)

    class PencilSweeper:
        # asks every line through one point; NO to all of them is a
        # contradiction since together they cover the plane
        name = "pencil-sweeper"

        def decide(self, view):
            x = view.geom.points[0]
            pencil = view.geom.pencil(Subspace.span(view.q, 3, [x]))
            return ("ask", pencil[len(view.history)])

    with pytest.raises(InconsistentOracle):
        run_game(PencilSweeper(), Liar(), 3, 2)


def test_query_dimension_guards():
    class FullSpaceAsker:
        name = "full"

        def decide(self, view):
            return (
                "ask",
                Subspace.span(2, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
            )

    with pytest.raises(WrongDimension):
        run_game(FullSpaceAsker(), FixedOracle(2, (1, 0, 0)), 3, 2)

    class WrongField:
        name = "wrong-field"

        def decide(self, view):
            return ("ask", Subspace.span(5, 3, [(1, 0, 0)]))

    with pytest.raises(DimensionMismatch):
        run_game(WrongField(), FixedOracle(2, (1, 0, 0)), 3, 2)
