import pytest
from hypothesis import given
from hypothesis import strategies as st

from qsearch.projspace import DimensionMismatch, Subspace, WrongDimension, geometry
from qsearch.separating import (
    Exhausted,
    NotSeparating,
    QuerySet,
    RetriesExhausted,
    TooLarge,
    brute_force_minimum,
    coordinate_hyperplane,
    count_unseparated_bruteforce,
    explicit_construction,
    is_separating,
    minimal_subsystem,
    points_to_lines,
    random_construction,
    random_construction_trace,
    ratio_hyperplane,
    separating_witness,
    signatures,
    unseparated_pencil_count,
)

FANO_TRIANGLE = (
    Subspace.span(2, 3, [(1, 0, 0), (0, 1, 0)]),
    Subspace.span(2, 3, [(1, 0, 0), (0, 1, 1)]),
    Subspace.span(2, 3, [(1, 0, 1), (0, 1, 0)]),
)


def test_fano_triangle_separates():
    qs = QuerySet(2, 3, FANO_TRIANGLE)
    assert is_separating(qs)
    sigs = signatures(qs)
    assert len(sigs) == 7
    assert len(set(sigs.values())) == 7


def test_single_line_witness_frozen():
    qs = QuerySet(2, 3, FANO_TRIANGLE[:1])
    assert not is_separating(qs)
    # the class holding the lex-first point is off the line; its two lowest
    # members collide
    assert separating_witness(qs) == ((0, 0, 1), (0, 1, 1))
    assert len(set(signatures(qs).values())) == 2


def test_empty_system_witness():
    qs = QuerySet(3, 3, ())
    assert separating_witness(qs) == ((0, 0, 1), (0, 1, 0))
    assert len(set(signatures(qs).values())) == 1


def test_queryset_validation():
    line = Subspace.span(2, 3, [(1, 0, 0), (0, 1, 0)])
    with pytest.raises(DimensionMismatch):
        QuerySet(3, 3, (line,))  # q mismatch
    with pytest.raises(DimensionMismatch):
        QuerySet(2, 4, (line,))  # n mismatch
    with pytest.raises(WrongDimension):
        QuerySet(2, 3, (Subspace.zero(2, 3),))
    with pytest.raises(WrongDimension):
        QuerySet(2, 3, (Subspace.span(2, 3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),))


def test_save_load_round_trip(tmp_path):
    qs = explicit_construction(4, 3)
    path = tmp_path / "sys.txt"
    qs.save(path)
    back = QuerySet.load(path)
    assert back.q == qs.q and back.n == qs.n
    assert back.queries == qs.queries
    assert back.provenance == "user"
    head = path.read_text().splitlines()[0]
    assert head == "3 4 10"


def test_load_header_mismatch(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 3 2\nq=2 n=3 k=2 basis=[[1,0,0],[0,1,0]]\n")
    with pytest.raises(ValueError):
        QuerySet.load(path)


def test_coordinate_hyperplane():
    h = coordinate_hyperplane(3, 4, 1)
    assert h.k == 3
    assert h.contains((1, 0, 0, 0)) and h.contains((0, 0, 1, 2))
    assert not h.contains((0, 1, 0, 0))


def test_ratio_hyperplane():
    h = ratio_hyperplane(3, 3, 0, 1, 2)  # v1 = 2 v0
    assert h.k == 2
    assert h.contains((1, 2, 0)) and h.contains((1, 2, 1)) and h.contains((0, 0, 1))
    assert not h.contains((1, 1, 0))
    with pytest.raises(ValueError):
        ratio_hyperplane(3, 3, 1, 1, 1)
    with pytest.raises(ValueError):
        ratio_hyperplane(3, 3, 0, 1, 0)


@pytest.mark.parametrize(
    "n,q,size",
    [(3, 3, 6), (4, 3, 10), (4, 5, 22), (2, 2, 2), (5, 2, 5), (3, 4, 9)],
)
def test_explicit_construction(n, q, size):
    qs = explicit_construction(n, q)
    assert len(qs) == size == n + n * (n - 1) // 2 * (q - 2)
    assert all(s.k == n - 1 for s in qs.queries)
    assert is_separating(qs)
    assert qs.provenance == "explicit"


def test_random_construction_reproducible():
    a = random_construction(3, 3, seed=11)
    b = random_construction(3, 3, seed=11)
    assert a.queries == b.queries
    assert len(a) == 2 * 3 * 3
    assert is_separating(a)
    assert a.provenance == "random:seed=11,l=6"


def test_random_construction_trace_reports_attempts():
    qs, attempts = random_construction_trace(4, 2, seed=0)
    assert attempts >= 1
    assert is_separating(qs)
    assert len(qs) == 2 * 4 * 2


def test_random_construction_needs_three_dims():
    with pytest.raises(WrongDimension):
        random_construction(2, 5, seed=1)


def test_random_construction_can_exhaust():
    # zero retries allowed is a guaranteed failure
    with pytest.raises(RetriesExhausted):
        random_construction_trace(3, 2, seed=0, max_retries=0)


def test_unseparated_pencil_count_frozen():
    assert unseparated_pencil_count(3, 2) == 1
    assert unseparated_pencil_count(3, 3) == 2
    assert unseparated_pencil_count(3, 5) == 4
    assert unseparated_pencil_count(4, 2) == 7
    assert unseparated_pencil_count(4, 3) == 25


def test_count_unseparated_matches_formula_spot():
    for n, q, u, v in [
        (3, 3, (0, 0, 1), (0, 1, 0)),
        (3, 3, (1, 2, 2), (0, 0, 1)),
        (4, 2, (0, 0, 0, 1), (1, 1, 1, 1)),
    ]:
        assert count_unseparated_bruteforce(n, q, u, v) == unseparated_pencil_count(
            n, q
        )


def test_count_unseparated_rejects_equal_points():
    with pytest.raises(ValueError):
        count_unseparated_bruteforce(3, 3, (0, 0, 1), (0, 0, 1))


def test_minimal_subsystem():
    qs = explicit_construction(3, 2)
    red = minimal_subsystem(qs)
    assert is_separating(red)
    assert len(red) <= len(qs)
    # minimality: every remaining query is load-bearing
    for i in range(len(red)):
        rest = red.queries[:i] + red.queries[i + 1 :]
        assert not is_separating(QuerySet(red.q, red.n, rest))
    # idempotence
    again = minimal_subsystem(red)
    assert again.queries == red.queries
    assert red.provenance.startswith("minimal:")


def test_minimal_subsystem_rejects_non_separating():
    with pytest.raises(NotSeparating):
        minimal_subsystem(QuerySet(2, 3, FANO_TRIANGLE[:1]))


def test_points_to_lines_mixed(mixed_system_factory):
    mixed = mixed_system_factory(3, 0)
    assert any(s.k == 1 for s in mixed.queries)
    out = points_to_lines(mixed)
    assert all(s.k == 2 for s in out.queries)
    assert len(out) == len(mixed)
    assert is_separating(out)
    assert out.provenance == "lines-from-mixed"


def test_points_to_lines_needs_plane():
    qs = explicit_construction(4, 2)
    with pytest.raises(WrongDimension):
        points_to_lines(qs)


def test_points_to_lines_all_lines_is_stable():
    qs = QuerySet(2, 3, FANO_TRIANGLE)
    out = points_to_lines(qs)
    assert set(out.queries) == set(qs.queries)


def test_brute_force_minimum_frozen():
    qs = brute_force_minimum(3, 2)
    assert len(qs) == 3
    assert is_separating(qs)
    assert all(s.k == 2 for s in qs.queries)
    assert len(brute_force_minimum(2, 3)) == 3


def test_brute_force_minimum_all_dims():
    qs = brute_force_minimum(3, 2, restrict_to_hyperplanes=False)
    assert len(qs) == 3  # mixing in point queries does not beat three lines
    assert is_separating(qs)


def test_brute_force_minimum_exhausts():
    with pytest.raises(Exhausted):
        brute_force_minimum(3, 2, max_size=2)


def test_brute_force_minimum_caps():
    with pytest.raises(TooLarge):
        brute_force_minimum(3, 2, max_size=9)
    with pytest.raises(TooLarge):
        brute_force_minimum(4, 4)  # 85 points


def test_point_cap_env_override(monkeypatch):
    monkeypatch.setenv("QSEARCH_POINT_CAP", "5")
    with pytest.raises(TooLarge):
        signatures(QuerySet(2, 3, FANO_TRIANGLE))
    monkeypatch.setenv("QSEARCH_POINT_CAP", "100")
    assert len(signatures(QuerySet(2, 3, FANO_TRIANGLE))) == 7


@given(picks=st.lists(st.integers(min_value=0, max_value=12), max_size=6))
def test_separation_matches_signature_distinctness(picks):
    geom = geometry(3, 3)
    lines = geom.subspaces(2)
    qs = QuerySet(3, 3, tuple(lines[i] for i in picks))
    sigs = signatures(qs)
    distinct = len(set(sigs.values())) == len(geom.points)
    assert is_separating(qs) == distinct
    wit = separating_witness(qs)
    if wit is not None:
        assert sigs[wit[0]] == sigs[wit[1]]
        assert wit[0] != wit[1]
