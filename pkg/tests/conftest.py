import random

import pytest
from hypothesis import settings

from qsearch.projspace import Subspace, geometry
from qsearch.separating import QuerySet, is_separating, minimal_subsystem

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


def make_minimal_mixed_system(q: int, seed: int) -> QuerySet:
    """Random minimal separating system over GF(q)^3 that keeps at least one
    point query and one line query.

    Points go first in the tuple: the reduction sweep drops from the back,
    so redundant lines disappear before the points do.  Retries with fresh
    draws until the reduced system is genuinely mixed.
    """
    rng = random.Random(f"mixed:{seed}")
    geom = geometry(3, q)
    pts = list(geom.points)
    lns = list(geom.subspaces(2))
    while True:
        chosen_p = [
            Subspace.span(q, 3, (p,)) for p in rng.sample(pts, rng.randint(1, 4))
        ]
        chosen_l = rng.sample(lns, rng.randint(3, min(len(lns), 3 * q)))
        qs = QuerySet(q, 3, tuple(chosen_p + chosen_l))
        if not is_separating(qs):
            continue
        reduced = minimal_subsystem(qs)
        if {s.k for s in reduced.queries} == {1, 2}:
            return reduced


@pytest.fixture
def mixed_system_factory():
    return make_minimal_mixed_system
