import os
import random
from fractions import Fraction
from itertools import combinations

import pytest

from tropshell.errors import PreconditionError
from tropshell.kernel import affine_rank, det
from tropshell.subdivision import PointConfiguration
from tropshell.tropical import TropicalMatrix

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(ROOT, "fixtures")
SEED = 20240611

ACCEPTANCE: dict = {}


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURES, name)


def random_configuration(rng: random.Random, d: int, n_max: int = 8, box: int = 3, hmax: int = 6) -> PointConfiguration:
    while True:
        n = rng.randint(d + 1, n_max)
        pts = sorted({tuple(rng.randint(0, box) for _ in range(d)) for _ in range(n)})
        if len(pts) < d + 1 or affine_rank(pts) != d:
            continue
        try:
            return PointConfiguration(pts, [rng.randint(0, hmax) for _ in pts])
        except PreconditionError:
            continue


def random_matrix(rng: random.Random, d: int, n: int, lo: int = -4, hi: int = 4) -> TropicalMatrix:
    return TropicalMatrix([[0] * n] + [[rng.randint(lo, hi) for _ in range(n)] for _ in range(d - 1)])


def lower_cells_oracle(cfg: PointConfiguration) -> set:
    """Maximal cells of the regular subdivision, straight from the definition.

    A set of points spans a lower facet when some affinely independent
    ``d+1`` of them lift to a hyperplane with every lifted point on or above it.
    """
    d = cfg.dim
    lifted = [p + (h,) for p, h in zip(cfg.points, cfg.heights)]
    found = set()
    for sub in combinations(range(len(lifted)), d + 1):
        base = [cfg.points[i] for i in sub]
        if affine_rank(base) != d:
            continue

        def side(q):
            rows = [tuple(lifted[i][k] - q[k] for k in range(d + 1)) for i in sub]
            return det(rows)

        # orient so that points far above are positive
        probe = tuple(sum(cfg.points[i][k] for i in sub) / (d + 1) for k in range(d)) + (Fraction(10**9),)
        sgn = 1 if side(probe) > 0 else -1
        vals = [sgn * side(q) for q in lifted]
        if all(v >= 0 for v in vals):
            found.add(frozenset(cfg.labels[i] for i, v in enumerate(vals) if v == 0))
    return found


@pytest.fixture
def rng():
    return random.Random(SEED)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.2f} s){' - ' + note if note else ''}")
