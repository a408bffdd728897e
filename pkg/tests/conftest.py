import random

import pytest

from qgcount import ratmath as rm
from qgcount.cones import dual, make_cone
from qgcount.specfile import corpus_paths, load_spec

CORPUS = {p.stem: load_spec(p) for p in corpus_paths()}
EXAMPLE_RAYS = ((1, 0), (-1, 3))


def corpus_cone(name):
    return CORPUS[name].primal_cone()


@pytest.fixture(params=sorted(CORPUS))
def corpus_name(request):
    return request.param


@pytest.fixture
def example():
    return make_cone(EXAMPLE_RAYS)


def random_interior_xi(C, rng, top=3):
    cs = [rng.randint(1, top) for _ in C.rays]
    return rm.primitive([sum(c * v[i] for c, v in zip(cs, C.rays)) for i in range(C.dim)])


def random_smooth_2cone(rng, bound=5):
    """A random 2-cone with both rays primitive; every such cone is smooth
    and Q-Gorenstein."""
    while True:
        a = tuple(rng.randint(-bound, bound) for _ in range(2))
        b = tuple(rng.randint(-bound, bound) for _ in range(2))
        if rm.vec_gcd(a) != 1 or rm.vec_gcd(b) != 1:
            continue
        if a[0] * b[1] - a[1] * b[0] <= 0:
            continue
        return make_cone([a, b])


def random_rng(seed):
    return random.Random(seed)


def dual_of(name):
    return dual(corpus_cone(name))


# criterion number -> (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
