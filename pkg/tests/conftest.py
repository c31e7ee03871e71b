import random
import sys

import pytest
from hypothesis import strategies as st

from torus_torsion import LacunaryPoly, _kernels


@pytest.fixture(params=_kernels.available_backends())
def backend(request):
    prev = _kernels.set_backend(request.param)
    yield request.param
    _kernels.set_backend(prev)


def random_univariate(rng: random.Random, max_terms=6, max_deg=300, coeff=5):
    while True:
        N = rng.randint(1, max_terms)
        exps = rng.sample(range(max_deg + 1), N)
        F = LacunaryPoly.univariate([(rng.choice([c for c in range(-coeff, coeff + 1) if c]), e) for e in exps])
        if not F.is_zero:
            return F


def random_multivariate(rng: random.Random, n, max_terms=5, max_exp=30, coeffs=(-2, -1, 1, 2)):
    N = rng.randint(2, max_terms)
    seen = set()
    while len(seen) < N:
        seen.add(tuple(rng.randint(0, max_exp) for _ in range(n)))
    return LacunaryPoly.from_terms([(rng.choice(coeffs), e) for e in sorted(seen)], n)


@st.composite
def univariate_polys(draw, max_terms=6, max_exp=200, coeff=5, allow_zero=False):
    terms = draw(
        st.lists(
            st.tuples(st.integers(-coeff, coeff).filter(bool), st.integers(0, max_exp)),
            min_size=0 if allow_zero else 1,
            max_size=max_terms,
        )
    )
    return LacunaryPoly.univariate(terms)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "REPORT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
