import itertools
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from hyperlag import new_hypergraph, toy_hypergraph  # noqa: E402

# (criterion, PASS | FAIL | XFAIL, detail) lines collected by test_acceptance
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, status, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{status:<5}  {name}: {detail}")


TOY_CLIQUES = [np.r_[np.full(4, 0.25), np.zeros(8)], np.r_[np.zeros(4), np.full(4, 0.25), np.zeros(4)], np.r_[np.zeros(8), np.full(4, 0.25)]]


@pytest.fixture
def toy():
    return toy_hypergraph()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_small_graph(rng, n_max=8, r_choices=(2, 3, 4)):
    r = int(rng.choice(r_choices))
    n = int(rng.integers(r, n_max + 1))
    combos = list(itertools.combinations(range(1, n + 1), r))
    keep = rng.random(len(combos)) < rng.uniform(0.2, 1.0)
    return new_hypergraph(r, n, [c for c, k in zip(combos, keep) if k])


@st.composite
def small_hypergraphs(draw, n_max=8, r_values=(2, 3, 4)):
    r = draw(st.sampled_from(r_values))
    n = draw(st.integers(min_value=r, max_value=n_max))
    combos = list(itertools.combinations(range(1, n + 1), r))
    picked = draw(st.lists(st.sampled_from(combos), unique=True, max_size=len(combos)))
    return new_hypergraph(r, n, picked)
