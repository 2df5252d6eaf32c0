import itertools
import random

import pytest
from hypothesis import strategies as st

from leibniz3.algebras import Algebra3, AlgebraKind
from leibniz3.fileio import load_fixture
from leibniz3.structure import SC3


def fixture(name):
    return load_fixture(name).to_algebra()


@pytest.fixture(scope="session")
def fx():
    return fixture


def random_sc(rng, n, nnz, values=(-2, -1, 1, 2)):
    entries = {}
    for _ in range(nnz):
        entries[tuple(rng.randint(1, n) for _ in range(4))] = rng.choice(values)
    return SC3(n, entries)


@st.composite
def sparse_sc(draw, max_dim=3, max_nnz=6, values=(-2, -1, 1, 2)):
    n = draw(st.integers(1, max_dim))
    idx = st.tuples(*[st.integers(1, n)] * 4)
    entries = draw(st.dictionaries(idx, st.sampled_from(values), max_size=max_nnz))
    return SC3(n, entries)


@st.composite
def sc_pair(draw, max_dim=3, max_nnz=6):
    n = draw(st.integers(1, max_dim))
    idx = st.tuples(*[st.integers(1, n)] * 4)
    vals = st.sampled_from((-2, -1, 1, 2))
    f = SC3(n, draw(st.dictionaries(idx, vals, max_size=max_nnz)))
    g = SC3(n, draw(st.dictionaries(idx, vals, max_size=max_nnz)))
    return f, g


def dense(sc):
    """Plain dict with every index present, Fraction-free ints or Scalars."""
    n = sc.dim
    return {idx: sc[idx] for idx in itertools.product(range(1, n + 1), repeat=4)}


# -- brute-force oracles written straight from the index formulas ----------

def oracle_fi(sc, slot):
    n = sc.dim
    f = dense(sc)
    r = range(1, n + 1)
    out = {}
    for a, b, c, s, t, m in itertools.product(r, repeat=6):
        if slot == 1:
            v = sum((f[a, b, c, p] * f[p, s, t, m] - f[a, s, t, p] * f[p, b, c, m]
                     - f[b, s, t, p] * f[a, p, c, m] - f[c, s, t, p] * f[a, b, p, m]) for p in r)
        elif slot == 2:
            v = sum((f[a, b, c, p] * f[s, p, t, m] - f[s, a, t, p] * f[p, b, c, m]
                     - f[s, b, t, p] * f[a, p, c, m] - f[s, c, t, p] * f[a, b, p, m]) for p in r)
        else:
            v = sum((f[a, b, c, p] * f[s, t, p, m] - f[s, t, a, p] * f[p, b, c, m]
                     - f[s, t, b, p] * f[a, p, c, m] - f[s, t, c, p] * f[a, b, p, m]) for p in r)
        if v:
            out[(a, b, c, s, t, m)] = v
    return out


def oracle_cocycle(sc, sct, variant):
    n = sc.dim
    f, ft = dense(sc), dense(sct)
    r = range(1, n + 1)
    parts = (1, 2, 3) if variant == "lie" else (variant,)
    out = {}
    for i, s, t, j, k, m in itertools.product(r, repeat=6):
        v = sum(f[i, s, t, p] * ft[j, k, m, p] for p in r)
        for part in parts:
            lower = {1: i, 2: s, 3: t}[part]
            for q in r:
                def fq(upper):
                    args = [i, s, t]
                    args[part - 1] = q
                    return f[(*args, upper)]
                v = v - ft[q, k, m, lower] * fq(j) - ft[j, q, m, lower] * fq(k) - ft[j, k, q, lower] * fq(m)
        if v:
            out[(i, s, t, j, k, m)] = v
    return out


def lie_pair_rng(seed):
    return random.Random(seed)


# -- acceptance summary ----------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
