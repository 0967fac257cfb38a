from __future__ import annotations

from dataclasses import dataclass

import pytest
from hypothesis import HealthCheck, settings

from difftrace import (
    GradedAlgebra,
    RingSignature,
    fiber_product,
    parse_facets,
    parse_many,
    stanley_reisner_algebra,
    tensor_product,
    veronese_algebra,
)

settings.register_profile(
    "suite",
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")


def make_ring(names, weights, gens, reduced=True, equidim=True) -> GradedAlgebra:
    sig = RingSignature(tuple(names), tuple(weights))
    return GradedAlgebra(
        sig,
        parse_many(gens, sig),
        asserted_reduced=reduced,
        asserted_equidimensional=equidim,
    )


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    algebra: GradedAlgebra
    dim: int  # known a priori from the construction, checked against the engine
    kind: str


def _build_corpus() -> dict[str, CorpusEntry]:
    entries: dict[str, CorpusEntry] = {}

    def add(name, algebra, dim, kind):
        entries[name] = CorpusEntry(name, algebra, dim, kind)

    add("line", make_ring(["x"], [1], []), 1, "polynomial")
    add("plane", make_ring(["x", "y"], [1, 1], []), 2, "polynomial")
    add("space", make_ring(["x", "y", "z"], [1, 1, 1], []), 3, "polynomial")
    add("node", make_ring(["x", "y"], [1, 1], ["x*y"]), 1, "monomial")
    # plane union line: components of dimensions 2 and 1
    add("cross", make_ring(["x", "y", "z"], [1, 1, 1], ["x*y", "x*z"],
                           equidim=False), 2, "monomial")
    add("fermat", make_ring(["x", "y", "z"], [1, 1, 1], ["x^3 + y^3 + z^3"]),
        2, "hypersurface")
    add("conic", make_ring(["a", "b", "c"], [1, 1, 1], ["a*c - b^2"]),
        2, "binomial")
    add("cusp", make_ring(["a", "b"], [2, 3], ["a^3 - b^2"]), 1, "hypersurface")
    add("plane-pair", make_ring(["x", "y", "z", "w"], [1, 1, 1, 1], ["x*y"]),
        3, "monomial")
    add("whitney", make_ring(["x", "y", "z"], [2, 1, 2], ["x^2 - y^2*z"]),
        2, "hypersurface")
    add("quadric", make_ring(["x", "y", "z", "w"], [1, 1, 1, 1], ["x*w - y*z"]),
        3, "binomial")
    add("three-points", stanley_reisner_algebra(parse_facets("1; 2; 3")),
        1, "monomial")
    add("two-edges", stanley_reisner_algebra(parse_facets("1 2; 3 4")),
        2, "monomial")
    add("path", stanley_reisner_algebra(parse_facets("1 2; 2 3")), 2, "monomial")
    add("node-cylinder",
        tensor_product(entries["node"].algebra, make_ring(["t"], [1], [])),
        2, "constructed")
    add("glued-axes",
        fiber_product(make_ring(["u"], [1], []),
                      make_ring(["v", "w"], [1, 1], [])),
        2, "constructed")
    add("veronese2", veronese_algebra(entries["plane"].algebra, 2),
        2, "constructed")
    add("veronese3", veronese_algebra(entries["plane"].algebra, 3),
        2, "constructed")
    return entries


@pytest.fixture(scope="session")
def corpus() -> dict[str, CorpusEntry]:
    return _build_corpus()


@pytest.fixture(scope="session")
def corpus_rings(corpus):
    return [e.algebra for e in corpus.values()]


def presented(algebra: GradedAlgebra, handle) -> list[str]:
    return [str(g) for g in algebra.presented_generators(handle)]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One line per acceptance criterion at the end of every run."""
    rows = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            if getattr(rep, "when", "call") != "call":
                continue
            name = nodeid.split("::")[-1]
            if not name.startswith("test_criterion_"):
                continue
            label = name[len("test_criterion_"):].replace("_", " ")
            rows.append((label, "PASS" if rep.passed else "FAIL"))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for label, outcome in sorted(rows):
            terminalreporter.write_line(f"criterion {label}: {outcome}")
