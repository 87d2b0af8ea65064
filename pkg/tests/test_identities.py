from __future__ import annotations

import numpy as np
import pytest

from curvlab.checks import REGISTRY, Sample, register, run_checks, select, summarize
from curvlab.cli import default_suite
from curvlab.package import package_from_curvature

from helpers import random_curvature, random_metric

ALGEBRAIC = ("kn-q-a", "kn-q-b", "kn-q-gs", "kn-q-ss", "kn-q-triple", "kn-cyclic", "q-g-gg",
             "qgc-expansion", "qsc-expansion", "qge-reduction", "ric-e-zero", "weyl-of-r",
             "prop-2.1", "prop-2.2")


@pytest.fixture(scope="module")
def suite_rows():
    return run_checks(default_suite(points=4, seed=0), select())


def test_default_suite_passes(suite_rows):
    failed = [r for r in suite_rows if r["pass"] is False]
    assert not failed, failed[:3]


def test_every_check_is_evaluated(suite_rows):
    evaluated = {r["check"] for r in suite_rows if r["skipped"] is None}
    assert evaluated == set(REGISTRY)


def test_summary_aggregates(suite_rows):
    summary = summarize(suite_rows)
    assert all(s["points"] >= 1 for s in summary)
    assert {s["check"] for s in summary} == set(REGISTRY)


def test_select_prefixes():
    ids = [c.id for c in select(only=["theorem-4.2"])]
    assert ids and all(i.startswith("theorem-4.2") for i in ids)
    rest = [c.id for c in select(skip=["theorem", "prop"])]
    assert not any(i.startswith(("theorem", "prop")) for i in rest)
    assert len(select()) == len(REGISTRY)


def test_duplicate_registration_rejected():
    with pytest.raises(ValueError):
        register("kn-cyclic", "again")(lambda s: 0.0)


@pytest.mark.parametrize("n", [4, 5, 6])
@pytest.mark.parametrize("signature", [0, 1])
def test_algebraic_checks_on_random_tensors(n, signature):
    rng = np.random.default_rng(100 * n + signature)
    samples = []
    for k in range(5):
        m = random_metric(rng, n, signature)
        pkg = package_from_curvature(m, random_curvature(rng, n), point=(float(k),))
        samples.append(Sample(f"random(n={n})", pkg))
    rows = run_checks(samples, select(only=list(ALGEBRAIC)))
    done = [r for r in rows if r["skipped"] is None]
    # random metrics reach condition numbers near 1e3, which costs a few digits
    assert done and max(r["residual"] for r in done) < 1e-10


def test_wrong_identity_is_detected():
    # a perturbed right-hand side must give a large residual
    from curvlab.checks import eq_residual
    from curvlab.tensors import kn_product, tachibana

    rng = np.random.default_rng(7)
    m = random_metric(rng, 4)
    pkg = package_from_curvature(m, random_curvature(rng, 4))
    lhs = tachibana(pkg.g, kn_product(pkg.g, pkg.S))
    assert eq_residual(lhs, -tachibana(pkg.S, pkg.G)) < 1e-13
    assert eq_residual(lhs, -1.01 * tachibana(pkg.S, pkg.G)) > 1e-3
