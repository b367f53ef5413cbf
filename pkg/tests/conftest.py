from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "ci",
    derandomize=True,
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("ci")

from latmax.corpus import (  # noqa: E402
    all_cdim2_geometries,
    boolean,
    chain,
    chain_products,
    doubled_sequences,
    glued,
    m3,
    n5,
)


@pytest.fixture(scope="session")
def named_lattices():
    return {
        "chain2": chain(2),
        "chain3": chain(3),
        "b2": boolean(2),
        "b3": boolean(3),
        "m3": m3(),
        "n5": n5(),
        "prod33": chain_products([3, 3]),
        "prod322": chain_products([3, 2, 2]),
        "glued_b2_n5": glued([boolean(2), n5()]),
    }


@pytest.fixture(scope="session")
def small_corpus(named_lattices):
    """Mixed lattices with n <= 12 for table/predicate cross-checks."""
    out = dict(named_lattices)
    out["doubled0"] = doubled_sequences(depth=1, seed=11, count=4)[0]
    out["cg_example"] = all_cdim2_geometries(3, verify=False)[4].lattice
    return out


@pytest.fixture(scope="session")
def cdim2_through_m6():
    """All two-chain geometries for m <= 6 (verified builds)."""
    out = []
    for m in range(1, 7):
        out.extend(all_cdim2_geometries(m))
    return out
