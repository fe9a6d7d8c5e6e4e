import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cxlab.exactla import Field
from cxlab.gralg import build_algebra, parse_polynomial
from cxlab.gmod import coker_presentation, free_module, residue_field
from cxlab.cioper import MonomialCI

SCENARIO_DIR = Path(__file__).parent.parent / "scenarios"

GASHAROV_VARS = ["x1", "x2", "x3", "x4", "x5"]
GASHAROV_RELATIONS = [
    "x1^2", "x2^2", "x5^2", "x3*x4", "x3*x5", "x4*x5",
    "x1*x4+x2*x4", "2*x1*x3+x2*x3",
    "x3^2-x2*x5+2*x1*x5", "x4^2-x2*x5+x1*x5",
]


@pytest.fixture(scope="session")
def F5():
    return Field(5)


@pytest.fixture(scope="session")
def quadric(F5):
    """The monomial complete intersection F_5[x,y]/(x^2, y^2)."""
    return MonomialCI.build(F5, [2, 2], varnames=["x", "y"])


@pytest.fixture(scope="session")
def A(quadric):
    return quadric.algebra


@pytest.fixture(scope="session")
def k(A):
    return residue_field(A)


@pytest.fixture(scope="session")
def Ax(A):
    """A/(x) over the quadric algebra: a bounded-resolution module."""
    return coker_presentation(A, [[A.variable(0)]], [0])


@pytest.fixture(scope="session")
def free2(A):
    return free_module(A, [0, 0])


@pytest.fixture(scope="session")
def cubic(F5):
    """F_5[x]/(x^3): the smallest ring where degree two is the first reducing degree."""
    return MonomialCI.build(F5, [3], varnames=["x"])


@pytest.fixture(scope="session")
def gasharov(F5):
    rels = [parse_polynomial(s, GASHAROV_VARS, F5) for s in GASHAROV_RELATIONS]
    return build_algebra(F5, 5, rels, varnames=GASHAROV_VARS)


@pytest.fixture(scope="session")
def gasharov_module(F5, gasharov):
    pe = lambda s: gasharov.nf_polynomial(parse_polynomial(s, GASHAROV_VARS, F5))
    return coker_presentation(
        gasharov, [[pe("x1"), pe("2*x3+x4")], [pe("0"), pe("x2")]], [0, 0]
    )
