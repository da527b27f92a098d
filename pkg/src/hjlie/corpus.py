"""Built-in example algebras used by the CLI fixture emitter and the tests."""

from fractions import Fraction

from .algebra import HJLAlgebra
from .linalg import Matrix, Tensor3


def abelian(n, delta=1, name=None):
    """Zero bracket, identity twist."""
    return HJLAlgebra(n, delta, Tensor3((n,) * 3, {}),
                      name=name or f"abelian{n}")


def aff2(alpha=None, name="aff2"):
    """[e1, e2] = e1 in dimension two, delta = +1."""
    t = Tensor3((2, 2, 2), {(0, 1, 0): 1, (1, 0, 0): -1})
    return HJLAlgebra(2, 1, t, alpha, name=name)


def aff2_scaled():
    """aff2 with the non-identity multiplicative twist diag(2, 1)."""
    return aff2(Matrix.diagonal([2, 1]), name="aff2_scaled")


def heisenberg3():
    """[e1, e2] = e3 in dimension three, delta = +1."""
    t = Tensor3((3, 3, 3), {(0, 1, 2): 1, (1, 0, 2): -1})
    return HJLAlgebra(3, 1, t, name="heisenberg3")


def jordan_sym2():
    """delta = -1 with the symmetric bracket [e1, e1] = e2."""
    t = Tensor3((2, 2, 2), {(0, 0, 1): 1})
    return HJLAlgebra(2, -1, t, name="jordan_sym2")


def tstar0_aff2():
    """The trivial double of aff2 (built once here so it can ship as a fixture)."""
    from .quadratic import tstar_extension
    quad = tstar_extension(aff2(), name="tstar0_aff2")
    return quad.algebra


def standard_corpus():
    """The fixture algebras, in deterministic order."""
    return [
        abelian(1),
        abelian(2),
        abelian(3),
        aff2(),
        aff2_scaled(),
        heisenberg3(),
        jordan_sym2(),
        tstar0_aff2(),
    ]
