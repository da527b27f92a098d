"""Hom-Jordan-Lie algebras presented by structure constants.

An algebra is (L, [.,.], alpha) with a bilinear bracket satisfying
[x,y] = -delta [y,x] for a fixed sign delta = +-1 and the alpha-twisted
Jacobi identity [alpha(x),[y,z]] + [alpha(y),[z,x]] + [alpha(z),[x,y]] = 0.
All identities are multilinear, so every check here runs over basis tuples
only, with exact rational arithmetic.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import CheckError, InputError
from .linalg import (
    Matrix,
    SpanReducer,
    Tensor3,
    bilinear_eval,
    echelon_basis,
    inverse,
    is_zero_vec,
    mat_pow,
    rat,
    unit_vec,
    vec,
    vec_add,
    zero_vec,
)


class HJLAlgebra:
    """Finite-dimensional hom-Jordan-Lie algebra over the rationals.

    bracket is the structure tensor c with [e_i, e_j] = sum_k c(i,j,k) e_k;
    alpha is the twisting map as an n x n matrix acting on coordinates.
    """

    def __init__(self, n, delta, bracket, alpha=None, name=None, validate=True):
        if delta not in (1, -1):
            raise InputError("delta must be +1 or -1")
        self.n = n
        self.delta = delta
        if not isinstance(bracket, Tensor3):
            bracket = Tensor3((n, n, n), bracket)
        if bracket.dims != (n, n, n):
            raise InputError(f"bracket tensor dims {bracket.dims} != {(n, n, n)}")
        self.bracket = bracket
        self.alpha = Matrix.identity(n) if alpha is None else alpha
        if self.alpha.shape != (n, n):
            raise InputError(f"alpha shape {self.alpha.shape} != {(n, n)}")
        self.name = name
        if validate:
            ok, wit = jordan_symmetry_violation(self)
            if not ok:
                i, j, k = wit
                raise InputError(
                    f"bracket tensor violates c(i,j,k) = -delta*c(j,i,k) "
                    f"at (i,j,k)={wit}: c={self.bracket.get(i, j, k)} vs "
                    f"partner {self.bracket.get(j, i, k)}")

    # -- basic evaluation ---------------------------------------------------

    def basis_vector(self, i):
        return unit_vec(self.n, i)

    def bracket_vec(self, u, v):
        """[u, v] by bilinear extension of the structure tensor."""
        return bilinear_eval(self.bracket, u, v)

    def alpha_vec(self, u):
        return self.alpha.apply(u)

    def alpha_power(self, k):
        """alpha^k; negative k only for regular algebras."""
        if k < 0 and not self.is_regular():
            raise CheckError("negative alpha power on a non-regular algebra",
                             check="regular")
        return mat_pow(self.alpha, k)

    def left_bracket_matrix(self, u):
        """Matrix of v -> [u, v]."""
        return Matrix.from_columns(
            [self.bracket_vec(u, self.basis_vector(j)) for j in range(self.n)])

    def is_multiplicative(self):
        return _multiplicative_violation(self) is None

    def is_regular(self):
        return self.is_multiplicative() and inverse(self.alpha) is not None

    def is_abelian(self):
        return self.bracket.is_zero()

    def __eq__(self, other):
        return (isinstance(other, HJLAlgebra) and self.n == other.n
                and self.delta == other.delta and self.bracket == other.bracket
                and self.alpha == other.alpha)

    def __repr__(self):
        tag = self.name or f"dim{self.n}"
        return f"HJLAlgebra({tag}, n={self.n}, delta={self.delta:+d})"


# ---------------------------------------------------------------------------
# axiom checks
# ---------------------------------------------------------------------------

def jordan_symmetry_violation(L):
    """(True, None) or (False, first (i,j,k) with c(i,j,k) != -delta*c(j,i,k))."""
    for i, j, k in product(range(L.n), repeat=3):
        if L.bracket.get(i, j, k) != -L.delta * L.bracket.get(j, i, k):
            return False, (i, j, k)
    return True, None


def _hom_jacobi_violation(L):
    """First lexicographic triple violating the twisted Jacobi identity."""
    for i, j, k in product(range(L.n), repeat=3):
        x, y, z = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        total = vec_add(
            vec_add(L.bracket_vec(L.alpha_vec(x), L.bracket_vec(y, z)),
                    L.bracket_vec(L.alpha_vec(y), L.bracket_vec(z, x))),
            L.bracket_vec(L.alpha_vec(z), L.bracket_vec(x, y)))
        if not is_zero_vec(total):
            return (i, j, k), total
    return None


def _multiplicative_violation(L):
    """First pair (i,j) with alpha([e_i,e_j]) != [alpha e_i, alpha e_j]."""
    for i, j in product(range(L.n), repeat=2):
        lhs = L.alpha_vec(L.bracket_vec(L.basis_vector(i), L.basis_vector(j)))
        rhs = L.bracket_vec(L.alpha_vec(L.basis_vector(i)),
                            L.alpha_vec(L.basis_vector(j)))
        if lhs != rhs:
            return (i, j), lhs, rhs
    return None


@dataclass
class AxiomReport:
    jordan_symmetric: bool
    hom_jacobi: bool
    multiplicative: bool
    regular: bool
    witness: tuple | None = None
    witness_check: str | None = None
    details: dict = field(default_factory=dict)

    def all_true(self):
        return (self.jordan_symmetric and self.hom_jacobi
                and self.multiplicative and self.regular)

    def core_true(self):
        """The defining axioms, without requiring alpha invertible."""
        return self.jordan_symmetric and self.hom_jacobi and self.multiplicative


def check_axioms(L):
    """Evaluate every defining identity on all basis tuples.

    The witness is the first failing tuple of the first failing check, in
    the order jordan_symmetric, hom_jacobi, multiplicative.
    """
    jordan_ok, jordan_wit = jordan_symmetry_violation(L)
    jac = _hom_jacobi_violation(L)
    mult = _multiplicative_violation(L)
    details = {}
    if not jordan_ok:
        i, j, k = jordan_wit
        details["jordan_symmetric"] = {
            "index": jordan_wit,
            "lhs": (L.bracket.get(i, j, k),),
            "rhs": (-L.delta * L.bracket.get(j, i, k),),
        }
    if jac is not None:
        details["hom_jacobi"] = {"index": jac[0], "lhs": jac[1],
                                 "rhs": zero_vec(L.n)}
    if mult is not None:
        details["multiplicative"] = {"index": mult[0], "lhs": mult[1],
                                     "rhs": mult[2]}
    witness = witness_check = None
    for name in ("jordan_symmetric", "hom_jacobi", "multiplicative"):
        if name in details:
            witness = details[name]["index"]
            witness_check = name
            break
    multiplicative = mult is None
    return AxiomReport(
        jordan_symmetric=jordan_ok,
        hom_jacobi=jac is None,
        multiplicative=multiplicative,
        regular=multiplicative and inverse(L.alpha) is not None,
        witness=witness,
        witness_check=witness_check,
        details=details,
    )


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

class Subspace:
    """Subspace of coordinate space, held in echelon normal form.

    The canonical basis makes equality and membership tests exact and
    representation-independent.
    """

    def __init__(self, ambient_dim, vectors):
        self.ambient_dim = ambient_dim
        vectors = [vec(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise InputError("subspace vector length != ambient dimension")
        self._reducer = SpanReducer(vectors)
        self.basis = tuple(self._reducer.basis)

    @classmethod
    def full(cls, n):
        return cls(n, [unit_vec(n, i) for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls(n, [])

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v):
        return self._reducer.contains(v)

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def residual(self, v):
        return self._reducer.residual(v)

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.ambient_dim})"


def is_subalgebra(L, S):
    """alpha(S) <= S and [S, S] <= S."""
    if S.ambient_dim != L.n:
        raise InputError("subspace ambient dimension != algebra dimension")
    for v in S.basis:
        if not S.contains(L.alpha_vec(v)):
            return False
    for u in S.basis:
        for v in S.basis:
            if not S.contains(L.bracket_vec(u, v)):
                return False
    return True


def is_ideal(L, S):
    """alpha(S) <= S and [S, L] <= S."""
    if S.ambient_dim != L.n:
        raise InputError("subspace ambient dimension != algebra dimension")
    for v in S.basis:
        if not S.contains(L.alpha_vec(v)):
            return False
    for u in S.basis:
        for j in range(L.n):
            if not S.contains(L.bracket_vec(u, L.basis_vector(j))):
                return False
    return True


# ---------------------------------------------------------------------------
# direct sums, morphisms, graphs
# ---------------------------------------------------------------------------

def direct_sum(L, G, name=None):
    """Componentwise bracket on L + G with block-diagonal twist."""
    if L.delta != G.delta:
        raise CheckError("direct sum of algebras with different delta signs",
                         check="delta")
    n, m = L.n, G.n
    entries = {}
    for (i, j, k), v in L.bracket.items():
        entries[(i, j, k)] = v
    for (i, j, k), v in G.bracket.items():
        entries[(n + i, n + j, n + k)] = v
    alpha = Matrix([
        [L.alpha[i, j] if i < n and j < n else
         (G.alpha[i - n, j - n] if i >= n and j >= n else Fraction(0))
         for j in range(n + m)]
        for i in range(n + m)])
    return HJLAlgebra(n + m, L.delta, Tensor3((n + m,) * 3, entries), alpha,
                      name=name)


class AlgebraMorphism:
    """Linear map between algebras, as a target.n x source.n matrix."""

    def __init__(self, source, target, phi):
        if phi.shape != (target.n, source.n):
            raise InputError(
                f"morphism matrix shape {phi.shape} != {(target.n, source.n)}")
        self.source = source
        self.target = target
        self.phi = phi


def morphism_violation(m):
    """None, or (which identity failed, first failing index tuple)."""
    L, G, phi = m.source, m.target, m.phi
    if phi @ L.alpha != G.alpha @ phi:
        col = next(j for j in range(L.n)
                   if (phi @ L.alpha).column(j) != (G.alpha @ phi).column(j))
        return ("twist_intertwines", (col,))
    for i, j in product(range(L.n), repeat=2):
        lhs = phi.apply(L.bracket_vec(L.basis_vector(i), L.basis_vector(j)))
        rhs = G.bracket_vec(phi.apply(L.basis_vector(i)),
                            phi.apply(L.basis_vector(j)))
        if lhs != rhs:
            return ("bracket_intertwines", (i, j))
    return None


def is_morphism(m):
    """phi[u,v] = [phi u, phi v] and phi o alpha = beta o phi on the basis."""
    return morphism_violation(m) is None


def graph_subspace(m):
    """span{(u, phi(u))} inside the direct sum of source and target."""
    L, G, phi = m.source, m.target, m.phi
    vectors = []
    for i in range(L.n):
        u = L.basis_vector(i)
        vectors.append(u + phi.apply(u))
    return Subspace(L.n + G.n, vectors)


# ---------------------------------------------------------------------------
# delta-hom-associative algebras and their commutator algebras
# ---------------------------------------------------------------------------

class DeltaHomAssociative:
    """Bilinear product with twist, tested against alpha(x)(yz) = delta (xy)alpha(z)."""

    def __init__(self, n, delta, product, alpha=None, name=None):
        if delta not in (1, -1):
            raise InputError("delta must be +1 or -1")
        self.n = n
        self.delta = delta
        if not isinstance(product, Tensor3):
            product = Tensor3((n, n, n), product)
        if product.dims != (n, n, n):
            raise InputError("product tensor dims mismatch")
        self.product = product
        self.alpha = Matrix.identity(n) if alpha is None else alpha
        if self.alpha.shape != (n, n):
            raise InputError("alpha shape mismatch")
        self.name = name

    def mul(self, u, v):
        return bilinear_eval(self.product, u, v)

    def basis_vector(self, i):
        return unit_vec(self.n, i)


def delta_hom_associative_violation(A):
    """First triple (i,j,k) with alpha(e_i)(e_j e_k) != delta (e_i e_j) alpha(e_k)."""
    for i, j, k in product(range(A.n), repeat=3):
        x, y, z = A.basis_vector(i), A.basis_vector(j), A.basis_vector(k)
        lhs = A.mul(A.alpha.apply(x), A.mul(y, z))
        rhs = tuple(A.delta * t for t in A.mul(A.mul(x, y), A.alpha.apply(z)))
        if lhs != rhs:
            return (i, j, k), lhs, rhs
    return None


def check_delta_hom_associative(A):
    return delta_hom_associative_violation(A) is None


def commutator_algebra(A, name=None):
    """Bracket [x,y] = xy - delta yx on a delta-hom-associative algebra."""
    viol = delta_hom_associative_violation(A)
    if viol is not None:
        raise CheckError(
            f"product is not delta-hom-associative at triple {viol[0]}",
            witness=viol[0], check="delta_hom_associative")
    entries = {}
    for i, j, k in product(range(A.n), repeat=3):
        c = A.product.get(i, j, k) - A.delta * A.product.get(j, i, k)
        if c != 0:
            entries[(i, j, k)] = c
    return HJLAlgebra(A.n, A.delta, Tensor3((A.n,) * 3, entries), A.alpha,
                      name=name)


# ---------------------------------------------------------------------------
# span helpers shared by the series and solver modules
# ---------------------------------------------------------------------------

def bracket_span(L, S, T):
    """Subspace spanned by [s, t] over basis vectors of S and T."""
    vectors = [L.bracket_vec(u, v) for u in S.basis for v in T.basis]
    return Subspace(L.n, echelon_basis(vectors))
