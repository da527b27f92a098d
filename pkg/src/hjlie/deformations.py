"""One-parameter bracket deformations and hom-Nijenhuis operators.

A bilinear psi compatible with alpha deforms the bracket to
[u,v]_t = [u,v] + t psi(u,v). The formal parameter is never instantiated:
every t-dependent identity is compared coefficientwise, degree by degree,
which is exact and complete since nothing exceeds degree two.
"""

from dataclasses import dataclass
from itertools import product

from .errors import CheckError, InputError
from .linalg import Matrix, Tensor3, is_zero_vec, vec_add, vec_scale, vec_sub
from .representations import Cochain2, Representation


def deformation_cochain(L, psi_tensor, validate=True):
    """Wrap an (n,n,n) tensor as a 2-cochain on L valued in L, twisted by alpha.

    Only the cochain invariants matter here (sign rule and compatibility
    alpha o psi = psi o (alpha x alpha)), so the carrier representation has
    zero action with A = alpha.
    """
    carrier = Representation(L, L.alpha,
                             [Matrix.zeros(L.n, L.n) for _ in range(L.n)])
    return Cochain2(carrier, psi_tensor, validate=validate)


def _require_commutes(L, N):
    if N.shape != (L.n, L.n):
        raise InputError("operator shape mismatch")
    if N @ L.alpha != L.alpha @ N:
        raise CheckError("operator does not commute with alpha",
                         check="alpha_commutes")


def nijenhuis_bracket(L, N):
    """Deformed bracket [u,v]_N = [Nu, v] + [u, Nv] - N[u, v] as a tensor."""
    _require_commutes(L, N)
    entries = {}
    for i, j in product(range(L.n), repeat=2):
        u, v = L.basis_vector(i), L.basis_vector(j)
        val = vec_sub(
            vec_add(L.bracket_vec(N.apply(u), v), L.bracket_vec(u, N.apply(v))),
            N.apply(L.bracket_vec(u, v)))
        for k, x in enumerate(val):
            if x:
                entries[(i, j, k)] = x
    return Tensor3((L.n,) * 3, entries)


def is_nijenhuis(L, N):
    """[Nu, Nv] = N([u,v]_N) on all basis pairs."""
    _require_commutes(L, N)
    cn = nijenhuis_bracket(L, N)
    for i, j in product(range(L.n), repeat=2):
        u, v = L.basis_vector(i), L.basis_vector(j)
        lhs = L.bracket_vec(N.apply(u), N.apply(v))
        rhs = N.apply(tuple(cn.get(i, j, k) for k in range(L.n)))
        if lhs != rhs:
            return False
    return True


@dataclass
class DeformationReport:
    bracket_square: bool      # psi(alpha u, psi(v,w)) + cyclic = 0
    bracket_mixed: bool       # psi(alpha u, [v,w]) + [alpha u, psi(v,w)] + cyclic = 0
    witness: tuple | None = None

    @property
    def ok(self):
        return self.bracket_square and self.bracket_mixed


def check_deformation(L, psi):
    """Both closure conditions of a deforming cochain, reported separately.

    These are the t^2 and t^1 coefficients of the twisted Jacobi identity
    of the deformed bracket; the t^0 coefficient is the identity for the
    undeformed bracket.
    """
    c2 = psi if isinstance(psi, Cochain2) else deformation_cochain(L, psi)
    sq_witness = mixed_witness = None
    for i, j, k in product(range(L.n), repeat=3):
        x, y, z = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        sq = None
        mixed = None
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            aa = L.alpha_vec(a)
            term_sq = c2.value(aa, c2.value(b, c))
            term_mx = vec_add(c2.value(aa, L.bracket_vec(b, c)),
                              L.bracket_vec(aa, c2.value(b, c)))
            sq = term_sq if sq is None else vec_add(sq, term_sq)
            mixed = term_mx if mixed is None else vec_add(mixed, term_mx)
        if sq_witness is None and not is_zero_vec(sq):
            sq_witness = (i, j, k)
        if mixed_witness is None and not is_zero_vec(mixed):
            mixed_witness = (i, j, k)
        if sq_witness and mixed_witness:
            break
    return DeformationReport(
        bracket_square=sq_witness is None,
        bracket_mixed=mixed_witness is None,
        witness=sq_witness or mixed_witness)


def deformation_from_nijenhuis(L, N):
    """The deforming cochain [.,.]_N of a Nijenhuis operator.

    Postconditions asserted: the result passes check_deformation, and on
    regular algebras it equals delta times the degree-1 differential of N
    in the (-1)-twisted adjoint complex.
    """
    if not is_nijenhuis(L, N):
        raise CheckError("operator fails the Nijenhuis identity "
                         "[Nu,Nv] = N[u,v]_N", check="nijenhuis")
    tensor = nijenhuis_bracket(L, N)
    psi = deformation_cochain(L, tensor)
    report = check_deformation(L, psi)
    if not report.ok:
        raise CheckError("Nijenhuis-induced cochain failed the deformation "
                         "conditions", witness=report.witness,
                         check="deformation")
    from .linalg import inverse
    if inverse(L.alpha) is not None:
        _verify_shifted_differential(L, N, tensor)
    return psi


def _verify_shifted_differential(L, N, tensor):
    """d_{-1} N (u,v) = delta [u,Nv] - [v,Nu] - delta N[u,v] must equal delta [u,v]_N."""
    for i, j in product(range(L.n), repeat=2):
        u, v = L.basis_vector(i), L.basis_vector(j)
        lhs = vec_sub(
            vec_sub(vec_scale(L.delta, L.bracket_vec(u, N.apply(v))),
                    L.bracket_vec(v, N.apply(u))),
            vec_scale(L.delta, N.apply(L.bracket_vec(u, v))))
        rhs = vec_scale(L.delta, tuple(tensor.get(i, j, k) for k in range(L.n)))
        if lhs != rhs:
            raise CheckError("shifted-differential identity failed",
                             witness=(i, j), check="shifted_differential")


def trivialization_coefficients(L, N):
    """Degree-k tensors of both sides of (id + tN)[u,v]_t = [(id+tN)u, (id+tN)v].

    Returns {degree: (lhs_tensor, rhs_tensor)} for degrees 0, 1, 2.
    """
    _require_commutes(L, N)
    cn = nijenhuis_bracket(L, N)
    n = L.n

    def tensor_from(fn):
        entries = {}
        for i, j in product(range(n), repeat=2):
            val = fn(i, j)
            for k, x in enumerate(val):
                if x:
                    entries[(i, j, k)] = x
        return Tensor3((n,) * 3, entries)

    def cn_vec(i, j):
        return tuple(cn.get(i, j, k) for k in range(n))

    base = tensor_from(lambda i, j: L.bracket_vec(L.basis_vector(i),
                                                  L.basis_vector(j)))
    lhs1 = tensor_from(lambda i, j: vec_add(
        cn_vec(i, j),
        N.apply(L.bracket_vec(L.basis_vector(i), L.basis_vector(j)))))
    rhs1 = tensor_from(lambda i, j: vec_add(
        L.bracket_vec(N.apply(L.basis_vector(i)), L.basis_vector(j)),
        L.bracket_vec(L.basis_vector(i), N.apply(L.basis_vector(j)))))
    lhs2 = tensor_from(lambda i, j: N.apply(cn_vec(i, j)))
    rhs2 = tensor_from(lambda i, j: L.bracket_vec(
        N.apply(L.basis_vector(i)), N.apply(L.basis_vector(j))))
    return {0: (base, base), 1: (lhs1, rhs1), 2: (lhs2, rhs2)}


def verify_trivial_deformation(L, N):
    """Polynomial identity T_t[u,v]_t = [T_t u, T_t v], degree by degree."""
    if not is_nijenhuis(L, N):
        raise CheckError("operator fails the Nijenhuis identity",
                         check="nijenhuis")
    coeffs = trivialization_coefficients(L, N)
    return all(lhs == rhs for lhs, rhs in coeffs.values())
