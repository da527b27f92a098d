"""Invariant bilinear forms, T*-extensions, series, and reconstruction.

The T*-extension places a dual-valued 2-cochain omega on L + L* with

    [x+f, y+g] = [x,y] + omega(x,y) + delta pi(x) g - pi(y) f
    alpha'(x+f) = alpha(x) + f o alpha
    q(x+f, y+g) = f(y) + g(x)

where pi is the dual action of the coadjoint representation. The hyperbolic
pairing q is always nondegenerate and symmetric; it is invariant exactly
when omega is Jordancyclic (omega(x,y)(z) = omega(y,z)(x)).
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .algebra import (
    HJLAlgebra,
    Subspace,
    bracket_span,
    check_axioms,
    is_ideal,
)
from .errors import CheckError, InputError
from .linalg import (
    LinearSystem,
    Matrix,
    SpanReducer,
    Tensor3,
    bilinear_eval,
    inverse,
    is_zero_vec,
    nullspace,
    rank,
    solve,
    unit_vec,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vec,
)
from .representations import Cochain2, coadjoint_obstruction, coadjoint_representation, d2

# ---------------------------------------------------------------------------
# bilinear forms
# ---------------------------------------------------------------------------


class BilinearForm:
    """Bilinear form on coordinates, f(e_i, e_j) = B[i, j]."""

    def __init__(self, B):
        if not B.is_square():
            raise InputError("bilinear form matrix must be square")
        self.B = B
        self.n = B.rows

    def value(self, u, v):
        return sum((bi * x for bi, x in zip(self.B.apply(v), u)), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, BilinearForm) and self.B == other.B


@dataclass
class FormReport:
    nondegenerate: bool
    invariant: bool
    jordansymmetric: bool
    witness: tuple | None = None

    def all_true(self):
        return self.nondegenerate and self.invariant and self.jordansymmetric


def check_form(L, f):
    """Nondegeneracy by rank; invariance and symmetry on basis tuples."""
    if f.n != L.n:
        raise InputError("form dimension != algebra dimension")
    nondeg = rank(f.B) == L.n
    sym = f.B == f.B.transpose()
    witness = None
    invariant = True
    for i, j, k in product(range(L.n), repeat=3):
        x, y, z = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        if f.value(L.bracket_vec(x, y), z) != f.value(x, L.bracket_vec(y, z)):
            invariant = False
            witness = (i, j, k)
            break
    return FormReport(nondeg, invariant, sym, witness)


def is_isotropic(f, S):
    """f vanishes on S x S."""
    return all(f.value(u, v) == 0 for u in S.basis for v in S.basis)


class QuadraticHJL:
    """Algebra with a nondegenerate invariant symmetric form, checked on entry."""

    def __init__(self, algebra, form):
        report = check_form(algebra, form)
        if not report.all_true():
            raise CheckError(
                f"form is not quadratic (nondegenerate={report.nondegenerate}, "
                f"invariant={report.invariant}, "
                f"jordansymmetric={report.jordansymmetric})",
                witness=report.witness, check="quadratic_form")
        self.algebra = algebra
        self.form = form


# ---------------------------------------------------------------------------
# dual-valued 2-cochains
# ---------------------------------------------------------------------------


class DualCochain2:
    """Bilinear omega: L x L -> L*, stored as w(i,j,k) = omega(e_i,e_j)(e_k).

    Invariants: the sign rule w(i,j,.) = -delta w(j,i,.) and compatibility
    omega(alpha x, alpha y) = omega(x, y) o alpha.
    """

    def __init__(self, L, w, validate=True):
        self.algebra = L
        if not isinstance(w, Tensor3):
            w = Tensor3((L.n, L.n, L.n), w)
        if w.dims != (L.n, L.n, L.n):
            raise InputError("dual 2-cochain dims mismatch")
        self.w = w
        if validate:
            bad = self._violation()
            if bad is not None:
                raise CheckError(f"dual 2-cochain invariant fails: {bad[0]} at "
                                 f"{bad[1]}", witness=bad[1], check=bad[0])

    def _violation(self):
        L = self.algebra
        for i, j in product(range(L.n), repeat=2):
            if self.w.slice12(i, j) != vec_scale(-L.delta, self.w.slice12(j, i)):
                return ("sign_rule", (i, j))
        at = L.alpha.transpose()
        for i, j in product(range(L.n), repeat=2):
            lhs = self.value(L.alpha_vec(L.basis_vector(i)),
                             L.alpha_vec(L.basis_vector(j)))
            rhs = at.apply(self.w.slice12(i, j))
            if lhs != rhs:
                return ("cochain_compat", (i, j))
        return None

    def value(self, u, v):
        return bilinear_eval(self.w, u, v)

    def is_zero(self):
        return self.w.is_zero()

    @classmethod
    def zero(cls, L):
        return cls(L, Tensor3((L.n,) * 3, {}))


def is_jordancyclic(L, omega):
    """w(i,j,k) = w(j,k,i) on all index triples."""
    w = omega.w
    return all(w.get(i, j, k) == w.get(j, k, i)
               for i, j, k in product(range(L.n), repeat=3))


def cyclic_average(L, omega_tensor):
    """Project a sign-ruled tensor onto its Jordancyclic part by averaging."""
    n = L.n
    entries = {}
    for i, j, k in product(range(n), repeat=3):
        v = (omega_tensor.get(i, j, k) + omega_tensor.get(j, k, i)
             + omega_tensor.get(k, i, j)) / 3
        if v:
            entries[(i, j, k)] = v
    return Tensor3((n,) * 3, entries)


# ---------------------------------------------------------------------------
# the 2-cocycle gate for T*-extensions
# ---------------------------------------------------------------------------


def _pi_matrices(L):
    """Dual action matrices pi(e_i) = -delta ad(e_i)^T with ad(x) = delta [x,.]."""
    out = []
    for i in range(L.n):
        ad = L.left_bracket_matrix(L.basis_vector(i)).scale(L.delta)
        out.append(ad.transpose().scale(-L.delta))
    return out


def tstar_cocycle_witness(L, omega):
    """First triple violating the extension's twisted Jacobi requirement:

        omega(alpha x, [y,z]) + delta pi(alpha x)(omega(y,z)) + cyclic = 0.
    """
    pis = _pi_matrices(L)

    def pi_vec(u):
        m = Matrix.zeros(L.n, L.n)
        for i, c in enumerate(u):
            if c:
                m = m + pis[i].scale(c)
        return m

    for i, j, k in product(range(L.n), repeat=3):
        x, y, z = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        total = zero_vec(L.n)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            aa = L.alpha_vec(a)
            total = vec_add(total, omega.value(aa, L.bracket_vec(b, c)))
            total = vec_add(total, vec_scale(
                L.delta, pi_vec(aa).apply(omega.value(b, c))))
        if not is_zero_vec(total):
            return (i, j, k)
    return None


def tstar_differential_witness(L, omega):
    """First nonzero entry of the degree-2 differential over the dual action."""
    rep = coadjoint_representation(L)
    if rep is None:
        return coadjoint_obstruction(L)[1]
    c = Cochain2(rep, omega.w)
    closed = d2(c)
    if closed.is_zero():
        return None
    return closed.first_nonzero()[0]


def _cocycle_gate(L, omega):
    """Shared preconditions for building T*-extensions.

    Both cocycle formulations are evaluated; if they ever disagree on a
    valid cochain that is a hard error, never reconciled silently.
    """
    if coadjoint_obstruction(L) is not None:
        raise CheckError(
            f"coadjoint action does not exist: {coadjoint_obstruction(L)}",
            witness=coadjoint_obstruction(L)[1], check="coadjoint")
    if not is_jordancyclic(L, omega):
        bad = next((i, j, k) for i, j, k in product(range(L.n), repeat=3)
                   if omega.w.get(i, j, k) != omega.w.get(j, k, i))
        raise CheckError("cochain is not Jordancyclic", witness=bad,
                         check="jordancyclic")
    qwit = tstar_cocycle_witness(L, omega)
    dwit = tstar_differential_witness(L, omega)
    if (qwit is None) != (dwit is None):
        raise CheckError(
            f"cocycle formulations disagree (identity witness {qwit}, "
            f"differential witness {dwit})", check="cocycle_divergence")
    if qwit is not None:
        raise CheckError("cochain is not a 2-cocycle", witness=qwit,
                         check="cocycle")


# ---------------------------------------------------------------------------
# the T*-extension
# ---------------------------------------------------------------------------


def _tstar_data(L, omega):
    """Bracket tensor, twist, and pairing of L + L*, before any verdicts."""
    n = L.n
    pis = _pi_matrices(L)
    entries = {key: v for key, v in L.bracket.items()}
    for (i, j, k), v in omega.w.items():
        entries[(i, j, n + k)] = v
    for i in range(n):
        for b in range(n):
            col = pis[i].column(b)
            for a in range(n):
                if col[a]:
                    entries[(i, n + b, n + a)] = L.delta * col[a]
                    entries[(n + b, i, n + a)] = -col[a]
    alpha = Matrix([
        [L.alpha[i, j] if i < n and j < n else
         (L.alpha[j - n, i - n] if i >= n and j >= n else Fraction(0))
         for j in range(2 * n)]
        for i in range(2 * n)])
    B = Matrix([[Fraction(1 if abs(i - j) == n else 0) for j in range(2 * n)]
                for i in range(2 * n)])
    return Tensor3((2 * n,) * 3, entries), alpha, BilinearForm(B)


def tstar_extension(L, omega=None, name=None):
    """Quadratic algebra on L + L* twisted by a Jordancyclic 2-cocycle.

    Postconditions verified on every call: the axioms hold, the pairing is
    quadratic, the dual half is an abelian ideal, and the quotient by it
    reproduces L.
    """
    if omega is None:
        omega = DualCochain2.zero(L)
    if omega.algebra is not L and omega.algebra != L:
        raise InputError("cochain belongs to a different algebra")
    _cocycle_gate(L, omega)
    tensor, alpha, q = _tstar_data(L, omega)
    ext = HJLAlgebra(2 * L.n, L.delta, tensor, alpha, name=name)
    report = check_axioms(ext)
    if not report.core_true():
        raise CheckError("extension failed the axiom check",
                         witness=report.witness, check=report.witness_check)
    quad = QuadraticHJL(ext, q)
    _verify_dual_half(L, ext)
    return quad


def _verify_dual_half(L, ext):
    n = L.n
    dual = Subspace(2 * n, [unit_vec(2 * n, n + a) for a in range(n)])
    if not is_ideal(ext, dual):
        raise CheckError("dual half is not an ideal", check="dual_ideal")
    for u in dual.basis:
        for v in dual.basis:
            if not is_zero_vec(ext.bracket_vec(u, v)):
                raise CheckError("dual half is not abelian", check="dual_abelian")
    for i, j in product(range(n), repeat=2):
        got = ext.bracket_vec(ext.basis_vector(i), ext.basis_vector(j))[:n]
        want = L.bracket_vec(L.basis_vector(i), L.basis_vector(j))
        if got != want:
            raise CheckError("quotient by the dual half does not reproduce the "
                             "base algebra", witness=(i, j), check="quotient")


# ---------------------------------------------------------------------------
# derived / central series
# ---------------------------------------------------------------------------


@dataclass
class SeriesReport:
    derived: list
    descending: list
    ascending: list
    solvable_length: int | None
    nilpotent_length: int | None


def series(L):
    """Derived, central descending, and central ascending chains.

    Each chain is iterated to stabilization; lengths are the first index
    where the corresponding chain hits zero, when it does.
    """
    full = Subspace.full(L.n)

    def iterate(step):
        chain = [full]
        while True:
            nxt = step(chain[-1])
            if nxt == chain[-1]:
                break
            chain.append(nxt)
            if nxt.dim == 0:
                break
        return chain

    derived = iterate(lambda S: bracket_span(L, S, S))
    descending = iterate(lambda S: bracket_span(L, S, full))

    ascending = [Subspace.zero(L.n)]
    while True:
        nxt = _centralizer_preimage(L, ascending[-1])
        if nxt == ascending[-1]:
            break
        ascending.append(nxt)

    solvable = len(derived) - 1 if derived[-1].dim == 0 else None
    nilpotent = len(descending) - 1 if descending[-1].dim == 0 else None
    return SeriesReport(derived, descending, ascending, solvable, nilpotent)


def _centralizer_preimage(L, S):
    """{a : [a, L] <= S}, one nullspace call.

    The residual of [x, e_j] against S is linear in x, so its coordinates
    stack into a homogeneous system.
    """
    n = L.n
    reducer = SpanReducer(list(S.basis))
    rows = []
    for j in range(n):
        residuals = [reducer.residual(
            L.bracket_vec(L.basis_vector(i), L.basis_vector(j)))
            for i in range(n)]
        for out in range(n):
            rows.append([residuals[i][out] for i in range(n)])
    if not rows:
        return Subspace.full(n)
    return Subspace(n, nullspace(Matrix(rows)))


@dataclass
class LengthBoundReport:
    solvable_base: int | None
    solvable_ext: int | None
    solvable_bound_ok: bool | None
    nilpotent_base: int | None
    nilpotent_ext: int | None
    nilpotent_bound_ok: bool | None


def check_length_bounds(L, omega=None):
    """Series lengths of L vs its T*-extension, against k<=r<=k+1 and k<=r<=2k-1."""
    ext = tstar_extension(L, omega).algebra
    s_base = series(L)
    s_ext = series(ext)
    k_s, r_s = s_base.solvable_length, s_ext.solvable_length
    k_n, r_n = s_base.nilpotent_length, s_ext.nilpotent_length
    solv_ok = None
    if k_s is not None:
        solv_ok = r_s is not None and k_s <= r_s <= k_s + 1
    nilp_ok = None
    if k_n is not None:
        nilp_ok = r_n is not None and k_n <= r_n <= 2 * k_n - 1
    return LengthBoundReport(k_s, r_s, solv_ok, k_n, r_n, nilp_ok)


# ---------------------------------------------------------------------------
# splitting the trivial extension along an ideal decomposition
# ---------------------------------------------------------------------------


def annihilator_in_dual(n, S):
    """Coordinates (in the dual basis) of forms vanishing on the subspace."""
    if S.dim == 0:
        return [unit_vec(n, a) for a in range(n)]
    from .linalg import nullspace
    return nullspace(Matrix([list(v) for v in S.basis]))


def tstar_split(L, I, J):
    """T*0(I) = I + ann(J) and T*0(J) = J + ann(I) inside T*0(L).

    Both are returned as verified ideals whose direct sum is everything.
    """
    n = L.n
    if I.dim == 0 or J.dim == 0:
        raise CheckError("decomposition requires two nonzero ideals",
                         check="nonzero")
    if not is_ideal(L, I) or not is_ideal(L, J):
        raise CheckError("decomposition components must be ideals",
                         check="ideal")
    if I.dim + J.dim != n or SpanReducer(
            list(I.basis) + list(J.basis)).dim != n:
        raise CheckError("subspaces do not decompose the algebra",
                         check="direct_sum")
    ext = tstar_extension(L).algebra

    def embed_primal(v):
        return tuple(v) + zero_vec(n)

    def embed_dual(g):
        return zero_vec(n) + tuple(g)

    half_i = Subspace(2 * n, [embed_primal(v) for v in I.basis]
                      + [embed_dual(g) for g in annihilator_in_dual(n, J)])
    half_j = Subspace(2 * n, [embed_primal(v) for v in J.basis]
                      + [embed_dual(g) for g in annihilator_in_dual(n, I)])
    if not is_ideal(ext, half_i) or not is_ideal(ext, half_j):
        raise CheckError("split halves failed the ideal check", check="ideal")
    if SpanReducer(list(half_i.basis) + list(half_j.basis)).dim != 2 * n:
        raise CheckError("split halves do not span the extension",
                         check="direct_sum")
    return half_i, half_j


# ---------------------------------------------------------------------------
# recognizing T*-extensions: reconstruction from an isotropic ideal
# ---------------------------------------------------------------------------


@dataclass
class ReconstructResult:
    base: HJLAlgebra
    cochain: DualCochain2
    phi: Matrix
    complement: Subspace


def _isotropic_complement(Q, I):
    """An alpha-stable isotropic complement to I, by hyperbolic correction.

    Seeds are coordinate complements (echelon complement first); each seed
    w_i is corrected to w_i - mu(w_i) with mu(w_i) in I solving
    q(w_j, mu(w_i)) = q(w_j, w_i)/2, which kills all pairings at once.
    Fails loudly if no seed yields an alpha-stable complement.
    """
    L, q = Q.algebra, Q.form
    n = L.n
    m = I.dim
    pivots = set(SpanReducer(list(I.basis)).pivots)
    echelon_seed = tuple(sorted(set(range(n)) - pivots))
    seeds = [echelon_seed] + [s for s in combinations(range(n), n - m)
                              if s != echelon_seed]
    ibasis = list(I.basis)
    fallback = None
    for seed in seeds:
        W = [unit_vec(n, c) for c in seed]
        if SpanReducer(ibasis + W).dim != n:
            continue
        G = Matrix([[q.value(wj, ib) for ib in ibasis] for wj in W])
        if inverse(G) is None:
            continue
        basis = []
        for wi in W:
            rhs = tuple(q.value(wj, wi) / 2 for wj in W)
            mu = solve(G, rhs)
            corr = zero_vec(n)
            for c, ib in zip(mu, ibasis):
                corr = vec_add(corr, vec_scale(c, ib))
            basis.append(vec_sub(wi, corr))
        B0 = Subspace(n, basis)
        if B0.dim != n - m or not is_isotropic(q, B0):
            raise CheckError("complement correction failed to produce an "
                             "isotropic complement", check="complement")
        if all(B0.contains(L.alpha_vec(v)) for v in B0.basis):
            return B0
        if fallback is None:
            fallback = B0
    raise CheckError(
        "no alpha-stable isotropic complement exists among coordinate-seeded "
        "complements; the reconstruction cannot proceed", check="complement")


def reconstruct_from_isotropic_ideal(Q, I):
    """Recover (base, cochain, isometry) exhibiting Q as a T*-extension.

    Requires dim L even and I an isotropic ideal of half dimension; I is
    verified abelian, an alpha-stable isotropic complement is constructed,
    and the assembled map is machine-verified to be a bijective isometry
    intertwining brackets and twists.
    """
    L, q = Q.algebra, Q.form
    n = L.n
    if n % 2 != 0:
        raise CheckError("dimension must be even", check="even_dim")
    if I.dim != n // 2:
        raise CheckError(f"ideal dimension {I.dim} != {n // 2}", check="half_dim")
    if not is_ideal(L, I):
        bad = next(((tuple(u), j) for u in I.basis for j in range(n)
                    if not I.contains(L.bracket_vec(u, L.basis_vector(j)))),
                   None)
        raise CheckError("subspace is not an ideal", witness=bad, check="ideal")
    if not is_isotropic(q, I):
        raise CheckError("ideal is not isotropic", check="isotropic")
    for u in I.basis:
        for v in I.basis:
            if not is_zero_vec(L.bracket_vec(u, v)):
                raise CheckError("isotropic half-dimension ideal must be "
                                 "abelian; found nonzero internal bracket",
                                 witness=(tuple(u), tuple(v)), check="abelian")

    B0 = _isotropic_complement(Q, I)
    m = n // 2
    b = list(B0.basis)
    iota = list(I.basis)
    S = Matrix.from_columns(b + iota)
    S_inv = inverse(S)

    def split_coords(v):
        c = S_inv.apply(v)
        return c[:m], c[m:]

    # base algebra on the complement representatives
    entries = {}
    beta_cols = []
    for i in range(m):
        p0, p1 = split_coords(L.alpha_vec(b[i]))
        if any(p1):
            raise CheckError("twist left the complement", check="complement")
        beta_cols.append(p0)
    for i, j in product(range(m), repeat=2):
        p0, _ = split_coords(L.bracket_vec(b[i], b[j]))
        for k, x in enumerate(p0):
            if x:
                entries[(i, j, k)] = x
    base = HJLAlgebra(m, L.delta, Tensor3((m,) * 3, entries),
                      Matrix.from_columns(beta_cols))

    # dual-valued cochain from the ideal components of complement brackets
    w_entries = {}
    for i, j in product(range(m), repeat=2):
        _, p1 = split_coords(L.bracket_vec(b[i], b[j]))
        residue = zero_vec(n)
        for c, ib in zip(p1, iota):
            residue = vec_add(residue, vec_scale(c, ib))
        for k in range(m):
            val = q.value(residue, b[k])
            if val:
                w_entries[(i, j, k)] = val
    omega = DualCochain2(base, Tensor3((m,) * 3, w_entries))

    ext = tstar_extension(base, omega)
    # phi(b_i) = e_i, phi(iota_a) = sum_k q(iota_a, b_k) f_k
    cols = []
    for i in range(m):
        cols.append(unit_vec(2 * m, i))
    for a in range(m):
        cols.append(zero_vec(m) + tuple(q.value(iota[a], b[k]) for k in range(m)))
    phi = Matrix.from_columns(cols) @ S_inv
    _verify_isometric_isomorphism(Q, ext, phi)
    return ReconstructResult(base, omega, phi, B0)


def _verify_isometric_isomorphism(Q1, Q2, phi):
    """phi must be bijective, intertwine brackets and twists, and preserve forms."""
    L1, L2 = Q1.algebra, Q2.algebra
    if inverse(phi) is None:
        raise CheckError("map is not bijective", check="iso_bijective")
    if phi @ L1.alpha != L2.alpha @ phi:
        raise CheckError("map does not intertwine the twists", check="iso_twist")
    for i, j in product(range(L1.n), repeat=2):
        u, v = L1.basis_vector(i), L1.basis_vector(j)
        if phi.apply(L1.bracket_vec(u, v)) != \
                L2.bracket_vec(phi.apply(u), phi.apply(v)):
            raise CheckError("map does not intertwine brackets",
                             witness=(i, j), check="iso_bracket")
        if Q1.form.value(u, v) != Q2.form.value(phi.apply(u), phi.apply(v)):
            raise CheckError("map is not an isometry", witness=(i, j),
                             check="iso_form")


# ---------------------------------------------------------------------------
# equivalence of T*-extensions
# ---------------------------------------------------------------------------


class DualCochain1:
    """Linear z: L -> L*; pairing(i, j) = z(e_i)(e_j)."""

    def __init__(self, L, map_matrix):
        if map_matrix.shape != (L.n, L.n):
            raise InputError("dual 1-cochain matrix shape mismatch")
        self.algebra = L
        self.map = map_matrix  # column j = dual coordinates of z(e_j)

    def pairing(self):
        return self.map.transpose()

    def symmetric_part(self):
        P = self.pairing()
        return (P + P.transpose()).scale(Fraction(1, 2))


@dataclass
class EquivalenceResult:
    witness: DualCochain1 | None
    isometric: bool


def _equivalence_system(L, w1, w2, require_compat):
    n = L.n
    pis = _pi_matrices(L)
    sys = LinearSystem(n * n)

    def idx(a, j):
        return a * n + j

    if require_compat:
        # z o alpha = (. o alpha) o z, entrywise
        for a, j in product(range(n), repeat=2):
            coeffs = {}
            for p in range(n):
                coeffs[idx(a, p)] = coeffs.get(idx(a, p), Fraction(0)) \
                    + L.alpha[p, j]
                coeffs[idx(p, j)] = coeffs.get(idx(p, j), Fraction(0)) \
                    - L.alpha[p, a]
            sys.add(coeffs)
    for i, j in product(range(n), repeat=2):
        cij = L.bracket.slice12(i, j)
        for k in range(n):
            coeffs = {}
            for a in range(n):
                c = L.delta * pis[i][k, a]
                if c:
                    coeffs[idx(a, j)] = coeffs.get(idx(a, j), Fraction(0)) + c
                c = pis[j][k, a]
                if c:
                    coeffs[idx(a, i)] = coeffs.get(idx(a, i), Fraction(0)) - c
            for p in range(n):
                if cij[p]:
                    coeffs[idx(k, p)] = coeffs.get(idx(k, p), Fraction(0)) \
                        - cij[p]
            rhs = w1.w.get(i, j, k) - w2.w.get(i, j, k)
            sys.add(coeffs, rhs)
    return sys


def tstar_equivalence(L, w1, w2, require_compat=True):
    """Solve for z with w1 - w2 = delta pi(.)z(.) - pi(.)z(.) - z([.,.]).

    Isometric equivalence additionally demands a solution whose symmetric
    pairing part vanishes; that stronger system is attempted first so the
    returned witness has zero symmetric part exactly when one exists.
    """
    for w in (w1, w2):
        _cocycle_gate(L, w)
    n = L.n
    base = _equivalence_system(L, w1, w2, require_compat)
    sol = base.particular_solution()
    if sol is None:
        return EquivalenceResult(None, False)
    strict = _equivalence_system(L, w1, w2, require_compat)
    for a in range(n):
        strict.add({a * n + a: Fraction(2)})
        for j in range(a + 1, n):
            strict.add({a * n + j: Fraction(1), j * n + a: Fraction(1)})
    strict_sol = strict.particular_solution()
    chosen = strict_sol if strict_sol is not None else sol
    z = DualCochain1(L, Matrix([[chosen[a * n + j] for j in range(n)]
                                for a in range(n)]))
    _verify_equivalence_map(L, w1, w2, z, require_compat)
    return EquivalenceResult(z, strict_sol is not None)


def equivalence_shift_map(L, z):
    """Phi(x + f) = x + z(x) + f on the doubled space."""
    n = L.n
    rows = []
    for i in range(n):
        rows.append([Fraction(1 if j == i else 0) for j in range(2 * n)])
    for a in range(n):
        rows.append([z.map[a, j] for j in range(n)]
                    + [Fraction(1 if j == a else 0) for j in range(n)])
    return Matrix(rows)


def _verify_equivalence_map(L, w1, w2, z, require_compat):
    n = L.n
    t1, alpha, q = _tstar_data(L, w1)
    t2, _, _ = _tstar_data(L, w2)
    e1 = HJLAlgebra(2 * n, L.delta, t1, alpha)
    e2 = HJLAlgebra(2 * n, L.delta, t2, alpha)
    phi = equivalence_shift_map(L, z)
    for a in range(n):
        f_a = unit_vec(2 * n, n + a)
        if phi.apply(f_a) != f_a:
            raise CheckError("shift map moved the dual half", check="fixes_dual")
    for i, j in product(range(2 * n), repeat=2):
        u, v = e1.basis_vector(i), e1.basis_vector(j)
        lhs = phi.apply(e1.bracket_vec(u, v))
        rhs = e2.bracket_vec(phi.apply(u), phi.apply(v))
        if lhs != rhs:
            raise CheckError("shift map does not intertwine brackets",
                             witness=(i, j), check="iso_bracket")
    if require_compat and phi @ alpha != alpha @ phi:
        raise CheckError("shift map does not commute with the twist",
                         check="iso_twist")
    # quantitative pairing identity and invariance of the symmetric part
    zs = z.symmetric_part()
    for i, j in product(range(2 * n), repeat=2):
        u, v = e1.basis_vector(i), e1.basis_vector(j)
        shift = 2 * zs[i, j] if i < n and j < n else Fraction(0)
        if q.value(phi.apply(u), phi.apply(v)) != shift + q.value(u, v):
            raise CheckError("pairing shift identity failed", witness=(i, j),
                             check="pairing_shift")
    zform = BilinearForm(zs)
    for i, j, k in product(range(n), repeat=3):
        x, y, mv = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        if zform.value(L.bracket_vec(x, y), mv) != \
                zform.value(x, L.bracket_vec(y, mv)):
            raise CheckError("symmetric part does not induce an invariant form",
                             witness=(i, j, k), check="zs_invariant")


# ---------------------------------------------------------------------------
# solver: Jordancyclic cocycles
# ---------------------------------------------------------------------------


def jordancyclic_cocycle_space(L):
    """Echelon basis of all valid Jordancyclic 2-cocycles on L.

    One nullspace call over {sign rule, compatibility, cyclicity, cocycle
    condition} in the n^3 tensor entries.
    """
    if coadjoint_obstruction(L) is not None:
        raise CheckError("coadjoint action does not exist",
                         witness=coadjoint_obstruction(L)[1], check="coadjoint")
    n = L.n
    pis = _pi_matrices(L)
    sys = LinearSystem(n ** 3)

    def idx(i, j, k):
        return (i * n + j) * n + k

    for i, j, k in product(range(n), repeat=3):
        if i < j:
            sys.add({idx(i, j, k): Fraction(1), idx(j, i, k): Fraction(L.delta)})
        elif i == j and L.delta == 1:
            sys.add({idx(i, i, k): Fraction(2)})
        sys.add({idx(i, j, k): Fraction(1), idx(j, k, i): Fraction(-1)})
    for i, j, k in product(range(n), repeat=3):
        coeffs = {}
        for p, qq in product(range(n), repeat=2):
            c = L.alpha[p, i] * L.alpha[qq, j]
            if c:
                coeffs[idx(p, qq, k)] = coeffs.get(idx(p, qq, k), Fraction(0)) + c
        for b in range(n):
            c = L.alpha[b, k]
            if c:
                coeffs[idx(i, j, b)] = coeffs.get(idx(i, j, b), Fraction(0)) - c
        if coeffs:
            sys.add(coeffs)
    # cocycle condition, linear in the tensor entries
    pis_alpha = []
    for i in range(n):
        m = Matrix.zeros(n, n)
        for p in range(n):
            if L.alpha[p, i]:
                m = m + pis[p].scale(L.alpha[p, i])
        pis_alpha.append(m)
    for i, j, k in product(range(n), repeat=3):
        for out in range(n):
            coeffs = {}
            for (a, bb, cc) in ((i, j, k), (j, k, i), (k, i, j)):
                cbc = L.bracket.slice12(bb, cc)
                for p in range(n):
                    if not L.alpha[p, a]:
                        continue
                    for qq in range(n):
                        if cbc[qq]:
                            c = L.alpha[p, a] * cbc[qq]
                            coeffs[idx(p, qq, out)] = \
                                coeffs.get(idx(p, qq, out), Fraction(0)) + c
                for b2 in range(n):
                    c = L.delta * pis_alpha[a][out, b2]
                    if c:
                        coeffs[idx(bb, cc, b2)] = \
                            coeffs.get(idx(bb, cc, b2), Fraction(0)) + c
            if coeffs:
                sys.add(coeffs)
    out = []
    for v in sys.solution_basis():
        entries = {}
        for i, j, k in product(range(n), repeat=3):
            if v[idx(i, j, k)]:
                entries[(i, j, k)] = v[idx(i, j, k)]
        out.append(DualCochain2(L, Tensor3((n,) * 3, entries)))
    return out
