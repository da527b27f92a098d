"""Representations, the degree-1/2 twisted cochain complex, and extensions.

A representation of (L, [.,.], alpha) on V with respect to A is a linear
rho: L -> End(V) with

    rho(alpha u) o A = A o rho(u)
    rho([u,v]) o A  = rho(alpha u) o rho(v) - delta rho(alpha v) o rho(u)

k-hom-cochains are the multilinear maps compatible with the twists
(A o f = f o alpha in each slot). The differentials implemented here are

    d1 f(u1,u2)    = rho(a u1) f(u2) - delta rho(a u2) f(u1) - delta f([u1,u2])
    d2 w(u1,u2,u3) = rho(a^2 u1) w(u2,u3) - delta rho(a^2 u2) w(u1,u3)
                     + rho(a^2 u3) w(u1,u2) - w([u1,u2], a u3)
                     + delta w([u1,u3], a u2) - w([u2,u3], a u1)

The sign of the final d2 term is the one that makes d2 o d1 vanish
identically for both values of delta; the alternative with an extra delta
fails for delta = -1 and is pinned as a regression test.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra import HJLAlgebra, check_axioms
from .errors import CheckError, InputError
from .linalg import (
    LinearSystem,
    Matrix,
    SpanReducer,
    Tensor3,
    bilinear_eval,
    echelon_basis,
    is_zero_vec,
    unit_vec,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vec,
)

# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------


class Representation:
    """Module data: dimension m, twist A (m x m), one action matrix per basis element."""

    def __init__(self, algebra, A, rho, validate=True):
        self.algebra = algebra
        self.A = A
        self.rho = list(rho)
        if len(self.rho) != algebra.n:
            raise InputError("need one action matrix per basis element")
        m = A.rows
        if A.shape != (m, m):
            raise InputError("module twist A must be square")
        for r in self.rho:
            if r.shape != (m, m):
                raise InputError("action matrix shape mismatch")
        self.m = m
        if validate:
            rep = check_representation(self)
            if not rep.ok:
                raise CheckError(
                    f"representation identities fail ({rep.check} at {rep.witness})",
                    witness=rep.witness, check=rep.check)

    def act(self, u):
        """rho(u) for a coordinate vector u, by linearity."""
        out = Matrix.zeros(self.m, self.m)
        for i, c in enumerate(u):
            if c:
                out = out + self.rho[i].scale(c)
        return out


@dataclass
class RepReport:
    ok: bool
    witness: tuple | None = None
    check: str | None = None


def check_representation(r):
    """Both defining identities on basis tuples; witness = first failure."""
    L, A = r.algebra, r.A
    for i in range(L.n):
        lhs = r.act(L.alpha_vec(L.basis_vector(i))) @ A
        rhs = A @ r.rho[i]
        if lhs != rhs:
            return RepReport(False, (i,), "twist_compatibility")
    for i, j in product(range(L.n), repeat=2):
        u, v = L.basis_vector(i), L.basis_vector(j)
        lhs = r.act(L.bracket_vec(u, v)) @ A
        rhs = (r.act(L.alpha_vec(u)) @ r.rho[j]) - \
            (r.act(L.alpha_vec(v)) @ r.rho[i]).scale(L.delta)
        if lhs != rhs:
            return RepReport(False, (i, j), "bracket_action")
    return RepReport(True)


def trivial_representation(L, m=1):
    """Zero action with identity module twist."""
    return Representation(L, Matrix.identity(m),
                          [Matrix.zeros(m, m) for _ in range(L.n)])


def adjoint_representation(L, s=0):
    """Action of u on L itself by delta [alpha^s(u), .], with A = alpha."""
    if not L.is_multiplicative():
        raise CheckError("adjoint representations need a multiplicative twist",
                         check="multiplicative")
    a_s = L.alpha_power(s)
    rho = [L.left_bracket_matrix(a_s.apply(L.basis_vector(i))).scale(L.delta)
           for i in range(L.n)]
    return Representation(L, L.alpha, rho)


def coadjoint_obstruction(L):
    """First failing instance of the two dual-action compatibility conditions.

    With ad(x) = delta [x, .], the conditions are
        alpha o ad(alpha x) = ad(x) o alpha
        ad(x) o ad(alpha y) - delta ad(y) o ad(alpha x) = alpha o ad([x,y])
    Returns None when both hold on the basis.
    """
    def ad(u):
        return L.left_bracket_matrix(u).scale(L.delta)

    for i in range(L.n):
        x = L.basis_vector(i)
        if L.alpha @ ad(L.alpha_vec(x)) != ad(x) @ L.alpha:
            return ("twist_intertwines_action", (i,))
    for i, j in product(range(L.n), repeat=2):
        x, y = L.basis_vector(i), L.basis_vector(j)
        lhs = ad(x) @ ad(L.alpha_vec(y)) - (ad(y) @ ad(L.alpha_vec(x))).scale(L.delta)
        rhs = L.alpha @ ad(L.bracket_vec(x, y))
        if lhs != rhs:
            return ("bracket_action_dualizes", (i, j))
    return None


def coadjoint_representation(L):
    """Dual action on L*: rho(e_i) = -delta ad(e_i)^T, A = alpha^T.

    Returns None when the compatibility conditions fail (see
    coadjoint_obstruction for the witness).
    """
    if coadjoint_obstruction(L) is not None:
        return None
    rho = [L.left_bracket_matrix(L.basis_vector(i)).scale(L.delta)
           .transpose().scale(-L.delta) for i in range(L.n)]
    return Representation(L, L.alpha.transpose(), rho)


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------


class Cochain1:
    """Linear map L -> V compatible with the twists: A o f = f o alpha."""

    def __init__(self, representation, f, validate=True):
        self.rep = representation
        if f.shape != (representation.m, representation.algebra.n):
            raise InputError("1-cochain matrix shape mismatch")
        self.f = f
        if validate and representation.A @ f != f @ representation.algebra.alpha:
            raise CheckError("1-cochain is not twist-compatible (A f != f alpha)",
                             check="cochain_compat")

    def value(self, u):
        return self.f.apply(u)


class Cochain2:
    """Bilinear map L x L -> V with the sign rule and twist compatibility.

    Stored as a (n, n, m) tensor, w(i,j,.) = value on (e_i, e_j).
    Invariants: w(u,v) = -delta w(v,u) and A(w(u,v)) = w(alpha u, alpha v).
    """

    def __init__(self, representation, w, validate=True):
        self.rep = representation
        L, m = representation.algebra, representation.m
        if not isinstance(w, Tensor3):
            w = Tensor3((L.n, L.n, m), w)
        if w.dims != (L.n, L.n, m):
            raise InputError("2-cochain tensor dims mismatch")
        self.w = w
        if validate:
            bad = self._violation()
            if bad is not None:
                raise CheckError(f"2-cochain invariant fails: {bad[0]} at {bad[1]}",
                                 witness=bad[1], check=bad[0])

    def _violation(self):
        L, m, A = self.rep.algebra, self.rep.m, self.rep.A
        for i, j in product(range(L.n), repeat=2):
            lhs = self.w.slice12(i, j)
            rhs = vec_scale(-L.delta, self.w.slice12(j, i))
            if lhs != rhs:
                return ("sign_rule", (i, j))
        for i, j in product(range(L.n), repeat=2):
            lhs = A.apply(self.w.slice12(i, j))
            rhs = self.value(L.alpha_vec(L.basis_vector(i)),
                             L.alpha_vec(L.basis_vector(j)))
            if lhs != rhs:
                return ("cochain_compat", (i, j))
        return None

    def value(self, u, v):
        return bilinear_eval(self.w, u, v)

    def is_zero(self):
        return self.w.is_zero()

    def __eq__(self, other):
        return isinstance(other, Cochain2) and self.w == other.w


class Cochain3:
    """Trilinear output of d2; dense mapping (i,j,k) -> V-vector."""

    def __init__(self, n, m, values):
        self.n = n
        self.m = m
        self.values = values  # dict (i,j,k) -> tuple, zero entries omitted

    def get(self, i, j, k):
        return self.values.get((i, j, k), zero_vec(self.m))

    def is_zero(self):
        return not self.values

    def first_nonzero(self):
        if not self.values:
            return None
        key = min(self.values)
        return key, self.values[key]


def d1(c):
    """Degree-1 differential; the output satisfies the Cochain2 invariants."""
    r = c.rep
    L = r.algebra
    entries = {}
    for i, j in product(range(L.n), repeat=2):
        u, v = L.basis_vector(i), L.basis_vector(j)
        val = vec_sub(
            vec_sub(r.act(L.alpha_vec(u)).apply(c.value(v)),
                    vec_scale(L.delta, r.act(L.alpha_vec(v)).apply(c.value(u)))),
            vec_scale(L.delta, c.value(L.bracket_vec(u, v))))
        for a, x in enumerate(val):
            if x:
                entries[(i, j, a)] = x
    return Cochain2(r, Tensor3((L.n, L.n, r.m), entries))


def d2(c):
    """Degree-2 differential (rank-4 output, no invariants)."""
    r = c.rep
    L = r.algebra
    alpha2 = L.alpha @ L.alpha
    act2 = [r.act(alpha2.apply(L.basis_vector(i))) for i in range(L.n)]
    values = {}
    for i, j, k in product(range(L.n), repeat=3):
        u, v, w = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        total = act2[i].apply(c.value(v, w))
        total = vec_sub(total, vec_scale(L.delta, act2[j].apply(c.value(u, w))))
        total = vec_add(total, act2[k].apply(c.value(u, v)))
        total = vec_sub(total, c.value(L.bracket_vec(u, v), L.alpha_vec(w)))
        total = vec_add(total, vec_scale(
            L.delta, c.value(L.bracket_vec(u, w), L.alpha_vec(v))))
        total = vec_sub(total, c.value(L.bracket_vec(v, w), L.alpha_vec(u)))
        if not is_zero_vec(total):
            values[(i, j, k)] = total
    return Cochain3(L.n, r.m, values)


# ---------------------------------------------------------------------------
# cochain space solvers
# ---------------------------------------------------------------------------


def _c1_index(n, m, j, a):
    return j * m + a


def cochain1_space(r):
    """Echelon basis of all twist-compatible 1-cochains."""
    L, m, A = r.algebra, r.m, r.A
    n = L.n
    sys = LinearSystem(n * m)
    # (A f)(e_j) = f(alpha e_j), per output coordinate a
    for j, a in product(range(n), range(m)):
        coeffs = {}
        for b in range(m):
            coeffs[_c1_index(n, m, j, b)] = \
                coeffs.get(_c1_index(n, m, j, b), Fraction(0)) + A[a, b]
        for p in range(n):
            idx = _c1_index(n, m, p, a)
            coeffs[idx] = coeffs.get(idx, Fraction(0)) - L.alpha[p, j]
        sys.add(coeffs)
    out = []
    for v in sys.solution_basis():
        cols = [v[j * m:(j + 1) * m] for j in range(n)]
        out.append(Cochain1(r, Matrix.from_columns(cols)))
    return out


def _c2_index(n, m, i, j, a):
    return (i * n + j) * m + a


def _cochain2_constraints(r):
    """Homogeneous system cutting out the valid 2-cochains."""
    L, m, A = r.algebra, r.m, r.A
    n = L.n
    sys = LinearSystem(n * n * m)
    for i in range(n):
        for a in range(m):
            if L.delta == 1:
                sys.add({_c2_index(n, m, i, i, a): Fraction(2)})
            for j in range(i + 1, n):
                sys.add({_c2_index(n, m, i, j, a): Fraction(1),
                         _c2_index(n, m, j, i, a): Fraction(L.delta)})
    for i, j, a in product(range(n), range(n), range(m)):
        coeffs = {}
        for b in range(m):
            idx = _c2_index(n, m, i, j, b)
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + A[a, b]
        for p, q in product(range(n), repeat=2):
            c = L.alpha[p, i] * L.alpha[q, j]
            if c:
                idx = _c2_index(n, m, p, q, a)
                coeffs[idx] = coeffs.get(idx, Fraction(0)) - c
        sys.add(coeffs)
    return sys


def _d2_rows(r, sys):
    """Append the linearized d2 = 0 equations to an existing system."""
    L, m = r.algebra, r.m
    n = L.n
    alpha2 = L.alpha @ L.alpha
    act2 = [r.act(alpha2.apply(L.basis_vector(i))) for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        cij = L.bracket.slice12(i, j)
        cik = L.bracket.slice12(i, k)
        cjk = L.bracket.slice12(j, k)
        for out in range(m):
            coeffs = {}

            def rho_term(mat, p, q, sign):
                for b in range(m):
                    c = sign * mat[out, b]
                    if c:
                        idx = _c2_index(n, m, p, q, b)
                        coeffs[idx] = coeffs.get(idx, Fraction(0)) + c

            def bracket_term(cvec, col, sign):
                for p in range(n):
                    if not cvec[p]:
                        continue
                    for q in range(n):
                        c = sign * cvec[p] * L.alpha[q, col]
                        if c:
                            idx = _c2_index(n, m, p, q, out)
                            coeffs[idx] = coeffs.get(idx, Fraction(0)) + c

            rho_term(act2[i], j, k, Fraction(1))
            rho_term(act2[j], i, k, Fraction(-L.delta))
            rho_term(act2[k], i, j, Fraction(1))
            bracket_term(cij, k, Fraction(-1))
            bracket_term(cik, j, Fraction(L.delta))
            bracket_term(cjk, i, Fraction(-1))
            if coeffs:
                sys.add(coeffs)
    return sys


def cochain2_space(r):
    """Echelon basis of all valid 2-cochains (sign rule + compatibility)."""
    sys = _cochain2_constraints(r)
    return [_unflatten_cochain2(r, v) for v in sys.solution_basis()]


def _unflatten_cochain2(r, v):
    n, m = r.algebra.n, r.m
    entries = {}
    for i, j, a in product(range(n), range(n), range(m)):
        x = v[_c2_index(n, m, i, j, a)]
        if x:
            entries[(i, j, a)] = x
    return Cochain2(r, Tensor3((n, n, m), entries))


def _flatten_cochain2(c):
    n, m = c.rep.algebra.n, c.rep.m
    out = [Fraction(0)] * (n * n * m)
    for (i, j, a), x in c.w.items():
        out[_c2_index(n, m, i, j, a)] = x
    return tuple(out)


@dataclass
class Cohomology2:
    z2_basis: list
    b2_basis: list
    h2_dim: int
    valid_dim: int = 0


def cohomology2(r):
    """Closed and exact 2-cochains of a valid representation.

    Z2 is one nullspace call over {sign rule, compatibility, d2 = 0};
    B2 is the echelon span of d1 over a basis of valid 1-cochains.
    """
    rep_ok = check_representation(r)
    if not rep_ok.ok:
        raise CheckError("cohomology of an invalid representation",
                         witness=rep_ok.witness, check=rep_ok.check)
    valid_dim = len(cochain2_space(r))
    sys = _d2_rows(r, _cochain2_constraints(r))
    z2 = [_unflatten_cochain2(r, v) for v in sys.solution_basis()]
    images = [_flatten_cochain2(d1(f)) for f in cochain1_space(r)]
    b2_vecs = echelon_basis(images)
    b2 = [_unflatten_cochain2(r, v) for v in b2_vecs]
    z2_span = SpanReducer([_flatten_cochain2(c) for c in z2]) if z2 else None
    for v in b2_vecs:
        if z2_span is None or not z2_span.contains(v):
            raise CheckError("exact 2-cochain escaped the closed subspace "
                             "(d2 o d1 != 0)", check="b2_in_z2")
    return Cohomology2(z2, b2, len(z2) - len(b2), valid_dim)


# ---------------------------------------------------------------------------
# semidirect products and central extensions
# ---------------------------------------------------------------------------


def semidirect_product(r, name=None):
    """Algebra on L + V with [u+X, v+Y] = [u,v] + delta rho(u)Y - rho(v)X."""
    rep_ok = check_representation(r)
    if not rep_ok.ok:
        raise CheckError("semidirect product of an invalid representation",
                         witness=rep_ok.witness, check=rep_ok.check)
    L, m = r.algebra, r.m
    base = check_axioms(L)
    if not base.core_true():
        raise CheckError("semidirect product over a non-algebra",
                         witness=base.witness, check=base.witness_check)
    n = L.n
    entries = {key: v for key, v in L.bracket.items()}
    for i in range(n):
        for b in range(m):
            col = r.rho[i].column(b)
            for a in range(m):
                if col[a]:
                    entries[(i, n + b, n + a)] = L.delta * col[a]
                    entries[(n + b, i, n + a)] = -col[a]
    alpha = Matrix([
        [L.alpha[i, j] if i < n and j < n else
         (r.A[i - n, j - n] if i >= n and j >= n else Fraction(0))
         for j in range(n + m)]
        for i in range(n + m)])
    out = HJLAlgebra(n + m, L.delta, Tensor3((n + m,) * 3, entries), alpha,
                     name=name)
    report = check_axioms(out)
    if not report.core_true():
        raise CheckError("semidirect product failed the axiom check",
                         witness=report.witness, check=report.witness_check)
    return out


def central_extension(L, theta, name=None, check=True):
    """Adjoin a central generator with bracket shifted by a closed 2-cochain."""
    if theta.rep.m != 1:
        raise InputError("central extensions use rank-1 trivial-representation "
                         "cochains")
    if theta.rep.algebra is not L and theta.rep.algebra != L:
        raise InputError("cochain belongs to a different algebra")
    if check:
        closed = d2(theta)
        if not closed.is_zero():
            key, val = closed.first_nonzero()
            raise CheckError(f"2-cochain is not closed (d2 != 0 at {key})",
                             witness=key, check="closed")
    n = L.n
    entries = {key: v for key, v in L.bracket.items()}
    for (i, j, a), x in theta.w.items():
        entries[(i, j, n)] = x
    alpha = Matrix([
        [L.alpha[i, j] if i < n and j < n else Fraction(1 if i == j else 0)
         for j in range(n + 1)]
        for i in range(n + 1)])
    out = HJLAlgebra(n + 1, L.delta, Tensor3((n + 1,) * 3, entries), alpha,
                     name=name)
    if check:
        report = check_axioms(out)
        if not report.core_true():
            raise CheckError("central extension failed the axiom check",
                             witness=report.witness, check=report.witness_check)
    return out


def central_extensions_equivalent(L, theta1, theta2):
    """Solve theta1 - theta2 = delta d f over compatible f; verify the induced map.

    Returns the witness 1-cochain, or None when the difference is not exact.
    """
    r = theta1.rep
    if theta2.rep.m != r.m or r.m != 1:
        raise InputError("expected rank-1 cochains over the trivial representation")
    n = L.n
    sys = LinearSystem(n)
    # compatibility f(alpha e_j) = f(e_j)
    for j in range(n):
        coeffs = {j: Fraction(-1)}
        for p in range(n):
            coeffs[p] = coeffs.get(p, Fraction(0)) + L.alpha[p, j]
        sys.add(coeffs)
    # theta1(i,j) - theta2(i,j) = -f([e_i, e_j])
    for i, j in product(range(n), repeat=2):
        coeffs = {}
        for k in range(n):
            c = L.bracket.get(i, j, k)
            if c:
                coeffs[k] = coeffs.get(k, Fraction(0)) + c
        rhs = theta2.w.get(i, j, 0) - theta1.w.get(i, j, 0)
        sys.add(coeffs, rhs)
    sol = sys.particular_solution()
    if sol is None:
        return None
    f = Cochain1(r, Matrix([list(sol)]))
    _verify_central_intertwiner(L, theta1, theta2, f)
    return f


def _verify_central_intertwiner(L, theta1, theta2, f):
    """f_eta(u, s) = (u, s + f(u)) must map extension-1 onto extension-2."""
    n = L.n
    e1 = central_extension(L, theta1, check=False)
    e2 = central_extension(L, theta2, check=False)
    rows = [[Fraction(1 if i == j else 0) for j in range(n + 1)] for i in range(n)]
    rows.append([f.f[0, j] for j in range(n)] + [Fraction(1)])
    feta = Matrix(rows)
    if feta @ e1.alpha != e2.alpha @ feta:
        raise CheckError("equivalence witness does not commute with the twist",
                         check="intertwiner_twist")
    for i, j in product(range(n + 1), repeat=2):
        u, v = e1.basis_vector(i), e1.basis_vector(j)
        lhs = feta.apply(e1.bracket_vec(u, v))
        rhs = e2.bracket_vec(feta.apply(u), feta.apply(v))
        if lhs != rhs:
            raise CheckError("equivalence witness does not intertwine brackets",
                             witness=(i, j), check="intertwiner_bracket")


# ---------------------------------------------------------------------------
# 1-cocycles of the twisted adjoint actions vs derivations
# ---------------------------------------------------------------------------


def one_cocycle_space(r):
    """Echelon basis of {compatible f : d1 f = 0} as m x n matrices."""
    L, m, A = r.algebra, r.m, r.A
    n = L.n
    sys = LinearSystem(n * m)
    for j, a in product(range(n), range(m)):
        coeffs = {}
        for b in range(m):
            idx = _c1_index(n, m, j, b)
            coeffs[idx] = coeffs.get(idx, Fraction(0)) + A[a, b]
        for p in range(n):
            idx = _c1_index(n, m, p, a)
            coeffs[idx] = coeffs.get(idx, Fraction(0)) - L.alpha[p, j]
        sys.add(coeffs)
    acts = [r.act(L.alpha_vec(L.basis_vector(i))) for i in range(n)]
    for i, j in product(range(n), repeat=2):
        cij = L.bracket.slice12(i, j)
        for out in range(m):
            coeffs = {}
            for b in range(m):
                c = acts[i][out, b]
                if c:
                    idx = _c1_index(n, m, j, b)
                    coeffs[idx] = coeffs.get(idx, Fraction(0)) + c
            for b in range(m):
                c = L.delta * acts[j][out, b]
                if c:
                    idx = _c1_index(n, m, i, b)
                    coeffs[idx] = coeffs.get(idx, Fraction(0)) - c
            for p in range(n):
                if cij[p]:
                    idx = _c1_index(n, m, p, out)
                    coeffs[idx] = coeffs.get(idx, Fraction(0)) - L.delta * cij[p]
            if coeffs:
                sys.add(coeffs)
    out = []
    for v in sys.solution_basis():
        cols = [v[j * m:(j + 1) * m] for j in range(n)]
        out.append(Matrix.from_columns(cols))
    return out


def cocycle_derivation_match(L, s):
    """Degree-1 cocycles of the s-twisted adjoint action = (s+1)-derivations.

    Requires delta^(s+1) = 1; equality is decided by dimensions plus mutual
    span containment of the flattened matrices.
    """
    from .derivations import derivation_space

    if (1 if (s + 1) % 2 == 0 else L.delta) != 1:
        raise CheckError(f"exponent condition delta^(s+1) = 1 fails for s={s}",
                         check="delta_power")
    r = adjoint_representation(L, s)
    cocycles = one_cocycle_space(r)
    derivs = derivation_space(L, s + 1)
    flat_z = [m.entries for m in cocycles]
    flat_d = [m.entries for m in derivs]
    if len(flat_z) != len(flat_d):
        return False
    span_z = SpanReducer(flat_z) if flat_z else None
    span_d = SpanReducer(flat_d) if flat_d else None
    if span_z is None and span_d is None:
        return True
    return (span_z.contains_all(flat_d) and span_d.contains_all(flat_z))
