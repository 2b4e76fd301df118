"""The spinor-to-polyvector bracket and the pointwise rank lemmas.

bracket_k solves g([s,t]_k, xi) = h(gamma_xi s, t) for the unique
degree-k polyvector; everything here is exact coordinate linear algebra
on a fixed spinor module.
"""

from __future__ import annotations

from dataclasses import dataclass

from .admissible_forms import BilinearForm
from .clifford_core import (
    CliffordRep,
    Polyvector,
    blade_index_list,
    gamma_blade,
    gamma_vector,
    metric_value,
)
from .exact_linalg import Matrix, column_space_basis, kernel, rank


@dataclass(frozen=True)
class SpinorSubspace:
    rep: CliffordRep
    basis: Matrix  # N x d, full column rank

    def __post_init__(self):
        if self.basis.rows != self.rep.N:
            raise ValueError("basis rows must equal the module dimension")
        if self.basis.cols and rank(self.basis) != self.basis.cols:
            raise ValueError("basis columns must be independent")

    @property
    def dim(self):
        return self.basis.cols

    @classmethod
    def full(cls, rep):
        return cls(rep, Matrix.identity(rep.N))

    @classmethod
    def trivial(cls, rep):
        return cls(rep, Matrix([[] for _ in range(rep.N)]))


def _column(values):
    return Matrix.column(list(values))


def bracket_k(rep: CliffordRep, form: BilinearForm, s, t, k: int) -> Polyvector:
    """The degree-k polyvector with g(., e_I) = h(gamma_{e_I} s, t).

    For k = 0 this is the scalar h(s, t).
    """
    if not form.nondegenerate:
        raise ValueError("bracket requires a nondegenerate form")
    if not 0 <= k <= rep.n:
        raise ValueError("degree out of range")
    h = form.matrix
    s_col = _column(s)
    t_col = _column(t)
    coeffs = []
    for indices in blade_index_list(rep.n, k):
        g_i = gamma_blade(rep, indices)
        val = ((g_i * s_col).transpose() * h * t_col)[0, 0]
        denom = 1
        for i in indices:
            denom *= rep.eta[i]
        coeffs.append(val if denom == 1 else -val)
    return Polyvector(rep.n, k, tuple(coeffs))


def null_kernel(rep: CliffordRep, form: BilinearForm, v) -> SpinorSubspace:
    """L_v = ker gamma_v for a nonzero null vector, with the lemma checks:
    dim = N/2, ker = im, and the h-pairing vanishes on L_v x L_v.
    """
    if all(not c for c in v):
        raise ValueError("null vector must be nonzero")
    if rep.signature.is_definite():
        raise ValueError("definite signature admits no nonzero null vectors")
    if metric_value(rep.eta, v, v) != 0:
        raise ValueError("not null")
    gv = gamma_vector(rep, v)
    basis = kernel(gv)
    if 2 * basis.cols != rep.N:
        raise ArithmeticError("kernel dimension is not N/2")
    if rank(gv) != rep.N - basis.cols:
        raise ArithmeticError("rank defect")
    if not (gv * gv).is_zero():
        raise ArithmeticError("gamma_v squared must vanish on a null vector")
    # im = ker follows from gv^2 = 0 plus the dimension count
    pairing = basis.transpose() * form.matrix * basis
    if not pairing.is_zero():
        raise ArithmeticError("kernel is not h-isotropic")
    return SpinorSubspace(rep, basis)


def obstruction_vectors(rep: CliffordRep, form: BilinearForm, space: SpinorSubspace) -> Matrix:
    """Basis of {v : gamma_v S0 is h-orthogonal to S0}, an n x k matrix.

    The restricted bracket S0 x S0 -> R^n is surjective exactly when
    this space is zero.
    """
    if not form.nondegenerate:
        raise ValueError("requires a nondegenerate form")
    d = space.dim
    if d == 0:
        return Matrix.identity(rep.n)
    rows = []
    b = space.basis
    bt_h = b.transpose() * form.matrix
    for a in range(d):
        for c in range(d):
            row = []
            for i in range(rep.n):
                g_b = rep.generators[i] * b
                val = sum(
                    bt_h.data[a][m] * g_b.data[m][c] for m in range(rep.N)
                )
                row.append(val)
            rows.append(row)
    return kernel(Matrix(rows))


def pi_image(rep: CliffordRep, form: BilinearForm, a: SpinorSubspace, b: SpinorSubspace):
    """(dimension, basis) of span{[s,t]_1 : s in A, t in B} over basis pairs."""
    cols = []
    for i in range(a.dim):
        s = a.basis.col(i)
        for j in range(b.dim):
            t = b.basis.col(j)
            cols.append(list(bracket_k(rep, form, s, t, 1).coeffs))
    if not cols:
        return 0, Matrix([[] for _ in range(rep.n)])
    m = Matrix.from_columns(cols)
    basis = column_space_basis(m)
    return basis.cols, basis


@dataclass(frozen=True)
class BetaReport:
    matrix: Matrix
    rank: int
    symmetry: int | None  # sigma*tau when the form matrix is (anti)symmetric


def beta_form(rep: CliffordRep, form: BilinearForm, v) -> BetaReport:
    """beta = H gamma_v with its exact rank and verified symmetry sigma*tau."""
    beta = form.matrix * gamma_vector(rep, v)
    st = form.sigma * form.tau
    bt = beta.transpose()
    if bt != beta.scale(st):
        raise ArithmeticError("beta does not have symmetry sigma*tau")
    return BetaReport(matrix=beta, rank=rank(beta), symmetry=st if not beta.is_zero() else None)


def random_spinor(rep: CliffordRep, rng, bound=3):
    return [rng.randint(-bound, bound) for _ in range(rep.N)]


def random_vector(n, rng, bound=3):
    return [rng.randint(-bound, bound) for _ in range(n)]


def random_null_vector(sig, rng, bound=3):
    """Nonzero null vector built from a hyperbolic pair: given any z with
    g(z,p) != 0 for null p, the vector 2 g(z,p) z - g(z,z) p is null."""
    from .clifford_core import null_pair

    eta = sig.eta()
    p_vec, _ = null_pair(sig)
    while True:
        z = [rng.randint(-bound, bound) for _ in range(sig.n)]
        gzp = metric_value(eta, z, p_vec)
        if gzp == 0:
            continue
        gzz = metric_value(eta, z, z)
        v = [2 * gzp * zi - gzz * pi for zi, pi in zip(z, p_vec)]
        if any(v):
            return v


def random_subspace(rep: CliffordRep, dim: int, rng, bound=3) -> SpinorSubspace:
    """Seeded integer subspace of the given dimension with rank repair."""
    if dim > rep.N:
        raise ValueError("dimension exceeds the module")
    cols = []
    while len(cols) < dim:
        cand = [rng.randint(-bound, bound) for _ in range(rep.N)]
        trial = cols + [cand]
        if rank(Matrix.from_columns(trial)) == len(trial):
            cols.append(cand)
    return SpinorSubspace(rep, Matrix.from_columns(cols))
