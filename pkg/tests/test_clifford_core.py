import random

import pytest

from spinorlab.clifford_core import (
    EXPECTED_COMMUTANT,
    Polyvector,
    Signature,
    build_rep,
    commutant_dimension,
    cone_even_iso,
    gamma_alternating,
    gamma_blade,
    gamma_polyvector,
    gamma_vector,
    metric_value,
    null_pair,
    rep_table,
    volume_element,
    volume_square_sign,
    wedge_vectors,
)
from spinorlab.exact_linalg import Matrix


def all_signatures(max_n):
    for n in range(1, max_n + 1):
        for p in range(n + 1):
            yield Signature(p, n - p)


def test_base_cases():
    r10 = build_rep(Signature(1, 0))
    assert r10.N == 2
    g = r10.generators[0]
    assert (g * g) == Matrix.identity(2).scale(-1)

    r01 = build_rep(Signature(0, 1))
    assert r01.N == 1
    assert r01.generators[0] == Matrix([[1]])


def test_known_dimensions():
    assert build_rep(Signature(2, 3)).N == 4
    assert build_rep(Signature(4, 5)).N == 16
    assert build_rep(Signature(1, 1)).N == 2
    assert build_rep(Signature(3, 0)).N == 4
    assert build_rep(Signature(5, 0)).N == 8
    assert build_rep(Signature(6, 0)).N == 8
    assert build_rep(Signature(7, 0)).N == 8
    assert build_rep(Signature(8, 0)).N == 16
    assert build_rep(Signature(9, 0)).N == 32
    assert build_rep(Signature(0, 8)).N == 16


def test_clifford_relations_all_signatures():
    ident = None
    for sig in all_signatures(8):
        rep = build_rep(sig)
        ident = Matrix.identity(rep.N)
        for i in range(rep.n):
            for j in range(i, rep.n):
                gi, gj = rep.generators[i], rep.generators[j]
                anti = gi * gj + gj * gi
                want = ident.scale(-2 * rep.eta[i]) if i == j else Matrix.zero(rep.N, rep.N)
                assert anti == want, f"{sig} ({i},{j})"


def test_gamma_vector_squares():
    rng = random.Random(7)
    for sig in all_signatures(6):
        rep = build_rep(sig)
        for _ in range(10):
            v = [rng.randint(-3, 3) for _ in range(rep.n)]
            gv = gamma_vector(rep, v)
            want = Matrix.identity(rep.N).scale(-metric_value(rep.eta, v, v))
            assert gv * gv == want


def test_commutant_matches_mod8_table():
    for sig in all_signatures(8):
        rep = build_rep(sig)
        assert rep.commutant_type == EXPECTED_COMMUTANT[sig.s_mod8], str(sig)
        dim = commutant_dimension(rep.generators, rep.N)
        assert dim == {"R": 1, "C": 2, "H": 4}[rep.commutant_type]


def test_commutant_table_against_dense_solver():
    # re-derive the residue table by brute force on small signatures
    from spinorlab.clifford_core import _commutant_dimension_dense

    for sig in all_signatures(5):
        rep = build_rep(sig)
        dense = _commutant_dimension_dense(rep.generators, rep.N)
        assert dense == {"R": 1, "C": 2, "H": 4}[EXPECTED_COMMUTANT[sig.s_mod8]]


def test_build_determinism():
    from spinorlab.clifford_core import _build_rep_cached

    rep1 = build_rep(Signature(3, 2))
    _build_rep_cached.cache_clear()
    rep2 = build_rep(Signature(3, 2))
    assert rep1.generators == rep2.generators
    assert rep1.commutant_basis == rep2.commutant_basis


def test_gamma_null_vector():
    rep = build_rep(Signature(2, 3))
    v = [1, 0, 1, 0, 0]  # e_1 + e_3 with eta = (+,+,-,-,-)
    gv = gamma_vector(rep, v)
    assert (gv * gv).is_zero()


def test_gamma_blade_matches_antisymmetrization():
    rep = build_rep(Signature(2, 1))
    e0 = [1, 0, 0]
    e1 = [0, 1, 0]
    assert gamma_blade(rep, (0, 1)) == gamma_alternating(rep, [e0, e1])
    # non-orthogonal pair: gamma(v ^ w) = gamma_v gamma_w + g(v,w) Id
    v = [1, 2, 0]
    w = [0, 1, 1]
    lhs = gamma_polyvector(rep, wedge_vectors([v, w]))
    assert lhs == gamma_alternating(rep, [v, w])
    gv, gw = gamma_vector(rep, v), gamma_vector(rep, w)
    rhs = gv * gw + Matrix.identity(rep.N).scale(metric_value(rep.eta, v, w))
    assert lhs == rhs


def test_gamma_triple_matches_antisymmetrization():
    rep = build_rep(Signature(2, 2))
    rng = random.Random(6)
    for _ in range(5):
        vs = [[rng.randint(-2, 2) for _ in range(4)] for _ in range(3)]
        pv = wedge_vectors(vs)
        assert gamma_polyvector(rep, pv) == gamma_alternating(rep, vs)


def test_gamma_degree_filtration_basis_pairs():
    for sig in [Signature(2, 2), Signature(3, 0)]:
        rep = build_rep(sig)
        for i in range(rep.n):
            for j in range(rep.n):
                if i == j:
                    continue
                ei = [1 if a == i else 0 for a in range(rep.n)]
                ej = [1 if a == j else 0 for a in range(rep.n)]
                lhs = gamma_polyvector(rep, wedge_vectors([ei, ej]))
                gi, gj = rep.generators[i], rep.generators[j]
                rhs = gi * gj + Matrix.identity(rep.N).scale(
                    metric_value(rep.eta, ei, ej)
                )
                assert lhs == rhs


def test_gamma_polyvector_degenerate_cases():
    rep = build_rep(Signature(2, 0))
    assert gamma_polyvector(rep, Polyvector.scalar(2, 3)) == Matrix.identity(4).scale(3)
    v = [1, 2]
    vv = wedge_vectors([v, v])
    assert vv.is_zero()
    assert gamma_polyvector(rep, vv).is_zero()
    assert gamma_vector(rep, [0, 0]).is_zero()


def test_volume_element():
    r01 = build_rep(Signature(0, 1))
    assert volume_element(r01) == r01.generators[0]
    assert volume_square_sign(build_rep(Signature(2, 0))) == -1
    assert volume_square_sign(build_rep(Signature(1, 1))) == 1


def test_null_pair():
    sig = Signature(2, 3)
    p_vec, q_vec = null_pair(sig)
    eta = sig.eta()
    assert metric_value(eta, p_vec, p_vec) == 0
    assert metric_value(eta, q_vec, q_vec) == 0
    assert metric_value(eta, p_vec, q_vec) == 1
    with pytest.raises(ValueError):
        null_pair(Signature(3, 0))


def test_cone_even_iso_small():
    for base in [Signature(0, 1), Signature(2, 0), Signature(1, 2)]:
        rep_base = build_rep(base)
        rep_cone = build_rep(Signature(base.p + 1, base.q))
        report = cone_even_iso(rep_base, rep_cone)
        assert report.ok, report.failures
        assert report.dim_even_subalgebra == 2 ** base.n


def test_cone_even_iso_all_small_n():
    for sig in all_signatures(6):
        report = cone_even_iso(
            build_rep(sig), build_rep(Signature(sig.p + 1, sig.q))
        )
        assert report.ok, (str(sig), report.failures)


def test_rep_table_contains_known_row():
    rows = rep_table(5)
    row = next(r for r in rows if (r["p"], r["q"]) == (2, 3))
    assert row["N"] == 4


def test_polyvector_wedge_interior_adjoint():
    rng = random.Random(3)
    n = 4
    eta = (1, 1, -1, -1)
    for _ in range(20):
        v = [rng.randint(-2, 2) for _ in range(n)]
        omega_coeffs = [rng.randint(-2, 2) for _ in range(6)]
        omega = Polyvector(n, 2, tuple(omega_coeffs))
        xi = Polyvector.from_vector([rng.randint(-2, 2) for _ in range(n)])
        lhs = omega.interior(v, eta).metric_inner(xi, eta)
        rhs = omega.metric_inner(Polyvector.from_vector(v).wedge(xi), eta)
        assert lhs == rhs


def test_hypercomplex_commutant_examples():
    rep = build_rep(Signature(2, 0))
    assert rep.commutant_type == "H"
    j1, j2, j3 = rep.commutant_basis
    assert (j1 * j1) == Matrix.identity(4).scale(-1)
    assert j3 == j1 * j2
    assert j1 * j2 == -(j2 * j1)

    assert build_rep(Signature(1, 0)).commutant_type == "C"
    assert build_rep(Signature(0, 1)).commutant_type == "R"
