from spinorlab.admissible_forms import (
    admissible_space_dense,
    all_admissible,
    find_admissible,
    find_hypercomplex,
    first_nondegenerate,
    j_invariant_form,
    nondegenerate_tau_exists,
    polyvector_type_rule_check,
)
from spinorlab.clifford_core import Signature, build_rep
from spinorlab.exact_linalg import Matrix, rank


def all_signatures(max_n):
    for n in range(1, max_n + 1):
        for p in range(n + 1):
            yield Signature(p, n - p)


def test_one_generator_full_table():
    rep = build_rep(Signature(1, 0))
    dims = {
        (sigma, tau): len(find_admissible(rep, sigma, tau))
        for sigma in (1, -1)
        for tau in (1, -1)
    }
    assert dims == {(1, -1): 1, (-1, -1): 1, (1, 1): 2, (-1, 1): 0}


def test_forms_satisfy_constraints():
    for sig in all_signatures(6):
        rep = build_rep(sig)
        for (sigma, tau), forms in all_admissible(rep).items():
            for form in forms:
                h = form.matrix
                assert h.transpose() == h.scale(sigma)
                for g in rep.generators:
                    assert g.transpose() * h == (h * g).scale(tau)
                assert form.nondegenerate == (rank(h) == rep.N)


def test_solution_dims_match_dense_oracle():
    # brute-force constraint stack cross-check on the small modules
    for sig in all_signatures(5):
        rep = build_rep(sig)
        for sigma in (1, -1):
            for tau in (1, -1):
                fast = len(find_admissible(rep, sigma, tau))
                dense = admissible_space_dense(rep, sigma, tau)
                assert fast == dense, (str(sig), sigma, tau)


def test_existence_of_nondegenerate_form():
    for sig in all_signatures(8):
        rep = build_rep(sig)
        form = first_nondegenerate(rep)
        assert form.nondegenerate


def test_tau_minus_exclusion_rule():
    for sig in all_signatures(8):
        rep = build_rep(sig)
        exists = nondegenerate_tau_exists(rep, -1)
        excluded = sig.n % 4 == 1 and sig.s % 4 == 3
        assert exists == (not excluded), str(sig)


def test_definite_tau_minus_has_definite_representative():
    for sig in [Signature(2, 0), Signature(3, 0), Signature(4, 0)]:
        rep = build_rep(sig)
        found = None
        for sigma in (1, -1):
            for form in find_admissible(rep, sigma, -1):
                if form.nondegenerate and form.sigma == 1:
                    found = form
        assert found is not None
        assert _is_definite(found.matrix)


def _is_definite(h):
    n = h.rows
    for sign in (1, -1):
        m = [[sign * x for x in row] for row in h.data]
        ok = True
        for k in range(n):
            if m[k][k] <= 0:
                ok = False
                break
            piv = m[k][k]
            for i in range(k + 1, n):
                f = m[i][k]
                if f:
                    for j in range(k, n):
                        m[i][j] = m[i][j] - m[k][j] * f / piv
        if ok:
            return True
    return False


def test_spin23_tau_minus_absent():
    rep = build_rep(Signature(2, 3))
    assert find_admissible(rep, 1, -1) == []
    assert find_admissible(rep, -1, -1) == []


def test_polyvector_type_rule():
    rep = build_rep(Signature(2, 3))
    form = first_nondegenerate(rep, tau=1)
    assert polyvector_type_rule_check(rep, form, 0)
    assert polyvector_type_rule_check(rep, form, 1)
    assert polyvector_type_rule_check(rep, form, 2)
    assert polyvector_type_rule_check(rep, form, 3)


def test_hypercomplex_presence():
    assert find_hypercomplex(build_rep(Signature(1, 0))) is None
    assert find_hypercomplex(build_rep(Signature(0, 1))) is None
    hc = find_hypercomplex(build_rep(Signature(2, 0)))
    assert hc is not None
    rep = build_rep(Signature(2, 0))
    ident = Matrix.identity(rep.N)
    assert hc.j1 * hc.j1 == ident.scale(-1)
    assert hc.j3 == hc.j1 * hc.j2
    for g in rep.generators:
        assert hc.j1 * g == g * hc.j1


def test_hypercomplex_matches_commutant_type():
    for sig in all_signatures(6):
        rep = build_rep(sig)
        hc = find_hypercomplex(rep)
        assert (hc is not None) == (rep.commutant_type == "H")


def test_j_invariant_form():
    # n = 1 mod 4 and s = 3 mod 8: quaternionic commutant signature
    sig = Signature(4, 1)
    rep = build_rep(sig)
    assert sig.n % 4 == 1 and sig.s % 8 == 3
    hc = find_hypercomplex(rep)
    form = j_invariant_form(rep, hc)
    assert form.tau == 1 and form.nondegenerate
    for j in (hc.j1, hc.j2, hc.j3):
        assert j.transpose() * form.matrix * j == form.matrix
        assert (j.transpose() * form.matrix + form.matrix * j).is_zero()
