import random
from pathlib import Path

import pytest

from spinorlab.admissible_forms import first_nondegenerate
from spinorlab.brackets import pi_image
from spinorlab.clifford_core import Signature, build_rep, metric_value
from spinorlab.exact_linalg import Matrix, rank
from spinorlab.subspace_lab import (
    IsotropicSearchError,
    extremal_obstructed_subspace,
    extremal_witness,
    isotropic_subspace,
    load_and_verify_spin45_witness,
    mixed_rank_inequality,
    random_max_isotropic,
    random_surjectivity_sweep,
    spin23_isotropic_scan,
    spin45_search,
)

WITNESS_PATH = Path(__file__).resolve().parent.parent / "witnesses" / "spin45_max_isotropic.json"


def test_isotropic_subspace_skew():
    gram = Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    iso = isotropic_subspace(gram, symmetric=False, target_dim=2)
    assert iso.cols == 2
    assert (iso.transpose() * gram * iso).is_zero()


def test_isotropic_subspace_symmetric_split():
    gram = Matrix.diagonal([1, 1, -1, -1])
    iso = isotropic_subspace(gram, symmetric=True, target_dim=2)
    assert (iso.transpose() * gram * iso).is_zero()
    assert rank(iso) == 2


def test_isotropic_subspace_definite_fails():
    gram = Matrix.identity(4)
    with pytest.raises(IsotropicSearchError):
        isotropic_subspace(gram, symmetric=True, target_dim=1)


def test_null_direction_fractional_discriminant():
    from fractions import Fraction

    from spinorlab.subspace_lab import _find_null_direction

    # no zero diagonal, discriminant (5/2)^2 - 4 = 9/4: the pair path needs
    # the exact rational square root
    gram = Matrix([[2, Fraction(5, 2)], [Fraction(5, 2), 2]])
    vec = _find_null_direction(gram)
    assert vec is not None
    val = sum(gram[i, j] * vec[i] * vec[j] for i in range(2) for j in range(2))
    assert val == 0


def test_extremal_witness_signatures():
    for sig in [Signature(2, 3), Signature(1, 3), Signature(3, 3)]:
        form, v, sub = extremal_witness(sig)
        rep = build_rep(sig)
        assert sub.dim == 3 * rep.N // 4
        assert metric_value(rep.eta, v, v) == 0


def test_extremal_rejects_bad_module_dimension():
    rep = build_rep(Signature(1, 1))
    form = first_nondegenerate(rep)
    with pytest.raises(ValueError):
        extremal_obstructed_subspace(rep, form, [1, 1])


def test_obstructed_instances_respect_three_quarter_bound():
    # every subspace with a nonzero obstruction space that this module can
    # construct stays within dim <= 3N/4
    from spinorlab.brackets import null_kernel, obstruction_vectors

    for sig in [Signature(2, 3), Signature(1, 3), Signature(3, 3)]:
        rep = build_rep(sig)
        form, v, extremal = extremal_witness(sig)
        assert extremal.dim <= 3 * rep.N // 4
        kernel_sub = null_kernel(rep, first_nondegenerate(rep), v)
        assert obstruction_vectors(rep, first_nondegenerate(rep), kernel_sub).cols >= 1
        assert kernel_sub.dim <= 3 * rep.N // 4


def test_sweep_definite():
    rep = build_rep(Signature(3, 0))
    form = first_nondegenerate(rep)
    report = random_surjectivity_sweep(rep, form, dim=3, trials=500, seed=11)
    assert report.in_hypothesis
    assert report.counterexamples == ()


def test_sweep_indefinite_full_space():
    rep = build_rep(Signature(2, 3))
    form = first_nondegenerate(rep)
    report = random_surjectivity_sweep(rep, form, dim=4, trials=50, seed=3)
    assert report.in_hypothesis
    assert report.counterexamples == ()


def test_sweep_boundary_logged_not_asserted():
    rep = build_rep(Signature(2, 3))
    form = first_nondegenerate(rep)
    report = random_surjectivity_sweep(rep, form, dim=3, trials=20, seed=5)
    assert not report.in_hypothesis  # 3 == 3N/4 is outside the strict bound


def test_sweep_reproducible():
    rep = build_rep(Signature(2, 3))
    form = first_nondegenerate(rep)
    a = random_surjectivity_sweep(rep, form, dim=4, trials=10, seed=9)
    b = random_surjectivity_sweep(rep, form, dim=4, trials=10, seed=9)
    assert a == b


def test_spin23_scan_all_one_dimensional():
    report = spin23_isotropic_scan(trials=50, seed=2)
    assert report.distribution == {1: 50}


def test_random_max_isotropic_symmetric_form():
    rep = build_rep(Signature(4, 5))
    form = first_nondegenerate(rep, tau=1)
    rng = random.Random(4)
    sub = random_max_isotropic(rep, form, rng)
    assert sub.dim == rep.N // 2
    assert (sub.basis.transpose() * form.matrix * sub.basis).is_zero()


def test_spin45_search_finds_witness():
    report = spin45_search(seed=7, budget=50)
    assert report.found
    assert report.image_dim == 4
    assert report.subspace.dim == 8


def test_spin45_archived_witness_reverifies():
    info = load_and_verify_spin45_witness(WITNESS_PATH)
    assert info["isotropy_dim"] == 8
    assert info["image_dim"] == 4


def test_mixed_rank_inequality_23():
    rep = build_rep(Signature(2, 3))
    form = first_nondegenerate(rep, tau=1)
    report = mixed_rank_inequality(rep, form, 4, 4, trials=10, seed=1)
    assert report.in_hypothesis and report.rank_chain_fails
    assert set(report.image_dims) == {5}
    assert report.counterexamples == ()


def test_mixed_rank_outside_hypothesis():
    rep = build_rep(Signature(2, 3))
    form = first_nondegenerate(rep, tau=1)
    report = mixed_rank_inequality(rep, form, 3, 3, trials=5, seed=1)
    assert not report.in_hypothesis and not report.rank_chain_fails
    assert report.counterexamples == ()


def test_mixed_rank_41():
    rep = build_rep(Signature(4, 1))
    form = first_nondegenerate(rep, tau=1)
    report = mixed_rank_inequality(rep, form, 7, 6, trials=6, seed=2)
    assert report.in_hypothesis
    assert set(report.image_dims) == {5}
    assert report.counterexamples == ()


def test_mixed_rank_definite_threshold():
    # definite metrics only need k_+ + k_- > N for the full span; (3,0)
    # has no type +1 form (n = s = 3 mod 4), so probe (4,0)
    rep = build_rep(Signature(4, 0))
    form = first_nondegenerate(rep, tau=1)
    report = mixed_rank_inequality(rep, form, 5, 4, trials=8, seed=4)
    assert report.in_hypothesis
    assert set(report.image_dims) == {4}
    assert report.counterexamples == ()


def test_nonisotropic_plane_image_logged():
    # bracket image of a generic (non-isotropic) plane of the (2,3) module
    # may exceed one; logged without asserting a specific value
    import random as _random

    from spinorlab.brackets import pi_image, random_subspace

    rep = build_rep(Signature(2, 3))
    form = first_nondegenerate(rep, tau=1)
    sub = random_subspace(rep, 2, _random.Random(0))
    dim, _ = pi_image(rep, form, sub, sub)
    print(f"generic plane bracket image dimension: {dim}")
    assert dim >= 1
