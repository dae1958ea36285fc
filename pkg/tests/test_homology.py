import random

import numpy as np
import pytest

from surfkernel import (
    GeneratingVector,
    HomologyAction,
    KernelGen,
    OrbifoldSignature,
    act_on_basis,
    act_on_generator,
    adapted_check,
    block_structure_check,
    check_representation,
    homology_matrices,
    make_cyclic,
)
from surfkernel.errors import OrderingError, ShapeError
from surfkernel.homology import bareiss_det, column_profile, elliptic_reduction
from surfkernel.jobs import load_job
from surfkernel.schreier import pipeline
from surfkernel.words import GenSymbol
from zoo import random_cases


def test_label_action_examples(s3):
    x4, x7 = GenSymbol("x", 4), GenSymbol("x", 7)
    assert act_on_generator(1, KernelGen(2, x4), s3) == KernelGen(4, x4)  # A B = D
    assert act_on_generator(1, KernelGen(4, x7), s3) == KernelGen(2, x7)  # A D = B
    assert act_on_generator(0, KernelGen(3, x7), s3) == KernelGen(3, x7)


def test_s3_matrices(s3, s3_homology):
    h = s3_homology
    assert h.rank == 16 and len(h.matrices) == 6
    assert np.array_equal(h[0], np.eye(16, dtype=np.int64))
    assert np.array_equal(h[4] @ h[4], h[5])
    assert check_representation(h, s3)
    for g in range(6):
        m = h[g]
        assert m.shape == (16, 16)
        assert np.array_equal(np.linalg.matrix_power(m, s3.element_order[g]), np.eye(16, dtype=np.int64))


def test_s3_character(s3_homology):
    # trace depends only on the conjugacy class
    tr = [int(np.trace(s3_homology[g])) for g in range(6)]
    assert tr[0] == 16 and tr[1] == tr[2] == tr[3] and tr[4] == tr[5]


def test_act_on_basis_matches_matrix_columns(s3_pipeline, s3_homology):
    simple = s3_pipeline[1]
    h = s3_homology
    pos = {g: i for i, g in enumerate(h.basis)}
    for g in range(6):
        for k, gid in enumerate(h.basis):
            kw = act_on_basis(g, simple.generators.index(gid), simple)
            col = np.zeros(16, dtype=np.int64)
            for gen, e in kw:
                col[pos[simple.context.gen_id(gen)]] += e
            assert np.array_equal(col, h[g][:, k])


def test_corrupted_matrix_is_rejected(s3, s3_homology):
    h = s3_homology
    bad = dict(h.matrices)
    m = bad[1].copy()
    m[0, 0] += 1
    bad[1] = m
    assert not check_representation(HomologyAction(h.basis, h.labels, bad), s3)
    missing = {g: m for g, m in h.matrices.items() if g != 3}
    assert not check_representation(HomologyAction(h.basis, h.labels, missing), s3)


def test_translation_rule_is_not_a_representation(s3, s3_pipeline):
    h = homology_matrices(s3_pipeline[1], rule="translation")
    assert not check_representation(h, s3)
    with pytest.raises(ValueError):
        homology_matrices(s3_pipeline[1], rule="nonsense")


def test_replay_strategies_agree(s3_pipeline, s3_homology):
    for seed in range(3):
        h = homology_matrices(s3_pipeline[1], replay="sweep", seed=seed)
        for g in range(6):
            assert np.array_equal(h[g], s3_homology[g])


def test_needs_simplified_presentation(s3_pipeline):
    with pytest.raises(ShapeError):
        homology_matrices(s3_pipeline[0])


def test_bareiss_det():
    rng = np.random.default_rng(0)
    for n in range(1, 7):
        m = rng.integers(-3, 4, size=(n, n))
        assert bareiss_det(m) == round(np.linalg.det(m))
    assert bareiss_det(np.zeros((0, 0), dtype=int)) == 1
    assert bareiss_det([[0, 1], [1, 0]]) == -1


def test_column_profile():
    m = np.array([[1, 0, 2], [0, 0, -1], [0, 1, 0]])
    assert column_profile(m) == {"multi_columns": 1, "nonzeros": [1, 1, 2], "max_abs": 2}


def test_trivial_group():
    grp = make_cyclic(1)
    sig = OrbifoldSignature(2)
    raw, simple = pipeline(sig, grp, GeneratingVector((0, 0), (0, 0), ()))
    h = homology_matrices(simple)
    assert h.rank == 4 and check_representation(h, grp)
    assert adapted_check(h, grp).adapted
    assert block_structure_check(h, sig, grp)


def test_adapted_s3(s3, s3_homology):
    rep = adapted_check(s3_homology, s3)
    assert not rep.adapted
    assert rep.witness is not None
    assert s3_homology.labels[rep.witness] in rep.detail


def test_adapted_hand_built_permutation_action():
    z2 = make_cyclic(2)
    swap = np.array([[0, 1], [1, 0]], dtype=np.int64)
    h = HomologyAction((0, 1), ("u", "v"), {0: np.eye(2, dtype=np.int64), 1: swap})
    rep = adapted_check(h, z2)
    assert rep.adapted and rep.cases == (1, 1)
    # a generator negated by the involution: orbit sums to zero
    neg = HomologyAction((0,), ("u",), {0: np.eye(1, dtype=np.int64), 1: -np.eye(1, dtype=np.int64)})
    assert adapted_check(neg, z2).cases == (2,)
    mixed = np.array([[1, 1], [0, -1]], dtype=np.int64)
    h = HomologyAction((0, 1), ("u", "v"), {0: np.eye(2, dtype=np.int64), 1: mixed})
    rep = adapted_check(h, z2)
    assert not rep.adapted and rep.witness == 1


def genus1_data():
    grp, sig, phi, _ = load_job("s3_genus1").resolve()
    return grp, sig, phi


def test_block_structure_genus_one(s3_homology):
    grp, sig, phi = genus1_data()
    h = homology_matrices(pipeline(sig, grp, phi)[1])
    assert h.rank == 28 and check_representation(h, grp)
    sig0, phi0 = elliptic_reduction(sig, grp, phi)
    assert sig0.genus == 0 and phi0.Xi == phi.Xi
    assert block_structure_check(h, sig, grp, s3_homology)


def test_block_structure_rejects_bad_input(s3, s3_data, s3_homology):
    grp, sig, phi = s3_data
    with pytest.raises(OrderingError):
        block_structure_check(s3_homology, sig, grp)
    g1, sig1, phi1 = genus1_data()
    h = homology_matrices(pipeline(sig1, g1, phi1)[1])
    order = list(range(h.rank))
    order = order[12:13] + order[:12] + order[13:]
    shuffled = HomologyAction(tuple(h.basis[i] for i in order), tuple(h.labels[i] for i in order),
                              {g: m[np.ix_(order, order)] for g, m in h.matrices.items()})
    with pytest.raises(OrderingError):
        block_structure_check(shuffled, sig1, g1)
    # a reference with different matrices must be caught
    twisted = HomologyAction(s3_homology.basis, s3_homology.labels,
                             {g: s3_homology[g] if g != 1 else -s3_homology[g] for g in range(6)})
    assert not block_structure_check(h, sig1, g1, twisted)


CASES = random_cases(random.Random(77), 40)


@pytest.mark.parametrize("case", CASES, ids=[f"{c[0]}-{c[2]}" for c in CASES])
def test_random_cases_are_representations(case):
    name, grp, sig, phi = case
    simple = pipeline(sig, grp, phi)[1]
    h = homology_matrices(simple)
    assert h.rank == 2 * simple.genus_expected
    assert check_representation(h, grp)


GENUS0 = [c for c in random_cases(random.Random(78), 60, genera=(0,)) if c[2].r][:20]


@pytest.mark.parametrize("case", GENUS0, ids=[f"{c[0]}-{c[2]}" for c in GENUS0])
@pytest.mark.parametrize("g0", [1, 2])
def test_block_structure_with_trivial_handles(case, g0):
    name, grp, sig, phi = case
    ref = homology_matrices(pipeline(sig, grp, phi)[1])
    lifted = OrbifoldSignature(g0, sig.periods)
    psi = GeneratingVector((0,) * g0, (0,) * g0, phi.Xi)
    h = homology_matrices(pipeline(lifted, grp, psi)[1])
    assert h.rank == 2 * grp.order * g0 + ref.rank
    assert block_structure_check(h, lifted, grp, ref)
