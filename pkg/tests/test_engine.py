import pytest

from hopfgalois import (BudgetExceeded, CapExceeded, ExtensionProblem,
                        NodeBudget, NotNormalClosure, Perm, alternating,
                        coset_action, cyclic, dihedral,
                        enumerate_regular_normalized, enumerate_via_transversal,
                        induced_action_hom, symmetric, translation_structure)
from hopfgalois.dsl import build_text

from conftest import catalog_problems, stabilizer_problem


def test_extension_problem_validation():
    with pytest.raises(ValueError):
        ExtensionProblem(cyclic(4), cyclic(4).full_subgroup())  # degree 1
    # G' containing the center of a dihedral group is not core-free
    d4 = dihedral(4)
    center = [i for i in range(8) if all(d4.mul(i, j) == d4.mul(j, i) for j in range(8))]
    with pytest.raises(NotNormalClosure):
        ExtensionProblem(d4, d4.subgroup(center))


def test_coset_action_s4_natural():
    prob = stabilizer_problem(symmetric(4))
    act = coset_action(prob)
    assert act.degree == 4
    image = {act.translation(x) for x in range(24)}
    assert len(image) == 24  # faithful: the whole of Perm(4)


def test_coset_action_regular_representation():
    g = dihedral(3)
    act = coset_action(ExtensionProblem.galois(g))
    assert act.degree == 6
    image = {act.translation(x) for x in range(6)}
    assert len(image) == 6
    assert all(p.semiregular_cycle_length() is not None for p in image)


def test_point_zero_is_the_subgroup_coset():
    prob = stabilizer_problem(symmetric(4))
    act = coset_action(prob)
    for s in prob.subgroup.members:
        assert act.translation(s)(0) == 0


def test_enumerate_s4_s3():
    act = coset_action(stabilizer_problem(symmetric(4)))
    structures = enumerate_regular_normalized(act)
    assert len(structures) == 1
    assert structures[0].type_name == "E(2,2)"
    klein = {Perm.identity(4), Perm.parse("(0 1)(2 3)"),
             Perm.parse("(0 2)(1 3)"), Perm.parse("(0 3)(1 2)")}
    assert set(structures[0].perms) == klein


def test_enumerate_s5_s4_empty():
    act = coset_action(stabilizer_problem(symmetric(5)))
    assert enumerate_regular_normalized(act) == []


def test_enumerate_galois_c8():
    act = coset_action(ExtensionProblem.galois(cyclic(8)))
    structures = enumerate_regular_normalized(act)
    assert len(structures) == 6
    assert sorted(s.type_name for s in structures) == \
        ["C8", "C8", "D4", "D4", "Q8", "Q8"]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_enumerate_galois_prime(p):
    act = coset_action(ExtensionProblem.galois(cyclic(p)))
    structures = enumerate_regular_normalized(act)
    assert len(structures) == 1
    assert structures[0].type_name == f"C{p}"


def test_results_verified_post_hoc():
    for name, prob in catalog_problems().items():
        act = coset_action(prob)
        gen_perms = act.generator_perms()
        for s in enumerate_regular_normalized(act, budget=NodeBudget(50_000_000)):
            assert s.perms.is_regular(), name
            assert s.perms.is_normalized_by(gen_perms), name
            assert s.perms.is_group(), name
            for p in s.perms:
                d = p.semiregular_cycle_length()
                assert d is not None and act.degree % d == 0, name
            # each N is a union of translation-conjugation orbits
            for p in s.perms:
                for g in gen_perms:
                    assert g * p * g.inverse() in s.perms, name


def test_enumerated_subgroups_of_translation_image_are_normal_complements():
    # if N lies inside the translation image, its preimage is a normal
    # complement of G' in G
    for name, prob in catalog_problems().items():
        act = coset_action(prob)
        g = prob.group
        lam = {act.translation(x): x for x in range(len(g))}
        for s in enumerate_regular_normalized(act, budget=NodeBudget(50_000_000)):
            if not all(p in lam for p in s.perms):
                continue
            members = sorted(lam[p] for p in s.perms)
            pre = g.subgroup(members)
            assert pre.is_normal(), name
            assert set(pre.members) & set(prob.subgroup.members) == {0}, name
            assert pre.order * prob.subgroup.order == len(g), name


def test_induced_action_galois_translation_copy():
    # N = the translation image itself: the action is conjugation in G
    g = symmetric(3)
    act = coset_action(ExtensionProblem.galois(g))
    from hopfgalois.perms import PermSet
    n = PermSet.from_perms([act.translation(x) for x in range(6)])
    hom = induced_action_hom(act, n)
    assert hom.images[0] == 0
    assert len(set(hom.images)) == 6  # S3 has trivial center: image is Inn(S3)


def test_induced_action_abelian_galois_trivial():
    g = cyclic(6)
    act = coset_action(ExtensionProblem.galois(g))
    from hopfgalois.perms import PermSet
    n = PermSet.from_perms([act.translation(x) for x in range(6)])
    hom = induced_action_hom(act, n)
    assert set(hom.images) == {0}


def test_induced_action_klein_image_order_6():
    act = coset_action(stabilizer_problem(symmetric(4)))
    s = enumerate_regular_normalized(act)[0]
    hom = s.action_hom()
    g, aut = hom.source, hom.target
    assert all(hom(g.mul(a, b)) == aut.mul(hom(a), hom(b))
               for a in range(24) for b in range(24))
    assert len(set(hom.images)) == 6
    # the three involutions are permuted in every way possible
    involutions = [i for i in range(4) if s.group.element_order(i) == 2]
    patterns = {tuple(s.conj_action(x)[i] for i in involutions) for x in range(24)}
    assert len(patterns) == 6


def test_induced_action_requires_normalized():
    act = coset_action(ExtensionProblem.galois(symmetric(3)))
    from hopfgalois.perms import PermSet
    not_normalized = PermSet.closure([Perm.parse("(0 1)", degree=6)])
    with pytest.raises(ValueError):
        induced_action_hom(act, not_normalized)


def test_translation_structure():
    g = alternating(4)
    c3 = next(s for s in g.subgroups() if s.order == 3)
    act = coset_action(ExtensionProblem(g, c3))
    v = next(s for s in g.normal_subgroups() if s.order == 4)
    structure = translation_structure(act, v.members)
    assert structure.type_name == "E(2,2)"
    with pytest.raises(ValueError):
        translation_structure(act, c3.members)  # not regular


def test_cross_engine_equality_up_to_degree_8():
    budget = NodeBudget(200_000_000)
    for name, prob in catalog_problems().items():
        if prob.degree > 8:
            continue
        act = coset_action(prob)
        primary = enumerate_regular_normalized(act, budget=budget)
        reference = enumerate_via_transversal(act, budget=budget)
        assert sorted(s.perms.key() for s in primary) == \
            sorted(p.key() for p in reference), name


def test_transversal_cap():
    act = coset_action(ExtensionProblem.galois(dihedral(5)))
    with pytest.raises(CapExceeded):
        enumerate_via_transversal(act)


def test_degree_cap():
    act = coset_action(ExtensionProblem.galois(cyclic(8)))
    with pytest.raises(CapExceeded):
        enumerate_regular_normalized(act, degree_cap=6)


def test_budget_exhaustion_is_loud():
    act = coset_action(ExtensionProblem.galois(cyclic(8)))
    with pytest.raises(BudgetExceeded):
        enumerate_regular_normalized(act, budget=NodeBudget(50))


def test_worker_count_does_not_change_output():
    act = coset_action(ExtensionProblem.galois(cyclic(8)))
    keys = [s.perms.key() for s in enumerate_regular_normalized(act)]
    for workers in (2, 4):
        assert [s.perms.key() for s in
                enumerate_regular_normalized(act, workers=workers)] == keys


def test_generator_presentation_does_not_change_output():
    g = cyclic(8)
    prob = ExtensionProblem.galois(g)
    keys = None
    # several generating sets for C8, including redundant ones
    for gens in [(1,), (3,), (5,), (1, 2), (7, 4)]:
        act = coset_action(prob, generators=gens)
        got = [s.perms.key() for s in enumerate_regular_normalized(act)]
        if keys is None:
            keys = got
        assert got == keys
    with pytest.raises(ValueError):
        coset_action(prob, generators=(2,))  # does not generate


def test_order_56_and_36_cases():
    b = build_text("SD(E(2,3), matgrp(2,3,[[[1,1,1],[1,1,0],[1,0,0]]]))")
    act = coset_action(ExtensionProblem(b.group, b.complement))
    structures = enumerate_regular_normalized(act)
    assert [s.type_name for s in structures] == ["E(2,3)"]

    b = build_text("SD(E(3,2), matgrp(3,2,[[[0,1],[-1,0]]]))")
    act = coset_action(ExtensionProblem(b.group, b.complement))
    structures = enumerate_regular_normalized(act)
    assert [s.type_name for s in structures] == ["E(3,2)"]
