"""Induction, Frobenius reciprocity, Mackey's criterion, and Clifford
decomposition on small groups."""

import numpy as np
import pytest

from corpus import (cyclic_group, dihedral_group, heisenberg_mod3_group,
                    perm_mat, symmetric_group)
from envlab.errors import CharDividesIndex, NotNormal, NotSemisimple
from envlab.fieldcore import (FinMatGroup, Mat, ModuleRep, commutant,
                              composition_factors, modules_isomorphic)
from envlab.gf import field_make
from envlab.mackey import (all_subgroups, clifford_blocks_transitive,
                           clifford_decompose, double_coset_reps, dual_module,
                           frobenius_reciprocity_dim, induce,
                           irreducible_modules, mackey_irreducible,
                           regular_rep, restrict, subgroup_datum)


def char_rep(ell, value):
    fld = field_make(ell, 1)
    return ModuleRep(fld, (np.array([[value]], dtype=np.int64),))


def s3_setup():
    G = symmetric_group(3, 7)
    a3 = perm_mat(G.field, [1, 2, 0])
    return G, subgroup_datum(G, [a3])


def test_subgroup_datum_invariant():
    G, sub = s3_setup()
    assert sub.index * sub.subgroup.order == G.order
    assert sub.index == 2
    assert sub.transversal[0].is_identity()


def test_induce_from_whole_group_is_identity():
    G = symmetric_group(3, 7)
    sub = subgroup_datum(G, G.generators)
    rho = ModuleRep(G.field, tuple(g.array for g in G.generators))
    ind = induce(sub, rho)
    assert ind.dim == rho.dim
    assert modules_isomorphic(ind, rho)


def test_regular_representation_of_c2():
    c2 = cyclic_group(2, 7)
    sub = subgroup_datum(c2, [Mat.identity(c2.field, 2)])
    reg = induce(sub, char_rep(7, 1))
    assert reg.dim == 2
    chars = sorted(int(m.matrices[0][0, 0])
                   for m, _ in composition_factors(reg))
    assert chars == [1, 6]  # trivial and sign


def test_s3_induced_cubic_character():
    G, sub = s3_setup()
    W = char_rep(7, 2)  # a nontrivial cube root of 1 in F_7
    ind = induce(sub, W)
    assert ind.dim == 2
    assert commutant(ind)[1] == 1
    assert bool(mackey_irreducible(sub, W))


def test_char_divides_index():
    # index 3 subgroup over F_3
    G = symmetric_group(3, 3)
    c2 = perm_mat(G.field, [1, 0, 2])
    sub = subgroup_datum(G, [c2])
    with pytest.raises(CharDividesIndex):
        induce(sub, char_rep(3, 1))


def test_frobenius_reciprocity():
    G, sub = s3_setup()
    W = char_rep(7, 2)
    ind = induce(sub, W)
    lhs, rhs = frobenius_reciprocity_dim(sub, W, ind)
    assert lhs == rhs == 1
    # the trivial character does not appear in the 2-dim irreducible
    lhs, rhs = frobenius_reciprocity_dim(sub, char_rep(7, 1), ind)
    assert lhs == rhs == 0


def test_frobenius_reciprocity_sweep():
    G = dihedral_group(4, 5)
    fld = G.field
    for H in all_subgroups(G):
        sub = subgroup_datum(G, H.generators)
        if sub.index % 5 == 0:
            continue
        for W in irreducible_modules(H, fld):
            for V in irreducible_modules(G, fld):
                lhs, rhs = frobenius_reciprocity_dim(sub, W, V)
                assert lhs == rhs


def test_mackey_trivial_character_fails():
    G, sub = s3_setup()
    verdict = mackey_irreducible(sub, char_rep(7, 1))
    assert not verdict
    assert verdict.reason == "condition (II') fails"
    assert verdict.failing_rep is not None
    assert verdict.invariant_dim >= 1


def test_mackey_whole_group_reduces_to_irreducibility():
    G = symmetric_group(3, 7)
    sub = subgroup_datum(G, G.generators)
    rho = ModuleRep(G.field, tuple(g.array for g in G.generators))
    # the 3-dim permutation module is reducible
    assert not mackey_irreducible(sub, rho)


def test_mackey_requires_semisimple_setting():
    G = symmetric_group(3, 3)
    sub = subgroup_datum(G, [perm_mat(G.field, [1, 2, 0])])
    with pytest.raises(NotSemisimple):
        mackey_irreducible(sub, char_rep(3, 1))


def test_dihedral_faithful_character():
    G = dihedral_group(5, 11)
    sub = subgroup_datum(G, [G.generators[0]])
    W = char_rep(11, 3)  # 3^5 = 1 mod 11, faithful on C_5
    assert bool(mackey_irreducible(sub, W))
    assert commutant(induce(sub, W))[1] == 1
    assert not mackey_irreducible(sub, char_rep(11, 1))


def test_double_cosets_partition():
    G, sub = s3_setup()
    reps = double_coset_reps(sub)
    assert reps[0].is_identity()
    assert len(reps) == 2  # A_3 and its complement


def test_dual_module_inverts_transpose():
    G = dihedral_group(5, 11)
    rho = ModuleRep(G.field, tuple(g.array for g in G.generators))
    dual = dual_module(rho)
    fld = G.field
    for m, md in zip(rho.matrices, dual.matrices):
        assert np.array_equal(fld.matmul(m.T, md), fld.eye(rho.dim))


def test_clifford_s3():
    G, sub = s3_setup()
    V = induce(sub, char_rep(7, 2))
    shape = clifford_decompose(G, [perm_mat(G.field, [1, 2, 0])], V)
    assert (shape.e, shape.f) == (2, 1)
    chars = sorted(int(m.matrices[0][0, 0]) for m in shape.factors)
    assert chars == [2, 4]  # the two conjugate cubic characters
    assert clifford_blocks_transitive(G, [perm_mat(G.field, [1, 2, 0])], shape)


def test_clifford_whole_group():
    G, sub = s3_setup()
    V = induce(sub, char_rep(7, 2))
    shape = clifford_decompose(G, [g for g in G.generators], V)
    assert (shape.e, shape.f) == (1, 1)


def test_clifford_heisenberg_center():
    G = heisenberg_mod3_group(7)
    assert G.order == 27
    x, y = G.generators
    z = x @ y @ x.inverse() @ y.inverse()
    V = ModuleRep(G.field, (x.array, y.array))
    shape = clifford_decompose(G, [z], V)
    assert (shape.e, shape.f) == (1, 3)
    assert shape.factors[0].dim == 1


def test_clifford_rejects_non_normal():
    G = symmetric_group(3, 7)
    V = induce(subgroup_datum(G, [perm_mat(G.field, [1, 2, 0])]), char_rep(7, 2))
    with pytest.raises(NotNormal):
        clifford_decompose(G, [perm_mat(G.field, [1, 0, 2])], V)


def test_all_subgroups_s4():
    G = symmetric_group(4, 13)
    assert len(all_subgroups(G, up_to_conjugacy=False)) == 30
    classes = all_subgroups(G)
    assert len(classes) == 11
    assert sorted(H.order for H in classes) == [1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]


def test_regular_rep_and_irreducibles():
    G = symmetric_group(3, 7)
    reg = regular_rep(G, G.field)
    assert reg.dim == 6
    dims = sorted(m.dim for m in irreducible_modules(G, G.field))
    assert dims == [1, 1, 2]
    s4 = symmetric_group(4, 13)
    dims4 = sorted(m.dim for m in irreducible_modules(s4, s4.field))
    assert dims4 == [1, 1, 2, 3, 3]


def test_restrict_composes_with_words():
    G, sub = s3_setup()
    rho = ModuleRep(G.field, tuple(g.array for g in G.generators))
    res = restrict(rho, G, sub.subgroup)
    assert res.dim == 3
    # restricting the permutation module to A_3 splits into three characters
    factors = composition_factors(res)
    assert sorted(m.dim for m, k in factors for _ in range(k)) == [1, 1, 1]
