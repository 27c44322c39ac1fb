import itertools

import pytest

from permres.errors import NotPermutationBasis
from permres.groups import Group, Subgroup, all_subgroups
from permres.linalg import Mat
from permres.modules import Module, free_module, tensor, trivial_module
from permres.permutation import (
    PermutationDescriptor,
    descriptor_dim,
    descriptor_eq,
    is_free_descriptor,
    mackey_tensor,
    realize,
    recognize,
    tensor_descriptor,
)

V4 = Group(2, 2)
C2_3 = Group(2, 3)
C3_2 = Group(3, 2)


def desc(group, *parts):
    return PermutationDescriptor(group, tuple(parts))


class TestSubgroups:
    def test_counts(self):
        # subspace counts: Gaussian binomials
        assert len(all_subgroups(V4)) == 1 + 3 + 1
        assert len(all_subgroups(C2_3)) == 1 + 7 + 7 + 1
        assert len(all_subgroups(C3_2)) == 1 + 4 + 1

    def test_sum_and_intersection(self):
        h = Subgroup(V4, [[0, 1]])
        k = Subgroup(V4, [[1, 0]])
        assert (h + k).is_full()
        assert h.intersect(k).is_trivial()
        assert h.intersect(h) == h

    def test_coset_reps(self):
        h = Subgroup(V4, [[0, 1]])  # span{e_2}: free coordinate is 0
        assert h.coset_reps() == ((0, 0), (1, 0))
        assert h.reduce((1, 1)) == (1, 0)

    def test_caps_and_group_mismatch(self):
        from permres.errors import CapExceeded, GroupMismatch
        from permres.groups import Group

        with pytest.raises(CapExceeded):
            Group(2, 20)  # order 2^20 blows the default cap
        with pytest.raises(GroupMismatch):
            mackey_tensor(Subgroup.trivial(V4), Subgroup.trivial(C3_2))


class TestRealize:
    def test_trivial_part_is_free(self):
        d = desc(V4, Subgroup.trivial(V4))
        tagged = realize(d)
        assert tagged.module == free_module(V4, 1)

    def test_full_part_is_trivial_module(self):
        d = desc(V4, Subgroup.full(V4))
        assert realize(d).module == trivial_module(V4, 1)

    def test_coordinate_hyperplane(self):
        h1 = Subgroup.coordinate_hyperplane(V4, 1)  # span{e_2}
        tagged = realize(desc(V4, h1))
        m = tagged.module
        assert m.dim == 2
        assert m.action[0] == Mat(2, [[0, 1], [1, 0]])  # e_1 swaps the two cosets
        assert m.action[1].is_identity()  # e_2 fixes them

    def test_dim_formula(self):
        for group in (V4, C3_2):
            subs = all_subgroups(group)
            d = desc(group, *subs)
            assert realize(d).module.dim == descriptor_dim(d)
            assert descriptor_dim(d) == sum(s.index for s in subs)


class TestRecognize:
    def test_round_trip(self):
        subs = all_subgroups(V4)
        d = desc(V4, subs[0], subs[1], subs[1], subs[-1])
        tagged = realize(d)
        back = recognize(tagged.module)
        assert back.descriptor == d
        assert back.basis_map == tagged.basis_map
        # re-realizing the recognized descriptor reproduces the matrices
        assert realize(back.descriptor).module == tagged.module

    def test_trivial_module_tags_as_full_parts(self):
        tagged = recognize(trivial_module(V4, 2))
        assert tagged.descriptor == desc(V4, Subgroup.full(V4), Subgroup.full(V4))

    def test_rejects_non_permutation(self):
        m = Module(Group(2, 1), (Mat(2, [[1, 1], [0, 1]]),))
        with pytest.raises(NotPermutationBasis) as info:
            recognize(m)
        assert info.value.generator_index == 0
        assert info.value.row_index == 0


class TestMackey:
    def test_full_times_full(self):
        e = Subgroup.full(V4)
        assert mackey_tensor(e, e) == desc(V4, e)

    def test_transverse_hyperplanes_give_free(self):
        h = Subgroup(V4, [[0, 1]])
        k = Subgroup(V4, [[1, 0]])
        assert mackey_tensor(h, k) == desc(V4, Subgroup.trivial(V4))

    def test_repeated_subgroup_gives_p_copies(self):
        h = Subgroup(V4, [[0, 1]])
        got = mackey_tensor(h, h)
        assert got == desc(V4, h, h)
        # cross-check by realization: dims p*p and recognition matches
        t = tensor(realize(desc(V4, h)).module, realize(desc(V4, h)).module)
        assert recognize(t).descriptor == got

    def test_iterated_hyperplanes_c2_cubed(self):
        hs = [Subgroup.coordinate_hyperplane(C2_3, i) for i in (1, 2, 3)]
        d = desc(C2_3, hs[0])
        for h in hs[1:]:
            d = tensor_descriptor(d, desc(C2_3, h))
        assert d == desc(C2_3, Subgroup.trivial(C2_3))

    def test_descriptor_tensor_unit_and_dims(self):
        subs = all_subgroups(C3_2)
        d1 = desc(C3_2, subs[1], subs[2])
        unit = desc(C3_2, Subgroup.full(C3_2))
        assert tensor_descriptor(d1, unit) == d1
        d2 = desc(C3_2, subs[0], subs[3])
        assert descriptor_dim(tensor_descriptor(d1, d2)) == descriptor_dim(d1) * descriptor_dim(d2)

    def test_multi_part_tensor_matches_recognition(self):
        subs = all_subgroups(C3_2)
        d1 = desc(C3_2, subs[1], subs[5])
        d2 = desc(C3_2, subs[2], subs[0])
        product = tensor(realize(d1).module, realize(d2).module)
        assert recognize(product).descriptor == tensor_descriptor(d1, d2)

    def test_mackey_matches_recognition_everywhere(self):
        for group in (V4, C3_2):
            subs = all_subgroups(group)
            for h, k in itertools.product(subs, repeat=2):
                predicted = mackey_tensor(h, k)
                product = tensor(
                    realize(desc(group, h)).module, realize(desc(group, k)).module
                )
                assert recognize(product).descriptor == predicted
                assert descriptor_dim(predicted) == h.index * k.index


class TestDescriptorHelpers:
    def test_dims(self):
        assert descriptor_dim(desc(V4, Subgroup.full(V4))) == 1
        assert descriptor_dim(desc(V4, Subgroup.trivial(V4))) == 4

    def test_equality_order_free(self):
        subs = all_subgroups(V4)
        a = desc(V4, subs[0], subs[2])
        b = desc(V4, subs[2], subs[0])
        assert descriptor_eq(a, b)

    def test_is_free(self):
        t = Subgroup.trivial(V4)
        assert is_free_descriptor(desc(V4, t, t))
        assert not is_free_descriptor(desc(V4, t, Subgroup.full(V4)))
