import numpy as np

from permres.groups import Group
from permres.linalg import Mat, rank
from permres.modules import (
    Module,
    ModuleMap,
    check_module_map,
    check_ses,
    composition_series,
    direct_sum,
    dual,
    free_module,
    free_rank,
    hom_space,
    identity_map,
    iso_probe,
    kernel,
    norm_matrix,
    omega,
    omega_iter,
    projective_cover,
    quotient,
    radical,
    radical_series,
    ses_from_flag,
    strip_free,
    tensor,
    trivial_module,
    validate_module,
    zero_map,
)
from permres.random_modules import random_module

from helpers import ref_mat_pow, ref_rank

C2 = Group(2, 1)
C3 = Group(3, 1)
V4 = Group(2, 2)  # (C_2)^2


def random_corpus():
    return [
        random_module(2, 1, 3, seed=5),
        random_module(2, 2, 4, seed=9),
        random_module(3, 1, 4, seed=3),
        random_module(3, 2, 5, seed=1),
    ]


class TestConstructors:
    def test_trivial(self):
        k = trivial_module(C2, 1)
        assert k.dim == 1 and k.action[0].is_identity()
        assert trivial_module(C2, 0).dim == 0
        k3 = trivial_module(C3, 3)
        assert radical(k3)[0].dim == 0

    def test_free_c2_is_the_swap(self):
        f = free_module(C2, 1)
        assert f.action[0] == Mat(2, [[0, 1], [1, 0]])
        assert free_module(C3, 0).dim == 0

    def test_free_v4_radical_dim_3(self):
        f = free_module(V4, 1)
        assert f.dim == 4
        # brute-force oracle: rank of [A_1 - I | A_2 - I]
        eye = np.eye(4, dtype=np.int64)
        stacked = np.hstack([(f.action[0].a - eye) % 2, (f.action[1].a - eye) % 2])
        assert ref_rank(stacked.tolist(), 2) == 3
        assert radical(f)[0].dim == 3

    def test_validate(self):
        assert validate_module(free_module(V4, 2)) is None
        # order 2 despite not being a permutation matrix
        m = Module(C2, (Mat(2, [[1, 1], [0, 1]]),))
        assert ref_mat_pow([[1, 1], [0, 1]], 2, 2) == [[1, 0], [0, 1]]
        assert validate_module(m) is None
        bad = Module(
            V4,
            (Mat(2, [[1, 1], [0, 1]]), Mat(2, [[1, 0], [1, 1]])),
        )
        assert validate_module(bad) == "commutativity i=1 j=2"
        order4 = Module(C3, (Mat(3, [[0, 2], [1, 0]]),))
        assert validate_module(order4) == "generator 1: order does not divide p"


class TestRadicalQuotientKernel:
    def test_radical_of_kc2(self):
        f = free_module(C2, 1)
        s, incl = radical(f)
        assert s.dim == 1
        assert incl.matrix == Mat(2, [[1], [1]])

    def test_quotient_edges(self):
        m = free_module(C3, 1)
        q, proj = quotient(m, zero_map(trivial_module(C3, 0), m))
        assert q.dim == m.dim and proj.is_surjective() and proj.is_injective()
        q2, _ = quotient(m, identity_map(m))
        assert q2.dim == 0

    def test_kc2_mod_radical_is_trivial(self):
        f = free_module(C2, 1)
        s, incl = radical(f)
        q, proj = quotient(f, incl)
        assert q.dim == 1 and q.action[0].is_identity()
        assert (proj.matrix @ incl.matrix).is_zero()

    def test_quotient_rejects_non_injective(self):
        import pytest

        from permres.errors import NotInjective

        f = free_module(C2, 1)
        collapse = ModuleMap(f, f, Mat(2, [[1, 1], [1, 1]]))
        with pytest.raises(NotInjective):
            quotient(f, collapse)

    def test_kernel_cases(self):
        f = free_module(C3, 1)
        assert kernel(identity_map(f))[0].dim == 0
        assert kernel(zero_map(f, trivial_module(C3, 1)))[0].dim == f.dim
        aug = ModuleMap(f, trivial_module(C3, 1), Mat(3, [[1, 1, 1]]))
        k, incl = kernel(aug)
        assert k.dim == 2
        assert (aug.matrix @ incl.matrix).is_zero()


class TestSumsTensorsDuals:
    def test_direct_sum(self):
        m = free_module(C2, 1)
        z = trivial_module(C2, 0)
        assert direct_sum(m, z).module == m
        two = direct_sum(trivial_module(C2, 1), trivial_module(C2, 1)).module
        assert two == trivial_module(C2, 2)
        for a, b in [(random_module(2, 2, 3, 1), random_module(2, 2, 2, 2))]:
            ds = direct_sum(a, b)
            assert ds.module.dim == a.dim + b.dim
            assert (ds.proj1 @ ds.inj1).matrix.is_identity()
            assert (ds.proj2 @ ds.inj2).matrix.is_identity()
            assert (ds.proj1 @ ds.inj2).matrix.is_zero()
            assert (ds.proj2 @ ds.inj1).matrix.is_zero()

    def test_tensor(self):
        k = trivial_module(C2, 1)
        m = free_module(C2, 1)
        assert tensor(k, m) == m
        t = tensor(m, m)
        assert t.dim == 4
        # oracle: the norm 1 + g acts on the tensor by I + A(x)A, which has rank 2
        diag = np.kron(m.action[0].a, m.action[0].a)
        full = (np.eye(4, dtype=np.int64) + diag) % 2
        assert ref_rank(full.tolist(), 2) == 2
        assert free_rank(t) == 2
        for a, b in [(random_module(3, 1, 2, 4), random_module(3, 1, 3, 5))]:
            assert tensor(a, b).dim == a.dim * b.dim

    def test_dual(self):
        assert dual(trivial_module(C3, 2)) == trivial_module(C3, 2)
        f = free_module(C3, 2)
        assert free_rank(dual(f)) == 2
        for m in random_corpus():
            assert dual(dual(m)) == m

    def test_hom_space(self):
        k2 = trivial_module(C3, 1)
        assert len(hom_space(k2, k2)) == 1
        assert len(hom_space(k2, free_module(C3, 1))) == 1
        for group in (C2, C3, V4):
            f = free_module(group, 1)
            basis = hom_space(f, f)
            assert len(basis) == group.order
            for h in basis:
                for a in f.action:
                    assert h @ a == a @ h


class TestCompositionSeries:
    def test_trivial_flag(self):
        incls = composition_series(trivial_module(C2, 3))
        assert len(incls) == 4
        assert [i.source.dim for i in incls] == [0, 1, 2, 3]

    def test_kc2_flag_passes_through_socle(self):
        f = free_module(C2, 1)
        incls = composition_series(f)
        assert [i.source.dim for i in incls] == [0, 1, 2]
        assert incls[1].matrix == Mat(2, [[1], [1]])  # the socle line

    def test_random_flags_have_trivial_quotients(self):
        for m in random_corpus():
            incls = composition_series(m)
            assert len(incls) == m.dim + 1
            assert incls[-1].matrix.is_identity()
            for small, big in zip(incls, incls[1:]):
                ses = ses_from_flag(small, big)
                n = ses.proj.target
                assert n.dim == 1
                assert all(a.is_identity() for a in n.action)

    def test_ses_from_flag_examples(self):
        incls = composition_series(trivial_module(C2, 2))
        ses = ses_from_flag(incls[1], incls[2])
        assert (ses.incl.source.dim, ses.incl.target.dim, ses.proj.target.dim) == (1, 2, 1)
        f = free_module(C2, 1)
        incls = composition_series(f)
        ses = ses_from_flag(incls[1], incls[2])
        assert check_ses(ses) is None
        assert ses.proj.target.dim == 1


class TestCoversAndLoops:
    def test_cover_of_free_is_bijective(self):
        f = free_module(C3, 2)
        cover = projective_cover(f)
        assert cover.free_rank == 2
        assert cover.map.is_injective() and cover.map.is_surjective()

    def test_cover_of_k_over_c2(self):
        cover = projective_cover(trivial_module(C2, 1))
        assert cover.free == free_module(C2, 1)
        assert cover.map.matrix == Mat(2, [[1, 1]])
        k, _ = kernel(cover.map)
        assert k.dim == 1

    def test_cover_of_zero(self):
        cover = projective_cover(trivial_module(C2, 0))
        assert cover.free.dim == 0

    def test_omega(self):
        assert omega(free_module(C3, 1))[0].dim == 0
        w, incl = omega(trivial_module(C3, 1))
        assert w.dim == 2
        assert check_module_map(incl) is None
        for group in (C2, C3):
            w2 = omega_iter(trivial_module(group, 1), 2)
            probe = iso_probe(w2, trivial_module(group, 1))
            assert probe.verdict == "iso"
            assert rank(probe.map.matrix) == 1

    def test_cover_dimension_identity(self):
        for m in random_corpus():
            cover = projective_cover(m)
            assert cover.map.is_surjective()
            assert cover.free.dim == cover.free_rank * m.group.order
            assert kernel(cover.map)[0].dim == cover.free.dim - m.dim


class TestFreeRankAndStrip:
    def test_free_rank_values(self):
        assert free_rank(free_module(V4, 3)) == 3
        assert free_rank(trivial_module(V4, 1)) == 0
        mixed = direct_sum(free_module(C2, 1), trivial_module(C2, 1)).module
        # oracle: block norm [[1,1],[1,1]] (+) [0] has rank 1
        assert ref_rank([[1, 1, 0], [1, 1, 0], [0, 0, 0]], 2) == 1
        assert free_rank(mixed) == 1

    def test_free_rank_additive(self):
        for m in random_corpus()[:2]:
            f = free_module(m.group, 1)
            both = direct_sum(m, f).module
            assert free_rank(both) == free_rank(m) + 1
            assert free_rank(m) <= m.dim // m.group.order

    def test_strip_free(self):
        f2 = free_module(C3, 2)
        res = strip_free(f2)
        assert (res.module.dim, res.stripped) == (0, 2)

        k = trivial_module(C2, 1)
        res = strip_free(k)
        assert (res.module, res.stripped) == (k, 0)

        mixed = direct_sum(free_module(C2, 1), trivial_module(C2, 1)).module
        res = strip_free(mixed)
        assert res.stripped == 1
        assert res.module.dim == 1 and res.module.action[0].is_identity()
        assert check_module_map(res.iso) is None
        assert rank(res.iso.matrix) == mixed.dim

    def test_strip_random(self):
        for m in random_corpus():
            f = free_module(m.group, 1)
            both = direct_sum(m, f).module
            res = strip_free(both)
            assert free_rank(res.module) == 0
            assert res.module.dim + res.stripped * m.group.order == both.dim
            assert check_module_map(res.iso) is None


class TestIsoProbe:
    def test_self_iso(self):
        for m in random_corpus()[:2]:
            assert iso_probe(m, m).verdict == "iso"

    def test_dimension_mismatch(self):
        assert iso_probe(trivial_module(C2, 1), free_module(C2, 1)).verdict == "not_isomorphic"

    def test_non_iso_same_dim(self):
        k2 = trivial_module(C2, 2)
        f = free_module(C2, 1)
        assert iso_probe(k2, f).verdict == "not_isomorphic"


class TestInvariants:
    def test_radical_series_terminates(self):
        for m in random_corpus():
            dims = [r.rows for r in radical_series(m)]
            assert dims[0] == m.dim and dims[-1] == 0
            assert all(a > b for a, b in zip(dims, dims[1:]))
            assert len(dims) <= m.dim + 1

    def test_outputs_validate(self):
        for m in random_corpus():
            assert validate_module(m) is None
            s, _ = radical(m)
            assert validate_module(s) is None
            assert validate_module(dual(m)) is None
            assert validate_module(omega(m)[0]) is None

    def test_norm_matrix_of_free(self):
        f = free_module(C3, 1)
        # the norm of kC_p is the all-ones matrix
        assert norm_matrix(f) == Mat(3, np.ones((3, 3), dtype=np.int64))


class TestRandomModules:
    def test_exact_dims_and_determinism(self):
        m1 = random_module(3, 2, 5, seed=1)
        m2 = random_module(3, 2, 5, seed=1)
        assert m1 == m2 and m1.dim == 5
        assert validate_module(m1) is None
        assert random_module(2, 1, 2, seed=7).dim == 2

    def test_composition_length(self):
        m = random_module(3, 2, 5, seed=1)
        assert len(composition_series(m)) == 6
