import numpy as np
import pytest

from permres.complexes import (
    euler_characteristic,
    free_up_to,
    homology_dims,
    is_resolution,
    single_term_complex,
    syzygy,
    tag_complex,
    tensor_complexes,
    truncate,
)
from permres.errors import OddLength, SelectionFailed
from permres.groups import Group
from permres.linalg import Mat
from permres.modules import (
    ModuleMap,
    composition_series,
    direct_sum,
    free_module,
    free_rank,
    identity_map,
    omega,
    omega_iter,
    ses_from_flag,
    trivial_module,
    zero_map,
)
from permres.permutation import recognize
from permres.resolution import (
    good_resolution,
    periodic_complex,
    rotate,
    splice,
    trim,
    trivial_resolution,
)
from permres.random_modules import random_module

from helpers import ref_rank

C2 = Group(2, 1)
C3 = Group(3, 1)
V4 = Group(2, 2)


class TestPeriodicComplex:
    def test_c2_length_2(self):
        c = periodic_complex(C2, 1, 2)
        assert c.dims() == (2, 2, 1)
        both = Mat(2, [[1, 1], [1, 1]])  # over F_2, g - 1 and the norm coincide
        assert c.diffs[0].matrix == both
        assert c.diffs[1].matrix == Mat(2, [[1], [1]])
        assert c.aug.matrix == Mat(2, [[1, 1]])
        assert is_resolution(c)

    def test_c3_length_2(self):
        c = periodic_complex(C3, 1, 2)
        assert c.dims() == (3, 3, 1)
        g = free_module(C3, 1).action[0]
        gm1 = g - Mat.identity(3, 3)
        assert c.diffs[0].matrix == gm1
        # brute-force oracle ranks: g-1 has rank 2, the norm has rank 1
        assert ref_rank(gm1.a.tolist(), 3) == 2
        norm = (np.ones((3, 3), dtype=np.int64)).tolist()
        assert ref_rank(norm, 3) == 1
        assert is_resolution(c)

    def test_odd_length_rejected(self):
        with pytest.raises(OddLength):
            periodic_complex(C2, 1, 3)
        with pytest.raises(OddLength):
            periodic_complex(C2, 1, 0)

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("ell", [2, 4, 6])
    def test_exact_for_all_tested_parameters(self, p, ell):
        c = periodic_complex(Group(p, 1), 1, ell)
        assert all(h == 0 for h in homology_dims(c))

    def test_hyperplane_factor_in_rank_2(self):
        c = periodic_complex(V4, 2, 2)
        assert c.dims() == (2, 2, 1)
        # e_1 fixes the cosets of H_2 = span{e_1}, e_2 permutes them
        assert c.terms[0].action[0].is_identity()
        assert not c.terms[0].action[1].is_identity()


class TestTrivialResolution:
    def test_rank_one_is_the_periodic_complex(self):
        got = trivial_resolution(C2, 0).complex
        want = periodic_complex(C2, 1, 2)
        assert got.dims() == want.dims()
        for a, b in zip(got.diffs, want.diffs):
            assert a.matrix == b.matrix
        assert got.aug.matrix == want.aug.matrix

    def test_v4_m1_term_dims(self):
        res = trivial_resolution(V4, 1)
        assert res.complex.dims() == (4, 8, 8, 4, 1)
        assert euler_characteristic(res.complex) == 1
        assert free_up_to(res.complex, 1)
        assert res.complex.terms[0] == free_module(V4, 1)

    def test_v4_m2_is_longer_and_free_up_to_3(self):
        res = trivial_resolution(V4, 2)
        assert res.complex.top == 8
        # convolution of (2,2,2,2,1) with itself
        assert res.complex.dims() == (4, 8, 12, 16, 16, 12, 8, 4, 1)
        assert free_up_to(res.complex, 3)
        assert not free_up_to(res.complex, 4)
        assert euler_characteristic(res.complex) == 1

    def test_tensor_of_two_periodic_complexes_matches(self):
        q1 = periodic_complex(V4, 1, 2)
        q2 = periodic_complex(V4, 2, 2)
        t = tensor_complexes(q1, q2)
        assert t.dims() == (4, 8, 8, 4, 1)
        assert is_resolution(t)
        assert recognize(t.terms[0]).descriptor.is_free()

    def test_all_terms_tagged(self):
        res = trivial_resolution(Group(3, 2), 0)
        assert res.complex.tags is not None
        assert len(res.complex.tags) == res.complex.top + 1


class TestRotate:
    def flag_ses(self, module, step):
        incls = composition_series(module)
        return ses_from_flag(incls[step - 1], incls[step])

    def test_zero_quotient(self):
        m = trivial_module(C2, 2)
        incls = composition_series(m)
        ses = ses_from_flag(incls[2], incls[2])
        rot = rotate(ses)
        assert rot.cover.free.dim == 0
        assert rot.ses.incl.source.dim == 0
        assert rot.ses.proj.source.dim == m.dim

    def test_free_quotient(self):
        f = free_module(C2, 1)
        k = trivial_module(C2, 0)
        ds = direct_sum(k, f)
        from permres.modules import ShortExactSequence

        ses = ShortExactSequence(incl=ds.inj1, proj=ds.proj2)
        rot = rotate(ses)
        assert rot.ses.incl.source.dim == 0  # Omega of a free module
        assert rot.ses.proj.source.dim == f.dim

    def test_socle_step_of_kc2(self):
        ses = self.flag_ses(free_module(C2, 1), 2)
        rot = rotate(ses)
        dims = (
            rot.ses.incl.source.dim,
            rot.ses.proj.source.dim,
            rot.ses.proj.target.dim,
        )
        assert dims == (1, 3, 2)


class TestSplice:
    def test_zero_source(self):
        f = free_module(C2, 1)
        res_m = tag_complex(single_term_complex(f, identity_map(f)))
        z = trivial_module(C2, 0)
        res_l = tag_complex(single_term_complex(z, identity_map(z)))
        out = splice(res_l, res_m, zero_map(z, f), identity_map(f))
        assert is_resolution(out)
        assert out.aug.target == f

    def test_iso_gives_zero_target(self):
        f = free_module(C2, 1)
        res = tag_complex(single_term_complex(f, identity_map(f)))
        out = splice(res, res, identity_map(f), zero_map(f, trivial_module(C2, 0)))
        assert is_resolution(out)
        assert out.aug.target.dim == 0

    def test_flag_step_of_kc2(self):
        # resolve the socle (a trivial line) and k (+) kC_2, splice to kC_2
        f = free_module(C2, 1)
        incls = composition_series(f)
        ses = ses_from_flag(incls[1], incls[2])
        rot = rotate(ses)
        base = trivial_resolution(C2, 1).complex
        from permres.complexes import direct_sum_complexes, retarget_augmentation

        res_l1 = retarget_augmentation(base, incls[1].source)
        extra = tag_complex(
            single_term_complex(rot.cover.free, identity_map(rot.cover.free))
        )
        res_m = direct_sum_complexes(res_l1, extra)
        ell = res_m.top
        res_omega = truncate(
            trivial_resolution(C2, max(1, ell) + 1).complex, check=False
        )
        assert res_omega.aug.target == rot.ses.incl.source
        out = splice(res_omega, res_m, rot.ses.incl, rot.ses.proj)
        assert is_resolution(out)
        assert out.aug.target == f
        assert free_up_to(out, 1)


class TestGoodResolution:
    def test_free_module_resolves_itself(self):
        f = free_module(V4, 1)
        res = good_resolution(f, 3)
        assert res.complex.top == 0
        assert res.complex.terms[0] == f
        assert res.report.ok
        assert free_up_to(res.complex, 3)

    def test_zero_module(self):
        res = good_resolution(trivial_module(C2, 0), 1)
        assert res.complex.dims() == (0,)
        assert res.report.ok

    def test_trivial_module_is_the_tensor_resolution(self):
        res = good_resolution(trivial_module(V4, 1), 1)
        want = trivial_resolution(V4, 1).complex
        assert res.complex.dims() == want.dims()
        assert res.report.ok

    def test_omega_k_over_c3(self):
        w = omega(trivial_module(C3, 1))[0]
        res = good_resolution(w, 1)
        assert res.report.ok
        assert euler_characteristic(res.complex) == w.dim

    def test_small_random_modules(self):
        for p, r, dim, seed, m in [
            (2, 1, 2, 3, 1),
            (2, 2, 3, 5, 0),
            (3, 1, 3, 2, 1),
        ]:
            mod = random_module(p, r, dim, seed)
            res = good_resolution(mod, m)
            assert res.report.ok
            assert euler_characteristic(res.complex) == mod.dim
            assert free_up_to(res.complex, m)

    def test_syzygy_identity(self):
        mod = random_module(2, 2, 3, seed=5)
        m = 2
        res = good_resolution(mod, m)
        assert res.report.ok
        for j in range(1, m + 1):
            k_j = syzygy(res.complex, j)
            w_j = omega_iter(mod, j)
            assert k_j.dim - mod.group.order * free_rank(k_j) == w_j.dim


class TestTrim:
    def build_sum_resolution(self, mod, t, m=1):
        group = mod.group
        base = good_resolution(mod, m).complex
        f = free_module(group, t)
        extra = tag_complex(single_term_complex(f, identity_map(f)))
        from permres.complexes import direct_sum_complexes

        res = direct_sum_complexes(base, extra)
        ds = direct_sum(mod, f)
        proj_m = ModuleMap(res.aug.target, mod, ds.proj1.matrix)
        proj_q = ModuleMap(res.aug.target, f, ds.proj2.matrix)
        return res, proj_m, proj_q

    def test_zero_q_is_identity(self):
        mod = trivial_module(C2, 1)
        res, proj_m, proj_q = self.build_sum_resolution(mod, 0)
        assert trim(res, proj_m, proj_q) is res

    def test_full_trim_to_zero(self):
        f = free_module(C2, 1)
        res = tag_complex(single_term_complex(f, identity_map(f)))
        z = trivial_module(C2, 0)
        proj_m = zero_map(f, z)
        proj_q = identity_map(f)
        out = trim(res, proj_m, proj_q)
        assert out.dims() == (0,)
        assert out.aug.target.dim == 0

    def test_k_plus_kc2(self):
        k = trivial_module(C2, 1)
        res, proj_m, proj_q = self.build_sum_resolution(k, 1, m=1)
        before = len([p for p in res.tags[0].parts if p.is_trivial()])
        out = trim(res, proj_m, proj_q)
        assert is_resolution(out)
        assert out.aug.target == k
        after = len([p for p in out.tags[0].parts if p.is_trivial()])
        assert before - after == 1
        assert free_up_to(out, 1)

    def test_trim_rejects_non_free_q(self):
        k = trivial_module(C2, 1)
        res = tag_complex(
            single_term_complex(free_module(C2, 1), ModuleMap(free_module(C2, 1), k, Mat(2, [[1, 1]])))
        )
        # pretend the target splits off a "free" part that is not free
        with pytest.raises(SelectionFailed):
            trim(res, zero_map(k, trivial_module(C2, 0)), identity_map(k))
