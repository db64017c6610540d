import math

import pytest

from hga import BoundQuiverPresentation, Quiver, build_algebra, zero_relation
from hga import reps
from hga.errors import NotGorensteinVerified
from hga.reps import (
    ar_translate,
    ar_translate_inverse,
    cokernel,
    decompose_indecomposables,
    direct_sum,
    dual,
    ext_dim,
    factor_through,
    higher_translate,
    higher_translate_inverse,
    hom_basis,
    hom_dim,
    homological_dims,
    injective,
    is_gorenstein_projective,
    is_isomorphic,
    is_projective,
    kernel,
    minimal_resolution,
    proj_dim,
    projective,
    projective_cover,
    representation_from_dict,
    representation_to_dict,
    simple,
    syzygy,
    translate,
)


def nakayama3():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    return build_algebra(BoundQuiverPresentation(q, [zero_relation(("a", "b"))]))


def a2():
    q = Quiver(["1", "2"], [("a", "1", "2")])
    return build_algebra(BoundQuiverPresentation(q, []))


def loop_algebra():
    q = Quiver(["v"], [("x", "v", "v")])
    return build_algebra(BoundQuiverPresentation(q, [zero_relation(("x", "x"))]))


def dv(m):
    return m.dim_vector()


def test_projective_and_injective_dim_vectors():
    alg = nakayama3()
    assert dv(projective(alg, "1")) == (1, 1, 0)
    assert dv(projective(alg, "2")) == (0, 1, 1)
    assert dv(projective(alg, "3")) == (0, 0, 1)
    assert dv(injective(alg, "1")) == (1, 0, 0)
    assert dv(injective(alg, "2")) == (1, 1, 0)
    assert dv(injective(alg, "3")) == (0, 1, 1)


def test_hom_from_projective_counts_fibre():
    alg = nakayama3()
    for v in alg.vertices:
        for w in alg.vertices:
            m = projective(alg, w)
            assert hom_dim(projective(alg, v), m) == m.dims[v]
    assert hom_dim(projective(alg, "1"), projective(alg, "2")) == 0
    assert hom_dim(projective(alg, "2"), projective(alg, "1")) == 1


def test_syzygy_and_cover():
    alg = nakayama3()
    s1 = simple(alg, "1")
    p, epi, summands = projective_cover(s1)
    assert summands == ["1"]
    assert dv(syzygy(s1)) == (0, 1, 0)
    c, proj = cokernel(kernel(epi)[1])
    assert dv(c) == (1, 0, 0)


def test_ext_dimensions():
    alg = nakayama3()
    s = {v: simple(alg, v) for v in alg.vertices}
    assert ext_dim(s["1"], s["2"], 1) == 1
    assert ext_dim(s["2"], s["3"], 1) == 1
    assert ext_dim(s["1"], s["3"], 1) == 0
    assert ext_dim(s["1"], s["3"], 2) == 1
    assert ext_dim(s["1"], s["2"], 2) == 0
    assert ext_dim(s["2"], s["1"], 1) == 0
    assert ext_dim(s["1"], s["1"], 0) == 1


def test_proj_dim_values():
    alg = nakayama3()
    assert proj_dim(simple(alg, "1")) == 2
    assert proj_dim(simple(alg, "2")) == 1
    assert proj_dim(simple(alg, "3")) == 0


def test_infinite_proj_dim_by_periodicity():
    alg = loop_algebra()
    assert proj_dim(simple(alg, "v")) == math.inf


def test_ar_translate_a2():
    alg = a2()
    s1, s2 = simple(alg, "1"), simple(alg, "2")
    assert is_isomorphic(ar_translate(s1), s2)
    assert ar_translate(projective(alg, "1")).is_zero()
    assert ar_translate(projective(alg, "2")).is_zero()
    assert is_isomorphic(ar_translate_inverse(s2), s1)


def test_ar_translate_nakayama():
    alg = nakayama3()
    s1, s2, s3 = (simple(alg, v) for v in ["1", "2", "3"])
    assert is_isomorphic(ar_translate(s1), s2)
    assert is_isomorphic(ar_translate(s2), s3)
    assert is_isomorphic(ar_translate_inverse(s3), s2)
    assert is_isomorphic(ar_translate_inverse(s2), s1)


def test_ar_reciprocity_on_simples():
    alg = nakayama3()
    simples = {v: simple(alg, v) for v in alg.vertices}
    taus = {v: ar_translate(simples[v]) for v in alg.vertices}
    for nv_, n in simples.items():
        for mv, m in simples.items():
            if taus[nv_].is_zero():
                continue
            assert ext_dim(n, m, 1) == hom_dim(m, taus[nv_])


def test_higher_translate_degree_two():
    alg = nakayama3()
    s1, s3 = simple(alg, "1"), simple(alg, "3")
    assert is_isomorphic(higher_translate(s1, 2), s3)
    assert is_isomorphic(higher_translate_inverse(s3, 2), s1)
    assert is_isomorphic(translate(s1, 2, "tau_d"), s3)
    assert is_isomorphic(translate(s3, 2, "tau_d-"), s1)
    # degree one agrees with the classical translate
    assert is_isomorphic(translate(s1, 1, "tau_d"), ar_translate(s1))


def test_dual_is_involutive():
    alg = nakayama3()
    m = projective(alg, "1")
    dd = dual(dual(m))
    assert dd.algebra is alg
    assert is_isomorphic(dd, m)


def test_decompose_direct_sum():
    alg = nakayama3()
    m = direct_sum(
        [projective(alg, "1"), simple(alg, "2"), simple(alg, "2")]
    )[0]
    parts = decompose_indecomposables(m)
    dims = sorted(p.dim_vector() for p, _ in parts)
    assert dims == [(0, 1, 0), (0, 1, 0), (1, 1, 0)]
    for p, incl in parts:
        assert len(hom_basis(p, p)) == 1
        assert incl.source is p and incl.target is m


def test_isomorphism_checks():
    alg = nakayama3()
    assert is_isomorphic(projective(alg, "1"), injective(alg, "2"))
    assert not is_isomorphic(simple(alg, "1"), simple(alg, "2"))
    assert not is_isomorphic(projective(alg, "2"), injective(alg, "3")) or True
    # P_2 = [2,3] and I_3 = [2,3] coincide here
    assert is_isomorphic(projective(alg, "2"), injective(alg, "3"))


def test_homological_dims_record():
    alg = nakayama3()
    rec = homological_dims(alg)
    assert rec["projDims"] == {"1": 2, "2": 1, "3": 0}
    assert rec["globalDim"] == 2
    assert rec["dominantDim"] == 2
    assert rec["injDimOfA"] == 2
    assert rec["projDimOfDA"] == 2


def test_gorenstein_projective_gate():
    alg = nakayama3()
    with pytest.raises(NotGorensteinVerified):
        is_gorenstein_projective(projective(alg, "1"))
    homological_dims(alg)
    assert is_gorenstein_projective(projective(alg, "1"))
    assert is_gorenstein_projective(projective(alg, "3"))


def test_factor_through_lifts():
    alg = nakayama3()
    s1 = simple(alg, "1")
    p, epi, _ = projective_cover(s1)
    h = factor_through(epi, epi)
    assert h is not None
    assert epi.compose(h).blocks == epi.blocks
    k, ki = kernel(epi)
    assert factor_through(epi, ki) is None


def test_minimal_resolution_terms():
    alg = nakayama3()
    terms, diffs, summands, finished = minimal_resolution(simple(alg, "1"), 4)
    assert finished
    assert summands == [["1"], ["2"], ["3"]]
    assert diffs[1].compose(diffs[2]).is_zero() or len(diffs) < 3
    assert diffs[0].compose(diffs[1]).is_zero()


def test_is_projective_detection():
    alg = nakayama3()
    assert is_projective(projective(alg, "1"))
    assert not is_projective(simple(alg, "1"))
    assert not is_projective(injective(alg, "1"))


def test_representation_io_round_trip():
    alg = nakayama3()
    m = projective(alg, "1")
    d = representation_to_dict(m)
    back = representation_from_dict(alg, d)
    assert back.dims == m.dims
    assert back.maps == m.maps
