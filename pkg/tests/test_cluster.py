from collections import Counter
from math import comb

import pytest

from hga import reps
from hga.axioms import is_d_gentle_certificate
from hga.cluster import (
    SummandCollection,
    cluster_endo_algebra,
    ctgent_cover,
    ctgent_family,
    is_d_rigid,
    is_d_tilting,
)
from hga.errors import AdjacencyViolation, HgaError, UnsupportedSummand
from hga.typea import build_typeA_auslander, canonical_cluster_tilting

SEC5_LABELS = [
    "135", "136", "137", "138", "139", "147", "148", "149",
    "157", "158", "159", "169", "179", "357", "579",
]

SEC5_ARROWS = {
    ("135", "136"), ("157", "158"), ("137", "147"), ("148", "158"),
    ("159", "169"), ("137", "138"), ("148", "149"), ("138", "139"),
    ("147", "157"), ("169", "179"), ("136", "137"), ("147", "148"),
    ("158", "159"), ("138", "148"), ("149", "159"), ("139", "149"),
    ("179", "579"), ("579", "157"), ("157", "357"), ("357", "135"),
}

SEC5_CHORDS = [frozenset(x) for x in [
    ("137", "148"), ("147", "158"), ("148", "159"), ("138", "149"),
    ("357", "136"), ("357", "147"), ("579", "158"), ("579", "169"),
    ("135", "147"), ("157", "136"), ("179", "158"), ("157", "169"),
    ("157", "179"), ("157", "135"),
]]

EX_COLLECTION = [
    (1, 3, 5), (1, 3, 6), (1, 3, 7), (1, 3, 8), (1, 4, 8),
    (1, 5, 8), (1, 6, 8), (3, 5, 7), (3, 5, 8), (3, 6, 8),
]

EX_ARROWS = {
    ("135", "136"), ("136", "137"), ("137", "138"), ("138", "148"),
    ("148", "158"), ("158", "168"), ("158", "358"), ("168", "368"),
    ("357", "358"), ("358", "135"), ("358", "368"), ("368", "136"),
}

EX_CHORDS = [frozenset(x) for x in [
    ("135", "148"), ("135", "158"), ("136", "158"), ("136", "168"),
    ("136", "358"), ("137", "168"), ("137", "368"), ("148", "358"),
    ("158", "368"), ("357", "368"),
]]

# radical layers of the Gorenstein-projective syzygy orbit of the
# EX_COLLECTION algebra, as composition factor sets per step
EX_OMEGA_ORBIT = [
    ["136"],
    ["137", "138", "148"],
    ["158"],
    ["168", "358", "368"],
    ["135", "136", "368"],
    ["136", "137", "138"],
    ["148"],
    ["158", "168"],
    ["358", "368"],
    ["135", "136"],
    ["137", "138"],
    ["148", "158"],
    ["168"],
    ["368"],
]


@pytest.fixture(scope="module")
def fam12():
    return canonical_cluster_tilting(build_typeA_auslander(2, 1))


@pytest.fixture(scope="module")
def fam24():
    return canonical_cluster_tilting(build_typeA_auslander(4, 2))


@pytest.fixture(scope="module")
def sec5():
    c = ctgent_family(5, 2, [2, 4])
    return c, cluster_endo_algebra(c)


def chord_set(p):
    return Counter(frozenset(r.validate(p.quiver)) for r in p.relations)


def test_projectives_endo_recovers_algebra(fam12):
    c = SummandCollection(fam12, [(1, 3), (1, 4)])
    res = cluster_endo_algebra(c)
    assert res.end_dim == 3
    assert res.ext_dim == 0
    p = res.presentation
    assert [(a.source, a.target) for a in p.quiver.arrows] == [("13", "14")]
    assert p.relations == []


def test_collection_rejects_shifted_projective(fam12):
    with pytest.raises(UnsupportedSummand):
        SummandCollection(fam12, [(1, 3), (2, 5)])


def test_collection_rejects_unknown_and_duplicates(fam12):
    with pytest.raises(HgaError):
        SummandCollection(fam12, [(1, 3), (1, 3)])
    with pytest.raises(HgaError):
        SummandCollection(fam12, [])


def test_rigidity_matches_intertwining(fam12):
    assert is_d_rigid(SummandCollection(fam12, [(1, 3), (1, 4)]))
    assert not is_d_rigid(SummandCollection(fam12, [(1, 3), (2, 4)]))
    full = SummandCollection(fam12, [(1, 3), (1, 4), (2, 4)])
    assert not is_d_rigid(full)
    assert not is_d_tilting(full)


def test_rigidity_cluster_ambient(fam12):
    c = SummandCollection(fam12, [(1, 3), (2, 4)])
    assert is_d_rigid(c, ambient="modules") == is_d_rigid(
        c, ambient="cluster")


def test_all_projectives_tilting():
    c = ctgent_family(3, 2, [])
    assert is_d_tilting(c)
    assert is_d_rigid(c)


def test_single_projective_not_tilting(fam12):
    assert not is_d_tilting(SummandCollection(fam12, [(1, 3)]))


def test_empty_index_set_recovers_regular_algebra():
    c = ctgent_family(3, 2, [])
    assert sorted(l.label() for l in c.labels) == [
        "135", "136", "137", "146", "147", "157"]
    res = cluster_endo_algebra(c)
    assert res.end_dim == 15
    assert res.ext_dim == 0
    arrows = {(a.source, a.target) for a in res.presentation.quiver.arrows}
    assert arrows == {
        ("135", "136"), ("136", "137"), ("136", "146"), ("137", "147"),
        ("146", "147"), ("147", "157"),
    }
    assert chord_set(res.presentation) == Counter(
        frozenset(x) for x in
        [("135", "146"), ("136", "147"), ("146", "157")]
    )


def test_ctgent_position_validation():
    with pytest.raises(AdjacencyViolation):
        ctgent_family(3, 2, [2, 3])
    with pytest.raises(UnsupportedSummand):
        ctgent_family(3, 2, [1])
    with pytest.raises(ValueError):
        ctgent_family(3, 2, [4])


def test_ctgent_one_replacement():
    c = ctgent_family(3, 2, [2])
    assert sorted(l.label() for l in c.labels) == [
        "135", "136", "137", "147", "157", "357"]
    assert is_d_rigid(c)
    assert is_d_tilting(c)
    res = cluster_endo_algebra(c)
    assert (res.end_dim, res.ext_dim) == (14, 1)
    assert res.ext_square_zero
    arrows = {(a.source, a.target) for a in res.presentation.quiver.arrows}
    assert arrows == {
        ("135", "136"), ("136", "137"), ("137", "147"),
        ("147", "157"), ("157", "357"), ("357", "135"),
    }
    assert chord_set(res.presentation) == Counter(
        frozenset(x) for x in
        [("135", "147"), ("135", "157"), ("136", "157"),
         ("136", "357"), ("147", "357")]
    )
    cover, e = ctgent_cover(c)
    cert = is_d_gentle_certificate(cover.algebra, e, 2)
    assert cert.verdict == "pass"


def test_cycle_collection_summand_count(sec5):
    c, _ = sec5
    assert len(c) == comb(5 + 2 - 1, 2)


def test_cycle_collection_labels(sec5):
    c, _ = sec5
    assert sorted(l.label() for l in c.labels) == sorted(SEC5_LABELS)


def test_cycle_collection_unique_index_set():
    fam = None
    admissible = []
    for i in range(1, 6):
        for j in range(i + 1, 6):
            try:
                c = ctgent_family(5, 2, [i, j])
            except (AdjacencyViolation, UnsupportedSummand):
                continue
            fam = c.family
            if sorted(l.label() for l in c.labels) == sorted(SEC5_LABELS):
                admissible.append((i, j))
    assert admissible == [(2, 4)]


def test_cycle_collection_endo_quiver(sec5):
    _, res = sec5
    assert (res.end_dim, res.ext_dim) == (64, 3)
    assert res.ext_square_zero
    arrows = {(a.source, a.target) for a in res.presentation.quiver.arrows}
    assert arrows == SEC5_ARROWS
    assert chord_set(res.presentation) == Counter(SEC5_CHORDS)


def test_cycle_collection_certificates(sec5):
    c, _ = sec5
    assert is_d_rigid(c)
    assert is_d_tilting(c)


def test_cycle_collection_cover_certificate(sec5):
    c, _ = sec5
    cover, e = ctgent_cover(c)
    cert = is_d_gentle_certificate(cover.algebra, e, 2)
    assert cert.verdict == "pass"


def test_mixed_collection_endo(fam24):
    c = SummandCollection(fam24, EX_COLLECTION)
    assert is_d_rigid(c)
    res = cluster_endo_algebra(c)
    assert (res.end_dim, res.ext_dim) == (30, 4)
    assert res.ext_square_zero
    arrows = {(a.source, a.target) for a in res.presentation.quiver.arrows}
    assert arrows == EX_ARROWS
    assert chord_set(res.presentation) == Counter(EX_CHORDS)


def test_mixed_collection_syzygy_orbit(fam24):
    c = SummandCollection(fam24, EX_COLLECTION)
    b = cluster_endo_algebra(c).algebra
    cur = reps.simple(b, "136")
    seen = []
    for _ in range(len(EX_OMEGA_ORBIT)):
        factors = [v for v, k in zip(b.vertices, cur.dim_vector())
                   for _ in range(k)]
        seen.append(sorted(factors))
        _, epi, _ = reps.projective_cover(cur)
        cur, _ = reps.kernel(epi)
    assert seen == [sorted(x) for x in EX_OMEGA_ORBIT]
    assert reps.is_isomorphic(cur, reps.simple(b, "136"))
