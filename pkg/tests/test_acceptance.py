"""End-to-end acceptance checks for the workbench.

Each test exercises one headline capability against frozen expected values
and prints a single PASS line directly to the terminal; failures surface
through pytest as usual.  Every computation is over exact rationals, so all
comparisons are exact.
"""

import json
import math
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

import pytest

from hga import reps
from hga.axioms import SandwichWitness, find_sandwiches, is_d_gentle_certificate
from hga.cluster import (
    SummandCollection,
    cluster_endo_algebra,
    ctgent_cover,
    ctgent_family,
    is_d_rigid,
)
from hga.presentations import Idempotent
from hga.reduction import gentle_sg_invariant, reduce_to_gentle, verify_sg_example
from hga.typea import (
    build_typeA_auslander,
    canonical_cluster_tilting,
    intertwines,
    maximal_nonintertwining,
)

A24_EDGES = {
    ("13", "14"), ("24", "25"), ("35", "36"), ("15", "25"), ("26", "36"),
    ("15", "16"), ("14", "24"), ("25", "35"), ("36", "46"), ("14", "15"),
    ("25", "26"), ("16", "26"),
}

A34_EDGES = {
    ("135", "136"), ("146", "147"), ("157", "158"), ("137", "147"),
    ("148", "158"), ("137", "138"), ("136", "146"), ("147", "157"),
    ("158", "168"), ("136", "137"), ("147", "148"), ("138", "148"),
    ("246", "247"), ("257", "258"), ("248", "258"), ("247", "257"),
    ("258", "268"), ("247", "248"), ("357", "358"), ("358", "368"),
    ("146", "246"), ("157", "257"), ("168", "268"), ("147", "247"),
    ("158", "258"), ("148", "248"), ("257", "357"), ("268", "368"),
    ("258", "358"), ("368", "468"),
}

CYCLE_COLLECTION = [
    (1, 3, 5), (3, 5, 7), (1, 5, 7), (5, 7, 9), (1, 7, 9),
    (1, 3, 6), (1, 4, 7), (1, 5, 8), (1, 6, 9), (1, 3, 7),
    (1, 4, 8), (1, 5, 9), (1, 3, 8), (1, 4, 9), (1, 3, 9),
]

CYCLE_LABELS = [
    "135", "136", "137", "138", "139", "147", "148", "149",
    "157", "158", "159", "169", "179", "357", "579",
]

CYCLE_ARROWS = {
    ("135", "136"), ("157", "158"), ("137", "147"), ("148", "158"),
    ("159", "169"), ("137", "138"), ("148", "149"), ("138", "139"),
    ("147", "157"), ("169", "179"), ("136", "137"), ("147", "148"),
    ("158", "159"), ("138", "148"), ("149", "159"), ("139", "149"),
    ("179", "579"), ("579", "157"), ("157", "357"), ("357", "135"),
}

CYCLE_CHORDS = [frozenset(x) for x in [
    ("137", "148"), ("147", "158"), ("148", "159"), ("138", "149"),
    ("357", "136"), ("357", "147"), ("579", "158"), ("579", "169"),
    ("135", "147"), ("157", "136"), ("179", "158"), ("157", "169"),
    ("157", "179"), ("157", "135"),
]]

TERMINAL_VERTICES = [
    "135", "136", "147", "157", "158", "169", "179", "357", "579",
]

TERMINAL_ARROWS = {
    ("135", "136"), ("136", "147"), ("147", "157"), ("157", "158"),
    ("157", "357"), ("158", "169"), ("169", "179"), ("179", "579"),
    ("357", "135"), ("579", "157"),
}

TERMINAL_CHORDS = [frozenset(x) for x in [
    ("357", "136"), ("357", "147"), ("579", "158"), ("579", "169"),
    ("135", "147"), ("157", "136"), ("179", "158"), ("157", "169"),
    ("157", "179"), ("157", "135"),
]]

EX_COLLECTION = [
    (1, 3, 5), (1, 3, 6), (1, 3, 7), (1, 3, 8), (1, 4, 8),
    (1, 5, 8), (1, 6, 8), (3, 5, 7), (3, 5, 8), (3, 6, 8),
]


def report(capfd, line):
    with capfd.disabled():
        print(line)


def chord_counter(p):
    return Counter(frozenset(r.validate(p.quiver)) for r in p.relations)


@pytest.fixture(scope="module")
def a24():
    return build_typeA_auslander(4, 2)


@pytest.fixture(scope="module")
def a34():
    return build_typeA_auslander(4, 3)


@pytest.fixture(scope="module")
def fam24(a24):
    return canonical_cluster_tilting(a24)


@pytest.fixture(scope="module")
def cycle_collection():
    return ctgent_family(5, 2, [2, 4])


@pytest.fixture(scope="module")
def cycle_algebra(cycle_collection):
    return cluster_endo_algebra(cycle_collection)


@pytest.fixture(scope="module")
def cycle_trace(cycle_algebra):
    return reduce_to_gentle(cycle_algebra.algebra)


@pytest.fixture(scope="module")
def ex51_algebra(fam24):
    return cluster_endo_algebra(SummandCollection(fam24, EX_COLLECTION)).algebra


def test_01_higher_auslander_construction(a24, a34, capfd):
    for alg, d, edges in [(a24, 2, A24_EDGES), (a34, 3, A34_EDGES)]:
        p = alg.presentation
        assert {(x.source, x.target) for x in p.quiver.arrows} == edges
        rec = reps.homological_dims(alg)
        # the construction at parameter d is the endomorphism algebra of a
        # (d-1)-cluster-tilting module, so it is a (d-1)-Auslander algebra:
        # gl.dim <= (d-1)+1 = d <= dom.dim
        assert rec["globalDim"] <= d <= rec["dominantDim"]
    assert (len(a24.vertices), len(a24.presentation.quiver.arrows)) == (10, 12)
    assert (len(a34.vertices), len(a34.presentation.quiver.arrows)) == (20, 30)
    report(capfd, "acceptance 01 construction: PASS "
                  "(10v/12a and 20v/30a, Auslander-type inequalities hold)")


def test_02_canonical_cluster_tilting_family(fam24, capfd):
    assert len(fam24.modules) == 20
    expected = {
        (i, j)
        for i, x in enumerate(fam24.labels)
        for j, y in enumerate(fam24.labels)
        if i != j and intertwines(y, x)
    }
    assert set(fam24.ext_edges) == expected
    report(capfd, "acceptance 02 cluster-tilting family: PASS "
                  "(20 indecomposables, Ext^2 digraph = intertwining digraph)")


def test_03_translate_ext_reciprocity(fam24, capfd):
    mods = fam24.modules
    taus = [reps.translate(m, 2, "tau_d") for m in mods]
    pairs = 0
    for m in mods:
        for j, n in enumerate(mods):
            assert reps.hom_dim(m, taus[j]) == reps.ext_dim(n, m, 2)
            pairs += 1
    assert pairs == 400
    report(capfd, "acceptance 03 reciprocity: PASS "
                  "(dim Hom(M, tau_2 N) = dim Ext^2(N, M) for 400 pairs)")


def test_04_maximal_collection_enumeration(capfd):
    cols = maximal_nonintertwining(1, 6)
    assert len(cols) == 14
    assert all(len(c.tuples) == 4 for c in cols)
    cyc = maximal_nonintertwining(2, 10, cyclic=True)
    assert all(len(c.tuples) == 15 for c in cyc)
    wanted = sorted(CYCLE_COLLECTION)
    assert any(sorted(t.entries for t in c.tuples) == wanted for c in cyc)
    report(capfd, "acceptance 04 enumeration: PASS "
                  "(14 collections of size 4; cyclic maxima all of size 15)")


def test_05_cycle_example_endo_quiver(cycle_algebra, capfd):
    res = cycle_algebra
    assert (res.end_dim, res.ext_dim) == (64, 3)
    p = res.presentation
    assert sorted(p.quiver.vertices) == sorted(CYCLE_LABELS)
    assert {(a.source, a.target) for a in p.quiver.arrows} == CYCLE_ARROWS
    assert chord_counter(p) == Counter(CYCLE_CHORDS)
    report(capfd, "acceptance 05 endo quiver: PASS "
                  "(15 vertices, 20 arrows, 14 chords as in the figure)")


def test_06_gentle_certificates(cycle_collection, ex51_algebra, capfd):
    cover, e = ctgent_cover(cycle_collection)
    cert = is_d_gentle_certificate(cover.algebra, e, 2)
    assert cert.verdict == "pass"
    own = is_d_gentle_certificate(
        ex51_algebra, Idempotent.of(ex51_algebra.vertices), 2)
    assert own.verdict == "fail"
    witnesses = find_sandwiches(ex51_algebra.presentation)
    assert witnesses and all(isinstance(w, SandwichWitness) for w in witnesses)
    assert not own.to_dict()["preGentle"]["axioms"]["axioms"]["E3"]["pass"]
    report(capfd, "acceptance 06 certificates: PASS "
                  "(cyclic algebra certified 2-gentle; mixed-collection "
                  "algebra rejected with a sandwich witness)")


def test_07_reduction_to_gentle(cycle_trace, capfd):
    trace = cycle_trace
    p = trace.terminal.presentation
    assert trace.terminal_vertices == TERMINAL_VERTICES
    assert {(a.source, a.target) for a in p.quiver.arrows} == TERMINAL_ARROWS
    assert chord_counter(p) == Counter(TERMINAL_CHORDS)
    justifications = []
    for step in trace.steps:
        cert = step["certificate"]
        assert cert["singularEquivalence"]["verdict"] == "pass"
        assert cert["quotientGlobalDim"] != math.inf
        justifications.append(cert["justification"])
        if cert["justification"] == "fabric":
            assert cert["fabric"]["verdict"] == "pass"
        else:
            # no companion idempotent exists for this removal (exhaustive
            # search over all companions, on both the algebra and its
            # opposite); the step is certified by the weaker localisation
            # criterion together with the singular-equivalence certificate
            assert cert["localisable"]["pass"]
            assert cert["fabric"] is None or cert["fabric"]["verdict"] == "fail"
    assert justifications == ["fabric", "localisable", "fabric"]
    assert gentle_sg_invariant(trace.terminal) == [5, 5]
    report(capfd, "acceptance 07 reduction: PASS "
                  "(9-vertex gentle terminal; steps 1 and 3 carry fabric "
                  "certificates, step 2 a localisation certificate; all "
                  "steps carry singular-equivalence and finite-gl.dim "
                  "certificates)")


def test_08_gorenstein_dimensions(ex51_algebra, cycle_algebra, cycle_trace,
                                  capfd):
    rec = reps.homological_dims(ex51_algebra)
    assert rec["injDimOfA"] == rec["projDimOfDA"] == 2
    for alg in (cycle_algebra.algebra, cycle_trace.terminal,
                cluster_endo_algebra(ctgent_family(3, 2, [2])).algebra):
        hd = reps.homological_dims(alg)
        assert hd["injDimOfA"] != math.inf
        assert hd["projDimOfDA"] != math.inf
    report(capfd, "acceptance 08 Gorenstein: PASS "
                  "(mixed-collection algebra is 2-Iwanaga-Gorenstein; all "
                  "corpus 2-gentle algebras have finite self-injective "
                  "dimensions)")


def test_09_syzygy_orbit_verification(ex51_algebra, capfd):
    mods = []
    cur = reps.simple(ex51_algebra, "136")
    for _ in range(14):
        mods.append(cur)
        _, epi, _ = reps.projective_cover(cur)
        cur, _ = reps.kernel(epi)
    rep = verify_sg_example(ex51_algebra, mods)
    assert rep["pass"]
    assert rep["orbitLength"] == 14
    assert rep["failures"] == []
    report(capfd, "acceptance 09 syzygy orbit: PASS "
                  "(14 Gorenstein projective modules forming one omega "
                  "cycle with vanishing compositions)")


def _rigid_certificates(seed):
    """Sample rigid collections and serialize their cover certificates."""
    rng = random.Random(seed)
    cases = []
    for n in (3, 4):
        fam = canonical_cluster_tilting(build_typeA_auslander(n, 2))
        cover = build_typeA_auslander(n, 3)
        labels = list(fam.labels)
        picked = 0
        while picked < 25:
            k = rng.randint(2, min(8, len(labels)))
            sub = sorted(rng.sample(range(len(labels)), k))
            chosen = [labels[i] for i in sub]
            c = SummandCollection(fam, [t.entries for t in chosen])
            if not is_d_rigid(c):
                continue
            e = Idempotent.of([t.label() for t in chosen])
            cert = is_d_gentle_certificate(cover, e, 2)
            cases.append(json.dumps(cert.to_dict(), sort_keys=True))
            picked += 1
    return cases


def test_10_random_rigid_collections_and_determinism(capfd):
    first = _rigid_certificates(20260823)
    assert len(first) == 50
    assert all('"verdict": "pass"' in text for text in first)
    assert _rigid_certificates(20260823) == first

    def one(seed):
        return _rigid_certificates(seed)

    with ThreadPoolExecutor(max_workers=1) as pool:
        single = list(pool.map(one, [20260823]))[0]
    with ThreadPoolExecutor(max_workers=4) as pool:
        quad = list(pool.map(one, [20260823] * 4))
    assert single == first
    assert all(run == first for run in quad)
    report(capfd, "acceptance 10 property suite: PASS "
                  "(50 rigid collections certified 2-gentle; reports "
                  "byte-identical across runs and thread counts)")
