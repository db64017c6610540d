import math

import pytest

from hga import (
    BoundQuiverPresentation,
    Idempotent,
    Quiver,
    commutativity_relation,
    idempotent_subalgebra,
    zero_relation,
)
from hga import reps
from hga.axioms import built, is_gentle
from hga.cluster import SummandCollection, cluster_endo_algebra, ctgent_family
from hga.errors import (
    EmptyIdempotent,
    NoCommutativeSquare,
    NotGentle,
    NotGorensteinVerified,
    NotReducible,
)
from hga.reduction import (
    chensing_conditions,
    gentle_sg_invariant,
    is_fabric_idempotent,
    localisable_report,
    reduce_to_gentle,
    reduction_step,
    verify_sg_example,
)
from hga.typea import build_typeA_auslander, canonical_cluster_tilting

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


def linear(n, relations=()):
    q = Quiver(
        [str(i) for i in range(1, n + 1)],
        [(f"a{i}", str(i), str(i + 1)) for i in range(1, n)],
    )
    return BoundQuiverPresentation(q, list(relations))


def square():
    q = Quiver(
        ["a", "b", "c", "d"],
        [("p", "a", "b"), ("q", "a", "c"), ("r", "b", "d"), ("s", "c", "d")],
    )
    return BoundQuiverPresentation(
        q, [commutativity_relation(("p", "r"), ("q", "s"))]
    )


def five_vertex_corner():
    # commutativity square with a zero relation entering it; the corner on
    # {x, a, c, d} carries a single length-3 zero relation
    q = Quiver(
        ["x", "a", "b", "c", "d"],
        [("wx", "x", "a"), ("w1", "a", "b"), ("w3", "a", "c"),
         ("w2", "b", "d"), ("w4", "c", "d")],
    )
    p = BoundQuiverPresentation(q, [
        commutativity_relation(("w1", "w2"), ("w3", "w4")),
        zero_relation(("wx", "w1")),
    ])
    return idempotent_subalgebra(built(p), Idempotent.of(["x", "a", "c", "d"]))


def two_cycle():
    q = Quiver(["1", "2"], [("al", "1", "2"), ("be", "2", "1")])
    return BoundQuiverPresentation(
        q, [zero_relation(("al", "be")), zero_relation(("be", "al"))]
    )


@pytest.fixture(scope="module")
def sec5_algebra():
    return cluster_endo_algebra(ctgent_family(5, 2, [2, 4])).algebra


@pytest.fixture(scope="module")
def sec5_trace(sec5_algebra):
    return reduce_to_gentle(sec5_algebra)


@pytest.fixture(scope="module")
def ex51_algebra():
    fam = canonical_cluster_tilting(build_typeA_auslander(4, 2))
    return cluster_endo_algebra(SummandCollection(fam, EX_COLLECTION)).algebra


@pytest.fixture(scope="module")
def ex51_orbit(ex51_algebra):
    mods = []
    cur = reps.simple(ex51_algebra, "136")
    for _ in range(14):
        mods.append(cur)
        _, epi, _ = reps.projective_cover(cur)
        cur, _ = reps.kernel(epi)
    return mods


def test_fabric_all_vertices_vacuous():
    a = built(square())
    f = Idempotent.of(a.vertices)
    rep = is_fabric_idempotent(a, f, f)
    assert rep.verdict


def test_fabric_condition_one_fails():
    a = built(square())
    f = Idempotent.of(["b", "c", "d"])
    rep = is_fabric_idempotent(a, f, Idempotent.of(a.vertices))
    assert not rep.conditions["quotientProjDim"]["pass"]
    assert rep.conditions["quotientProjDim"]["witness"]["projDim"] == 2


def test_fabric_five_vertex_corner():
    a = five_vertex_corner()
    _, _, cert = reduction_step(a)
    companion = cert["fabric"]["companion"]
    rep = is_fabric_idempotent(
        a, Idempotent.of(["x", "a", "d"]), Idempotent.of(companion))
    assert rep.verdict
    assert rep.to_dict()["verdict"] == "pass"


def test_chensing_full_idempotent_trivial():
    a = built(square())
    rep = chensing_conditions(a, Idempotent.of(a.vertices))
    assert rep["verdict"] == "pass"
    assert rep["quotientSimples"] == []


def test_chensing_rejects_empty():
    a = built(square())
    with pytest.raises(EmptyIdempotent):
        chensing_conditions(a, Idempotent.of([]))


def test_chensing_loop_algebra():
    q = Quiver(["1"], [("x", "1", "1")])
    a = built(BoundQuiverPresentation(q, [zero_relation(("x", "x"))]))
    rep = chensing_conditions(a, Idempotent.of(["1"]))
    assert rep["verdict"] == "pass"


def test_reduction_step_gentle_input_raises():
    a = built(linear(3, [zero_relation(("a1", "a2"))]))
    with pytest.raises(NoCommutativeSquare):
        reduction_step(a)


def test_reduction_step_five_vertex_pinned():
    a = five_vertex_corner()
    f, corner, cert = reduction_step(a)
    assert sorted(map(str, f.vertex_subset)) == ["a", "d", "x"]
    assert cert["removed"] == ["c"]
    assert cert["justification"] == "fabric"
    assert cert["fabric"]["verdict"] == "pass"
    assert cert["singularEquivalence"]["verdict"] == "pass"
    assert cert["quotientGlobalDim"] != math.inf
    assert is_gentle(corner.presentation)["gentle"]


def test_reduction_step_square():
    a = built(square())
    f, corner, cert = reduction_step(a)
    assert corner.dim < a.dim
    assert len(corner.presentation.relations) == 0


def test_reduce_to_gentle_gentle_input_identity():
    a = built(linear(4, [zero_relation(("a1", "a2"))]))
    trace = reduce_to_gentle(a)
    assert trace.steps == []
    assert trace.terminal is a


def test_reduce_to_gentle_sec5(sec5_trace):
    trace = sec5_trace
    assert trace.terminal_vertices == TERMINAL_VERTICES
    p = trace.terminal.presentation
    arrows = {(a.source, a.target) for a in p.quiver.arrows}
    assert arrows == TERMINAL_ARROWS
    chords = [frozenset(map(str, r.validate(p.quiver))) for r in p.relations]
    assert sorted(chords, key=sorted) == sorted(TERMINAL_CHORDS, key=sorted)


def test_reduce_to_gentle_sec5_certificates(sec5_trace):
    dims = []
    for step in sec5_trace.steps:
        cert = step["certificate"]
        assert cert["justification"] in ("fabric", "localisable")
        if cert["justification"] == "fabric":
            assert cert["fabric"]["verdict"] == "pass"
        else:
            assert cert["localisable"]["pass"]
        assert cert["singularEquivalence"]["verdict"] == "pass"
        assert cert["quotientGlobalDim"] != math.inf
        dims.append(step["cornerDim"])
    assert dims == sorted(dims, reverse=True)
    assert len(dims) == len(set(dims))


def test_reduce_to_gentle_seed_invariance(sec5_algebra, sec5_trace):
    base = gentle_sg_invariant(sec5_trace.terminal)
    for seed in (1, 7):
        trace = reduce_to_gentle(sec5_algebra, seed=seed)
        assert trace.terminal_vertices == TERMINAL_VERTICES
        assert gentle_sg_invariant(trace.terminal) == base


def test_reduce_to_gentle_ex51_not_reducible(ex51_algebra):
    with pytest.raises(NotReducible):
        reduce_to_gentle(ex51_algebra)


def test_localisable_report_simple_of_pd_one():
    a = built(linear(3))
    rep = localisable_report(a, {"1", "2"})
    assert rep["pass"] and rep["projDim"] <= 1 and rep["selfExt"] == 0
    rep = localisable_report(built(square()), {"b", "c", "d"})
    assert not rep["pass"]


def test_sg_invariant_linear_empty():
    g = built(linear(4, [zero_relation(("a1", "a2"))]))
    assert gentle_sg_invariant(g) == []


def test_sg_invariant_two_cycle():
    assert gentle_sg_invariant(built(two_cycle())) == [2]


def test_sg_invariant_requires_gentle():
    with pytest.raises(NotGentle):
        gentle_sg_invariant(built(square()))


def test_sg_invariant_sec5_terminal(sec5_trace):
    inv = gentle_sg_invariant(sec5_trace.terminal)
    assert inv == [5, 5]
    assert inv.to_dict() == {"cycleLengths": [5, 5], "objects": 10}


def test_trace_to_dict_shape(sec5_trace):
    d = sec5_trace.to_dict()
    assert d["terminalGentle"]
    assert d["terminalVertices"] == TERMINAL_VERTICES
    assert all("certificate" in s for s in d["steps"])


def test_verify_sg_example_orbit(ex51_orbit, ex51_algebra):
    rep = verify_sg_example(ex51_algebra, ex51_orbit)
    assert rep["pass"]
    assert rep["orbitLength"] == 14
    assert rep["failures"] == []


def test_verify_sg_example_flags_projective(ex51_orbit, ex51_algebra):
    mods = ex51_orbit[:7] + [reps.projective(ex51_algebra, "135")] \
        + ex51_orbit[7:]
    rep = verify_sg_example(ex51_algebra, mods)
    assert not rep["pass"]
    assert {"check": "stablyNonzero", "position": 7} in rep["failures"]


def test_verify_sg_example_shifted_module_two_mismatches(
        ex51_orbit, ex51_algebra):
    mods = list(ex51_orbit)
    mods[5] = ex51_orbit[6]
    rep = verify_sg_example(ex51_algebra, mods)
    positions = [f["position"] for f in rep["failures"]
                 if f["check"] == "omegaCyclic"]
    assert positions == [4, 5]


def test_verify_sg_example_requires_gorenstein():
    # arrow into a loop with all length-2 paths zero: both self-injective
    # dimensions are infinite
    q = Quiver(["1", "2"], [("a", "1", "2"), ("l", "2", "2")])
    bad = built(BoundQuiverPresentation(
        q, [zero_relation(("l", "l")), zero_relation(("a", "l"))]))
    with pytest.raises(NotGorensteinVerified):
        verify_sg_example(bad, [reps.simple(bad, "1")])
