"""Workbench for higher gentle algebras."""

from .algebras import (
    Algebra,
    build_algebra,
    idempotent_subalgebra,
    minimal_presentation,
    opposite,
    quotient_by_idempotent,
)
from .axioms import (
    check_axioms,
    is_d_gentle_certificate,
    is_gentle,
    is_pre_gentle,
)
from .cluster import (
    SummandCollection,
    cluster_endo_algebra,
    ctgent_cover,
    ctgent_family,
    is_d_rigid,
    is_d_tilting,
)
from .reduction import (
    FabricReport,
    ReductionTrace,
    SgInvariant,
    chensing_conditions,
    gentle_sg_invariant,
    is_fabric_idempotent,
    reduce_to_gentle,
    reduction_step,
    verify_sg_example,
)
from .typea import build_typeA_auslander, canonical_cluster_tilting
from .presentations import (
    Arrow,
    BoundQuiverPresentation,
    Idempotent,
    Quiver,
    RelationElement,
    commutativity_relation,
    presentation_from_dict,
    presentation_to_dict,
    presentation_to_dot,
    zero_relation,
)

__all__ = [
    "Algebra",
    "Arrow",
    "BoundQuiverPresentation",
    "FabricReport",
    "Idempotent",
    "Quiver",
    "ReductionTrace",
    "RelationElement",
    "SgInvariant",
    "SummandCollection",
    "build_algebra",
    "build_typeA_auslander",
    "canonical_cluster_tilting",
    "check_axioms",
    "chensing_conditions",
    "cluster_endo_algebra",
    "commutativity_relation",
    "ctgent_cover",
    "ctgent_family",
    "gentle_sg_invariant",
    "idempotent_subalgebra",
    "is_d_gentle_certificate",
    "is_d_rigid",
    "is_d_tilting",
    "is_fabric_idempotent",
    "is_gentle",
    "is_pre_gentle",
    "minimal_presentation",
    "opposite",
    "presentation_from_dict",
    "presentation_to_dict",
    "presentation_to_dot",
    "quotient_by_idempotent",
    "reduce_to_gentle",
    "reduction_step",
    "verify_sg_example",
    "zero_relation",
]
