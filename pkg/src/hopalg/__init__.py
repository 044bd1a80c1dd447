"""Finite hyperstructures: tables, axioms, substructures, morphisms,
chain-reaction generation, and exhaustive censuses."""

from .core import (
    ClassificationReport,
    HyperOp,
    StructureClass,
    TripleWitness,
    Universe,
    check_associative,
    check_commutative,
    check_reproduction,
    check_weak_associative,
    classify,
    iter_bits,
    mask_of,
    product_elements,
    product_subsets,
)
from .substructures import (
    SubstructureRecord,
    enumerate_substructures,
    is_closed_substructure,
    restrict,
)
from .morphisms import (
    InvariantSignature,
    Relabeling,
    apply_relabeling,
    automorphisms,
    find_isomorphism,
    invariant_signature,
)
from .chemgen import (
    HALOGENS,
    ChannelKind,
    ReactionChannel,
    Species,
    SpeciesModel,
    collide,
    enumerate_species,
    generate_table,
    halogen_preset,
    reaction_channels,
)
from .census import (
    CensusReport,
    enumerate_tables,
    run_census,
    sample_indices,
    table_at,
    total_tables,
)
from .tableio import TableFormatError, parse_table, serialize_table

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "HyperOp",
    "StructureClass",
    "TripleWitness",
    "Universe",
    "check_associative",
    "check_commutative",
    "check_reproduction",
    "check_weak_associative",
    "classify",
    "iter_bits",
    "mask_of",
    "product_elements",
    "product_subsets",
    "SubstructureRecord",
    "enumerate_substructures",
    "is_closed_substructure",
    "restrict",
    "InvariantSignature",
    "Relabeling",
    "apply_relabeling",
    "automorphisms",
    "find_isomorphism",
    "invariant_signature",
    "HALOGENS",
    "ChannelKind",
    "ReactionChannel",
    "Species",
    "SpeciesModel",
    "collide",
    "enumerate_species",
    "generate_table",
    "halogen_preset",
    "reaction_channels",
    "CensusReport",
    "enumerate_tables",
    "run_census",
    "sample_indices",
    "table_at",
    "total_tables",
    "TableFormatError",
    "parse_table",
    "serialize_table",
    "__version__",
]
