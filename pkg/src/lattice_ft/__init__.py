"""F-transforms over complete lattices built from overlap and grouping maps."""
from .connectives import (
    BinaryConnective,
    Negator,
    ValidationReport,
    adjointness_check,
    chain_reversal,
    check_duality,
    closed_form,
    closed_form_names,
    connective_properties,
    derive_coresidual,
    derive_residual,
    induced_negator,
    load_connective,
    load_negator,
    negator_from_labels,
    standard_negator,
    validate_grouping,
    validate_negator,
    validate_overlap,
)
from .enumeration import enumerate_fuzzy_sets, fuzzy_set_matrix
from .errors import *  # noqa: F403
from .lattice import (
    TableLattice,
    UnitIntervalLattice,
    build_table_lattice,
    chain,
    figure1_lattice,
    join_of,
    load_lattice,
    meet_of,
    product_lattice,
)
from .lawcheck import LawContext, LawReport, law_ids, run_law, run_suite, suite_json, suite_table
from .partitions import (
    LFuzzyPartition,
    LFuzzySet,
    Universe,
    block_partition,
    characteristic_set,
    constant_set,
    core,
    equal_blocks,
    load_partition,
    validate_partition,
)
from .systems import (
    TransformationSystem,
    check_system_duality,
    partition_from_system,
    singleton_decomposition_check,
    system_from_partition,
    validate_system,
)
from .transforms import DirectTransformResult, direct_transform, inverse_transform

__version__ = "0.1.0"
