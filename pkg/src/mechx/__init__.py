"""mechx: configuration-counting toolkit for mechanical platforms.

Measures how expressive a machine (or animal model) is by counting the
distinct static configurations its degrees of freedom can reach, and
compares that against the configuration count of its onboard computer.
Ships a platform-description file format with a bundled dataset, an
inverted-machine simulator, and figure emitters.

    >>> import mechx
    >>> doc = mechx.dataset_lookup("nao")
    >>> report = mechx.analyze(doc.platform)
    >>> report.bits_all_rounded
    238
"""

from .model import (
    ARTIFICIAL,
    NATURAL,
    NON_MECHANICAL_TAG,
    Continuous,
    DiscreteStates,
    DofGroup,
    NonIntegralSpan,
    Platform,
    ProcessorSpec,
    mechanical_groups,
    resolve_levels,
)
from .capacity import (
    BigCount,
    CapacityReport,
    ComparisonReport,
    ComputationalCapacity,
    CountMode,
    LOG10_2,
    analyze,
    compare,
    computational_capacity,
    count_configurations,
    digits_of_pow2,
    ilog10,
    kinematic_expressivity,
    ndigits,
)
from .specfile import (
    DatasetCorrupt,
    Diagnostic,
    DuplicateGroupLabel,
    MissingPlatformName,
    ParseError,
    PlatformDocument,
    Severity,
    SpecFileError,
    dataset_lookup,
    load_dataset,
    parse_platform,
    serialize_platform,
    validate,
)
from .aemachine import (
    HALTED,
    Machine,
    MachineConfig,
    MachineFile,
    Outcome,
    RunResult,
    TraceStep,
    load_machine,
    parse_machine,
    run,
    serialize_machine,
    step,
    to_mechanization,
    traces_isomorphic,
)
from .figures import (
    FigureBundle,
    TrendPoint,
    build_figure,
    emit_csv,
    emit_svg_scatter,
    trend_table,
)

__version__ = "0.1.0"

__all__ = [
    "ARTIFICIAL",
    "NATURAL",
    "NON_MECHANICAL_TAG",
    "Continuous",
    "DiscreteStates",
    "DofGroup",
    "NonIntegralSpan",
    "Platform",
    "ProcessorSpec",
    "mechanical_groups",
    "resolve_levels",
    "BigCount",
    "CapacityReport",
    "ComparisonReport",
    "ComputationalCapacity",
    "CountMode",
    "LOG10_2",
    "analyze",
    "compare",
    "computational_capacity",
    "count_configurations",
    "digits_of_pow2",
    "ilog10",
    "kinematic_expressivity",
    "ndigits",
    "DatasetCorrupt",
    "Diagnostic",
    "DuplicateGroupLabel",
    "MissingPlatformName",
    "ParseError",
    "PlatformDocument",
    "Severity",
    "SpecFileError",
    "dataset_lookup",
    "load_dataset",
    "parse_platform",
    "serialize_platform",
    "validate",
    "HALTED",
    "Machine",
    "MachineConfig",
    "MachineFile",
    "Outcome",
    "RunResult",
    "TraceStep",
    "load_machine",
    "parse_machine",
    "run",
    "serialize_machine",
    "step",
    "to_mechanization",
    "traces_isomorphic",
    "FigureBundle",
    "TrendPoint",
    "build_figure",
    "emit_csv",
    "emit_svg_scatter",
    "trend_table",
]
