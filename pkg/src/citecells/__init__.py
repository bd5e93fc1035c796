"""citecells: partition-cell bibliometrics.

Publications are partitioned by the exact combination of subject categories
of their journals. Per cell, publication year, and citation window the
toolkit computes citation reference values (the mean e, and the iterated
truncated-mean threshold t for outstandingly cited articles), normalizes and
flags individual publications against them, quantifies how sensitive the
reference values are to moving one year, one window length, or one cell over,
and profiles researchers' article distributions over cells.
"""

__version__ = "0.1.0"

from .errors import (
    CitecellsError,
    DegenerateTriple,
    DuplicateId,
    EmptyCategorySet,
    EmptyDistribution,
    EmptyProfile,
    EmptyReport,
    InvalidCategoryCode,
    InvalidRegistry,
    InvalidSpec,
    MissingReference,
    MixedDimensions,
    NonPositiveValue,
    RowParseError,
    TemporalViolation,
    UnknownCategory,
    ZeroExpectation,
)
from .model import (
    AdjacentTriple,
    CellKey,
    CellPartition,
    Corpus,
    PublicationRecord,
    SubjectCategory,
    adjacent_triple,
    build_partition,
    canonical_cell_key,
)
from .ingest import (
    IngestResult,
    RejectedRow,
    parse_category_registry,
    parse_publications,
    write_category_registry,
    write_publications,
)
from .synth import CellProfile, GeneratorSpec, generate_synthetic_corpus, load_generator_spec
from .metrics import (
    CssScores,
    NormalizedScore,
    ReferenceTable,
    ReferenceValues,
    aggregate_normalized,
    build_reference_table,
    cell_distribution,
    citation_count,
    css_scores,
    flag_highly_cited,
    mean_expected_citations,
    normalized_citation_score,
    outstanding_threshold,
)
from .compare import (
    DIM_CELL,
    DIM_WINDOW,
    DIM_YEAR,
    DifferenceRecord,
    DimensionSummary,
    ResearcherProfile,
    cell_dimension_pairs,
    profile_overlap,
    relative_difference,
    researcher_profile,
    summarize_dimension,
    window_dimension_pairs,
    year_dimension_pairs,
)
from .report import (
    ReportSpec,
    emit_difference_records,
    emit_difference_summary,
    emit_profile_matrix,
    emit_reference_table,
    load_reference_table,
    write_report,
)
