"""Splitter-mixer groups acting on rooted trees.

Construction from defining data, exact and depth-bounded word problem,
ball-growth enumeration, Monte-Carlo contraction statistics, a torsion
criterion over a finite successor graph, and growth-series analytics.
"""

__version__ = "0.1.0"

from .algebra import (
    Alphabet,
    CanonicalEpsilon,
    EpsilonSequence,
    FiniteGroup,
    Homomorphism,
    HypothesisReport,
    PermGroup,
    PhiCoordinate,
    PhiFamily,
    SplitterMixerData,
    build_perm_group,
    canonical_epsilon,
    check_theorem_hypotheses,
    validate,
)
from .catalog import CATALOG_NAMES, catalog, catalog_from_id
from .errors import (
    DataError,
    ExactnessError,
    LevelMismatchError,
    SmgrowError,
    TorsionStructureError,
)
from .groupfile import dump_definition, dumps_definition, load_group, parse_definition
from .growth import GrowthTable, MetricSpec, ball_elements, ball_enumerate, rate_diagnostics, sphere_series
from .mc import (
    ContractionMeasurement,
    DistributionStats,
    SamplerSpec,
    UniformWord,
    estimate_distribution,
    export_figure_data,
    measure_contraction,
    sample_uniform_word,
)
from .series import (
    PowerSeries,
    binomial_convolve,
    binomial_convolve_eta,
    model_rhs_diagnostic,
    radius_estimate,
    rho_recursion,
)
from .torsion import TorsionGraph, TorsionVerdict, build_graph, torsion_verdict, verify_witness
from .words import (
    BoundedCheck,
    Decomposition,
    Element,
    ReducedWord,
    act,
    decompose,
    equal,
    fingerprint,
    format_element,
    identity_word,
    invert,
    is_trivial,
    is_trivial_bounded,
    multiply,
    order_of,
    parse_element,
    power,
    reduce_letters,
)
from .wreath import WreathSystem, bsv, exponential_weakly_branch_pair
