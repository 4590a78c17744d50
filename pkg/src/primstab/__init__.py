"""Free-group words and Whitehead graphs, PSL(2,C) trace spectra,
primitive-stability scans, and BQ slice rendering."""

from .errors import (
    BadSubset,
    ClosedOnNonCyclicallyReduced,
    DegenerateAction,
    DegenerateMatrix,
    DeterminantError,
    ImageIsLine,
    InvalidLetter,
    NotCoprime,
    ParseError,
    PrimstabError,
    RankMismatch,
    RankTooLarge,
    WordParseError,
)
from .markoff import (
    BqKind,
    BqVerdict,
    MarkoffMove,
    MarkoffTriple,
    bq_decide,
    bq_verdict_from_json,
    bq_verdict_to_json,
    edge_escapes,
    fricke_kappa,
    markoff_move,
    slope_trace,
    solve_y_from_fricke,
)
from .moebius import (
    DiskSide,
    IsometryClass,
    MoebiusMap,
    Representation,
    SchottkyVerdict,
    SphereDisk,
    UhsPoint,
    act_uhs,
    axis_point,
    classify,
    evaluate,
    fricke_traces,
    image_circle,
    representation_from_json,
    representation_to_json,
    schottky_check,
    translation_length,
    uhs_distance,
)
from .render import (
    RootChoice,
    SliceConfig,
    palette_color,
    pixel_trace,
    pixel_verdict,
    render_slice,
    slice_config_from_json,
    slice_config_to_json,
)
from .stability import (
    FAILURE,
    NO_OBSTRUCTION,
    PsReport,
    SpectrumEntry,
    orbit_growth_probe,
    precompose,
    primitive_length_spectrum,
    ps_report_from_json,
    ps_report_to_json,
    ps_scan,
    restrict,
)
from .whitehead import (
    DEFAULT_RANK_CAP,
    BlockingCertificate,
    WhiteheadAutomorphism,
    WhiteheadGraph,
    apply_automorphism,
    blocking_certificate,
    enumerate_primitive_classes,
    exponent_vector,
    has_cutpoint,
    is_connected,
    is_primitive,
    primitive_of_slope,
    whitehead_graph,
    whitehead_minimize,
)
from .words import (
    CyclicWord,
    Word,
    concat,
    cyclic_length,
    cyclic_reduce,
    format_letters,
    invert,
    letter_key,
    parse_word,
    power,
    reduce,
)

__version__ = "0.1.0"
