"""Referenced publication year spectroscopy (RPYS).

Parse Web of Science exports, count cited references per referenced
publication year, smooth the counts with a five-year median, detect
peak years, and drill into each peak's most-cited authors and works.
"""

from .corpus import (
    Corpus,
    CorpusDiagnostics,
    CorpusError,
    CorpusStats,
    JournalStats,
    Record,
    RefKey,
    build_corpus,
    corpus_stats,
    reference_key,
)
from .profiles import (
    AuthorShare,
    AuthorWorkBreakdown,
    WorkShare,
    YearProfile,
    author_breakdown,
    drill_year,
    profile_all_peaks,
    round_share,
)
from .spectrum import (
    DeviationSeries,
    Peak,
    Spectrum,
    compute_spectrum,
    detect_peaks,
    median_deviation,
)
from .svgplot import render_spectrogram
from .textnorm import UNKNOWN_AUTHOR, normalize_author
from .wos import (
    TAB_DELIMITED,
    TAGGED,
    CitedReference,
    ExportParseError,
    ParseDiagnostics,
    RawRecord,
    UnrecognizedFormatError,
    detect_format,
    load_export,
    parse_cited_reference,
    parse_export,
    serialize_export,
    serialize_record,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "UNKNOWN_AUTHOR",
    "normalize_author",
    "TAGGED",
    "TAB_DELIMITED",
    "RawRecord",
    "CitedReference",
    "ParseDiagnostics",
    "UnrecognizedFormatError",
    "ExportParseError",
    "detect_format",
    "parse_export",
    "parse_cited_reference",
    "serialize_record",
    "serialize_export",
    "load_export",
    "Record",
    "RefKey",
    "Corpus",
    "JournalStats",
    "CorpusStats",
    "CorpusDiagnostics",
    "CorpusError",
    "reference_key",
    "build_corpus",
    "corpus_stats",
    "Spectrum",
    "DeviationSeries",
    "Peak",
    "compute_spectrum",
    "median_deviation",
    "detect_peaks",
    "AuthorShare",
    "WorkShare",
    "YearProfile",
    "AuthorWorkBreakdown",
    "round_share",
    "drill_year",
    "author_breakdown",
    "profile_all_peaks",
    "render_spectrogram",
]
