import logging
from typing import Optional

from prometheus_client import REGISTRY, Counter, Histogram, write_to_textfile

logger = logging.getLogger(__name__)

# Word metrics
WORDS_PARSED = Counter(
    "engelkit_words_parsed_total",
    "Total number of word expressions parsed"
)

# Series metrics
EXPANSIONS_COMPUTED = Counter(
    "engelkit_expansions_computed_total",
    "Total number of Magnus expansions computed",
    ["kind"]
)

# Lattice metrics
LATTICE_ROWS_INSERTED = Counter(
    "engelkit_lattice_rows_inserted_total",
    "Total number of rows that changed an incremental lattice"
)

SOLVER_TIME = Histogram(
    "engelkit_solver_seconds",
    "Time spent in integer lattice solves",
    ["solver"],
    buckets=[0.001, 0.01, 0.1, 0.5, 1.0, 5.0, 30.0, 120.0]
)

# Certificate metrics
CERTIFICATES_ISSUED = Counter(
    "engelkit_certificates_issued_total",
    "Total number of certificates issued",
    ["kind", "outcome"]
)

# Link metrics
LINKS_CLASSIFIED = Counter(
    "engelkit_links_classified_total",
    "Total number of link classifications",
    ["verdict"]
)

# Diagram metrics
SLIDES_APPLIED = Counter(
    "engelkit_slides_applied_total",
    "Total number of handle slides applied"
)


def export(path: Optional[str]) -> None:
    """Write the registry in text exposition format when a path is configured."""
    if not path:
        return
    write_to_textfile(path, REGISTRY)
    logger.info(f"Wrote metrics to {path}")
