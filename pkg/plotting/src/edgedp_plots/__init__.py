"""Charts for the experiment harness summary CSV."""

from .render import (
    ERROR_FIGURE,
    VARIANCE_FIGURE,
    NoDataError,
    SchemaError,
    SummaryRow,
    SummaryTable,
    build_figures,
    load_summary,
    render_figures,
)

__version__ = "0.1.0"
