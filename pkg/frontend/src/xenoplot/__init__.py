from .render import PlotSpec, render
from .schema import (CLASS_COLUMNS, SchemaError, SummaryRow, SummaryTable,
                     load_scenarios, load_summary)

__version__ = "0.1.0"

__all__ = [
    "PlotSpec", "render",
    "CLASS_COLUMNS", "SchemaError", "SummaryRow", "SummaryTable",
    "load_scenarios", "load_summary",
]
