"""rulemine: frequent-pattern mining toolkit.

Sparse transaction representation, Apriori/Eclat mining, interest
measures, association-set predicates, visualization exports and a CLI
with a JSON-serving mode for interactive exploration.
"""

from .core import (
    ItemInfo,
    ItemMatrix,
    Transactions,
    UniverseMismatchError,
    UnknownLabelError,
    combine,
    from_label_sets,
    row_is_subset_of,
    sample_rows,
    select,
    unique_rows,
)
from .ingest import (
    ColumnSpec,
    discretize,
    item_info,
    random_transactions,
    transactions_from_csv,
    transactions_from_table,
)
from .mine import MiningParams, apriori, eclat, induce_rules
from .measures import ContingencyCounts, add_quality, interest_measure
from .assoc import (
    Itemsets,
    Rules,
    export,
    is_closed,
    is_generator,
    is_maximal,
    is_redundant,
    is_significant,
    labels,
    render,
    sort_by,
)

__version__ = "0.1.0"

__all__ = [
    "ItemInfo", "ItemMatrix", "Transactions",
    "UniverseMismatchError", "UnknownLabelError",
    "combine", "from_label_sets", "row_is_subset_of", "sample_rows",
    "select", "unique_rows",
    "ColumnSpec", "discretize", "item_info", "random_transactions",
    "transactions_from_csv", "transactions_from_table",
    "MiningParams", "apriori", "eclat", "induce_rules",
    "ContingencyCounts", "add_quality", "interest_measure",
    "Itemsets", "Rules", "export", "is_closed", "is_generator",
    "is_maximal", "is_redundant", "is_significant", "labels", "render",
    "sort_by",
    "__version__",
]
