"""Bundled example data."""
from __future__ import annotations

from importlib import resources

from .core import Transactions
from .ingest import transactions_from_csv


def zoo_csv_path() -> str:
    """Path of the bundled Zoo animal-attributes CSV (101 rows)."""
    return str(resources.files("rulemine").joinpath("data/Zoo.csv"))


def zoo_transactions() -> Transactions:
    """The Zoo data converted with the default column handling
    (boolean items, 3 frequency bins for legs, one-hot animal type)."""
    return transactions_from_csv(zoo_csv_path())
