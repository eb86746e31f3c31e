"""On-disk artifact directories exchanged between CLI commands.

An artifact is a directory with a manifest.json naming the format plus
inspectable CSV/JSON parts: sparse matrices as (row,col) triplet CSVs,
the item universe as item_info.json, and quality tables as CSV.  Writers
are deterministic: identical objects produce byte-identical artifacts.
"""
from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path

from .assoc import Itemsets, Rules
from .core import ItemInfo, ItemMatrix, Transactions

FORMAT_VERSION = 1

__all__ = ["ArtifactError", "write_artifact", "read_artifact",
           "read_transactions", "read_rules", "read_itemsets"]


class ArtifactError(ValueError):
    """The directory is not a well-formed artifact of the expected kind."""


# -- helpers -------------------------------------------------------------------

_INT_RE = re.compile(r"^-?\d+$")


def _num_to_str(x) -> str:
    if isinstance(x, bool):
        return str(x)
    if isinstance(x, int):
        return str(x)
    return repr(float(x))


def _str_to_num(s: str):
    if _INT_RE.match(s):
        return int(s)
    return float(s)


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
                    encoding="utf-8")


def _read_json(path: Path):
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ArtifactError(f"missing artifact part {path.name}") from None
    except json.JSONDecodeError as e:
        raise ArtifactError(f"malformed {path.name}: {e}") from None


def _write_matrix(path: Path, m: ItemMatrix) -> None:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["row", "col"])
    for j in range(m.n_cols):
        for r in m.row_idx[m.col_ptr[j]:m.col_ptr[j + 1]]:
            w.writerow([r, j])
    path.write_text(buf.getvalue(), encoding="utf-8", newline="")


def _read_matrix(path: Path, n_rows: int, info: ItemInfo) -> ItemMatrix:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ArtifactError(f"missing artifact part {path.name}") from None
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["row", "col"]:
        raise ArtifactError(f"malformed {path.name}: expected row,col header")
    rows: list[list[int]] = [[] for _ in range(n_rows)]
    try:
        for rec in reader:
            if not rec:
                continue
            r, c = int(rec[0]), int(rec[1])
            rows[r].append(c)
    except (ValueError, IndexError) as e:
        raise ArtifactError(f"malformed {path.name}: {e}") from None
    return ItemMatrix.from_rows(rows, info)


def _write_quality(path: Path, quality: dict[str, list]) -> None:
    buf = io.StringIO()
    w = csv.writer(buf)
    cols = list(quality.keys())
    w.writerow(cols)
    n = len(next(iter(quality.values()))) if quality else 0
    for i in range(n):
        w.writerow([_num_to_str(quality[c][i]) for c in cols])
    path.write_text(buf.getvalue(), encoding="utf-8", newline="")


def _read_quality(path: Path) -> dict[str, list]:
    if not path.exists():
        return {}
    reader = csv.reader(io.StringIO(path.read_text(encoding="utf-8")))
    header = next(reader, None)
    if header is None:
        return {}
    cols: dict[str, list] = {c: [] for c in header}
    try:
        for rec in reader:
            if not rec:
                continue
            for c, v in zip(header, rec):
                cols[c].append(_str_to_num(v))
    except ValueError as e:
        raise ArtifactError(f"malformed {path.name}: {e}") from None
    return cols


def _item_info_obj(info: ItemInfo) -> dict:
    return {"labels": list(info.labels), "variables": list(info.variables),
            "levels": list(info.levels)}


def _item_info_from(obj) -> ItemInfo:
    try:
        return ItemInfo(tuple(obj["labels"]), tuple(obj["variables"]),
                        tuple(obj["levels"]))
    except (KeyError, TypeError, ValueError) as e:
        raise ArtifactError(f"malformed item_info.json: {e}") from None


# -- public API ------------------------------------------------------------------

def write_artifact(obj, directory) -> Path:
    """Write Transactions, Rules or Itemsets as an artifact directory."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    if isinstance(obj, Transactions):
        _write_json(d / "manifest.json", {
            "format": "transactions", "version": FORMAT_VERSION,
            "rows": obj.n_rows, "items": obj.n_cols})
        _write_json(d / "item_info.json", _item_info_obj(obj.item_info))
        _write_matrix(d / "matrix.csv", obj.matrix)
        _write_json(d / "ids.json", list(obj.transaction_ids))
    elif isinstance(obj, Rules):
        _write_json(d / "manifest.json", {
            "format": "rules", "version": FORMAT_VERSION,
            "rows": len(obj), "items": obj.lhs.n_cols})
        _write_json(d / "item_info.json", _item_info_obj(obj.item_info))
        _write_matrix(d / "lhs.csv", obj.lhs)
        _write_matrix(d / "rhs.csv", obj.rhs)
        _write_quality(d / "quality.csv", obj.quality)
    elif isinstance(obj, Itemsets):
        _write_json(d / "manifest.json", {
            "format": "itemsets", "version": FORMAT_VERSION,
            "rows": len(obj), "items": obj.items.n_cols})
        _write_json(d / "item_info.json", _item_info_obj(obj.item_info))
        _write_matrix(d / "matrix.csv", obj.items)
        _write_quality(d / "quality.csv", obj.quality)
    else:
        raise TypeError(f"cannot write {type(obj).__name__} as an artifact")
    return d


def _manifest(directory) -> tuple[dict, Path]:
    d = Path(directory)
    if not d.is_dir():
        raise ArtifactError(f"{d} is not an artifact directory")
    man = _read_json(d / "manifest.json")
    if not isinstance(man, dict) or "format" not in man:
        raise ArtifactError("manifest.json lacks a format field")
    if man.get("version") != FORMAT_VERSION:
        raise ArtifactError(f"unsupported artifact version {man.get('version')!r}")
    return man, d


def read_artifact(directory):
    """Load whatever artifact kind the manifest declares."""
    man, d = _manifest(directory)
    fmt = man["format"]
    if fmt == "transactions":
        return read_transactions(d)
    if fmt == "rules":
        return read_rules(d)
    if fmt == "itemsets":
        return read_itemsets(d)
    raise ArtifactError(f"unknown artifact format {fmt!r}")


def _expect(man: dict, fmt: str):
    if man["format"] != fmt:
        raise ArtifactError(f"expected a {fmt} artifact, found {man['format']!r}")
    try:
        return int(man["rows"])
    except (KeyError, TypeError, ValueError):
        raise ArtifactError("manifest.json lacks a valid row count") from None


def read_transactions(directory) -> Transactions:
    man, d = _manifest(directory)
    n = _expect(man, "transactions")
    info = _item_info_from(_read_json(d / "item_info.json"))
    matrix = _read_matrix(d / "matrix.csv", n, info)
    ids = _read_json(d / "ids.json")
    try:
        return Transactions(matrix, tuple(ids))
    except ValueError as e:
        raise ArtifactError(str(e)) from None


def read_rules(directory) -> Rules:
    man, d = _manifest(directory)
    n = _expect(man, "rules")
    info = _item_info_from(_read_json(d / "item_info.json"))
    lhs = _read_matrix(d / "lhs.csv", n, info)
    rhs = _read_matrix(d / "rhs.csv", n, info)
    quality = _read_quality(d / "quality.csv")
    try:
        return Rules(lhs, rhs, quality)
    except ValueError as e:
        raise ArtifactError(str(e)) from None


def read_itemsets(directory) -> Itemsets:
    man, d = _manifest(directory)
    n = _expect(man, "itemsets")
    info = _item_info_from(_read_json(d / "item_info.json"))
    matrix = _read_matrix(d / "matrix.csv", n, info)
    quality = _read_quality(d / "quality.csv")
    try:
        return Itemsets(matrix, quality)
    except ValueError as e:
        raise ArtifactError(str(e)) from None
