"""Visualization artifacts for rule sets: scatter data/SVG, LHS-grouped
matrix aggregation, and graph exports (JSON/DOT).

Styling is presentation-only; consumers should rely on structure, counts
and coordinates.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

import numpy as np

from .assoc import Rules

__all__ = [
    "ScatterPoint",
    "RuleGraph",
    "GroupedMatrix",
    "scatter_data",
    "scatter_svg",
    "grouped_matrix",
    "graph_data",
]


@dataclass(frozen=True)
class ScatterPoint:
    x: float          # support
    y: float          # confidence
    shade: float      # lift
    rule_index: int


@dataclass(frozen=True)
class RuleGraph:
    nodes: tuple[dict, ...]
    edges: tuple[dict, ...]


@dataclass(frozen=True)
class MatrixGroup:
    label: str
    rule_indices: tuple[int, ...]
    max_lift: float
    lift_by_rhs: dict[str, float] = field(default_factory=dict)
    support_by_rhs: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class GroupedMatrix:
    groups: tuple[MatrixGroup, ...]
    rhs_labels: tuple[str, ...]


def _need(r: Rules, *cols: str):
    for c in cols:
        if c not in r.quality:
            raise ValueError(f"rule set lacks the {c!r} quality column")


def scatter_data(r: Rules) -> list[ScatterPoint]:
    """One support/confidence point per rule, shaded by lift."""
    _need(r, "support", "confidence", "lift")
    return [ScatterPoint(s, c, l, i) for i, (s, c, l) in enumerate(
        zip(r.quality["support"], r.quality["confidence"], r.quality["lift"]))]


def _ramp(t: float) -> str:
    """Light grey to deep red."""
    t = min(max(t, 0.0), 1.0)
    r0, g0, b0 = 0xDB, 0xDB, 0xDB
    r1, g1, b1 = 0xB3, 0x0F, 0x0F
    return "#{:02x}{:02x}{:02x}".format(
        round(r0 + (r1 - r0) * t), round(g0 + (g1 - g0) * t), round(b0 + (b1 - b0) * t))


def scatter_svg(r: Rules, width: int = 640, height: int = 480) -> bytes:
    """SVG scatter plot: support and confidence on the axes, lift as color."""
    pts = scatter_data(r)
    ml, mr, mt, mb = 56, 110, 20, 48
    pw, ph = width - ml - mr, height - mt - mb
    lifts = [p.shade for p in pts]
    lo = min(lifts) if lifts else 0.0
    hi = max(lifts) if lifts else 1.0
    span = hi - lo

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<defs><linearGradient id="lift-ramp" x1="0" y1="1" x2="0" y2="0">'
        f'<stop offset="0" stop-color="{_ramp(0.0)}"/>'
        f'<stop offset="1" stop-color="{_ramp(1.0)}"/></linearGradient></defs>',
        f'<line class="axis" x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line class="axis" x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
        f'<text class="axis-label" x="{ml + pw / 2:g}" y="{height - 10}" '
        'text-anchor="middle">support</text>',
        f'<text class="axis-label" x="14" y="{mt + ph / 2:g}" text-anchor="middle" '
        f'transform="rotate(-90 14 {mt + ph / 2:g})">confidence</text>',
    ]
    for frac in (0.0, 0.5, 1.0):
        x = ml + frac * pw
        y = mt + ph - frac * ph
        out.append(f'<text class="tick" x="{x:g}" y="{mt + ph + 16}" '
                   f'text-anchor="middle" font-size="10">{frac:g}</text>')
        out.append(f'<text class="tick" x="{ml - 6}" y="{y + 3:g}" '
                   f'text-anchor="end" font-size="10">{frac:g}</text>')
    for p in pts:
        t = (p.shade - lo) / span if span > 0 else 0.5
        cx = ml + p.x * pw
        cy = mt + ph - p.y * ph
        out.append(
            f'<circle class="rule-point" data-rule="{p.rule_index}" '
            f'cx="{cx:g}" cy="{cy:g}" r="3" fill="{_ramp(t)}" fill-opacity="0.8"/>')
    lx = ml + pw + 24
    out.append(f'<rect class="legend" x="{lx}" y="{mt}" width="14" height="{ph}" '
               'fill="url(#lift-ramp)"/>')
    out.append(f'<text class="legend-label" x="{lx}" y="{mt - 6}" font-size="11">lift</text>')
    out.append(f'<text class="legend-tick" x="{lx + 18}" y="{mt + 10}" font-size="10">{hi:g}</text>')
    out.append(f'<text class="legend-tick" x="{lx + 18}" y="{mt + ph}" font-size="10">{lo:g}</text>')
    out.append("</svg>")
    return "\n".join(out).encode()


def grouped_matrix(r: Rules, k: int, seed: int = 0, max_iter: int = 50) -> GroupedMatrix:
    """Partition rules into at most k groups of similar LHS itemsets.

    Distinct LHS itemsets are described by their per-RHS lift vector
    (zero-filled where a consequent does not occur) and clustered around
    medoids; with k at or above the number of distinct LHS itemsets the
    grouping is the identity.  Groups are ordered by decreasing maximum
    lift and labeled "N rules: {two most frequent items +n}".
    """
    if k < 1:
        raise ValueError("group count must be at least 1")
    _need(r, "support", "lift")
    labels = r.item_info.labels
    lhs_rows = r.lhs.rows()
    rhs_rows = r.rhs.rows()
    lift = r.quality["lift"]
    support = r.quality["support"]

    distinct: list[tuple[int, ...]] = sorted({row for row in lhs_rows})
    lhs_pos = {row: p for p, row in enumerate(distinct)}
    rhs_all: list[tuple[int, ...]] = sorted({row for row in rhs_rows})
    rhs_pos = {row: p for p, row in enumerate(rhs_all)}

    # lift profile of each distinct LHS over the observed consequents
    profiles = [[0.0] * len(rhs_all) for _ in distinct]
    for i in range(len(r)):
        profiles[lhs_pos[lhs_rows[i]]][rhs_pos[rhs_rows[i]]] = lift[i]

    d = len(distinct)
    if d <= k:
        assign = list(range(d))
        n_groups = d
    else:
        # medoid update uses the member closest to the cluster mean; cheaper
        # than true medoid refinement and deterministic for a fixed seed
        prof = np.asarray(profiles)
        rng = random.Random(seed)
        medoids = sorted(rng.sample(range(d), k))
        assign_np = np.zeros(d, dtype=int)
        for _ in range(max_iter):
            d2 = np.empty((d, k))
            for g, c in enumerate(medoids):
                d2[:, g] = ((prof - prof[c]) ** 2).sum(axis=1)
            new_assign = d2.argmin(axis=1)
            new_medoids = []
            for g in range(k):
                members = np.flatnonzero(new_assign == g)
                if members.size == 0:
                    new_medoids.append(medoids[g])
                    continue
                centroid = prof[members].mean(axis=0)
                spread = ((prof[members] - centroid) ** 2).sum(axis=1)
                new_medoids.append(int(members[int(spread.argmin())]))
            done = new_medoids == medoids and (new_assign == assign_np).all()
            medoids, assign_np = new_medoids, new_assign
            if done:
                break
        assign = [int(x) for x in assign_np]
        n_groups = k

    rules_of_group: list[list[int]] = [[] for _ in range(n_groups)]
    for i in range(len(r)):
        rules_of_group[assign[lhs_pos[lhs_rows[i]]]].append(i)

    rhs_labels = tuple("{" + ",".join(labels[j] for j in row) + "}" for row in rhs_all)
    groups = []
    for g, members in enumerate(rules_of_group):
        if not members:
            continue
        max_lift = max(lift[i] for i in members)
        freq: dict[int, int] = {}
        for i in members:
            for j in lhs_rows[i]:
                freq[j] = freq.get(j, 0) + 1
        top = sorted(freq, key=lambda j: (-freq[j], j))[:2]
        rest = len(freq) - len(top)
        inner = ",".join(labels[j] for j in top) + (f" +{rest}" if rest > 0 else "")
        label = f"{len(members)} rules: {{{inner}}}"
        lift_by, sup_by = {}, {}
        for p, rl in enumerate(rhs_labels):
            vals = [i for i in members if rhs_pos[rhs_rows[i]] == p]
            if vals:
                lift_by[rl] = sum(lift[i] for i in vals) / len(vals)
                sup_by[rl] = sum(support[i] for i in vals) / len(vals)
        groups.append(MatrixGroup(label, tuple(members), max_lift, lift_by, sup_by))
    groups.sort(key=lambda g: -g.max_lift)
    return GroupedMatrix(tuple(groups), rhs_labels)


def graph_data(r: Rules, format: str = "json", max_rules: int = 1000) -> bytes:
    """Rule graph: LHS items point at rule nodes, rule nodes point at RHS
    items.  Only sensible for small sets; larger sets must be filtered."""
    if len(r) > max_rules:
        raise ValueError(
            f"{len(r)} rules exceed the graph cap of {max_rules}; "
            "filter the set (for example to the top rules by confidence)")
    _need(r, "support", "lift")
    labels = r.item_info.labels
    support = r.quality["support"]
    lift = r.quality["lift"]

    nodes: list[dict] = []
    seen_items: dict[str, None] = {}
    for lrow, rrow in zip(r.lhs.rows(), r.rhs.rows()):
        for j in lrow:
            seen_items.setdefault(labels[j])
        for j in rrow:
            seen_items.setdefault(labels[j])
    for lab in seen_items:
        nodes.append({"id": lab, "kind": "item", "label": lab})
    for i in range(len(r)):
        nodes.append({"id": f"r{i}", "kind": "rule", "label": f"r{i}",
                      "support": support[i], "lift": lift[i]})
    edges: list[dict] = []
    # (from, to, rule side) so DOT quoting does not depend on label shape
    typed: list[tuple[str, str, str]] = []
    for i, (lrow, rrow) in enumerate(zip(r.lhs.rows(), r.rhs.rows())):
        for j in lrow:
            edges.append({"from": labels[j], "to": f"r{i}"})
            typed.append((labels[j], f"r{i}", "to"))
        for j in rrow:
            edges.append({"from": f"r{i}", "to": labels[j]})
            typed.append((f"r{i}", labels[j], "from"))

    if format == "json":
        return json.dumps({"nodes": nodes, "edges": edges}, indent=2,
                          ensure_ascii=False).encode()
    if format == "dot":
        out = ["digraph rules {", "  rankdir=LR;"]
        for node in nodes:
            if node["kind"] == "item":
                out.append(f"  {_dot_quote(node['id'])} [shape=box];")
            else:
                tip = f"support {node['support']:.3f}, lift {node['lift']:.3f}"
                out.append(f'  {node["id"]} [shape=circle,label="",width=0.2,'
                           f"tooltip={_dot_quote(tip)}];")
        for src, dst, side in typed:
            a = src if side == "from" else _dot_quote(src)
            b = dst if side == "to" else _dot_quote(dst)
            out.append(f"  {a} -> {b};")
        out.append("}")
        return "\n".join(out).encode()
    raise ValueError(f"unknown graph format {format!r}")


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
