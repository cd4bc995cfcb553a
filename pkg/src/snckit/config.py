"""Configurations of crossing components and their incidence graphs.

A configuration records the combinatorial skeleton of a reducible space:
components with dimensions, one labelled intersection piece per connected
component of a pairwise intersection, and optional deeper strata.  The
incidence graph has one vertex per component and one geometric edge per
intersection piece; an intersection piece `p` between components a < b
yields the directed edges "p+" (a to b) and "p-" (b to a).
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import StallingsGraph
from .jsonio import InputError, canonical_dumps, check_version, need

import json


@dataclass(frozen=True)
class Component:
    id: str
    dim: int
    label: str = ""


@dataclass(frozen=True)
class IntersectionPiece:
    id: str
    endpoints: tuple[str, str]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "endpoints", tuple(sorted(self.endpoints)))


@dataclass(frozen=True)
class Stratum:
    id: str
    carriers: tuple[str, ...]
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "carriers", tuple(sorted(self.carriers)))


@dataclass(frozen=True)
class SncConfiguration:
    components: tuple[Component, ...]
    intersections: tuple[IntersectionPiece, ...] = ()
    strata: tuple[Stratum, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(sorted(self.components, key=lambda c: c.id)))
        object.__setattr__(self, "intersections", tuple(sorted(self.intersections, key=lambda p: p.id)))
        object.__setattr__(self, "strata", tuple(sorted(self.strata, key=lambda s: s.id)))

    def component_ids(self) -> list[str]:
        return [c.id for c in self.components]

    def piece(self, pid: str) -> IntersectionPiece:
        for p in self.intersections:
            if p.id == pid:
                return p
        raise KeyError(pid)


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" or "warning"
    location: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    findings: tuple[Finding, ...] = ()

    @property
    def ok(self) -> bool:
        return not any(f.severity == "error" for f in self.findings)

    def messages(self) -> list[str]:
        return [f"{f.severity} at {f.location}: {f.message}" for f in self.findings]


def validate_configuration(cfg: SncConfiguration) -> ValidationReport:
    findings: list[Finding] = []

    def err(location: str, message: str):
        findings.append(Finding("error", location, message))

    dims: dict[str, int] = {}
    for c in cfg.components:
        if c.id in dims:
            err(f"component {c.id}", "duplicate component id")
        if c.dim < 0:
            err(f"component {c.id}", f"dimension must be nonnegative, got {c.dim}")
        dims[c.id] = c.dim

    seen_pieces: set[str] = set()
    directed_ids: set[str] = set()
    for p in cfg.intersections:
        loc = f"intersection {p.id}"
        if p.id in seen_pieces:
            err(loc, "duplicate intersection id")
        seen_pieces.add(p.id)
        a, b = p.endpoints
        if a == b:
            err(loc, "self-intersection edge forbidden")
        for end in (a, b):
            if end not in dims:
                err(loc, f"endpoint {end!r} is not a component")
        for d in (p.id + "+", p.id + "-"):
            if d in directed_ids:
                err(loc, f"derived directed edge id {d!r} collides with another piece")
            directed_ids.add(d)

    seen_strata: set[str] = set()
    for s in cfg.strata:
        loc = f"stratum {s.id}"
        if s.id in seen_strata:
            err(loc, "duplicate stratum id")
        seen_strata.add(s.id)
        if not s.carriers:
            err(loc, "stratum has no carrier components")
        carrier_dims = []
        for cid in s.carriers:
            if cid not in dims:
                err(loc, f"carrier {cid!r} is not a component")
            else:
                carrier_dims.append(dims[cid])
        if carrier_dims and s.dim >= min(carrier_dims):
            err(loc, f"stratum not proper: dim {s.dim} not below carrier minimum {min(carrier_dims)}")

    return ValidationReport(tuple(findings))


def incidence_graph(cfg: SncConfiguration) -> StallingsGraph:
    """One vertex per component, one geometric edge pair per intersection piece."""
    report = validate_configuration(cfg)
    if not report.ok:
        raise InputError("invalid configuration: " + "; ".join(report.messages()))
    geo = []
    for p in cfg.intersections:
        a, b = p.endpoints
        geo.append((p.id + "+", p.id + "-", a, b))
    return StallingsGraph.build(cfg.component_ids(), geo)


def config_to_data(cfg: SncConfiguration) -> dict:
    data: dict = {
        "components": [
            {"id": c.id, "dim": c.dim, "label": c.label} for c in cfg.components
        ],
        "intersections": [
            {"id": p.id, "endpoints": list(p.endpoints), "label": p.label}
            for p in cfg.intersections
        ],
    }
    if cfg.strata:
        data["strata"] = [
            {"id": s.id, "carriers": list(s.carriers), "dim": s.dim} for s in cfg.strata
        ]
    return data


def config_from_data(data: dict, where: str = "configuration") -> SncConfiguration:
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object")
    comps = []
    for entry in need(data, "components", where):
        comps.append(
            Component(
                id=str(need(entry, "id", where + ".components")),
                dim=int(need(entry, "dim", where + ".components")),
                label=str(entry.get("label", "")),
            )
        )
    pieces = []
    for entry in need(data, "intersections", where):
        ends = need(entry, "endpoints", where + ".intersections")
        if not isinstance(ends, list) or len(ends) != 2:
            raise InputError(f"{where}: intersection endpoints must be a pair")
        pieces.append(
            IntersectionPiece(
                id=str(need(entry, "id", where + ".intersections")),
                endpoints=(str(ends[0]), str(ends[1])),
                label=str(entry.get("label", "")),
            )
        )
    strata = []
    for entry in data.get("strata", []):
        strata.append(
            Stratum(
                id=str(need(entry, "id", where + ".strata")),
                carriers=tuple(str(x) for x in need(entry, "carriers", where + ".strata")),
                dim=int(need(entry, "dim", where + ".strata")),
            )
        )
    return SncConfiguration(tuple(comps), tuple(pieces), tuple(strata))


def config_dumps(cfg: SncConfiguration) -> str:
    data = config_to_data(cfg)
    data["v"] = 1
    return canonical_dumps(data)


def config_loads(text: str, where: str = "configuration") -> SncConfiguration:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: not valid JSON ({exc})") from exc
    check_version(data, where)
    return config_from_data(data, where)
