"""Line bundles trivial on each component, modelled as edge cocycles.

Crossing an intersection piece multiplies section values by an exact
transition scalar: a section value on the head component of a directed
edge equals transition(edge) times the value on the tail component.  The
monodromy of a circuit is the ordered product of its transitions; it
classifies the bundle as trivial, torsion of a definite order, or
non-torsion, with explicit witness circuits for the negative verdicts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm
from typing import Mapping

from .config import SncConfiguration, config_from_data, config_to_data, incidence_graph
from .graphs import GraphError, Path, Pi1Basis, pi1_basis
from .jsonio import (
    InputError,
    canonical_dumps,
    check_version,
    need,
    scalar_from_data,
    scalar_to_data,
)
from .scalars import ExactScalar


@dataclass(frozen=True)
class LineBundleModel:
    """Transition scalars on the incidence graph of a base configuration.

    Transitions are stored on the canonical orientation ("+" edges); the
    reverse orientation is the inverse by construction.
    """

    base: SncConfiguration
    transitions: Mapping[str, ExactScalar]

    def __post_init__(self):
        graph = incidence_graph(self.base)
        canonical = {e for e in graph.geometric_edges()}
        stored: dict[str, ExactScalar] = {}
        for edge, scalar in self.transitions.items():
            if edge in canonical:
                rep, value = edge, scalar
            elif graph.bar(edge) in canonical:
                rep, value = graph.bar(edge), scalar.inverse()
            else:
                raise InputError(f"transition on unknown edge {edge!r}")
            if rep in stored and stored[rep] != value:
                raise InputError(f"conflicting transitions for edge {rep!r}")
            stored[rep] = value
        for rep in canonical:
            stored.setdefault(rep, ExactScalar.identity())
        object.__setattr__(self, "transitions", stored)
        object.__setattr__(self, "_graph", graph)

    @property
    def graph(self):
        return self._graph

    def transition(self, edge: str) -> ExactScalar:
        if edge in self.transitions:
            return self.transitions[edge]
        rep = self.graph.bar(edge)
        if rep in self.transitions:
            return self.transitions[rep].inverse()
        raise InputError(f"unknown edge {edge!r}")


@dataclass(frozen=True)
class SectionAssignment:
    """A scalar (or zero, encoded as None) per component."""

    values: Mapping[str, ExactScalar | None]

    @property
    def nowhere_vanishing(self) -> bool:
        return all(v is not None for v in self.values.values())

    def is_compatible(self, bundle: LineBundleModel) -> bool:
        graph = bundle.graph
        for edge in graph.geometric_edges():
            src = self.values.get(graph.initial[edge])
            dst = self.values.get(graph.terminal(edge))
            if src is None or dst is None:
                if src is not dst:
                    return False
                continue
            if dst != bundle.transition(edge) * src:
                return False
        return True


TRIVIAL = "trivial"
TORSION = "torsion"
NON_TORSION = "non-torsion"


@dataclass(frozen=True)
class MonodromyCertificate:
    base: str
    basis_values: tuple[tuple[tuple[str, ...], ExactScalar], ...]  # (circuit edges, value)
    verdict: str
    order: int | None = None  # torsion order; 1 for trivial, None for non-torsion
    witness: tuple[str, ...] | None = field(default=None)  # circuit edges for negative verdicts

    @property
    def is_trivial(self) -> bool:
        return self.verdict == TRIVIAL


def monodromy(bundle: LineBundleModel, circuit: Path) -> ExactScalar:
    """Ordered product of the transition scalars along a circuit."""
    if circuit.graph != bundle.graph:
        raise GraphError("circuit does not live on the bundle's incidence graph")
    if not circuit.is_circuit:
        raise GraphError(f"path from {circuit.start!r} to {circuit.end!r} is not a circuit")
    value = ExactScalar.identity()
    for edge in circuit.edges:
        value = value * bundle.transition(edge)
    return value


def monodromy_certificate(bundle: LineBundleModel, base: str) -> MonodromyCertificate:
    graph = bundle.graph
    basis = pi1_basis(graph, base)
    values = tuple((c.edges, monodromy(bundle, c)) for c in basis.circuits)
    if all(v.is_identity for _, v in values):
        return MonodromyCertificate(base, values, TRIVIAL, order=1)
    if all(v.is_torsion for _, v in values):
        order = lcm(*(v.torsion_order for _, v in values)) if values else 1
        witness = next(edges for edges, v in values if not v.is_identity)
        return MonodromyCertificate(base, values, TORSION, order=order, witness=witness)
    witness = next(edges for edges, v in values if not v.is_torsion)
    return MonodromyCertificate(base, values, NON_TORSION, order=None, witness=witness)


def synthesize_section(bundle: LineBundleModel, base: str | None = None) -> SectionAssignment | Path:
    """A nowhere-vanishing compatible section, or an obstructing circuit.

    Propagates the value 1 from the base component along a spanning tree,
    then checks every co-tree edge; the first failing edge yields its
    basis circuit as the obstruction.
    """
    graph = bundle.graph
    if base is None:
        base = min(graph.vertices)
    basis = pi1_basis(graph, base)
    values: dict[str, ExactScalar] = {base: ExactScalar.identity()}
    order = sorted(graph.vertices, key=lambda v: len(basis.tree_path(v).edges))
    for v in order:
        if v == base:
            continue
        e = basis.parent_edge[v]
        values[v] = bundle.transition(e) * values[graph.initial[e]]
    for i, gen in enumerate(basis.generators):
        src = values[graph.initial[gen]]
        dst = values[graph.terminal(gen)]
        if dst != bundle.transition(gen) * src:
            return basis.circuits[i]
    return SectionAssignment(values)


def tensor_power(bundle: LineBundleModel, m: int) -> LineBundleModel:
    if m < 1:
        raise ValueError(f"tensor power must be >= 1, got {m}")
    return LineBundleModel(bundle.base, {e: s**m for e, s in bundle.transitions.items()})


def bundle_to_data(bundle: LineBundleModel) -> dict:
    return {
        "configuration": config_to_data(bundle.base),
        "transitions": [
            {"edge": e, **scalar_to_data(s)} for e, s in sorted(bundle.transitions.items())
        ],
    }


def bundle_from_data(data: dict, where: str = "bundle") -> LineBundleModel:
    cfg = config_from_data(need(data, "configuration", where), where + ".configuration")
    transitions: dict[str, ExactScalar] = {}
    for entry in need(data, "transitions", where):
        edge = str(need(entry, "edge", where + ".transitions"))
        transitions[edge] = scalar_from_data(entry, where + f".transitions[{edge}]")
    return LineBundleModel(cfg, transitions)


def bundle_dumps(bundle: LineBundleModel) -> str:
    data = bundle_to_data(bundle)
    data["v"] = 1
    return canonical_dumps(data)


def bundle_loads(text: str, where: str = "bundle") -> LineBundleModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: not valid JSON ({exc})") from exc
    check_version(data, where)
    return bundle_from_data(data, where)


def certificate_to_data(cert: MonodromyCertificate) -> dict:
    data = {
        "base": cert.base,
        "verdict": cert.verdict,
        "basis": [
            {"circuit": list(edges), **scalar_to_data(value)}
            for edges, value in cert.basis_values
        ],
    }
    if cert.order is not None:
        data["order"] = cert.order
    if cert.witness is not None:
        data["witness"] = list(cert.witness)
    return data
