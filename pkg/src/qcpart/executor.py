"""Gate classification under a partition assignment: execution trace and metrics.

A two-qubit gate whose control and target sit in different parts is global
and costs one teleportation; everything else is local and free. Parts are
rendered 0-based (p0, p1, ...) in gate strings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .circuit import Circuit
from .partitioner import PartitionAssignment, PartitionResult

LOCAL = "local"
GLOBAL = "global"


@dataclass(frozen=True)
class TraceEntry:
    gate_ordinal: int
    rendering: str
    kind: str  # LOCAL or GLOBAL
    parts: tuple[int, ...]
    teleports_so_far: int

    @property
    def is_global(self) -> bool:
        return self.kind == GLOBAL


@dataclass(frozen=True)
class Metrics:
    """Evaluation summary; ratio_r = teleportations / (2 * qubits), exact."""

    teleportations: int
    qubits: int
    ratio_r: Fraction
    per_part_sizes: tuple[int, ...]


def trace_execution(circuit: Circuit, assignment: PartitionAssignment) -> tuple[TraceEntry, ...]:
    """One entry per gate in execution order, with a running teleport count.

    Single-qubit gates are always local; the total number of global entries
    equals the inter-part weight of the assignment.
    """
    if assignment.n != circuit.width:
        raise ValueError(
            f"assignment covers {assignment.n} qubits, circuit has {circuit.width}"
        )
    part = assignment.part_labels()
    entries = []
    teleports = 0
    for g in circuit.gates:
        label = g.label.upper()
        if not g.is_two_qubit:
            t = g.target
            entries.append(TraceEntry(
                g.ordinal, f"{label}(q{t + 1},p{part[t]})", LOCAL,
                (part[t],), teleports,
            ))
            continue
        c, t = g.qubits
        pc, pt = part[c], part[t]
        if pc == pt:
            rendering = f"{label}(q{c + 1},q{t + 1},p{pc})"
            kind = LOCAL
        else:
            rendering = f"{label}(q{c + 1},p{pc},q{t + 1},p{pt})"
            kind = GLOBAL
            teleports += 1
        entries.append(TraceEntry(g.ordinal, rendering, kind, tuple(sorted({pc, pt})), teleports))
    return tuple(entries)


def compute_metrics(circuit: Circuit, result: PartitionResult) -> Metrics:
    """Teleportation count and the ratio R = teleportations / (2 * qubits)."""
    return Metrics(
        teleportations=result.cost,
        qubits=circuit.width,
        ratio_r=Fraction(result.cost, 2 * circuit.width),
        per_part_sizes=result.assignment.sizes(),
    )


def format_ratio(r: Fraction) -> str:
    """Exact rational rendered with 2 fractional digits (ties to even)."""
    scaled = round(r * 100)
    return f"{scaled // 100}.{scaled % 100:02d}"


def trace_to_text(trace: tuple[TraceEntry, ...]) -> str:
    """Aligned three-column table: # of Gate, Gate_name, Type (L/G)."""
    rows = [(f"g{e.gate_ordinal + 1}", e.rendering, "G" if e.is_global else "L") for e in trace]
    headers = ("# of Gate", "Gate_name", "Type")
    widths = [max(len(headers[c]), *(len(r[c]) for r in rows)) if rows else len(headers[c])
              for c in range(3)]
    lines = ["  ".join(h.ljust(widths[c]) for c, h in enumerate(headers))]
    for r in rows:
        lines.append("  ".join(r[c].ljust(widths[c]) for c in range(3)).rstrip())
    return "\n".join(lines) + "\n"


def trace_to_records(trace: tuple[TraceEntry, ...]) -> list[dict]:
    """JSON-ready records, one per gate."""
    return [
        {
            "gate": e.gate_ordinal + 1,
            "rendering": e.rendering,
            "kind": e.kind,
            "parts": list(e.parts),
            "teleports_so_far": e.teleports_so_far,
        }
        for e in trace
    ]
