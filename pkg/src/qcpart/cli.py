"""Command-line interface: ingestion -> partitioning -> reporting.

Subcommands:
  partition  exact DP split of one circuit into K parts
  oracle     brute-force split (small circuits; cross-checks the DP)
  bench      CSV sweep over circuits and K values
  gen        write a generated circuit as .qc text

Reports go to stdout (text, JSON, or CSV); diagnostics go to stderr.
Exit codes: 0 success, 1 circuit parse/import error, 2 infeasible or invalid
parameters, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from . import references
from .bigraph import bigraph_to_dot, qc_to_bigraph, weight_matrix
from .circuit import GENERATORS, Circuit, import_real, parse_circuit, render_circuit
from .errors import (
    CircuitSyntaxError,
    InfeasiblePartitionError,
    QcpartError,
    SizeCapError,
    UnsupportedGateError,
)
from .executor import compute_metrics, format_ratio, trace_execution, trace_to_records
from .partitioner import (
    DEFAULT_DP_CAP,
    dp_partition,
    dp_partition_capped,
    oracle_partition,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INFEASIBLE = 2
EXIT_CAP = 3


@dataclass
class RunReport:
    """Machine-readable result of one partition/oracle run."""

    circuit_name: str
    width: int
    gate_count: int
    k: int
    cost: int
    ratio_r: str
    assignment: list[list[int]]
    flags: dict
    notes: list[str] | None = None
    references: dict | None = None
    trace: list[dict] | None = None
    dp_table: dict | None = None
    wall_time_ms: int | None = None
    dp_cost: int | None = None
    dp_match: bool | None = None

    def to_json(self) -> str:
        data = {k: v for k, v in asdict(self).items() if v is not None}
        return json.dumps(data, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))


def parse_int_list(spec: str) -> list[int]:
    """'3' -> [3]; '3,5' -> [3, 5]; '1..4' -> [1, 2, 3, 4]; mixes allowed."""
    out: list[int] = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty entry in list {spec!r}")
        if ".." in chunk:
            lo_s, hi_s = chunk.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError(f"descending range {chunk!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(chunk))
    return out


def parse_gen_spec(spec: str) -> tuple[str, list[int]]:
    name, sep, sizes = spec.partition(":")
    if not sep or not sizes:
        raise ValueError(f"generator spec must look like qft:4 or qft:4..8, got {spec!r}")
    if name not in GENERATORS:
        raise ValueError(f"unknown generator {name!r}; available: {', '.join(sorted(GENERATORS))}")
    return name, parse_int_list(sizes)


def load_circuit(path: str, decompose_mct: bool) -> Circuit:
    text = Path(path).read_text(encoding="utf-8")
    name = Path(path).stem
    if path.lower().endswith(".real"):
        return import_real(text, decompose_mct=decompose_mct, name=name)
    return parse_circuit(text, name=name)


def _single_circuit(args) -> Circuit:
    if args.circuit and args.gen:
        raise ValueError("give either --circuit or --gen, not both")
    if args.circuit:
        return load_circuit(args.circuit, args.decompose_mct)
    if args.gen:
        name, sizes = parse_gen_spec(args.gen)
        if len(sizes) != 1:
            raise ValueError("this command takes a single generator size, e.g. qft:4")
        return GENERATORS[name](sizes[0])
    raise ValueError("a circuit is required: --circuit <path> or --gen <name:size>")


def _single_k(args) -> int:
    ks = parse_int_list(args.parts)
    if len(ks) != 1:
        raise ValueError("this command takes a single K; use bench for sweeps")
    return ks[0]


def _dp_cap(args, circuit: Circuit) -> int | None:
    if getattr(args, "force", False):
        return max(DEFAULT_DP_CAP, circuit.width)
    return None


def _collect_notes(circuit: Circuit, constrained: bool, max_part_size: int | None) -> list[str]:
    notes = []
    if circuit.decomposed_mct:
        notes.append(
            "multi-control gates were decomposed into pairwise CNOTs; "
            "interaction-preserving approximation, not a unitary equivalence"
        )
    if constrained:
        notes.append(f"part sizes capped at {max_part_size}; optimum is relative to that constraint")
    return notes


def _collect_references(circuit: Circuit, k: int, cost: int) -> dict | None:
    refs: dict = {}
    ratio = references.reported_ratio(circuit.name, k)
    if ratio is not None:
        refs["ratio"] = {
            "family": references.family_of(circuit.name),
            "k": k,
            "reported_r": ratio[0],
            "reported_comparison_r": ratio[1],
            "note": "previously reported; reference circuit files unavailable, informational only",
        }
    reported = references.reported_cost(circuit.name, k)
    if reported is not None:
        refs["cost"] = {
            "k": k,
            "reported_cost": reported,
            "computed_cost": cost,
            "note": "previously reported; reference circuit files unavailable, informational only",
        }
    return refs or None


def _dp_table_payload(table) -> dict:
    header = ["index", "qubits"] + [f"k={k}" for k in range(1, table.k_max + 1)]
    rows = []
    for mask in range(1, 1 << table.n):
        row: list = [mask, "{" + ",".join(
            str(q + 1) for q in reversed([i for i in range(table.n) if (mask >> i) & 1])
        ) + "}"]
        for k in range(1, table.k_max + 1):
            row.append(table.cost_at(mask, k))
        rows.append(row)
    return {"header": header, "rows": rows}


def _table_csv_from_payload(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(payload["header"])
    for row in payload["rows"]:
        writer.writerow(["N.A" if c is None else c for c in row])
    return buf.getvalue()


def emit_text(report: RunReport) -> str:
    lines = [
        f"circuit: {report.circuit_name} ({report.width} qubits, {report.gate_count} gates)",
        f"method: {report.flags.get('command', 'partition')}",
        f"parts (K): {report.k}",
        f"teleportations: {report.cost}",
        f"ratio R: {report.ratio_r}",
        "assignment:",
    ]
    for idx, qubits in enumerate(report.assignment):
        lines.append(f"  p{idx}: " + " ".join(f"q{q}" for q in qubits))
    if report.dp_cost is not None:
        verdict = "match" if report.dp_match else "MISMATCH"
        lines.append(f"dp cross-check: {verdict} (dp cost {report.dp_cost})")
    if report.wall_time_ms is not None:
        lines.append(f"wall time: {report.wall_time_ms} ms")
    for note in report.notes or []:
        lines.append(f"note: {note}")
    refs = report.references or {}
    if "ratio" in refs:
        r = refs["ratio"]
        lines.append(
            f"reported reference: R={r['reported_r']:.2f} "
            f"(comparison method {r['reported_comparison_r']:.2f}) for "
            f"{r['family']} at K={r['k']} -- {r['note']}"
        )
    if "cost" in refs:
        r = refs["cost"]
        lines.append(
            f"reported reference: cost={r['reported_cost']} at K={r['k']} "
            f"(computed here: {r['computed_cost']}) -- {r['note']}"
        )
    out = "\n".join(lines) + "\n"
    if report.trace is not None:
        rows = [(f"g{r['gate']}", r["rendering"], "G" if r["kind"] == "global" else "L")
                for r in report.trace]
        headers = ("# of Gate", "Gate_name", "Type")
        widths = [max(len(headers[c]), *(len(r[c]) for r in rows)) if rows else len(headers[c])
                  for c in range(3)]
        out += "\n" + "  ".join(h.ljust(widths[c]) for c, h in enumerate(headers)) + "\n"
        for r in rows:
            out += "  ".join(r[c].ljust(widths[c]) for c in range(3)).rstrip() + "\n"
    if report.dp_table is not None:
        out += "\n" + _table_csv_from_payload(report.dp_table)
    return out


def emit_csv_single(report: RunReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["name", "width", "gates", "k", "cost", "ratio_r", "wall_time_ms"])
    writer.writerow([
        report.circuit_name, report.width, report.gate_count, report.k,
        report.cost, report.ratio_r,
        "" if report.wall_time_ms is None else report.wall_time_ms,
    ])
    return buf.getvalue()


def emit_report(report: RunReport, fmt: str) -> None:
    if fmt == "json":
        print(report.to_json())
    elif fmt == "csv":
        if report.trace is not None or report.dp_table is not None:
            print("csv format has no trace/table section; ignoring --trace/--table", file=sys.stderr)
        sys.stdout.write(emit_csv_single(report))
    else:
        sys.stdout.write(emit_text(report))


def _build_report(circuit, k, result, command, args, wall_ms) -> RunReport:
    metrics = compute_metrics(circuit, result)
    flags = {
        "command": command,
        "circuit": args.circuit or args.gen,
        "parts": k,
        "max_part_size": getattr(args, "max_part_size", None),
        "format": args.format,
        "decompose_mct": args.decompose_mct,
        "approx_decomposition": circuit.decomposed_mct,
        "constrained": result.constrained,
        "threads": getattr(args, "threads", 1),
        "force": getattr(args, "force", False),
    }
    return RunReport(
        circuit_name=circuit.name,
        width=circuit.width,
        gate_count=circuit.size,
        k=k,
        cost=result.cost,
        ratio_r=format_ratio(metrics.ratio_r),
        assignment=result.assignment.as_lists(),
        flags=flags,
        notes=_collect_notes(circuit, result.constrained, result.max_part_size) or None,
        references=_collect_references(circuit, k, result.cost),
        wall_time_ms=wall_ms,
    )


def cmd_partition(args) -> int:
    circuit = _single_circuit(args)
    k = _single_k(args)
    t0 = time.perf_counter()
    graph = qc_to_bigraph(circuit)
    w = weight_matrix(graph)
    cap = _dp_cap(args, circuit)
    kwargs = dict(keep_table=args.table, cap=cap, threads=args.threads)
    if args.max_part_size is None:
        result = dp_partition(w, k, **kwargs)
    else:
        result = dp_partition_capped(w, k, args.max_part_size, **kwargs)
    wall_ms = None if args.no_timing else int(round((time.perf_counter() - t0) * 1000))
    if args.dot:
        Path(args.dot).write_text(bigraph_to_dot(graph, circuit.name), encoding="utf-8")
        print(f"wrote bipartite graph to {args.dot}", file=sys.stderr)
    report = _build_report(circuit, k, result, "partition", args, wall_ms)
    if args.trace:
        report.trace = trace_to_records(trace_execution(circuit, result.assignment))
    if args.table:
        report.dp_table = _dp_table_payload(result.table)
    emit_report(report, args.format)
    return EXIT_OK


def cmd_oracle(args) -> int:
    circuit = _single_circuit(args)
    k = _single_k(args)
    t0 = time.perf_counter()
    w = weight_matrix(qc_to_bigraph(circuit))
    result = oracle_partition(w, k)
    wall_ms = None if args.no_timing else int(round((time.perf_counter() - t0) * 1000))
    report = _build_report(circuit, k, result, "oracle", args, wall_ms)
    if args.compare_dp:
        dp_result = dp_partition(w, k, cap=_dp_cap(args, circuit))
        report.dp_cost = dp_result.cost
        report.dp_match = dp_result.cost == result.cost
    emit_report(report, args.format)
    return EXIT_OK


def _bench_sources(args):
    for path in args.circuit or []:
        yield ("file", path)
    for spec in args.gen or []:
        name, sizes = parse_gen_spec(spec)
        for size in sizes:
            yield ("gen", (name, size))


def cmd_bench(args) -> int:
    ks = parse_int_list(args.parts) if args.parts else []
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["name", "width", "gates", "k", "cost", "ratio_r", "wall_time_ms", "error"])
    for kind, source in _bench_sources(args):
        try:
            if kind == "file":
                circuit = load_circuit(source, args.decompose_mct)
            else:
                name, size = source
                circuit = GENERATORS[name](size)
        except (QcpartError, OSError, ValueError) as exc:
            label = source if kind == "file" else f"{source[0]}:{source[1]}"
            for k in ks:
                writer.writerow([label, "", "", k, "", "", "", str(exc)])
            continue
        w = weight_matrix(qc_to_bigraph(circuit))
        for k in ks:
            t0 = time.perf_counter()
            try:
                if args.max_part_size is None:
                    result = dp_partition(w, k, cap=_dp_cap(args, circuit), threads=args.threads)
                else:
                    result = dp_partition_capped(w, k, args.max_part_size,
                                                 cap=_dp_cap(args, circuit), threads=args.threads)
            except QcpartError as exc:
                writer.writerow([circuit.name, circuit.width, circuit.size, k, "", "", "", str(exc)])
                continue
            wall = "" if args.no_timing else int(round((time.perf_counter() - t0) * 1000))
            ratio = format_ratio(compute_metrics(circuit, result).ratio_r)
            writer.writerow([circuit.name, circuit.width, circuit.size, k,
                             result.cost, ratio, wall, ""])
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.generator not in GENERATORS:
        raise ValueError(
            f"unknown generator {args.generator!r}; available: {', '.join(sorted(GENERATORS))}"
        )
    try:
        circuit = GENERATORS[args.generator](args.qubits)
    except ValueError as exc:
        raise InfeasiblePartitionError(str(exc)) from exc
    text = render_circuit(circuit)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {circuit.name} to {args.output}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _add_io_args(p: argparse.ArgumentParser, single: bool) -> None:
    if single:
        p.add_argument("--circuit", help="path to a .qc or .real circuit file")
        p.add_argument("--gen", help="generate the input instead, e.g. qft:4")
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    else:
        p.add_argument("--circuit", action="append", help="circuit file; repeatable")
        p.add_argument("--gen", action="append", help="generator spec, e.g. qft:4..8; repeatable")
    p.add_argument("--parts", required=True, help="number of parts K (bench accepts lists/ranges)")
    p.add_argument("--decompose-mct", action="store_true",
                   help="decompose multi-control gates in .real files into pairwise CNOTs")
    p.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock fields for byte-stable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcpart",
        description="Exact minimum-teleportation partitioning of quantum circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="exact DP partitioning")
    _add_io_args(p, single=True)
    p.add_argument("--max-part-size", type=int, help="cap on qubits per part")
    p.add_argument("--table", action="store_true", help="also emit the full memo table as CSV")
    p.add_argument("--trace", action="store_true", help="also emit the per-gate execution trace")
    p.add_argument("--threads", type=int, default=1, help="worker threads within a DP level")
    p.add_argument("--force", action="store_true",
                   help=f"lift the {DEFAULT_DP_CAP}-qubit guardrail (runtime grows as 3^n)")
    p.add_argument("--dot", metavar="PATH", help="write the bipartite graph in DOT format")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("oracle", help="brute-force partitioning (small circuits)")
    _add_io_args(p, single=True)
    p.add_argument("--compare-dp", action="store_true",
                   help="also run the DP and report whether the costs match")
    p.add_argument("--force", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="CSV sweep over circuits and K values")
    _add_io_args(p, single=False)
    p.add_argument("--max-part-size", type=int, help="cap on qubits per part")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--force", action="store_true",
                   help=f"lift the {DEFAULT_DP_CAP}-qubit guardrail")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", help="write a generated circuit as .qc text")
    p.add_argument("generator", help="generator name (qft)")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--output", help="write to this file instead of stdout")
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CircuitSyntaxError, UnsupportedGateError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except QcpartError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
