"""Command-line interface.

Subcommands: iterate, betti, resonance, cijt, verify.  Datasets are JSON
documents (schema version 1):

    {"version": 1,
     "shape": {"d": 2, "n": 1},
     "records": [{"name": "c1", "initial_index": 1, "blocks": [...]}]}

Exit codes: 0 success/verdict pass, 1 verdict fail, 2 hypothesis or input
rejection, 3 search exhaustion.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .scalars import PrecisionExhausted
from .normal_forms import SymplecticClass, block_from_json
from .iteration import PathClass, index_iterate, path_nullity
from .engine import (
    NotFoundWithinBound,
    SelectionProblem,
    VertexSpec,
    find_tuple,
    opposite_tuple,
)
from .loop_homology import CohomologyShape, betti, betti_partial_sum, resonance_constant
from .morse import (
    GeodesicDataset,
    GeodesicRecord,
    HypothesisRejected,
    resonance_check,
    verify_theorem_1_1,
    verify_theorem_1_5,
    verify_theorem_1_8,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_REJECT = 2
EXIT_EXHAUSTED = 3


class CliError(Exception):
    def __init__(self, message, code=EXIT_REJECT):
        super().__init__(message)
        self.code = code


def load_dataset(path: str) -> GeodesicDataset:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError("cannot read dataset %s: %s" % (path, exc))
    if doc.get("version") != 1:
        raise CliError("unsupported dataset version: %r" % doc.get("version"))
    try:
        shape = CohomologyShape(doc["shape"]["d"], doc["shape"]["n"])
        records = tuple(
            GeodesicRecord(
                r["name"],
                PathClass(
                    int(r["initial_index"]),
                    SymplecticClass(tuple(block_from_json(b) for b in r["blocks"])),
                ),
            )
            for r in doc["records"]
        )
        return GeodesicDataset(shape, records, doc.get("options", {}).get("bumpy", True))
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError("invalid dataset: %s" % exc)


def _parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except ValueError:
        raise CliError("not a rational number: %r" % s)


def _parse_vertex(spec: str, dataset: GeodesicDataset):
    """'auto', 'opposite', or 'bits:<chi bits><angle bits>' in record order."""
    if spec in ("auto", "opposite"):
        return spec
    if not spec.startswith("bits:"):
        raise CliError("--vertex must be auto, opposite, or bits:<01...>")
    bits = spec[5:]
    if not set(bits) <= {"0", "1"}:
        raise CliError("vertex bits must be 0/1")
    q = len(dataset.records)
    counts = []
    for r in dataset.records:
        from .normal_forms import R, N2

        counts.append(
            sum(
                1
                for b in r.path.monodromy.blocks
                if isinstance(b, (R, N2)) and not b.theta.is_rational
            )
        )
    if len(bits) != q + sum(counts):
        raise CliError(
            "vertex needs %d bits (%d chi + %d angle)" % (q + sum(counts), q, sum(counts))
        )
    chi = tuple(int(b) for b in bits[:q])
    rest = bits[q:]
    angle_bits = []
    pos = 0
    for c in counts:
        angle_bits.append(tuple(int(b) for b in rest[pos : pos + c]))
        pos += c
    return VertexSpec(chi, tuple(angle_bits))


def _emit(doc, fmt: str, tsv_rows=None, tsv_header=None):
    if fmt == "tsv" and tsv_rows is not None:
        if tsv_header:
            print("\t".join(tsv_header))
        for row in tsv_rows:
            print("\t".join(str(x) for x in row))
    else:
        print(json.dumps(doc, indent=2, sort_keys=True))


def cmd_iterate(args) -> int:
    ds = load_dataset(args.dataset)
    match = [r for r in ds.records if r.name == args.record]
    if not match:
        raise CliError("unknown record: %r" % args.record)
    path = match[0].path
    rows = [
        (m, index_iterate(path, m), path_nullity(path, m))
        for m in range(1, args.m_max + 1)
    ]
    _emit(
        {"record": args.record, "rows": [list(r) for r in rows]},
        args.format,
        tsv_rows=rows,
        tsv_header=("m", "index", "nullity"),
    )
    return EXIT_PASS


def cmd_betti(args) -> int:
    shape = CohomologyShape(args.d, args.n)
    lo = (shape.d - 1) if shape.d % 2 else (shape.dim - 1)
    rows = []
    running = 0
    for p in range(args.l_max + 1):
        b = betti(shape, p)
        running += b
        closed = ""
        if p >= lo:
            closed, direct = betti_partial_sum(shape, p)
            if direct != running:
                raise AssertionError("partial-sum drift at p=%d" % p)
        rows.append((p, b, running, closed))
    _emit(
        {
            "shape": {"d": shape.d, "n": shape.n},
            "resonance_constant": str(resonance_constant(shape)),
            "rows": [list(r) for r in rows],
        },
        args.format,
        tsv_rows=rows,
        tsv_header=("p", "b_p", "partial_direct", "partial_closed"),
    )
    return EXIT_PASS


def cmd_resonance(args) -> int:
    ds = load_dataset(args.dataset)
    report = resonance_check(ds)
    _emit(report.to_json(), args.format)
    return EXIT_PASS if report.passes else EXIT_FAIL


def cmd_cijt(args) -> int:
    ds = load_dataset(args.dataset)
    problem = SelectionProblem(
        ds.paths,
        delta=_parse_fraction(args.delta),
        m_bar=args.m_bar,
        N_bound=args.n_bound,
        N_multiple_of=args.n_multiple,
    )
    vertex = _parse_vertex(args.vertex, ds)
    if vertex == "auto":
        t = find_tuple(problem)
    elif vertex == "opposite":
        t = opposite_tuple(find_tuple(problem), problem)
    else:
        t = find_tuple(problem, vertex=vertex)
    doc = t.to_json()
    doc["delta_shrunk"] = problem.delta_shrunk
    doc["records"] = [r.name for r in ds.records]
    _emit(doc, args.format)
    return EXIT_PASS if t.report is not None and t.report.ok else EXIT_FAIL


def cmd_verify(args) -> int:
    ds = load_dataset(args.dataset)
    pipeline = {
        "1.1": verify_theorem_1_1,
        "1.5": verify_theorem_1_5,
        "1.8": verify_theorem_1_8,
    }[args.theorem]
    delta = _parse_fraction(args.delta) if args.delta else None
    verdict = pipeline(ds, delta=delta, n_bound=args.n_bound)
    _emit(verdict.to_json(), args.format)
    return EXIT_PASS if verdict.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cijt")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, dataset=True):
        if dataset:
            p.add_argument("dataset", help="dataset JSON file")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for compatibility; execution is sequential")

    p = sub.add_parser("iterate", help="index/nullity table of one record")
    common(p)
    p.add_argument("--record", required=True)
    p.add_argument("--m-max", type=int, default=10)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("betti", help="free-loop-space Betti numbers")
    common(p, dataset=False)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l-max", type=int, default=50)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("resonance", help="check the resonance identity")
    common(p)
    p.set_defaults(func=cmd_resonance)

    p = sub.add_parser("cijt", help="search and certify an index-jump tuple")
    common(p)
    p.add_argument("--delta", default="1/200")
    p.add_argument("--n-bound", type=int, default=10**8)
    p.add_argument("--n-multiple", type=int, default=1)
    p.add_argument("--m-bar", type=int, default=1)
    p.add_argument("--vertex", default="auto",
                   help="auto, opposite, or bits:<chi bits><angle bits>")
    p.set_defaults(func=cmd_cijt)

    p = sub.add_parser("verify", help="run a theorem pipeline")
    common(p)
    p.add_argument("--theorem", choices=("1.1", "1.5", "1.8"), required=True)
    p.add_argument("--delta", default=None)
    p.add_argument("--n-bound", type=int, default=10**8)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.code
    except HypothesisRejected as exc:
        print("hypothesis rejected: %s" % exc, file=sys.stderr)
        return EXIT_REJECT
    except NotFoundWithinBound as exc:
        print("search exhausted: %s" % exc, file=sys.stderr)
        return EXIT_EXHAUSTED
    except (ValueError, PrecisionExhausted) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_REJECT


if __name__ == "__main__":
    sys.exit(main())
