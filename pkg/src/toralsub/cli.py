"""Command-line front end.

    toralsub catalogue [--format table|json] [--fixture PATH]
    toralsub classify SPEC [--max-index B] [--max-param P] [--format json|dot|table] [--epsilon E]
    toralsub oracle SPEC [--oracle-n N] [--epsilon E|all]

SPEC is a JSON file or a catalogue key such as ``C2/Z+Zt``.  Exit codes:
0 ok, 1 usage, 2 computation error, 3 fixture or oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import catalogue as cat
from . import oracle
from .classification import ToralGroupSpec, classify
from .cohomology import BudgetExceeded
from .space import build_space, export
from .wgroup import GroupTooLarge, NotUnimodular, close

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --- spec files ------------------------------------------------------------------

SPEC_FIELDS = {"rank", "generators", "lattice", "epsilon", "caps"}
CAP_FIELDS = {"max_index", "max_param", "oracle_n"}


@dataclass
class GroupSpecFile:
    rank: int
    generators: list
    lattice: str | None = None
    epsilon: object = "split"
    caps: dict = field(default_factory=dict)

    def to_spec(self, epsilon=None) -> ToralGroupSpec:
        eps = self.epsilon if epsilon is None else epsilon
        group = cat.group_for(self.lattice) if self.family_key else close(self.generators, rank=self.rank)
        if isinstance(eps, list):
            eps = tuple(eps)
        return ToralGroupSpec(group, eps, self.lattice or "")

    @property
    def family_key(self) -> str | None:
        """The catalogue key, when the generators are the catalogue's own."""
        if self.lattice in cat.GROUPS and self.generators == cat.GROUPS[self.lattice][2]:
            return self.lattice
        return None


def parse_spec_text(text: str, source: str = "<spec>") -> GroupSpecFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise UsageError(f"{source}: top level must be an object")
    unknown = set(data) - SPEC_FIELDS
    if unknown:
        raise UsageError(f"{source}: unknown fields {sorted(unknown)}")
    caps = data.get("caps", {}) or {}
    bad_caps = set(caps) - CAP_FIELDS
    if bad_caps:
        raise UsageError(f"{source}: unknown caps {sorted(bad_caps)}")
    lattice = data.get("lattice")
    if lattice is not None:
        try:
            lattice = cat.group_key_of(lattice)
        except KeyError:
            raise UsageError(f"{source}: unknown catalogue tag {lattice!r}") from None
    gens = data.get("generators")
    if gens is None:
        if lattice is None:
            raise UsageError(f"{source}: need generators or a catalogue lattice tag")
        gens = cat.GROUPS[lattice][2]
    rank = data.get("rank", len(gens[0]) if gens else None)
    if not isinstance(rank, int) or rank < 1:
        raise UsageError(f"{source}: rank must be a positive integer")
    for g in gens:
        if len(g) != rank or any(len(row) != rank for row in g):
            raise UsageError(f"{source}: generator {g} is not {rank}x{rank}")
    eps = data.get("epsilon", "split")
    if not (eps == "split" or (isinstance(eps, list) and all(isinstance(x, int) for x in eps))):
        raise UsageError(f"{source}: epsilon must be \"split\" or a list of integers")
    return GroupSpecFile(rank, gens, lattice, eps, caps)


def load_spec(arg: str) -> GroupSpecFile:
    if os.path.exists(arg):
        with open(arg) as fh:
            return parse_spec_text(fh.read(), arg)
    try:
        key = cat.group_key_of(arg)
    except KeyError:
        raise UsageError(f"{arg}: no such file or catalogue key") from None
    return GroupSpecFile(2, cat.GROUPS[key][2], key)


def parse_epsilon(text: str | None):
    if text is None:
        return None
    if text in ("split", "all"):
        return text
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --epsilon {text!r}") from None


# --- commands --------------------------------------------------------------------

def catalogue_rows():
    out = []
    for row in cat.ROWS:
        rec = classify(row.spec(), row.lattice())
        out.append({
            "row": row.row_id,
            "W": row.w_name,
            "Lambda_0": row.lambda_0_name,
            "Lambda_S": row.lambda_s_name,
            "A": rec.h2_0.short(),
            "B": rec.h2_s.short(),
            "C": "*" if row.starred else "",
            "D": rec.h3_0.short(),
            "E": rec.h3_s.short(),
        })
    return out


def cmd_catalogue(args, out) -> int:
    rows = catalogue_rows()
    expected = cat.load_expected(args.fixture)
    bad = []
    for r in rows:
        exp = expected.get(r["row"])
        r["expected"] = exp
        r["match"] = exp is not None and all(r[k] == exp[k] for k in "ABDE")
        if not r["match"]:
            bad.append(r["row"])
    if args.format == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
    else:
        out.write(f"{'W':<6} {'Lambda_0':<10} {'Lambda_S':<10} {'A':>4} {'B':>4} {'C':>2} {'D':>4} {'E':>4}  check\n")
        for r in rows:
            out.write(
                f"{r['W']:<6} {r['Lambda_0']:<10} {r['Lambda_S']:<10} {r['A']:>4} {r['B']:>4} {r['C']:>2} "
                f"{r['D']:>4} {r['E']:>4}  {'ok' if r['match'] else 'MISMATCH'}\n"
            )
    if bad:
        print(f"mismatched rows: {', '.join(bad)}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _table(graph) -> str:
    lines = [f"{'stratum':<28} {'dim':>3} {'module':<10} {'n_conj':>6} {'n_ext':>5}  weyl"]
    for s in graph.strata:
        rec = s.record
        lines.append(
            f"{s.id:<28} {s.dim:>3} {rec.module_tag:<10} {rec.n_conjugacy:>6} {rec.n_extension_iso:>5}  "
            f"{rec.weyl.describe()}"
        )
    lines.append(f"{len(graph.edges)} cotoral edges")
    return "\n".join(lines) + "\n"


def cmd_classify(args, out) -> int:
    sf = load_spec(args.spec)
    eps = parse_epsilon(args.epsilon)
    if eps == "all":
        raise UsageError("--epsilon all is only valid for the oracle")
    spec = sf.to_spec(eps)
    max_index = args.max_index if args.max_index is not None else sf.caps.get("max_index")
    max_param = args.max_param if args.max_param is not None else sf.caps.get("max_param")
    if max_index is None and max_param is None:
        max_index = 10
    graph = build_space(spec, max_index, max_param, sf.family_key)
    if args.format == "table":
        out.write(_table(graph))
    else:
        out.write(export(graph, args.format).decode())
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    sf = load_spec(args.spec)
    n = args.oracle_n if args.oracle_n is not None else sf.caps.get("oracle_n", 2)
    eps = parse_epsilon(args.epsilon)
    if eps == "all":
        spec = sf.to_spec("split")
        reports = [oracle.run(spec, n)]
        twisted, multiset_ok = oracle.run_twisted(spec, n)
        reports += twisted
    else:
        reports = [oracle.run(sf.to_spec(eps), n)]
        multiset_ok = True
    for rep in reports:
        out.write(rep.table() + "\n")
    ok = all(r.ok for r in reports) and multiset_ok
    out.write(("PASS" if ok else "FAIL") + (f" (multiset over twists: {'ok' if multiset_ok else 'MISMATCH'})" if eps == "all" else "") + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="toralsub", description="Full subgroups of toral groups from lattice and cohomology data.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("catalogue", help="recompute the rank-2 catalogue table")
    c.add_argument("--format", choices=["table", "json"], default="table")
    c.add_argument("--fixture", help="expected-values JSON (default: packaged fixture)")
    c.set_defaults(func=cmd_catalogue)

    k = sub.add_parser("classify", help="build the space of full subgroups")
    k.add_argument("spec")
    k.add_argument("--max-index", type=int)
    k.add_argument("--max-param", type=int)
    k.add_argument("--format", choices=["json", "dot", "table"], default="json")
    k.add_argument("--epsilon")
    k.set_defaults(func=cmd_classify)

    o = sub.add_parser("oracle", help="compare counts against a finite model")
    o.add_argument("spec")
    o.add_argument("--oracle-n", type=int)
    o.add_argument("--epsilon")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"toralsub: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (oracle.ModelTooLarge, BudgetExceeded, GroupTooLarge, NotUnimodular, ValueError, ArithmeticError) as exc:
        print(f"toralsub: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


def main_entry() -> None:
    sys.exit(main())
