"""Batch command-line front end.

Exit codes: 0 success, 1 validation or verdict failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CategoryMismatch, FinSiteError, ParseError, TooLarge
from .fincat import FIXTURE_NAMES, FiniteCategory, fixture, is_groupoid, load_category, ore_witness
from .presheaf import (
    PRESHEAF_FIXTURES,
    Presheaf,
    Subpresheaf,
    close_subobject,
    is_dense_mono,
    presheaf_fixture,
)
from .reduct import (
    boolean_witness,
    booleanization,
    de_morgan_witness,
    demorganization,
    is_boolean,
    is_de_morgan,
    reduced_subcategory,
)
from .sieve import Sieve, sieve_count, sieve_not, sieve_not_not, sieve_union
from .topology import (
    DEFAULT_BOUND,
    GrothendieckTopology,
    close_sieve,
    subcanonical_witness,
    trivial_topology,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_json(source: str):
    """Parse a path, or an inline JSON object when ``source`` starts with ``{``."""
    if source.lstrip().startswith("{"):
        text, label = source, "<inline>"
    else:
        path = Path(source)
        if not path.is_file():
            raise UsageError(f"no such file: {source}")
        text, label = path.read_text(encoding="utf-8"), source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{label}: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{label}: expected a JSON object")
    return data


@dataclass
class Workspace:
    """Loaded artifacts by name; every artifact is validated on load."""

    saturate: bool = False
    categories: dict[str, FiniteCategory] = field(default_factory=dict)
    topologies: dict[str, GrothendieckTopology] = field(default_factory=dict)
    presheaves: dict[str, Presheaf] = field(default_factory=dict)

    def category(self, ref: str) -> FiniteCategory:
        if ref in self.categories:
            return self.categories[ref]
        if ref.upper() in FIXTURE_NAMES and not Path(ref).is_file():
            C = fixture(ref)
        else:
            if not Path(ref).is_file():
                raise UsageError(f"{ref!r} is neither a bundled category nor a file")
            C = load_category(ref)
        self.categories[C.name] = C
        return C

    def _category_for(self, data, C: FiniteCategory | None) -> FiniteCategory:
        name = data.get("category")
        if C is None:
            if not name:
                raise ParseError("file does not name its category")
            return self.category(name)
        if name and name != C.name:
            raise CategoryMismatch(f"file is over {name}, not {C.name}", witness=(name, C.name))
        return C

    def topology(self, source: str, C: FiniteCategory | None = None) -> GrothendieckTopology:
        data = _read_json(source)
        C = self._category_for(data, C)
        if "covers" not in data:
            raise ParseError("topology description needs covers")
        J = GrothendieckTopology.from_dict(C, data, saturate=self.saturate)
        self.topologies[data.get("name") or Path(source).stem] = J
        return J

    def presheaf(self, source: str, C: FiniteCategory | None = None) -> Presheaf:
        fixtures = {n for names in PRESHEAF_FIXTURES.values() for n in names}
        if source in fixtures and not Path(source).is_file():
            owner = next(c for c, names in PRESHEAF_FIXTURES.items() if source in names)
            if C is not None and C.name != owner:
                raise CategoryMismatch(f"{source} lives over {owner}, not {C.name}")
            E = presheaf_fixture(source, C or fixture(owner))
        else:
            data = _read_json(source)
            E = Presheaf.from_dict(self._category_for(data, C), data,
                                   name=data.get("name") or Path(source).stem)
        self.presheaves[E.name] = E
        return E

    def subpresheaf(self, source: str, E: Presheaf | None) -> Subpresheaf:
        data = _read_json(source)
        if E is None:
            ref = data.get("presheaf")
            if not ref:
                raise ParseError("subpresheaf does not name its presheaf")
            E = self.presheaves.get(ref) or self.presheaf(ref)
        return Subpresheaf.from_dict(E, data)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _topology_arg(ws: Workspace, C: FiniteCategory, source: str | None) -> GrothendieckTopology:
    return trivial_topology(C) if source is None else ws.topology(source, C)


def analysis_report(C: FiniteCategory, J: GrothendieckTopology) -> dict:
    site = reduced_subcategory(C, J)
    witness = {}
    R = boolean_witness(C, J)
    if R is not None:
        witness["boolean"] = {**R.to_dict(), "excluded_middle": sorted(sieve_union(R, sieve_not(R)).arrows)}
    R = de_morgan_witness(C, J)
    if R is not None:
        witness["de_morgan"] = {**R.to_dict(),
                                "de_morgan_sieve": sorted(sieve_union(sieve_not(R), sieve_not_not(R)).arrows)}
    S = subcanonical_witness(J)
    if S is not None:
        witness["subcanonical"] = S.to_dict()
    cospan = ore_witness(C)
    return {
        "category": C.name,
        "topology": J.to_dict(),
        "kept_objects": list(site.kept),
        "groupoid": is_groupoid(C),
        "right_ore": cospan is None,
        "boolean": is_boolean(C, J),
        "de_morgan": is_de_morgan(C, J),
        "subcanonical": S is None,
        "booleanization": booleanization(C, J).to_dict(),
        "demorganization": demorganization(C, J).to_dict(),
        "witness": witness,
    }


def cmd_validate(ws: Workspace, args) -> int:
    data = _read_json(args.path)
    if "compose" in data:
        C = ws.category(args.path)
        print(f"valid: {len(C.objects)} objects, {len(C.arrows)} arrows")
    elif "covers" in data:
        J = ws.topology(args.path)
        n = sum(len(v) for v in J.covers.values())
        print(f"valid topology on {J.category.name}: {n} covering sieves")
    elif "chosen" in data:
        A = ws.subpresheaf(args.path, None)
        print(f"valid subpresheaf of {A.parent.name}: {sum(len(v) for v in A.chosen.values())} elements")
    elif "restriction" in data:
        E = ws.presheaf(args.path)
        print(f"valid presheaf on {E.category.name}: {E.size()} elements")
    else:
        raise ParseError("cannot tell what kind of description this is")
    return EXIT_OK


def cmd_analyze(ws, args) -> int:
    C = ws.category(args.category)
    print(_dump(analysis_report(C, _topology_arg(ws, C, args.topology))))
    return EXIT_OK


def cmd_booleanize(ws, args) -> int:
    C = ws.category(args.category)
    print(_dump(booleanization(C, _topology_arg(ws, C, args.topology)).to_dict()))
    return EXIT_OK


def cmd_demorganize(ws, args) -> int:
    C = ws.category(args.category)
    print(_dump(demorganization(C, _topology_arg(ws, C, args.topology)).to_dict()))
    return EXIT_OK


def cmd_reduce(ws, args) -> int:
    C = ws.category(args.category)
    print(_dump(reduced_subcategory(C, _topology_arg(ws, C, args.topology)).to_dict()))
    return EXIT_OK


def cmd_subcanonical(ws, args) -> int:
    C = ws.category(args.category)
    J = _topology_arg(ws, C, args.topology)
    S = subcanonical_witness(J)
    print(_dump({"category": C.name, "subcanonical": S is None,
                 "witness": None if S is None else S.to_dict()}))
    return EXIT_OK


def cmd_closure(ws, args) -> int:
    C = ws.category(args.category)
    J = _topology_arg(ws, C, args.topology)
    if args.sieve is not None:
        S = Sieve.from_dict(C, _read_json(args.sieve))
        cl = close_sieve(J, S)
        out = {"sieve": S.to_dict(), "closure": cl.to_dict(), "closed": cl == S,
               "covering": J.is_covering(S)}
    elif args.subpresheaf is not None:
        E = ws.presheaf(args.presheaf, C) if args.presheaf else None
        A = ws.subpresheaf(args.subpresheaf, E)
        if A.parent.category != C:
            raise CategoryMismatch("subpresheaf is not over the given category")
        cl = close_subobject(J, A)
        out = {"subpresheaf": A.to_dict(), "closure": cl.to_dict(), "closed": cl == A,
               "dense": is_dense_mono(J, A)}
    else:
        raise UsageError("closure needs --sieve or --subpresheaf")
    print(_dump(out))
    return EXIT_OK


def cmd_oracle(ws, args) -> int:
    from .oracle import run_oracle

    C = ws.category(args.category)
    results = run_oracle(C, args.bound)
    for r in results:
        print(r.line())
    failed = sum(not r.ok for r in results)
    print(f"{C.name}: {len(results) - failed}/{len(results)} invariants hold")
    return EXIT_OK if failed == 0 else EXIT_FAIL


def cmd_fixtures(ws, args) -> int:
    for name in FIXTURE_NAMES:
        C = fixture(name)
        extra = ", ".join(PRESHEAF_FIXTURES.get(name, ()))
        line = f"{name}: {len(C.objects)} objects, {len(C.arrows)} arrows, {sieve_count(C)} sieves"
        print(line + (f"; presheaves: {extra}" if extra else ""))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--saturate", action="store_true", default=argparse.SUPPRESS,
                        help="saturate topology files instead of requiring them saturated")
    common.add_argument("--bound", type=int, default=argparse.SUPPRESS,
                        help=f"oracle size cap in total sieves (default {DEFAULT_BOUND})")

    parser = argparse.ArgumentParser(prog="finsite", parents=[common],
                                     description="Finite sites, sieves and Grothendieck topologies.")
    parser.add_argument("--fixtures", action="store_true", help="list the bundled corpus and exit")
    sub = parser.add_subparsers(dest="command")

    def add(name, fn, help, topology=True, category=True):
        p = sub.add_parser(name, parents=[common], help=help)
        if category:
            p.add_argument("category", help="bundled category name or category file")
        if topology:
            p.add_argument("--topology", "-t", help="topology file (default: trivial topology)")
        p.set_defaults(func=fn)
        return p

    p = sub.add_parser("validate", parents=[common], help="validate a category, topology or presheaf file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)
    add("analyze", cmd_analyze, "full Boolean / De Morgan / subcanonical report")
    add("booleanize", cmd_booleanize, "print the Booleanization topology")
    add("demorganize", cmd_demorganize, "print the DeMorganization topology")
    add("reduce", cmd_reduce, "print the reduced site")
    add("subcanonical", cmd_subcanonical, "decide subcanonicity")
    p = add("closure", cmd_closure, "close a sieve or subpresheaf")
    p.add_argument("--sieve", help="sieve file or inline JSON")
    p.add_argument("--presheaf", help="presheaf file or bundled presheaf name")
    p.add_argument("--subpresheaf", help="subpresheaf file or inline JSON")
    add("oracle", cmd_oracle, "run every invariant exhaustively", topology=False)
    add("fixtures", cmd_fixtures, "list the bundled corpus", topology=False, category=False)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.saturate = getattr(args, "saturate", False)
    args.bound = getattr(args, "bound", DEFAULT_BOUND)
    ws = Workspace(saturate=args.saturate)
    if args.fixtures:
        return cmd_fixtures(ws, args)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(ws, args)
    except (UsageError, ParseError, TooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FinSiteError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        witness = exc.witness
        if hasattr(witness, "sieve"):
            print(_dump({"axiom": witness.axiom, "object": witness.obj, "sieve": witness.sieve.to_dict()}))
        elif witness is not None:
            print(_dump({"witness": list(witness) if isinstance(witness, tuple) else repr(witness)}))
        return EXIT_FAIL
    except KeyError as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
