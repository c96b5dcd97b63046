"""Command-line entry point: ``posetcoh <verb> [subverb] [options] <inputs>``.

Exit status is 0 when a computation succeeds or a check passes, 1 when a
check was carried out and failed, and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, Sequence

from . import io
from .arrangements import (IntersectionLattice, TOP, cl3_violations, dij_formula, dij_table,
                           in_region, arrangement_ordering)
from .derived import (cohomology, default_subset, graded_list, homology, nerve_cohomology_oracle,
                      nerve_homology_oracle)
from .errors import NotFunctorial, PosetCohError
from .fixtures import (fixture_names, get_fixture, mackey_fixture, mackey_fixture_names,
                       run_fixture_assertions)
from .functor import CO, CONTRA, Functor
from .linalg import QQ, field_from_tag
from .mobius import atom_sequence_check, mobius, verify_atomic_cohomology
from .poset import Poset, chain_str
from .shelling import OrderingFamily, all_top_chains, c_set, find_ordering, verify_ordering
from .stability import check_costability, check_stability, poset_degree, predict_vanishing

OK, FAILED, BAD_INPUT = 0, 1, 2


@dataclass
class Outcome:
    data: Any
    status: int = OK


class CheckFailed(Exception):
    """A check could not even be set up, e.g. no ordering was found."""


# ---------------------------------------------------------------------------
# rendering


def render_table(data: Any, indent: int = 0) -> list[str]:
    pad = " " * indent
    if isinstance(data, dict):
        if not data:
            return [pad + "(none)"]
        width = max(len(str(k)) for k in data)
        lines = []
        for k, v in data.items():
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}{str(k)}:")
                lines.extend(render_table(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_cell(v)}")
        return lines
    if isinstance(data, list):
        if not data:
            return [pad + "(none)"]
        lines = []
        for item in data:
            if isinstance(item, (dict, list)) and not _flat_list(item):
                lines.extend(render_table(item, indent + 2))
                lines.append("")
            else:
                lines.append(f"{pad}- {_cell(item)}")
        return lines
    return [pad + _cell(data)]


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _cell(v) -> str:
    if isinstance(v, list):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, bool):
        return "yes" if v else "no"
    return "-" if v is None else str(v)


def _arrangement_table(table: dict[str, list[int]]) -> list[str]:
    cols = max((len(r) for r in table.values()), default=0)
    cells = [["i\\j"] + [str(j) for j in range(cols)]]
    cells += [[i] + [str(x) for x in row] for i, row in table.items()]
    widths = [max(len(r[k]) for r in cells) for k in range(cols + 1)]
    return ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]


# ---------------------------------------------------------------------------
# input helpers


def _split(text: str | None) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


def _field(args):
    return field_from_tag(args.field) if args.field else None


def _load_poset(arg: str) -> tuple[Poset, str | None]:
    data = io.resolve_input(arg)
    if isinstance(data, str):
        return get_fixture(data).poset, data
    if isinstance(data, dict) and "poset" in data and "elements" not in data:
        data = data["poset"]
        if isinstance(data, str):
            return get_fixture(data).poset, data
    return io.poset_from_json(data), None


def _load_functor(args) -> tuple[Functor, str | None]:
    data = io.load_json(args.input)
    if not isinstance(data, dict):
        raise io.FormatError("a functor file must hold a JSON object")
    f = io.functor_from_json(data, _field(args))
    ref = data.get("poset") if isinstance(data.get("poset"), str) else None
    return f, ref


def _family(args, poset: Poset, fixture: str | None, required: bool = True) -> OrderingFamily | None:
    if getattr(args, "ordering", None):
        return io.ordering_from_json(poset, io.load_json(args.ordering))
    if fixture is not None and get_fixture(fixture).family is not None:
        return get_fixture(fixture).family
    family = find_ordering(poset)
    if family is None and required:
        raise CheckFailed("no recursive coatom ordering found; pass one with --ordering")
    return family


def _subset(args, poset: Poset) -> list[str]:
    given = _split(getattr(args, "subposet", None))
    for e in given:
        poset._require(e)
    return given or default_subset(poset)


def _graded(dims, poset: Poset, subset) -> dict[str, int]:
    return graded_list(dims, top=poset.subposet(subset).height)


def _ordering_report(poset: Poset, family: OrderingFamily) -> dict:
    report = verify_ordering(poset, family)
    return {
        "ok": report.ok,
        "chains_checked": report.chains_checked,
        "violations": report.describe(),
        "c_sets": {chain_str(c): poset.sorted(c_set(poset, family, c)) for c in all_top_chains(poset)},
    }


# ---------------------------------------------------------------------------
# verbs


def cmd_check(args) -> Outcome:
    data = io.resolve_input(args.input)
    if isinstance(data, dict) and "ambient_dim" in data:
        arr = io.arrangement_from_json(data, _field(args) or QQ)
        lattice = IntersectionLattice(arr)
        return Outcome({"kind": "arrangement", "hyperplanes": len(arr.normals),
                        "flats": len(lattice.poset), "degree": lattice.degree})
    if isinstance(data, dict) and "poset" in data:
        f = io.functor_from_json(data, _field(args), validate=False)
        bad = f.violations()
        out = {"kind": "mackey" if "transfers" in data else "functor", "variance": f.variance,
               "field": f.field.name, "functorial": not bad,
               "violations": [v.describe() for v in bad]}
        if not bad and "transfers" in data:
            m = io.mackey_from_json(data, _field(args))
            out["weak_mackey_violations"] = [v.describe() for v in m.violations()]
        return Outcome(out, FAILED if bad else OK)
    poset = get_fixture(data).poset if isinstance(data, str) else io.poset_from_json(data)
    pure, _ = poset.is_pure()
    return Outcome({"kind": "poset", "elements": len(poset), "covers": len(poset.covers),
                    "bottom": poset.bottom, "top": poset.top,
                    "degree": poset.degree(poset.top) if poset.top is not None else None,
                    "pure": pure})


def cmd_shell(args) -> Outcome:
    poset, fixture = _load_poset(args.input)
    poset.require_top()
    family = _family(args, poset, fixture, required=False)
    if family is None:
        return Outcome({"ok": False, "ordering": None,
                        "violations": ["no recursive coatom ordering exists"]}, FAILED)
    out = _ordering_report(poset, family)
    out["ordering"] = family.to_json()
    return Outcome(out, OK if out["ok"] else FAILED)


def _cmd_derived(args, compute: Callable, variance: str) -> Outcome:
    f, _ = _load_functor(args)
    if f.variance != variance:
        raise PosetCohError(f"this verb needs a {'contravariant' if variance == CONTRA else 'covariant'} functor")
    subset = _subset(args, f.poset)
    return Outcome(_graded(compute(f, subset), f.poset, subset))


def cmd_cohomology(args) -> Outcome:
    return _cmd_derived(args, cohomology, CONTRA)


def cmd_homology(args) -> Outcome:
    return _cmd_derived(args, homology, CO)


def cmd_oracle(args) -> Outcome:
    f, _ = _load_functor(args)
    subset = _subset(args, f.poset)
    oracle = nerve_cohomology_oracle if f.variance == CONTRA else nerve_homology_oracle
    return Outcome(_graded(oracle(f, subset), f.poset, subset))


def _cmd_stability(args, variance: str) -> Outcome:
    f, fixture = _load_functor(args)
    if f.variance != variance:
        raise PosetCohError("stability needs a contravariant functor, co-stability a covariant one")
    poset = f.poset
    family = _family(args, poset, fixture)
    rep = verify_ordering(poset, family)
    if not rep.ok:
        return Outcome({"ordering_ok": False, "violations": rep.describe()}, FAILED)
    groups = cohomology(f) if variance == CONTRA else homology(f)
    if args.degree is None:
        return Outcome({"ordering_ok": True,
                        "vanishing_degrees": predict_vanishing(poset, family, f, verified=True),
                        "computed": graded_list(groups, top=poset_degree(poset) - 1)})
    check = check_stability if variance == CONTRA else check_costability
    report = check(poset, family, f, args.degree, verified=True)
    out = {"ordering_ok": True, "degree": args.degree, "ok": report.ok,
           "chains_checked": report.chains_checked,
           "failures": [c.describe() for c in report.failures],
           "computed": groups.get(args.degree, 0)}
    return Outcome(out, OK if report.ok else FAILED)


def cmd_stability(args) -> Outcome:
    return _cmd_stability(args, CONTRA)


def cmd_costability(args) -> Outcome:
    return _cmd_stability(args, CO)


def cmd_mackey(args) -> Outcome:
    if args.input in mackey_fixture_names() and not Path(args.input).exists():
        m = mackey_fixture(args.input, _field(args))
        data = {"poset": "boolean-2" if args.input.startswith("boolean") else "gamma1"}
    else:
        data = io.load_json(args.input)
        m = io.mackey_from_json(data, _field(args))
    poset = m.g.poset
    if args.subverb == "verify":
        bad = m.violations()
        return Outcome({"weak_mackey": not bad, "violations": [v.describe() for v in bad]},
                       FAILED if bad else OK)
    if args.degree is not None:
        fixture = data.get("poset") if isinstance(data.get("poset"), str) else None
        family = _family(args, poset, fixture)
        bad = m.local_quasi_units(family, args.degree)
        return Outcome({"degree": args.degree, "quasi_units": not bad,
                        "failing_chains": [chain_str(c) for c in bad]}, FAILED if bad else OK)
    subset = _split(args.subposet)
    if not subset:
        raise PosetCohError("quasi-unit needs --subposet or --degree")
    for e in subset:
        poset._require(e)
    ok = m.quasi_unit_in(subset)
    return Outcome({"subposet": poset.sorted(subset), "quasi_unit": ok}, OK if ok else FAILED)


def cmd_mobius(args) -> Outcome:
    poset, _ = _load_poset(args.input)
    return Outcome({"p": args.p, "q": args.q, "mobius": mobius(poset, args.p, args.q)})


def cmd_atomic(args) -> Outcome:
    poset, _ = _load_poset(args.input)
    family = io.ordering_from_json(poset, io.load_json(args.ordering)) if args.ordering else None
    report = verify_atomic_cohomology(poset, family, args.at, args.dim, _field(args) or QQ)
    top = poset.require_top()
    out = {"element": args.at, "dim": args.dim, "mobius": mobius(poset, args.at, top),
           "codegree": poset.codegree(args.at),
           "expected": graded_list(report.expected), "cohomology": graded_list(report.cohomology),
           "homology": graded_list(report.homology), "ok": report.ok}
    return Outcome(out, OK if report.ok else FAILED)


def cmd_atomseq(args) -> Outcome:
    f, fixture = _load_functor(args)
    atoms = _split(args.atoms)
    if not atoms:
        raise PosetCohError("--atoms needs at least one atom")
    family = _family(args, f.poset, fixture)
    report = atom_sequence_check(f.poset, family, f, atoms)
    out = {"variance": report.variance, "atoms": report.atoms,
           "terms": {name: v for name, v in report.terms},
           "alternating_sum": report.alternating_sum,
           "short_exact": report.short_exact,
           "short_exact_terms": {name: v for name, v in report.short_exact_terms},
           "ok": report.ok}
    return Outcome(out, OK if report.ok else FAILED)


def _lattice(args) -> IntersectionLattice:
    data = io.resolve_input(args.input)
    if isinstance(data, str):
        lattice = get_fixture(data).lattice
        if lattice is None:
            raise PosetCohError(f"fixture {data!r} is not an arrangement")
        return lattice
    return IntersectionLattice(io.arrangement_from_json(data, _field(args) or QQ))


def cmd_arrangement(args) -> Outcome:
    lattice = _lattice(args)
    if args.subverb == "table":
        table = dij_table(lattice, max_i=args.max_i, max_j=args.max_j)
        return Outcome({str(i): row for i, row in table.items()})
    if args.subverb == "formula":
        value = dij_formula(lattice, args.i, args.j)
        table = dij_table(lattice, max_i=max(args.i, 0), max_j=max(args.j, 0))
        computed = table[args.i][args.j] if args.i >= 0 and args.j >= 0 else 0
        out = {"i": args.i, "j": args.j, "in_region": in_region(lattice, args.i, args.j),
               "formula": value, "computed": computed, "match": value == computed}
        return Outcome(out, OK if out["match"] else FAILED)
    poset = lattice.poset
    if args.emit_poset:
        return Outcome(poset.to_json())
    family = arrangement_ordering(lattice)
    return Outcome({
        "degree": lattice.degree,
        "bottom": lattice.bottom,
        "flats": {e: {"dim": lattice.flat(e).dim, "degree": poset.degree(e),
                      "mobius_to_top": mobius(poset, e, TOP)} for e in poset.elements},
        "ordering_ok": verify_ordering(poset, family).ok,
        "basis_first_violations": [chain_str(c) for c in cl3_violations(lattice, family)],
    })


def cmd_fixture(args) -> Outcome:
    if args.subverb == "list":
        return Outcome(fixture_names())
    if not args.name:
        raise PosetCohError(f"fixture {args.subverb} needs a fixture name")
    if args.subverb == "show":
        return Outcome(get_fixture(args.name).to_json())
    report = run_fixture_assertions(args.name)
    out = {"name": report.name, "ok": report.ok,
           "checks": {c.label: "pass" if c.ok else f"FAIL: {c.detail}" for c in report.checks}}
    return Outcome(out, OK if report.ok else FAILED)


# ---------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", help="coefficient field: Q (default) or Fp:p")
    p.add_argument("--output", choices=("json", "table"), default="json")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="posetcoh", description=(
        "Cohomology of functors on finite posets, coatom orderings and stability checks."))
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, func, help_text, inputs=True):
        sp = verbs.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        if inputs:
            sp.add_argument("input", help="JSON file or fixture name")
        return sp

    verb("check", cmd_check, "validate a poset, functor or arrangement file")
    verb("shell", cmd_shell, "verify or search for a recursive coatom ordering").add_argument(
        "--ordering", help="ordering JSON file")
    for name, func, what in (("cohomology", cmd_cohomology, "cohomology of a contravariant functor"),
                             ("homology", cmd_homology, "homology of a covariant functor"),
                             ("oracle", cmd_oracle, "(co)homology through the chain-complex oracle")):
        verb(name, func, what).add_argument("--subposet", help="comma-separated lower-closed subset")
    for name, func in (("stability", cmd_stability), ("costability", cmd_costability)):
        sp = verb(name, func, f"{name} check at one degree, or all degrees")
        sp.add_argument("--degree", type=int)
        sp.add_argument("--ordering")

    mk = verbs.add_parser("mackey", help="weak Mackey functor checks")
    mk_sub = mk.add_subparsers(dest="subverb", required=True, metavar="subverb")
    mv = mk_sub.add_parser("verify", parents=[common], help="check the weak Mackey axioms")
    mv.add_argument("input")
    mq = mk_sub.add_parser("quasi-unit", parents=[common], help="check for a quasi-unit")
    mq.add_argument("input")
    mq.add_argument("--subposet")
    mq.add_argument("--degree", type=int)
    mq.add_argument("--ordering")
    mk.set_defaults(func=cmd_mackey)

    mo = verb("mobius", cmd_mobius, "Mobius function value")
    mo.add_argument("p")
    mo.add_argument("q")
    at = verb("atomic", cmd_atomic, "cohomology of an atomic functor against the Mobius prediction")
    at.add_argument("--at", required=True)
    at.add_argument("--dim", type=int, default=1)
    at.add_argument("--ordering")
    aseq = verb("atomseq", cmd_atomseq, "dimension check of the atom exact sequence")
    aseq.add_argument("--atoms", required=True)
    aseq.add_argument("--ordering")

    ar = verbs.add_parser("arrangement", help="hyperplane arrangement computations")
    ar_sub = ar.add_subparsers(dest="subverb", required=True, metavar="subverb")
    at_ = ar_sub.add_parser("table", parents=[common], help="table of d_(i,j)")
    at_.add_argument("input")
    at_.add_argument("--max-i", type=int)
    at_.add_argument("--max-j", type=int)
    af = ar_sub.add_parser("formula", parents=[common], help="closed form for one d_(i,j)")
    af.add_argument("input")
    af.add_argument("i", type=int)
    af.add_argument("j", type=int)
    al = ar_sub.add_parser("lattice", parents=[common], help="intersection lattice summary")
    al.add_argument("input")
    al.add_argument("--emit-poset", action="store_true")
    ar.set_defaults(func=cmd_arrangement)

    fx = verbs.add_parser("fixture", help="built-in example posets")
    fx_sub = fx.add_subparsers(dest="subverb", required=True, metavar="subverb")
    fx_sub.add_parser("list", parents=[common])
    for name in ("show", "assert"):
        fx_sub.add_parser(name, parents=[common]).add_argument("name")
    fx.set_defaults(func=cmd_fixture, name=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        outcome = args.func(args)
    except NotFunctorial as exc:
        print("error: the functor is not functorial", file=sys.stderr)
        for v in exc.violations:
            print("  " + v.describe(), file=sys.stderr)
        return BAD_INPUT
    except CheckFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except (PosetCohError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return BAD_INPUT
    if args.output == "table":
        if args.func is cmd_arrangement and args.subverb == "table":
            lines = _arrangement_table(outcome.data)
        else:
            lines = render_table(outcome.data)
        print("\n".join(lines))
    else:
        print(io.dump_json(outcome.data))
    return outcome.status


if __name__ == "__main__":
    sys.exit(main())
