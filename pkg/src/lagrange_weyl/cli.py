"""Command-line driver: ``lagrange-weyl describe|lagrangians|algebra|verify``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import fixtures as fixture_module
from .algebra import (DegeneracyError, GelfandTransform, TheoremViolation, gelfand_spectrum,
                      is_commutative, is_maximal_abelian, label_spectrum, subgroup_commutant)
from .canonical import CovariantSpace, InvariantViolation
from .forms import algebra_form, compare_printed, format_linear, spectrum_forms
from .groups import (FiniteAbelianGroup, InputError, Subgroup, generated_subgroup,
                     parse_group_spec, quotient)
from .phase_space import (Convention, Multiplier, PhaseSpace, PhaseSpaceError, enumerate_lagrangians,
                          is_lagrangian, is_phase_space, load_multiplier, sigma_complement,
                          standard_multiplier, validate_multiplier)
from .verify import (BATTERY, DEFAULT_TENSOR_KS, EXIT_DEGENERACY, EXIT_INPUT, EXIT_INVARIANT,
                     exit_code, report_json, report_text, run_verify)
from .torus import TorusExponent
from .weyl import ProjectiveRep, schrodinger_rep


def _group_name(G: FiniteAbelianGroup) -> str:
    return " x ".join(f"Z{n}" for n in G.orders) or "{0}"


def _fmt(x: Sequence[int]) -> str:
    return "(" + ",".join(map(str, x)) + ")"


def _multiplier(flag: str, G: FiniteAbelianGroup) -> Multiplier:
    if flag == "standard":
        return standard_multiplier(G, Convention.PAPER_MATRIX)
    if flag == "standard-conj":
        return standard_multiplier(G, Convention.PAPER_STATED)
    if flag.startswith("file:"):
        return load_multiplier(flag[5:], G)
    raise InputError(f"unknown multiplier {flag!r}: use standard, standard-conj or file:<path>")


def _phase_space(args) -> PhaseSpace:
    G = parse_group_spec(args.group)
    m = _multiplier(args.multiplier, G)
    try:
        return PhaseSpace(G, m)
    except PhaseSpaceError as exc:
        raise InputError(f"not a phase-space multiplier: {exc}") from None


def _ambient_rep(ps: PhaseSpace) -> ProjectiveRep:
    """Weyl matrices for standard multipliers; otherwise the canonical rep of the first Lagrangian."""
    try:
        return schrodinger_rep(ps)
    except PhaseSpaceError:
        lags = enumerate_lagrangians(ps)
        if not lags:
            raise InputError("multiplier admits no Lagrangian subgroup") from None
        return CovariantSpace(ps, lags[0]).rep()


def _parse_subgroup(ps: PhaseSpace, selector: str) -> Subgroup:
    text = selector.strip()
    lags = enumerate_lagrangians(ps)
    if re.fullmatch(r"\d+", text):
        i = int(text)
        if not 0 <= i < len(lags):
            raise InputError(f"Lagrangian index {i} out of range (0..{len(lags) - 1})")
        return lags[i]
    labels = fixture_module.FIXTURES.get(ps.G.spec(), {}).get("lagrangians", {})
    if text in labels:
        return generated_subgroup(ps.xi, labels[text])
    gens = []
    for chunk in re.findall(r"\(([^()]*)\)", text) or [c for c in text.split(";") if c.strip()]:
        try:
            gens.append(tuple(int(v) for v in chunk.split(",")))
        except ValueError:
            raise InputError(f"bad generator {chunk!r} in selector {selector!r}") from None
    if not gens:
        raise InputError(f"unknown subgroup selector {selector!r}")
    for g in gens:
        if len(g) != len(ps.xi.orders):
            raise InputError(f"generator {g} needs {len(ps.xi.orders)} coordinates")
        ps.xi.check(g)
    return generated_subgroup(ps.xi, gens)


# -- describe ------------------------------------------------------------------

def cmd_describe(args) -> int:
    G = parse_group_spec(args.group)
    m = _multiplier(args.multiplier, G)
    xi = G * G.dual()
    report = validate_multiplier(m)
    phase = report.ok and is_phase_space(xi, m)
    data = {
        "group": G.spec(),
        "xi_order": xi.order,
        "multiplier": args.multiplier,
        "convention": m.convention,
        "modulus": m.modulus,
        "cocycle_violations": len(report.cocycle_violations),
        "normalization_violations": len(report.normalization_violations),
        "phase_space": bool(phase),
    }
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(f"Xi = {_group_name(G)} x ({_group_name(G)})^, order {xi.order}")
        print(f"multiplier: {args.multiplier} ({m.convention or 'custom'}), exponents over modulus {m.modulus}")
        print(f"validation: {data['cocycle_violations']} cocycle violations, "
              f"{data['normalization_violations']} normalization violations")
        print(f"phase space: {'yes' if phase else 'no'}")
    return 0


# -- lagrangians ---------------------------------------------------------------

def cmd_lagrangians(args) -> int:
    ps = _phase_space(args)
    lags = enumerate_lagrangians(ps)
    labels = fixture_module.FIXTURES.get(ps.G.spec(), {}).get("lagrangians", {})
    rows = []
    for i, H in enumerate(lags):
        label = next((n for n, el in labels.items() if generated_subgroup(ps.xi, el).same_elements(H)), None)
        rows.append({"index": i, "label": label, "generators": [list(g) for g in H.generators],
                     "elements": [list(x) for x in H.elements],
                     "quotient_size": len(quotient(ps.xi, H))})
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        print(f"{len(lags)} Lagrangian subgroups of {_group_name(ps.G)} x ({_group_name(ps.G)})^")
        for r in rows:
            name = f" ({r['label']})" if r["label"] else ""
            print(f"  [{r['index']}]{name} generated by {', '.join(map(_fmt, r['generators']))}: "
                  f"{{{', '.join(map(_fmt, r['elements']))}}}, |Xi/H| = {r['quotient_size']}")
    return 0


# -- algebra -------------------------------------------------------------------

def cmd_algebra(args) -> int:
    ps = _phase_space(args)
    if args.subgroup is None:
        raise InputError("algebra needs --subgroup <index|label|generators>")
    H = _parse_subgroup(ps, args.subgroup)
    rep = _ambient_rep(ps)
    comp = sigma_complement(ps, H)
    alg = subgroup_commutant(rep, H)
    commutative = is_commutative(alg)
    lagrangian = is_lagrangian(ps, H)
    form = algebra_form(rep, comp)
    data: dict = {
        "group": ps.G.spec(),
        "multiplier": args.multiplier,
        "subgroup": {"generators": [list(g) for g in H.generators], "elements": [list(x) for x in H.elements]},
        "complement": [list(x) for x in comp.elements],
        "lagrangian": lagrangian,
        "dimension": alg.dimension,
        "commutative": commutative,
        "maximal_abelian": is_maximal_abelian(alg),
        "form": form.render(),
        "basis": [_matrix_json(B) for B in form.basis],
        "spectrum": None,
    }
    if lagrangian:
        space = CovariantSpace(ps, H)
        transform = GelfandTransform(ps, H, rep=rep, space=space)
        gd = label_spectrum(gelfand_spectrum(alg, seed=args.seed), transform, alg)
        data["spectrum"] = {
            "points": len(gd),
            "characters": [{"coset": list(t), "value": format_linear(lin, form.params)}
                           for t, lin in spectrum_forms(form, space)],
            "seed": gd.seed,
        }
        printed = fixture_module.FIXTURES.get(ps.G.spec(), {}).get("printed_only", {})
        labels = fixture_module.FIXTURES.get(ps.G.spec(), {}).get("lagrangians", {})
        for name, rows in printed.items():
            if ps.convention == Convention.PAPER_MATRIX.value and generated_subgroup(ps.xi, labels[name]).same_elements(H):
                data["printed_comparison"] = compare_printed(form, rows)
        if args.dump_phi:
            data["alpha"] = [{"index": ps.xi.index(h), "element": list(h),
                              "value": TorusExponent(int(e), space.alpha.modulus).to_json()}
                             for h, e in zip(H.elements, space.alpha.exps)]
            data["phi"] = [{"index": i, "element": list(x), "value": space.phi.at(i).to_json()}
                           for i, x in enumerate(ps.xi.elements)]
    elif args.dump_phi:
        raise InputError("--dump-phi needs a Lagrangian subgroup")
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
        return 0
    kind = "Lagrangian" if lagrangian else "not Lagrangian"
    print(f"H = {{{', '.join(map(_fmt, H.elements))}}} ({kind}) in {_group_name(ps.G)} x ({_group_name(ps.G)})^")
    print(f"commutant: dimension {alg.dimension}, commutative {'yes' if commutative else 'no'}, "
          f"maximal abelian {'yes' if data['maximal_abelian'] else 'no'}")
    print(f"form: {form.render()}")
    if data["spectrum"]:
        print(f"spectrum: {data['spectrum']['points']} points")
        for ch in data["spectrum"]["characters"]:
            print(f"  {_fmt(ch['coset'])} + H -> {ch['value']}")
    if "printed_comparison" in data:
        cmp = data["printed_comparison"]
        print(f"printed form {cmp['printed']}: identical {cmp['identical']}, same span {cmp['same_span']}")
        for fix in cmp["single_substitution_repairs"]:
            print(f"  entry ({fix['row']},{fix['col']}): replacing {fix['printed']} by {fix['repaired']} "
                  "gives the computed algebra")
    if args.dump_phi:
        print(f"alpha (exponents over {space.alpha.modulus}): " +
              ", ".join(f"{_fmt(h)}:{e}" for h, e in zip(H.elements, space.alpha.exps)))
        print(f"Phi (exponents over {space.phi.modulus}): " +
              ", ".join(f"{_fmt(x)}:{int(e)}" for x, e in zip(ps.xi.elements, space.phi.exps)))
    return 0


def _matrix_json(M) -> list:
    return [[str(M[i, j]) if not M[i, j].is_zero() else "0" for j in range(M.shape[1])]
            for i in range(M.shape[0])]


# -- verify --------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.multiplier == "standard":
        conv = Convention.PAPER_MATRIX.value
    elif args.multiplier == "standard-conj":
        conv = Convention.PAPER_STATED.value
    else:
        raise InputError("verify runs on the standard multipliers only")
    specs = BATTERY if args.group in (None, "battery") else [s for s in args.group.split(",") if s.strip()]
    for s in specs:
        parse_group_spec(s)
    ks = DEFAULT_TENSOR_KS if args.tensor_k is None else (args.tensor_k,)
    if any(k < 1 for k in ks):
        raise InputError("--tensor-k must be at least 1")
    reports = run_verify(specs, seed=args.seed, convention=conv, tensor_ks=ks)
    text = report_json(reports, args.seed)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    if args.json:
        print(text)
        print(report_text(reports), file=sys.stderr)
    else:
        print(report_text(reports))
    return exit_code(reports)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lagrange-weyl",
                                     description="Lagrangian subgroups, Weyl operators and their commutants "
                                                 "on finite phase spaces G x G^.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group_default=None):
        p.add_argument("--group", default=group_default,
                       required=group_default is None and p.prog.split()[-1] != "verify",
                       help='group spec such as "3" or "2x2"')
        p.add_argument("--multiplier", default="standard",
                       help="standard | standard-conj | file:<path>")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized checks")

    p = sub.add_parser("describe", help="phase space and multiplier summary")
    common(p)
    p.set_defaults(func=cmd_describe)
    p = sub.add_parser("lagrangians", help="enumerate Lagrangian subgroups")
    common(p)
    p.set_defaults(func=cmd_lagrangians)
    p = sub.add_parser("algebra", help="commutant, form and spectrum for one subgroup")
    common(p)
    p.add_argument("--subgroup", help="Lagrangian index, example label (H1...), or generators like '(1,0);(0,1)'")
    p.add_argument("--dump-phi", action="store_true", help="also print alpha and Phi")
    p.set_defaults(func=cmd_algebra)
    p = sub.add_parser("verify", help="run the invariant battery")
    common(p, group_default="battery")
    p.add_argument("--tensor-k", type=int, default=None, help="multiplicity for the operator-valued checks")
    p.add_argument("--output", help="also write the JSON report to this file")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantViolation, TheoremViolation) as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except DegeneracyError as exc:
        print(f"numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY


if __name__ == "__main__":
    sys.exit(main())
