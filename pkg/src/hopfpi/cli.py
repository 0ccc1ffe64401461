"""Command line interface: ``hopfpi <command> <model> [options]``.

A model is a path to a model file or ``zoo:<name>``.  Errors go to stderr as
``error: <CODE>: <message>`` with the error's exit status.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import zoo
from .action import is_h_invariant
from .algebra import jacobson_radical
from .errors import HopfPIError, VanishingViolation
from .invariants import (DEFAULT_COLUMN_LIMIT, codimension_cocharacter, codimension_rank,
                         cocharacter_multiplicities, growth_csv, growth_report, h_structure, pi_exponent,
                         verify_cocharacter_vanishing)
from .model import Model, parse, serialize, validate
from .polynomials import DEFAULT_BASIS_LIMIT
from .symmetric import dim_irreducible


class MethodMismatch(HopfPIError):
    code = "METHOD_MISMATCH"
    exit_code = 12


def load_model(ref: str) -> Model:
    if ref.startswith("zoo:"):
        model = zoo.load(ref[4:])
        validate(model)
        return model
    return parse(Path(ref).read_text())


def _part(lam) -> str:
    return "(" + ",".join(map(str, lam)) + ")"


def _vector(v) -> str:
    return "[" + " ".join(str(x) for x in v) + "]"


def _limits(args) -> dict:
    return {"limit_rows": args.limit_rows, "limit_cols": args.limit_cols, "threads": args.threads}


def cmd_check(args, out):
    model = load_model(args.model)
    act = model.action()
    st = h_structure(model.algebra, act)
    out(f"model: {model.name}")
    out(f"dim: {model.algebra.dim}")
    out(f"zeta basis: {act.m} ({', '.join(act.names)})")
    out("associativity: ok")
    out("product rules: ok")
    out(f"radical: dim {st.radical.J.dim}, invariant")
    out("check: ok")


def cmd_radical(args, out):
    model = load_model(args.model)
    act = model.action()
    rad = jacobson_radical(model.algebra)
    out(f"dim J = {rad.J.dim}")
    out(f"p = {rad.nilpotency_index}")
    out(f"H-invariant: {'yes' if is_h_invariant(rad.J, act) else 'no'}")
    for b in rad.J.basis:
        out(f"J basis: {_vector(b)}")


def cmd_decompose(args, out):
    model = load_model(args.model)
    A = model.algebra
    st = h_structure(A, model.action())
    out(f"dim A/J = {st.quotient.algebra.dim}")
    if st.decomposition is None:
        out("A is nilpotent: no simple components")
        return
    for k, comp in enumerate(st.decomposition.components):
        out(f"simple component {k}: dim {comp.subspace.dim}, M_{comp.degree}(Q)")
    for k, comp in enumerate(st.components):
        members = ",".join(map(str, comp.component_indices))
        out(f"H-component B{k + 1}: simple components {{{members}}}, dim {comp.dim}")
    labels = st.quotient.algebra.labels
    for b, img in enumerate(st.section.images):
        out(f"kappa({labels[b]}) = {_vector(img)}")


def cmd_exponent(args, out):
    model = load_model(args.model)
    res = pi_exponent(model.algebra, model.action())
    out(f"d = {res.d}")
    if res.nilpotent:
        out("nilpotent: yes")
        return
    out("nilpotent: no")
    out("witness: " + " ".join(f"B{i + 1}" for i in res.witness))
    out(f"certificate: {_vector(res.certificate)}")


def cmd_codim(args, out):
    model = load_model(args.model)
    A, act = model.algebra, model.action()
    if args.method == "rank":
        out(str(codimension_rank(A, act, args.n, **_limits(args)).c))
    elif args.method == "cochar":
        out(str(codimension_cocharacter(A, act, args.n, **_limits(args)).c))
    else:
        a = codimension_rank(A, act, args.n, **_limits(args)).c
        b = codimension_cocharacter(A, act, args.n, **_limits(args)).c
        if a != b:
            raise MethodMismatch(f"rank method gives {a}, cocharacter method gives {b}")
        out(str(a))


def cmd_cochar(args, out):
    model = load_model(args.model)
    res = cocharacter_multiplicities(model.algebra, model.action(), args.n, **_limits(args))
    out("lambda m f")
    for lam, m in res.multiplicities.items():
        out(f"{_part(lam)} {m} {dim_irreducible(lam)}")
    out(f"colength = {res.colength}")
    out(f"c = {res.codimension}")


def cmd_vanishing(args, out):
    model = load_model(args.model)
    rep = verify_cocharacter_vanishing(model.algebra, model.action(), args.n, **_limits(args))
    out(f"n = {rep.n}, d = {rep.d}, p = {rep.p}")
    if not rep.constrained:
        out("no constrained partitions")
    for lam in rep.constrained:
        out(f"{_part(lam)} m = {rep.multiplicities[lam]}")
    for lam, why in rep.violations:
        out(f"violation {_part(lam)}: {why}")
    out("vanishing: ok" if rep.ok else "vanishing: FAILED")
    if not rep.ok:
        lam, why = rep.violations[0]
        raise VanishingViolation(f"partition {_part(lam)}: {why}")


def cmd_growth(args, out):
    model = load_model(args.model)
    rows = growth_report(model.algebra, model.action(), args.max_n, band=args.band, **_limits(args))
    text = growth_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
        out(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    out(f"note: sandwich flags test d^n/n^{args.band} <= c_n <= n^{args.band} d^n "
        f"on n <= {args.max_n} only; finite-window evidence, not a proof")


def cmd_export(args, out):
    sys.stdout.write(serialize(load_model(args.model)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopfpi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("model", help="model file or zoo:<name>")
    common.add_argument("--limit-rows", type=int, default=DEFAULT_BASIS_LIMIT)
    common.add_argument("--limit-cols", type=int, default=DEFAULT_COLUMN_LIMIT)
    common.add_argument("--threads", type=int, default=1)
    commands = {
        "check": (cmd_check, "validate a model, including radical invariance"),
        "radical": (cmd_radical, "Jacobson radical, nilpotency index, invariance"),
        "decompose": (cmd_decompose, "simple and H-simple components, section"),
        "exponent": (cmd_exponent, "PI-exponent d with a witness chain"),
        "codim": (cmd_codim, "codimension c_n"),
        "cochar": (cmd_cochar, "cocharacter multiplicities"),
        "vanishing": (cmd_vanishing, "check vanishing of constrained multiplicities"),
        "growth": (cmd_growth, "growth table as CSV"),
        "export": (cmd_export, "print the model in file format"),
    }
    for name, (func, help_text) in commands.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        if name in ("codim", "cochar", "vanishing"):
            p.add_argument("--n", type=int, required=True)
        if name == "codim":
            p.add_argument("--method", choices=("rank", "cochar", "both"), default="rank")
        if name == "growth":
            p.add_argument("--max-n", type=int, required=True)
            p.add_argument("--out")
            p.add_argument("--band", type=int, default=3)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args, lambda s: print(s, flush=True))
    except HopfPIError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: IO_ERROR: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
