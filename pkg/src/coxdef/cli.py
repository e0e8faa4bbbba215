"""Command-line interface: ``coxdef <command> [options]``, JSON on stdout."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .algebra import DeformedAlgebra, group_algebra, structure_constants_json
from .coefficients import GenericPoint
from .complex import build_sigma, orbifold_stats
from .coxeter import CoxeterMatrix, default_budget, growth_series
from .errors import BudgetExceededError, CoxdefError, InvalidInputError
from .flatness import determinant_obstruction, find_nonflat_witness, is_flat
from .fuchsian import FuchsianSignature, cyclic_matrix, fuchsian_is_flat, hecke_basis
from .quiver import (
    build_quiver,
    check_certificate,
    first_order_deformation,
    functional_to_json,
    generic_tau,
    regular_module,
    verify_module,
)

BACKENDS = ("symbolic", "group", "generic")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def _load_json(source: str):
    """Inline JSON (starting with { or [), '-' for stdin, or a file path."""
    text = source.strip()
    if text.startswith(("{", "[")):
        raw = text
    elif source == "-":
        raw = sys.stdin.read()
    else:
        try:
            raw = Path(source).read_text()
        except OSError as exc:
            raise InvalidInputError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON in {source}: {exc}") from exc


def _word(text: str) -> tuple:
    text = text.strip()
    if text.startswith("["):
        data = json.loads(text)
    else:
        data = [x for x in text.replace(" ", ",").split(",") if x]
    try:
        return tuple(int(x) for x in data)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed word {text!r}") from exc


def _matrix(args) -> CoxeterMatrix:
    if args.matrix is None:
        raise InvalidInputError("--matrix is required")
    return CoxeterMatrix.from_json(_load_json(args.matrix))


def _algebra(matrix: CoxeterMatrix, args) -> DeformedAlgebra:
    if args.backend == "group":
        return group_algebra(matrix, budget=args.budget)
    backend = GenericPoint(matrix, seed=args.seed) if args.backend == "generic" else None
    return DeformedAlgebra(matrix, backend, budget=args.budget)


def _need_length(args) -> int:
    if args.length is None:
        raise InvalidInputError("--length is required")
    return args.length


def cmd_flat(args):
    matrix = _matrix(args)
    return {"matrix": matrix.to_json()}, is_flat(matrix).to_json()


def cmd_growth(args):
    matrix = _matrix(args)
    n = _need_length(args)
    return {"matrix": matrix.to_json(), "length": n}, {"growth": growth_series(matrix, n, args.budget)}


def cmd_nf(args):
    matrix = _matrix(args)
    word = matrix.check_word(_word(args.word))
    algebra = _algebra(matrix, args)
    result = {"element": algebra.normal_form(word).to_json(), "point": algebra.backend.describe()}
    return {"matrix": matrix.to_json(), "word": list(word), "backend": args.backend}, result


def cmd_mult(args):
    matrix = _matrix(args)
    left = matrix.check_word(_word(args.left))
    right = matrix.check_word(_word(args.right))
    algebra = _algebra(matrix, args)
    x, y = algebra.normal_form(left), algebra.normal_form(right)
    result = {
        "left": x.to_json(),
        "right": y.to_json(),
        "product": algebra.multiply(x, y).to_json(),
        "point": algebra.backend.describe(),
    }
    return {"matrix": matrix.to_json(), "left": list(left), "right": list(right), "backend": args.backend}, result


def cmd_sc(args):
    matrix = _matrix(args)
    n = _need_length(args)
    algebra = _algebra(matrix, args)
    table = algebra.structure_constants(n)
    result = {"count": len(table), "table": structure_constants_json(table), "point": algebra.backend.describe()}
    return {"matrix": matrix.to_json(), "length": n, "backend": args.backend}, result


def cmd_witness(args):
    matrix = _matrix(args)
    n = 8 if args.length is None else args.length
    witness = find_nonflat_witness(matrix, n, seed=args.seed, samples=args.samples, budget=args.budget)
    result = {"found": witness is not None, "witness": witness.to_json() if witness else None}
    return {"matrix": matrix.to_json(), "bound": n, "samples": args.samples}, result


def cmd_obstruction(args):
    matrix = _matrix(args)
    triple = _word(args.triple) if args.triple else (0, 1, 2)
    if len(triple) != 3:
        raise InvalidInputError("--triple takes three generator indices")
    ob = determinant_obstruction(matrix, triple)
    point = GenericPoint(matrix, seed=args.seed)
    result = ob.to_json()
    result["at_group"] = ob.at_group().to_json()
    result["at_generic"] = str(ob.evaluate(point.assignment))
    result["first_order"] = [[str(p), e] for p, e in sorted(ob.first_order().items())]
    return {"matrix": matrix.to_json(), "triple": list(triple)}, result


def cmd_fuchsian(args):
    if args.signature is None:
        raise InvalidInputError("--signature is required")
    sig = FuchsianSignature.from_json(_load_json(args.signature))
    matrix = cyclic_matrix(sig)
    n = 4 if args.length is None else args.length
    basis = hecke_basis(sig, n, args.budget)
    result = {
        "flat": fuchsian_is_flat(sig),
        "matrix_flat": is_flat(matrix).flat,
        "matrix": matrix.to_json(),
        "basis": [{"word": list(b["word"]), "c_word": [list(c) for c in b["c_word"]]} for b in basis],
    }
    return {"signature": sig.to_json(), "length": n}, result


def cmd_complex(args):
    matrix = _matrix(args)
    c = build_sigma(matrix, args.length, args.budget)
    return {"matrix": matrix.to_json(), "length": args.length}, {"sigma": c.to_json(), "orbifold": orbifold_stats(matrix)}


def cmd_quiver(args):
    matrix = _matrix(args)
    module = regular_module(matrix, args.budget)
    violations = verify_module(module)
    result = {"quiver": build_quiver(matrix).to_json(), "module": module.to_json(), "violations": violations}
    if not violations:
        report = is_flat(matrix)
        preferred = [ob.first_order() for ob in report.obstructions]
        zero = first_order_deformation(module, {})
        tau = generic_tau(matrix, args.seed)
        generic = first_order_deformation(module, tau, zero.elimination, preferred)
        deformation = {
            "zero": zero.to_json(),
            "generic": generic.to_json(),
            "tau": {str(p): str(v) for p, v in sorted(tau.items())},
            "determinant_functionals": [functional_to_json(f) for f in preferred],
        }
        if generic.certificate is not None:
            functional = check_certificate(generic.elimination, generic.certificate)
            deformation["generic"]["certificate"]["functional"] = functional_to_json(functional)
        result["deformation"] = deformation
    return {"matrix": matrix.to_json()}, result


COMMANDS = {
    "flat": (cmd_flat, "flatness report for a Coxeter matrix"),
    "growth": (cmd_growth, "number of group elements of each length"),
    "nf": (cmd_nf, "normal form of a word"),
    "mult": (cmd_mult, "product of two words"),
    "sc": (cmd_sc, "structure constants on the ball of given radius"),
    "witness": (cmd_witness, "search for a non-flatness witness"),
    "obstruction": (cmd_obstruction, "determinant obstruction of a finite rank-3 triple"),
    "fuchsian": (cmd_fuchsian, "Hecke algebra of a polygonal Fuchsian group"),
    "complex": (cmd_complex, "cell complex Sigma and the orbifold Y"),
    "quiver": (cmd_quiver, "quiver, regular module and first-order deformation"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="coxdef", description="Exact computation in deformed Coxeter group algebras.")
    parser.add_argument("--version", action="version", version=f"coxdef {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--matrix", help="Coxeter matrix JSON: file path, '-' or inline")
        p.add_argument("--signature", help="Fuchsian signature JSON {\"orders\": [...]}")
        p.add_argument("--length", type=int, help="length bound")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=None, help="element cap (default: $COXDEF_BUDGET or 10^6)")
        p.add_argument("--out", help="write JSON here instead of stdout")
        if name == "nf":
            p.add_argument("--word", required=True, help="e.g. 0,1,0 or [0,1,0]")
        if name == "mult":
            p.add_argument("--left", required=True)
            p.add_argument("--right", required=True)
        if name in ("nf", "mult", "sc"):
            p.add_argument("--backend", choices=BACKENDS, default="symbolic")
        if name == "witness":
            p.add_argument("--samples", type=int, default=200)
        if name == "obstruction":
            p.add_argument("--triple", help="three indices, default 0,1,2")
    return parser


def run(argv=None) -> tuple[int, dict, str | None]:
    """Parse ``argv`` and execute; returns (exit status, document, output path)."""
    args = build_parser().parse_args(argv)
    if args.budget is None:
        args.budget = default_budget()
    handler, _ = COMMANDS[args.command]
    try:
        echo, result = handler(args)
    except BudgetExceededError as exc:
        return 2, {"error": "budget exhausted", "message": str(exc)}, None
    except (CoxdefError, ValueError) as exc:
        return 1, {"error": "invalid input", "message": str(exc)}, None
    doc = {
        "tool": "coxdef",
        "version": __version__,
        "command": args.command,
        "input": echo,
        "seed": args.seed,
        "budget": args.budget,
        "result": result,
    }
    return 0, doc, args.out


def main(argv=None) -> int:
    status, doc, out = run(argv)
    if status:
        print(f"coxdef: {doc['error']}: {doc['message']}", file=sys.stderr)
        return status
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
