"""Command-line interface.

Exit codes: 0 when every verdict is true / a construction succeeded,
1 when a mathematical check failed (the report carries a witness),
2 for malformed input or usage errors. Reports are deterministic byte
streams; --json switches from the human-readable rendering to JSON.
"""

import argparse
import os
import sys

from . import corpus, fileio
from .algebra import (
    AlgebraMorphism,
    Subspace,
    check_axioms,
    direct_sum,
    graph_subspace,
    is_subalgebra,
    morphism_violation,
)
from .deformations import (
    check_deformation,
    deformation_from_nijenhuis,
    is_nijenhuis,
    verify_trivial_deformation,
)
from .derivations import derivation_extension, derivation_space
from .errors import CheckError, InputError
from .linalg import qstr
from .quadratic import (
    QuadraticHJL,
    reconstruct_from_isotropic_ideal,
    series,
    tstar_equivalence,
    tstar_extension,
)
from .representations import (
    adjoint_representation,
    coadjoint_obstruction,
    coadjoint_representation,
    cohomology2,
    central_extension,
    semidirect_product,
    trivial_representation,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class Report:
    """Ordered command echo, verdicts, witnesses, and constructed objects."""

    def __init__(self, command):
        self.command = command
        self.verdicts = {}
        self.witnesses = {}
        self.objects = {}

    def verdict(self, name, value, witness=None):
        self.verdicts[name] = bool(value)
        if witness is not None and not value:
            self.witnesses[name] = witness

    def all_true(self):
        return all(self.verdicts.values())

    def as_dict(self):
        out = {"command": self.command, "verdicts": self.verdicts}
        if self.witnesses:
            out["witnesses"] = self.witnesses
        if self.objects:
            out["objects"] = self.objects
        return out


def _label(index_tuple):
    """1-based basis labels for human-readable output."""
    return "(" + ", ".join(f"e{i + 1}" for i in index_tuple) + ")"


def _render_human(report):
    lines = [f"command: {report.command}"]
    for name, value in report.verdicts.items():
        mark = "true" if value else "FALSE"
        line = f"  {name}: {mark}"
        wit = report.witnesses.get(name)
        if wit is not None:
            if isinstance(wit, (list, tuple)) and \
                    all(isinstance(t, int) for t in wit):
                line += f"  witness {_label(wit)}"
            else:
                line += f"  witness {wit}"
        lines.append(line)
    for key, value in report.objects.items():
        lines.append(f"  {key}:")
        lines.append(_render_object(value, indent=4))
    return "\n".join(lines) + "\n"


def _render_object(value, indent):
    pad = " " * indent
    if isinstance(value, dict):
        rows = []
        for k, v in value.items():
            if isinstance(v, (dict, list)):
                rows.append(f"{pad}{k}:")
                rows.append(_render_object(v, indent + 2))
            else:
                rows.append(f"{pad}{k}: {v}")
        return "\n".join(rows)
    if isinstance(value, list):
        rows = []
        for v in value:
            if isinstance(v, (dict, list)):
                rows.append(_render_object(v, indent))
            else:
                rows.append(f"{pad}{v}")
        return "\n".join(rows) if rows else f"{pad}(empty)"
    return f"{pad}{value}"


def emit_report(report, as_json):
    if as_json:
        return fileio.dump_json(report.as_dict())
    return _render_human(report)


def _matrix_rows(M):
    return [[qstr(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]


def _basis_rows(subspace):
    return [[qstr(x) for x in v] for v in subspace.basis]


def _write_output(args, algebra_dict):
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(fileio.dump_json(algebra_dict))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_check(args):
    L = fileio.parse_algebra(args.algebra)
    rep = check_axioms(L)
    report = Report("check")
    for name in ("jordan_symmetric", "hom_jacobi", "multiplicative", "regular"):
        detail = rep.details.get(name)
        report.verdict(name, getattr(rep, name),
                       witness=detail["index"] if detail else None)
    for name, detail in rep.details.items():
        report.witnesses.setdefault(name, detail["index"])
        report.objects.setdefault("failures", {})[name] = {
            "index": list(detail["index"]),
            "lhs": [qstr(x) for x in detail["lhs"]],
            "rhs": [qstr(x) for x in detail["rhs"]],
        }
    return report


def cmd_morphism(args):
    src = fileio.parse_algebra(args.source)
    tgt = fileio.parse_algebra(args.target)
    phi = fileio.parse_map(args.map, rows=tgt.n, cols=src.n)
    m = AlgebraMorphism(src, tgt, phi)
    viol = morphism_violation(m)
    report = Report("morphism")
    report.verdict("morphism", viol is None,
                   witness=viol[1] if viol else None)
    if viol is not None:
        report.objects["failed_identity"] = viol[0]
    if src.delta == tgt.delta:
        graph_ok = is_subalgebra(direct_sum(src, tgt), graph_subspace(m))
        report.verdict("graph_is_subalgebra", graph_ok)
    return report


def cmd_derivations(args):
    L = fileio.parse_algebra(args.algebra)
    basis = derivation_space(L, args.k)
    report = Report("derivations")
    report.verdict("solved", True)
    report.objects["exponent"] = args.k
    report.objects["dimension"] = len(basis)
    report.objects["basis"] = [_matrix_rows(D) for D in basis]
    return report


def _resolve_representation(args, L):
    spec = args.rep
    if spec == "trivial":
        return trivial_representation(L, args.module_dim)
    if spec.startswith("adjoint:"):
        try:
            s = int(spec.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad adjoint exponent in {spec!r}")
        return adjoint_representation(L, s)
    if spec == "coadjoint":
        rep = coadjoint_representation(L)
        if rep is None:
            raise CheckError(
                f"coadjoint representation does not exist: "
                f"{coadjoint_obstruction(L)}",
                witness=coadjoint_obstruction(L)[1], check="coadjoint")
        return rep
    raise InputError(f"unknown representation {spec!r} "
                     f"(use trivial, adjoint:S, coadjoint)")


def cmd_cohomology(args):
    if args.degree != 2:
        raise InputError("only degree 2 is supported")
    L = fileio.parse_algebra(args.algebra)
    rep = _resolve_representation(args, L)
    result = cohomology2(rep)
    report = Report("cohomology")
    report.verdict("solved", True)
    report.objects["representation"] = args.rep
    report.objects["z2_dim"] = len(result.z2_basis)
    report.objects["b2_dim"] = len(result.b2_basis)
    report.objects["h2_dim"] = result.h2_dim
    report.objects["z2_basis"] = [
        [[i, j, a, qstr(v)] for (i, j, a), v in c.w.items()]
        for c in result.z2_basis]
    report.objects["b2_basis"] = [
        [[i, j, a, qstr(v)] for (i, j, a), v in c.w.items()]
        for c in result.b2_basis]
    return report


def cmd_semidirect(args):
    L = fileio.parse_algebra(args.algebra)
    rep = fileio.parse_representation(args.representation, L)
    out = semidirect_product(rep, name=f"{L.name or 'algebra'}_semidirect")
    report = Report("semidirect")
    report.verdict("constructed", True)
    report.objects["algebra"] = fileio.emit_algebra(out)
    _write_output(args, report.objects["algebra"])
    return report


def cmd_central_extend(args):
    L = fileio.parse_algebra(args.algebra)
    theta = fileio.parse_cochain2(args.cochain, L)
    out = central_extension(L, theta, name=f"{L.name or 'algebra'}_central")
    report = Report("central-extend")
    report.verdict("constructed", True)
    report.objects["algebra"] = fileio.emit_algebra(out)
    _write_output(args, report.objects["algebra"])
    return report


def cmd_extend_deriv(args):
    L = fileio.parse_algebra(args.algebra)
    D = fileio.parse_map(args.map, rows=L.n, cols=L.n)
    out = derivation_extension(L, D, name=f"{L.name or 'algebra'}_extended")
    report = Report("extend-deriv")
    report.verdict("constructed", True)
    report.objects["algebra"] = fileio.emit_algebra(out)
    _write_output(args, report.objects["algebra"])
    return report


def cmd_nijenhuis(args):
    L = fileio.parse_algebra(args.algebra)
    N = fileio.parse_map(args.map, rows=L.n, cols=L.n)
    report = Report("nijenhuis")
    commutes = N @ L.alpha == L.alpha @ N
    report.verdict("commutes_with_alpha", commutes)
    if not commutes:
        raise CheckError("operator does not commute with alpha",
                         check="alpha_commutes")
    nij = is_nijenhuis(L, N)
    report.verdict("nijenhuis", nij)
    if nij:
        psi = deformation_from_nijenhuis(L, N)
        dref = check_deformation(L, psi)
        report.verdict("deformation_valid", dref.ok, witness=dref.witness)
        report.verdict("trivial_deformation", verify_trivial_deformation(L, N))
        report.objects["psi"] = [[i, j, k, qstr(v)]
                                 for (i, j, k), v in psi.w.items()]
    return report


def cmd_tstar(args):
    L = fileio.parse_algebra(args.algebra)
    omega = fileio.parse_dual_cochain2(args.cochain, L) if args.cochain else None
    quad = tstar_extension(L, omega, name=f"tstar_{L.name or 'algebra'}")
    report = Report("tstar")
    report.verdict("constructed", True)
    report.objects["algebra"] = fileio.emit_algebra(quad.algebra)
    report.objects["form"] = fileio.emit_form(quad.form)
    _write_output(args, report.objects["algebra"])
    return report


def cmd_series(args):
    L = fileio.parse_algebra(args.algebra)
    result = series(L)
    report = Report("series")
    report.verdict("solved", True)
    report.objects["derived_dims"] = [S.dim for S in result.derived]
    report.objects["descending_dims"] = [S.dim for S in result.descending]
    report.objects["ascending_dims"] = [S.dim for S in result.ascending]
    report.objects["solvable_length"] = result.solvable_length
    report.objects["nilpotent_length"] = result.nilpotent_length
    report.objects["derived"] = [_basis_rows(S) for S in result.derived]
    report.objects["descending"] = [_basis_rows(S) for S in result.descending]
    report.objects["ascending"] = [_basis_rows(S) for S in result.ascending]
    return report


def cmd_tstar_equiv(args):
    L = fileio.parse_algebra(args.algebra)
    w1 = fileio.parse_dual_cochain2(args.first, L)
    w2 = fileio.parse_dual_cochain2(args.second, L)
    result = tstar_equivalence(L, w1, w2, require_compat=not args.no_compat)
    report = Report("tstar-equiv")
    report.verdict("equivalent", result.witness is not None)
    report.verdict("isometric", result.isometric)
    if result.witness is not None:
        report.objects["z"] = _matrix_rows(result.witness.map)
        report.objects["z_symmetric_part"] = \
            _matrix_rows(result.witness.symmetric_part())
    return report


def cmd_reconstruct(args):
    L = fileio.parse_algebra(args.algebra)
    form = fileio.parse_form(args.form, L)
    ideal_rows = fileio.parse_map(args.ideal)
    if ideal_rows.cols != L.n:
        raise InputError("ideal basis vectors must have the algebra dimension")
    quad = QuadraticHJL(L, form)
    ideal = Subspace(L.n, [ideal_rows.row(i) for i in range(ideal_rows.rows)])
    result = reconstruct_from_isotropic_ideal(quad, ideal)
    report = Report("reconstruct")
    report.verdict("reconstructed", True)
    report.objects["base"] = fileio.emit_algebra(result.base)
    report.objects["cochain"] = fileio.emit_dual_cochain2(result.cochain)
    report.objects["phi"] = _matrix_rows(result.phi)
    report.objects["complement"] = _basis_rows(result.complement)
    _write_output(args, report.objects["base"])
    return report


def emit_fixture_corpus(directory):
    """Write the built-in corpus as fixture files; byte-for-byte idempotent."""
    os.makedirs(directory, exist_ok=True)
    count = 0
    for L in corpus.standard_corpus():
        payload = fileio.dump_json(fileio.emit_algebra(L))
        with open(os.path.join(directory, f"{L.name}.json"), "w") as fh:
            fh.write(payload)
        count += 1
    return count


def cmd_fixtures(args):
    try:
        count = emit_fixture_corpus(args.directory)
    except OSError as e:
        raise InputError(f"cannot write fixtures: {e}") from e
    report = Report("fixtures")
    report.verdict("written", True)
    report.objects["count"] = count
    report.objects["directory"] = args.directory
    return report


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hjlie",
        description="Workbench for hom-Jordan-Lie algebras over exact "
                    "rationals.")
    parser.add_argument("--json", action="store_true",
                        help="emit the report as JSON")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", help="verify the defining axioms")
    p.add_argument("algebra")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("morphism", help="test a linear map between algebras")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map")
    p.set_defaults(fn=cmd_morphism)

    p = sub.add_parser("derivations", help="solve for twisted derivations")
    p.add_argument("algebra")
    p.add_argument("--k", type=int, default=0, help="twist exponent")
    p.set_defaults(fn=cmd_derivations)

    p = sub.add_parser("cohomology", help="closed/exact 2-cochains")
    p.add_argument("algebra")
    p.add_argument("--rep", default="trivial",
                   help="trivial, adjoint:S, or coadjoint")
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--module-dim", type=int, default=1,
                   help="module dimension for the trivial representation")
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("semidirect", help="semidirect product with a module")
    p.add_argument("algebra")
    p.add_argument("representation")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_semidirect)

    p = sub.add_parser("central-extend",
                       help="central extension by a closed 2-cochain")
    p.add_argument("algebra")
    p.add_argument("cochain")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_central_extend)

    p = sub.add_parser("extend-deriv",
                       help="adjoin a derivation as a new generator")
    p.add_argument("algebra")
    p.add_argument("map")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_extend_deriv)

    p = sub.add_parser("nijenhuis",
                       help="Nijenhuis verdicts and the induced deformation")
    p.add_argument("algebra")
    p.add_argument("map")
    p.set_defaults(fn=cmd_nijenhuis)

    p = sub.add_parser("tstar", help="T*-extension by a Jordancyclic cocycle")
    p.add_argument("algebra")
    p.add_argument("cochain", nargs="?")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_tstar)

    p = sub.add_parser("series", help="derived and central series")
    p.add_argument("algebra")
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("tstar-equiv",
                       help="equivalence of two T*-extensions")
    p.add_argument("algebra")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--no-compat", action="store_true",
                   help="search without the twist-compatibility filter")
    p.set_defaults(fn=cmd_tstar_equiv)

    p = sub.add_parser("reconstruct",
                       help="exhibit a quadratic algebra as a T*-extension")
    p.add_argument("algebra")
    p.add_argument("form")
    p.add_argument("ideal", help="map file whose rows span the isotropic ideal")
    p.add_argument("--output")
    p.set_defaults(fn=cmd_reconstruct)

    p = sub.add_parser("fixtures", help="write the built-in fixture corpus")
    p.add_argument("directory")
    p.set_defaults(fn=cmd_fixtures)

    return parser


def run_command(argv, stdout=None):
    """Dispatch one command; returns the process exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT_ERROR if e.code not in (0, None) else EXIT_OK
    try:
        report = args.fn(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except CheckError as e:
        report = Report(args.cmd)
        report.verdict(e.check or "check", False, witness=e.witness)
        report.objects["error"] = str(e)
        stdout.write(emit_report(report, args.json))
        return EXIT_CHECK_FAILED
    stdout.write(emit_report(report, args.json))
    return EXIT_OK if report.all_true() else EXIT_CHECK_FAILED


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
