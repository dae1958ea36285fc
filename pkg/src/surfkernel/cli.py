"""Command-line front end.

Usage: ``surfkernel <command> --job <file|s3|s3_genus1> [options]``.

Exit codes: 0 ok, 2 parse error, 3 validation failure, 4 simplification
incomplete, 5 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    ApplicabilityError,
    DomainError,
    GroupError,
    InconsistentGenusError,
    InvalidPeriodError,
    JobParseError,
    ShapeError,
    SignatureError,
    SimplificationIncomplete,
    TransversalError,
    UnreachableCosetError,
)
from .harvey import VARIANTS, enumerate_orbit, parse_program, run_program
from .homology import (
    RULES,
    adapted_check,
    block_structure_check,
    check_representation,
    elliptic_reduction,
    homology_matrices,
)
from .jobs import load_job, transversal_from_mapping
from .kernel_map import kernel_genus, validate
from .schreier import (
    count_check,
    linkedness_check,
    minimal_transversal,
    raw_counts,
    raw_presentation,
    simplify,
    validate_transversal,
)

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_INCOMPLETE, EXIT_INCONSISTENT = 0, 2, 3, 4, 5
COMMANDS = ("validate", "genus", "present", "simplify", "homology", "harvey", "orbit", "adapted")


class Inconsistent(Exception):
    """A computed result contradicts a property it must have."""


class Invalid(Exception):
    pass


def _header(title):
    return f"== {title} =="


class Runner:
    def __init__(self, args):
        self.args = args
        self.job = load_job(args.job)
        self.grp, self.sig, self.phi, self.t = self.job.resolve()
        if args.transversal:
            try:
                data = json.loads(Path(args.transversal).read_text())
            except (OSError, json.JSONDecodeError) as exc:
                raise JobParseError(f"cannot read transversal file: {exc}") from None
            self.t = transversal_from_mapping(data, self.grp, self.sig)
        opts = self.job.options
        self.variant = args.variant or opts.get("variant", "corrected")
        self.rule = args.rule or opts.get("rule", "conjugation")
        self.cap = args.cap or int(opts.get("cap", 10000))
        if self.variant not in VARIANTS:
            raise JobParseError(f"variant must be one of {VARIANTS}")
        if self.rule not in RULES:
            raise JobParseError(f"rule must be one of {RULES}")
        self.machine = args.format == "machine"

    def name(self, g):
        return self.grp.names[g]

    def require_valid(self):
        report = validate(self.sig, self.grp, self.phi)
        if not report.valid:
            raise Invalid("; ".join(report.failures()))
        if self.t is not None:
            validate_transversal(self.t, self.grp, self.phi, self.sig)
        return report

    def emit(self, text_lines, data):
        if self.machine:
            return json.dumps(data, sort_keys=True, indent=1) + "\n"
        return "\n".join(text_lines) + "\n"

    def validate(self):
        report = validate(self.sig, self.grp, self.phi)
        data = {"long_relation_ok": report.long_relation_ok,
                "period_orders_ok": list(report.period_orders_ok),
                "surjective": report.surjective, "valid": report.valid}
        lines = [_header("Surface-kernel conditions"),
                 f"signature {self.sig}", f"vector {self.phi.format(self.grp)}",
                 f"long relation ok: {report.long_relation_ok}",
                 "period orders ok: " + " ".join(
                     f"x{j}:{ok}" for j, ok in enumerate(report.period_orders_ok, 1)),
                 f"surjective: {report.surjective}",
                 f"valid: {report.valid}"]
        out = self.emit(lines, data)
        if not report.valid:
            return out, EXIT_INVALID, "; ".join(report.failures())
        return out, EXIT_OK, None

    def genus(self):
        g = kernel_genus(self.sig, self.grp.order)
        return (json.dumps({"genus": g}) + "\n" if self.machine else f"{g}\n"), EXIT_OK, None

    def _transversal(self):
        return self.t or minimal_transversal(self.grp, self.phi, self.sig)

    def present(self):
        self.require_valid()
        p = raw_presentation(self.sig, self.grp, self.phi, self._transversal())
        if self.machine:
            return p.dump(), EXIT_OK, None
        gens, rels = raw_counts(p)
        lines = [_header("Schreier transversal"),
                 *(f"{self.name(g)}: {w}" for g, w in sorted(p.context.transversal.rep.items())),
                 _header("Kernel presentation (Reidemeister-Schreier rewriting)"),
                 f"generators: {gens}",
                 f"relations (excluding trivial generators): {rels}",
                 f"trivial generators: {sum(k == 'trivial' for k in p.kinds)}",
                 f"predicted counts: {count_check(self.sig, self.grp)}"]
        return "\n".join(lines) + "\n" + p.dump(), EXIT_OK, None

    def _simplified(self):
        self.require_valid()
        p = raw_presentation(self.sig, self.grp, self.phi, self._transversal())
        keep = [p.context.parse_label(lab) for lab in self.job.options.get("keep", ())]
        return simplify(p, keep)

    def simplify(self):
        s = self._simplified()
        if self.machine:
            return s.dump(), EXIT_OK, None
        lines = [_header("Simplified kernel presentation (Tietze moves)"),
                 f"generators: {len(s.generators)}",
                 f"relations: {len(s.relations)}",
                 f"expected genus: {s.genus_expected}",
                 f"linked: {linkedness_check(s) if len(s.relations) == 1 else 'n/a'}"]
        return "\n".join(lines) + "\n" + s.dump(), EXIT_OK, None

    def homology(self):
        s = self._simplified()
        h = homology_matrices(s, rule=self.rule)
        rep_ok = check_representation(h, self.grp)
        data = {"rank": h.rank, "basis": list(h.labels), "rule": h.rule,
                "representation": rep_ok,
                "matrices": {self.name(g): m.tolist() for g, m in sorted(h.matrices.items())}}
        lines = [_header(f"Homology action ({h.rule} rule)"), f"rank: {h.rank}",
                 f"representation: {rep_ok}", h.format(self.grp).rstrip("\n")]
        if self.sig.genus >= 1:
            ref = None
            reduced = elliptic_reduction(self.sig, self.grp, self.phi)
            if reduced is not None:
                s0 = simplify(raw_presentation(reduced[0], self.grp, reduced[1]))
                ref = homology_matrices(s0, rule=self.rule)
            blocks = block_structure_check(h, self.sig, self.grp, ref)
            data["block_structure"] = blocks
            lines.insert(3, f"block structure: {blocks}")
        else:
            blocks = True
        out = self.emit(lines, data)
        if not rep_ok and self.rule == "conjugation":
            return out, EXIT_INCONSISTENT, "matrices do not form a representation"
        if not blocks and self.rule == "conjugation":
            return out, EXIT_INCONSISTENT, "block structure check failed"
        return out, EXIT_OK, None

    def harvey(self):
        program = self.args.program or self.job.program
        if not program:
            raise JobParseError("no Harvey program given (use --program or the job's program field)")
        ops = parse_program(program)
        self.require_valid()
        steps = run_program(ops, self.phi, self.grp, self.variant)
        final = steps[-1].vector if steps else self.phi
        data = {"steps": [{"op": str(op), "applied": r.applied, "reason": r.reason,
                           "vector": r.vector.format(self.grp)} for op, r in zip(ops, steps)],
                "result": self._vector_json(final)}
        lines = [_header("Harvey operations"), f"start {self.phi.format(self.grp)}"]
        for op, r in zip(ops, steps):
            lines.append(f"{op}: " + (r.vector.format(self.grp) if r.applied
                                      else f"not applied ({r.reason})"))
        return self.emit(lines, data), EXIT_OK, None

    def _vector_json(self, v):
        return {"A": [self.name(g) for g in v.A], "B": [self.name(g) for g in v.B],
                "Xi": [self.name(g) for g in v.Xi]}

    def orbit(self):
        ops = parse_program(self.args.ops or self.args.program or self.job.program or "V1,V2,V3,V4")
        self.require_valid()
        orb = enumerate_orbit(self.phi, ops, self.grp, self.cap, self.variant)
        data = {"size": len(orb), "truncated": orb.truncated,
                "vectors": [self._vector_json(v) for v in orb.vectors]}
        lines = [_header("Orbit under Harvey operations"),
                 f"operations: {','.join(map(str, sorted(set(ops))))}",
                 f"size: {len(orb)}{' (truncated)' if orb.truncated else ''}",
                 *(v.format(self.grp) for v in orb.vectors)]
        return self.emit(lines, data), EXIT_OK, None

    def adapted(self):
        s = self._simplified()
        h = homology_matrices(s, rule=self.rule)
        rep = adapted_check(h, self.grp)
        data = {"adapted": rep.adapted,
                "cases": {lab: c for lab, c in zip(h.labels, rep.cases)},
                "witness": None if rep.witness is None else h.labels[rep.witness],
                "detail": rep.detail}
        lines = [_header("Adapted homology basis check"), f"adapted: {rep.adapted}",
                 *(f"{lab}: {'case ' + str(c) if c else 'unclassified'}"
                   for lab, c in zip(h.labels, rep.cases))]
        if rep.witness is not None:
            lines.append(f"witness: {h.labels[rep.witness]}")
            lines.append(rep.detail)
        return self.emit(lines, data), EXIT_OK, None


def build_parser():
    parser = argparse.ArgumentParser(prog="surfkernel", description=__doc__.split("\n")[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--job", required=True, help="job file, or a bundled job name")
    parser.add_argument("--format", choices=("text", "machine"), default="text")
    parser.add_argument("--transversal", help="JSON file mapping elements to representative words")
    parser.add_argument("--cap", type=int, help="orbit size cap")
    parser.add_argument("--program", help="comma-separated Harvey operations")
    parser.add_argument("--ops", help="operations for orbit enumeration")
    parser.add_argument("--variant", choices=VARIANTS)
    parser.add_argument("--rule", choices=RULES)
    return parser


def run(argv=None):
    """Returns ``(stdout_text, exit_code, diagnostic_or_None)``."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return "", EXIT_PARSE if exc.code else EXIT_OK, None
    try:
        runner = Runner(args)
        return getattr(runner, args.command)()
    except (JobParseError, json.JSONDecodeError) as exc:
        return "", EXIT_PARSE, f"parse error: {exc}"
    except SimplificationIncomplete as exc:
        return "", EXIT_INCOMPLETE, f"simplification incomplete: {exc}"
    except (Invalid, ShapeError, SignatureError, InconsistentGenusError, InvalidPeriodError,
            TransversalError, UnreachableCosetError, ApplicabilityError, DomainError,
            GroupError) as exc:
        return "", EXIT_INVALID, f"validation failed: {exc}"
    except (Inconsistent, AssertionError) as exc:
        return "", EXIT_INCONSISTENT, f"internal inconsistency: {exc}"
    except ValueError as exc:
        return "", EXIT_PARSE, f"parse error: {exc}"


def main(argv=None):
    out, code, diag = run(argv)
    sys.stdout.write(out)
    if diag:
        print(diag, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
