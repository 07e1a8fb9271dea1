"""
python manage.py omega <subcommand> ...

Every subcommand reads its inputs in the text formats of ``cli.syntax``,
calls one library operation and prints the result. Exit status 0 on
success, 1 on a domain error, 2 on a syntax error.
"""
import argparse
import io
import logging

from django.conf import settings
from django.core.exceptions import ObjectDoesNotExist
from django.core.exceptions import ValidationError as DjangoValidationError
from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers
from rest_framework.exceptions import ParseError as JSONParseError
from rest_framework.parsers import JSONParser
from rest_framework.renderers import JSONRenderer

from calculus.algebra import FreeAlgebra, delta_diagram, lcell_boundary, unit_law_lcell
from calculus.instructions import L1, coherence_instr, compose_instr, delta_instr, sp
from calculus.serializers import MarkedCarrierSerializer
from cli.exceptions import ParseError
from cli.render import FORMATS, render
from cli.suites import SUITES, run_suites
from cli.syntax import format_scheme, format_value, format_witness, parse, parse_scheme_encoding
from schemes.exceptions import OmegaError
from schemes.pasting import ENCODINGS, delta_scheme, scheme_boundary, scheme_compose
from schemes.strict import PastingDiagram, boundary_at, compose_along, diagram_boundary
from schemes.values import Side
from witness.core import core_filter
from witness.exceptions import InvalidWitness
from witness.models import WitnessRecord
from witness.synthesis import resolve_witness
from witness.witnesses import witness_problems

logger = logging.getLogger(__name__)


def _threshold(value):
    if value in ("inf", "none"):
        return None
    return int(value)


class Command(BaseCommand):
    """
    Front end for the pasting-scheme, instruction and witness engines.

    Subcommands:
        validate, boundary, convert, compose, sp, coherence, delta, paste,
        unitlaw, invert, core, selftest, emit, history
    """
    help = "Parse, compute with and witness cells of free weak omega-categories."

    def add_arguments(self, parser):
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--json", action="store_true", help="Print a JSON object instead of text.")
        common.add_argument("--carrier", help="Globular set or marked carrier: a JSON file, or inline JSON.")
        common.add_argument("--depth", type=int, help="Witness depth (default OMEGAPASTE_DEFAULT_DEPTH).")
        common.add_argument("--seed", type=int, help="Random seed (default OMEGAPASTE_SEED).")

        sub = parser.add_subparsers(dest="subcommand", required=True)

        def command(name, help_text, kinds=None, default_kind="scheme"):
            p = sub.add_parser(name, parents=[common], help=help_text)
            if kinds:
                p.add_argument("--kind", choices=kinds, default=default_kind)
            return p

        p = command("validate", "Parse and print an input in canonical form.",
                    ["scheme", "instruction", "cell", "lcell", "diagram", "witness"])
        p.add_argument("input", nargs="?")
        p.add_argument("--record", help="Replay a stored witness trace by its id.")

        p = command("boundary", "The m-source or m-target of an input.",
                    ["scheme", "instruction", "cell", "lcell", "diagram"])
        p.add_argument("input")
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--side", choices=[s.value for s in Side], default=Side.SRC.value)

        p = command("convert", "Re-encode a pasting scheme.")
        p.add_argument("input")
        p.add_argument("--to", choices=ENCODINGS, required=True)

        p = command("compose", "Compose two inputs along a common boundary.",
                    ["scheme", "instruction", "cell", "diagram"])
        p.add_argument("left")
        p.add_argument("right")
        p.add_argument("--m", type=int, help="Gluing level (default: one below the dimension).")

        p = command("sp", "The standard pasting instruction of a scheme.")
        p.add_argument("input")

        p = command("coherence", "The coherence instruction between two parallel instructions.")
        p.add_argument("src")
        p.add_argument("tgt")

        p = command("delta", "Drop one full-dimensional entry.", ["scheme", "instruction", "diagram"])
        p.add_argument("input")
        p.add_argument("--i", type=int, required=True)
        variant = p.add_mutually_exclusive_group()
        variant.add_argument("--plus", action="store_const", dest="variant", const="plus")
        variant.add_argument("--minus", action="store_const", dest="variant", const="minus")

        p = command("paste", "Evaluate a diagram by its standard pasting, or an LCell by xi.",
                    ["diagram", "lcell"], default_kind="diagram")
        p.add_argument("input")

        p = command("unitlaw", "The unit-law coherence cell at an identity entry.")
        p.add_argument("input")
        p.add_argument("--i", type=int, required=True)

        p = command("invert", "Synthesize an inverse witness for a cell.")
        p.add_argument("input")
        p.add_argument("--record", action="store_true", help="Store the emitted trace.")

        p = command("core", "Enumerate cells and keep the invertible core.")
        p.add_argument("--n", type=_threshold, default=0, help="Invertibility threshold; 'inf' keeps everything.")
        p.add_argument("--bound", type=int, help="Cell bound (default OMEGAPASTE_MAX_CELLS).")
        p.add_argument("--rounds", type=int, default=1)

        p = command("selftest", "Run property and golden suites.")
        p.add_argument("--suite", action="append", choices=sorted(SUITES), help="Repeatable; default all.")
        p.add_argument("--count", type=int, help="Samples per property (default per suite).")

        p = command("emit", "Render a scheme or diagram.", ["scheme", "diagram"])
        p.add_argument("input")
        p.add_argument("--format", choices=FORMATS, default="ascii")

        command("history", "List stored witness traces, newest first.")

    def handle(self, *args, **options):
        name = options["subcommand"]
        config = settings.OMEGAPASTE
        # selftest suites pick their own depth when none is given
        if options["depth"] is None and name != "selftest":
            options["depth"] = config["DEFAULT_DEPTH"]
        if options["seed"] is None:
            options["seed"] = config["SEED"]
        if options.get("bound", 0) is None:
            options["bound"] = config["MAX_CELLS"]
        logger.info("omega %s", name)
        handler = getattr(self, f"handle_{name}")
        try:
            handler(options)
        except ParseError as exc:
            raise CommandError(exc.message, returncode=2)
        except JSONParseError as exc:
            raise CommandError(str(exc.detail), returncode=2)
        except OmegaError as exc:
            raise CommandError(f"{exc.code}: {exc.message}", returncode=1)
        except serializers.ValidationError as exc:
            raise CommandError(f"invalid carrier: {exc.detail}", returncode=1)
        except (DjangoValidationError, ObjectDoesNotExist, ValueError) as exc:
            raise CommandError(str(exc), returncode=1)

    # ------------------------------------------------------------
    # Input and output
    # ------------------------------------------------------------
    def load_carrier(self, options):
        """The marked carrier named by --carrier, or None."""
        source = options["carrier"]
        if not source:
            return None
        if source.lstrip().startswith("{"):
            raw = source.encode()
        else:
            with open(source, "rb") as handle:
                raw = handle.read()
        data = JSONParser().parse(io.BytesIO(raw))
        serializer = MarkedCarrierSerializer(data=data)
        serializer.is_valid(raise_exception=True)
        return serializer.validated_data["carrier"]

    def algebra(self, options):
        carrier = self.load_carrier(options)
        if carrier is None:
            raise ValueError(f"{options['subcommand']} needs --carrier")
        return FreeAlgebra(carrier)

    def read(self, text, kind, algebra=None):
        return parse(text, kind, algebra.carrier if algebra else None)

    def emit(self, options, text, **fields):
        if options["json"]:
            payload = {"result": text, **fields}
            self.stdout.write(JSONRenderer().render(payload).decode())
        else:
            self.stdout.write(text)

    def carrier_for(self, options, kind):
        return self.algebra(options) if kind in ("cell", "lcell", "diagram", "witness") else None

    # ------------------------------------------------------------
    # Subcommands
    # ------------------------------------------------------------
    def handle_validate(self, options):
        """Canonical print of the input; with --record, replay a stored trace."""
        if options["record"]:
            record = WitnessRecord.objects.get(pk=options["record"])
            serializer = MarkedCarrierSerializer(data=record.carrier)
            serializer.is_valid(raise_exception=True)
            algebra = FreeAlgebra(serializer.validated_data["carrier"])
            witness = self.read(record.trace, "witness", algebra)
            self.check_witness(options, algebra, witness, record.depth)
            return
        if options["input"] is None:
            raise ValueError("validate needs an input or --record")
        kind = options["kind"]
        algebra = self.carrier_for(options, kind)
        value = self.read(options["input"], kind, algebra)
        if kind == "witness":
            self.check_witness(options, algebra, value, options["depth"])
            return
        self.emit(options, format_value(value), kind=kind)

    def check_witness(self, options, algebra, witness, depth):
        problems = witness_problems(algebra, witness, depth)
        if problems:
            raise InvalidWitness("; ".join(problems))
        self.emit(options, f"valid at depth {depth}", subject=str(witness.subject), depth=depth)

    def handle_boundary(self, options):
        kind, m, side = options["kind"], options["m"], Side(options["side"])
        algebra = self.carrier_for(options, kind)
        value = self.read(options["input"], kind, algebra)
        if kind == "scheme":
            face = format_scheme(scheme_boundary(value, m))
        elif kind == "instruction":
            face = str(boundary_at(L1, value, m, side))
        elif kind == "cell":
            face = str(boundary_at(algebra.carrier, value, m, side))
        elif kind == "lcell":
            face = str(lcell_boundary(value, side, m))
        else:
            face = str(diagram_boundary(value, m, side))
        self.emit(options, face, m=m, side=side.value)

    def handle_convert(self, options):
        cell, encoding = parse_scheme_encoding(options["input"])
        self.emit(options, format_scheme(cell, options["to"]), source=encoding)

    def handle_compose(self, options):
        kind = options["kind"]
        algebra = self.carrier_for(options, kind)
        left = self.read(options["left"], kind, algebra)
        right = self.read(options["right"], kind, algebra)
        if kind == "instruction":
            result = compose_instr(left, right)
        elif kind == "cell":
            result = algebra.compose(left, right)
        else:
            m = options["m"] if options["m"] is not None else left.dim - 1
            if kind == "scheme":
                result = scheme_compose(left, right, m)
            else:
                result = compose_along(left, right, m)
        self.emit(options, format_value(result))

    def handle_sp(self, options):
        cell = self.read(options["input"], "scheme")
        self.emit(options, str(sp(cell)))

    def handle_coherence(self, options):
        src = self.read(options["src"], "instruction")
        tgt = self.read(options["tgt"], "instruction")
        self.emit(options, str(coherence_instr(src, tgt)))

    def handle_delta(self, options):
        kind, i = options["kind"], options["i"]
        variant = options["variant"] or "exact"
        if kind == "diagram":
            algebra = self.algebra(options)
            result = delta_diagram(algebra, self.read(options["input"], kind, algebra), i, variant)
        elif kind == "instruction":
            result = delta_instr(self.read(options["input"], kind), i)
        else:
            result = delta_scheme(self.read(options["input"], kind), i)
        self.emit(options, format_value(result), variant=variant)

    def handle_paste(self, options):
        algebra = self.algebra(options)
        value = self.read(options["input"], options["kind"], algebra)
        if isinstance(value, PastingDiagram):
            cell = algebra.paste(value.shape, value)
        else:
            cell = algebra.evaluate(value)
        self.emit(options, str(cell), dimension=algebra.dim(cell))

    def handle_unitlaw(self, options):
        algebra = self.algebra(options)
        lcell = unit_law_lcell(algebra, self.read(options["input"], "lcell", algebra), options["i"])
        cell = algebra.evaluate(lcell)
        self.emit(
            options, str(cell),
            source=str(algebra.source(cell)), target=str(algebra.target(cell)),
        )

    def handle_invert(self, options):
        """Print a witness trace; with --record, store it."""
        algebra = self.algebra(options)
        depth = options["depth"]
        cell = self.read(options["input"], "cell", algebra)
        witness = resolve_witness(algebra, cell, depth=depth)
        problems = witness_problems(algebra, witness, depth)
        if problems:
            raise InvalidWitness("; ".join(problems))
        trace = format_witness(witness)
        fields = {"subject": str(cell), "depth": witness.depth}
        if options["record"]:
            record = WitnessRecord.objects.create(
                subject=str(cell),
                dimension=algebra.dim(cell),
                depth=witness.depth,
                trace=trace,
                carrier=MarkedCarrierSerializer(algebra.carrier).data,
            )
            fields["record"] = str(record.record_id)
            logger.info("stored witness %s", record.record_id)
        self.emit(options, trace, **fields)

    def handle_core(self, options):
        algebra = self.algebra(options)
        report = core_filter(
            algebra, n=options["n"], depth=options["depth"], bound=options["bound"], rounds=options["rounds"],
        )
        excluded = {str(cell): reason for cell, reason in report.excluded.items()}
        if options["json"]:
            self.emit(
                options, f"{len(report.kept)} kept",
                kept=[str(c) for c in report.kept], excluded=excluded,
                closed=report.closed, truncated=report.truncated,
            )
            return
        lines = [f"kept {len(report.kept)} cells" + (" (closed)" if report.closed else " (not closed)")]
        lines += [f"  {cell}" for cell in report.kept]
        if excluded:
            lines.append(f"excluded {len(excluded)} cells")
            lines += [f"  {cell}: {reason}" for cell, reason in excluded.items()]
        if report.truncated:
            lines.append("enumeration truncated")
        self.emit(options, "\n".join(lines))

    def handle_selftest(self, options):
        names = options["suite"] or list(SUITES)
        reports = run_suites(names, options["seed"], options["count"], options["depth"])
        if options["json"]:
            self.emit(options, "passed" if all(r.passed for r in reports) else "failed",
                      suites=[r.as_dict() for r in reports])
        else:
            lines = []
            for report in reports:
                status = "ok" if report.passed else "FAILED"
                lines.append(f"{report.name}: {status} ({report.checked} checked)")
                for prop in report.properties:
                    if prop.failures:
                        lines.append(f"  {prop.name}: {prop.failures} failing; smallest {prop.smallest}")
            self.emit(options, "\n".join(lines))
        failed = [r.name for r in reports if not r.passed]
        if failed:
            raise CommandError(f"failing suites: {', '.join(failed)}", returncode=1)

    def handle_emit(self, options):
        kind = options["kind"]
        value = self.read(options["input"], kind, self.carrier_for(options, kind))
        self.emit(options, render(value, options["format"]), format=options["format"])

    def handle_history(self, options):
        records = WitnessRecord.objects.all()
        if options["json"]:
            self.emit(options, f"{len(records)} records", records=[
                {"id": str(r.record_id), "subject": r.subject, "depth": r.depth, "trace": r.trace}
                for r in records
            ])
            return
        self.emit(options, "\n".join(f"{r.record_id}  depth {r.depth}  {r.subject}" for r in records))
