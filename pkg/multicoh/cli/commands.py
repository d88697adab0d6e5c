"""
The command-line verbs.

Each command prints its report to stdout in the requested format and returns an exit code
(see ``multicoh.cli.error_mapper``). Exceptions are left to the caller, which maps them.
"""

import json
import logging
import os
import time
from pathlib import Path
from typing import List, Optional, Sequence

from multicoh.cli.error_mapper import EXIT_INVALID_INPUT, exit_code_for_report
from multicoh.core.report import Report
from multicoh.fixtures.codec import (
    Fixture,
    export_builder,
    parse_fixture,
    serialize_multifunctor,
    write_document,
)
from multicoh.fixtures.schema import Reference
from multicoh.functors.pseudo import check_pseudo, check_pseudo_nat, pseudo_equal
from multicoh.functors.symmetric import check_multifunctor, check_multinat, multifunctor_equal
from multicoh.multicat.checks import check_multicat
from multicoh.multicat.construct import check_comm_monoid, cyclic_monoid
from multicoh.rigidify.adjunction import build_corpus, check_corpus
from multicoh.rigidify.algebra import ORDERINGS, check_algebra
from multicoh.rigidify.construction import eta_star, rigid_factor, rigidify
from multicoh.utils.exceptions import ArityMismatch, InvalidInput, MulticohException


logger = logging.getLogger(__name__)


def emit(reports: Sequence[Report], fmt: str = "text", extra: Optional[dict] = None) -> None:
    """Print reports (and demo statistics) to stdout."""
    if fmt == "json":
        doc = {"reports": [r.to_dict() for r in reports]}
        if extra:
            doc.update(extra)
        print(json.dumps(doc, indent=2))
        return
    for r in reports:
        print(r.render_text())
    for key, value in (extra or {}).items():
        print(f"{key}: {value}")


def _require_bound(fixture: Fixture, arity_bound: Optional[int]) -> None:
    if arity_bound is not None and arity_bound != fixture.document.arity_bound:
        raise ArityMismatch(f"{fixture.path} has arity bound {fixture.document.arity_bound}, "
                            f"--arity-bound is {arity_bound}")


def check_fixture(fixture: Fixture, max_workers: int = 1) -> Report:
    """Run the checker family of the fixture's kind."""
    kind = fixture.kind
    value = fixture.value
    if kind == "multicat":
        return check_multicat(value, max_workers)
    if kind == "multifunctor":
        return check_multifunctor(value, max_workers)
    if kind == "pseudo":
        return check_pseudo(value, max_workers)
    if kind == "nattrans":
        return check_multinat(value, max_workers)
    return check_pseudo_nat(value, max_workers)


def cmd_check(path: str, arity_bound: Optional[int] = None, max_workers: int = 1,
              fmt: str = "text") -> int:
    fixture = parse_fixture(path)
    _require_bound(fixture, arity_bound)
    report = check_fixture(fixture, max_workers)
    logger.info(f"check {fixture.document.name}: {'pass' if report.passed else 'fail'}")
    emit([report], fmt)
    return exit_code_for_report(report.passed)


def _rebase(ref: Reference, from_dir: Path, to_dir: Path) -> Reference:
    """The same reference, with file paths made relative to ``to_dir``."""
    if ref.file is not None:
        target = (from_dir / ref.file).resolve()
        return Reference(file=Path(os.path.relpath(target, to_dir.resolve())).as_posix())
    if ref.product is not None:
        return Reference(product=[_rebase(r, from_dir, to_dir) for r in ref.product])
    return ref


def _require_kind(fixture: Fixture, kinds: Sequence[str], verb: str) -> None:
    if fixture.kind not in kinds:
        raise InvalidInput(f"{verb} needs a {' or '.join(kinds)} fixture, "
                           f"{fixture.path} is {fixture.kind}")


def cmd_rigidify(path: str, out: str, max_workers: int = 1, cross_validate: bool = True,
                 fmt: str = "text") -> int:
    """Write phi(F) for a pseudo fixture F; refuse with exit 2 if F is not pseudo symmetric."""
    fixture = parse_fixture(path)
    _require_kind(fixture, ["pseudo"], "rigidify")
    f = fixture.value
    report = check_pseudo(f, max_workers)
    if not report.passed:
        logger.error(f"{f.name} is not pseudo symmetric, not rigidifying")
        emit([report], fmt)
        return EXIT_INVALID_INPUT
    phi = rigidify(f, validate=False, cross_validate=cross_validate)
    out_path = Path(out)
    payload = fixture.document.payload
    source = Reference(product=[
        _rebase(payload.source, fixture.path.parent, out_path.parent),
        Reference(builder="barratt_eccles", arity_bound=fixture.document.arity_bound),
    ])
    target = _rebase(payload.target, fixture.path.parent, out_path.parent)
    write_document(serialize_multifunctor(phi, source, target), out_path)
    emit([report], fmt, {"written": str(out_path)})
    return exit_code_for_report(True)


def cmd_roundtrip(path: str, max_workers: int = 1, fmt: str = "text") -> int:
    """
    eta*(phi(F)) = F for a pseudo fixture, phi(eta*(G)) = G for a multifunctor out of
    ``M x E``.
    """
    fixture = parse_fixture(path)
    _require_kind(fixture, ["pseudo", "multifunctor"], "roundtrip")
    value = fixture.value
    if fixture.kind == "pseudo":
        report = check_pseudo(value, max_workers)
        if not report.passed:
            emit([report], fmt)
            return EXIT_INVALID_INPUT
        result = Report(f"roundtrip {value.name}")
        result.expect(pseudo_equal(eta_star(rigidify(value, validate=False)), value),
                      "roundtrip.eta_star_phi", value.name)
    else:
        rigid_factor(value.source)
        report = check_multifunctor(value, max_workers)
        if not report.passed:
            emit([report], fmt)
            return exit_code_for_report(False)
        result = Report(f"roundtrip {value.name}")
        result.expect(multifunctor_equal(rigidify(eta_star(value), validate=False), value),
                      "roundtrip.phi_eta_star", value.name)
    emit([result], fmt)
    return exit_code_for_report(result.passed)


def cmd_adjunction_demo(seed: int, size: int, arity_bound: int, orders: Sequence[int],
                        max_workers: int = 1, fmt: str = "text") -> int:
    started = time.perf_counter()
    corpus = build_corpus(seed, size, arity_bound, orders)
    built = time.perf_counter()
    report = check_corpus(corpus, max_workers)
    finished = time.perf_counter()
    stats = {
        "rigid": len(corpus.rigid),
        "pseudo": len(corpus.pseudo),
        "symmetric": len(corpus.symmetric),
        "pairs": len(corpus.pairs()),
        "build_seconds": round(built - started, 3),
        "check_seconds": round(finished - built, 3),
    }
    logger.info(f"adjunction demo: {len(corpus)} cells checked in "
                f"{stats['check_seconds']}s")
    emit([report], fmt, stats)
    return exit_code_for_report(report.passed)


def cmd_algebra_demo(order: int, arity_bound: int, max_workers: int = 1,
                     fmt: str = "text") -> int:
    """
    Rigidify the pseudo symmetric algebras of Z/order under every ordering and check the
    resulting E-algebras.
    """
    mon = cyclic_monoid(order)
    reports: List[Report] = [check_comm_monoid(mon)]
    for ordering in ORDERINGS:
        reports.append(check_algebra(mon, arity_bound, ordering, max_workers))
    emit(reports, fmt)
    return exit_code_for_report(all(r.passed for r in reports))


def cmd_export(builder: str, arity_bound: int, order: Optional[int], out: str,
               fmt: str = "text") -> int:
    document = export_builder(builder, arity_bound, order)
    write_document(document, out)
    if fmt == "json":
        print(json.dumps({"written": out, "name": document.name}))
    else:
        print(f"wrote {document.name} to {out}")
    return exit_code_for_report(True)


COMMANDS = ("check", "rigidify", "roundtrip", "adjunction-demo", "algebra-demo", "export")


def run(args, config, max_workers: int) -> int:
    """Dispatch parsed arguments to a command."""
    fmt = args.format
    bound = args.arity_bound if args.arity_bound is not None else config.check.arity_bound
    if args.command == "check":
        return cmd_check(args.file, args.arity_bound, max_workers, fmt)
    if args.command == "rigidify":
        return cmd_rigidify(args.file, args.out, max_workers, config.check.cross_validate_phi, fmt)
    if args.command == "roundtrip":
        return cmd_roundtrip(args.file, max_workers, fmt)
    if args.command == "adjunction-demo":
        seed = args.seed if args.seed is not None else config.demo.seed
        size = args.corpus_size if args.corpus_size is not None else config.demo.corpus_size
        return cmd_adjunction_demo(seed, size, bound, config.demo.monoid_orders, max_workers, fmt)
    if args.command == "algebra-demo":
        order = args.order if args.order is not None else config.demo.algebra_order
        return cmd_algebra_demo(order, bound, max_workers, fmt)
    if args.command == "export":
        return cmd_export(args.builder, bound, args.order, args.out, fmt)
    raise MulticohException(f"unknown command {args.command!r}")
