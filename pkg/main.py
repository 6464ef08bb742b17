"""
ncrank-certify - Command Line Entry Point
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from src.algebra.fields import QQ, PrimeField
from src.cli.error_handlers import (
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    CLIErrorHandler,
)
from src.config.settings import settings
from src.core.config_manager import ConfigurationManager
from src.services.driver import NCRankService
from src.services.oracle import oracle_rank
from src.services.serialization import (
    certificate_to_dict,
    dump_certificate,
    dump_extension,
    extension_to_dict,
    load_certificate,
    load_point,
    load_space,
)
from src.services.spaces import assembled_rank, verify_certificate
from src.services.towers import build_cyclic_extension, char_divides, ensure_root_of_unity

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncrank", description="Certified non-commutative rank of matrix spaces")
    parser.add_argument("--config", help="JSON run configuration file")
    parser.add_argument("--trace", action="store_true", help="write per-iteration JSON-lines trace")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute the nc-rank with a certificate")
    compute.add_argument("space", help="matrix space file")
    compute.add_argument("--strategy", choices=["greedy", "dm"], help="blow-up reduction strategy")
    compute.add_argument("--out", help="certificate output file (stdout when omitted)")

    verify = sub.add_parser("verify", help="check a certificate against a space")
    verify.add_argument("space")
    verify.add_argument("certificate")
    verify.add_argument("--d-bound", type=int, help="largest accepted blow-up degree")

    blowup = sub.add_parser("blowup-rank", help="rank of an assembled blow-up point")
    blowup.add_argument("space")
    blowup.add_argument("point")

    extension = sub.add_parser("build-extension", help="write a cyclic extension of F(X)")
    extension.add_argument("--char", type=int, required=True, help="0 for the rationals, else a prime")
    extension.add_argument("--degree", type=int, required=True)
    extension.add_argument("--out", help="output file (stdout when omitted)")

    oracle = sub.add_parser("oracle", help="exhaustive n - max shrink over a tiny finite field")
    oracle.add_argument("space")
    oracle.add_argument("--max-n", type=int, default=3)
    return parser


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level.upper(), logging.INFO)
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )


def _compute(args, manager: ConfigurationManager) -> int:
    cfg = manager.build_run_config(strategy=args.strategy, trace_enabled=True if args.trace else None)
    B = load_space(args.space)
    certificate = NCRankService(configuration=manager).ncrank(B, cfg)
    if args.out:
        dump_certificate(certificate, args.out)
    else:
        print(json.dumps(certificate_to_dict(certificate), indent=2, default=str))
    print(f"r = {certificate.r}, d = {certificate.d}, shrunk subspace of dimension {certificate.subspace.dim}",
          file=sys.stderr)
    return EXIT_OK


def _verify(args) -> int:
    B = load_space(args.space)
    certificate = load_certificate(args.certificate)
    d_bound = args.d_bound
    if d_bound is None and isinstance(certificate.statistics, dict):
        e = certificate.statistics.get("extension_degree", 1) or 1
        d_bound = (certificate.r + 1) * e
    report = verify_certificate(B, certificate, d_bound=d_bound)
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_VERIFICATION_FAILED


def _blowup_rank(args) -> int:
    B = load_space(args.space)
    point = load_point(args.point, B.field)
    print(assembled_rank(B, point))
    return EXIT_OK


def _build_extension(args) -> int:
    F = QQ if args.char == 0 else PrimeField(args.char)
    _, _, d1 = char_divides(F, args.degree)
    base, zeta = ensure_root_of_unity(F, d1) if d1 > 1 else (F, None)
    ext = build_cyclic_extension(base, args.degree, zeta)
    if args.out:
        dump_extension(ext, args.out)
    else:
        print(json.dumps(extension_to_dict(ext), indent=2))
    return EXIT_OK


def _oracle(args) -> int:
    B = load_space(args.space)
    print(oracle_rank(B, args.max_n))
    return EXIT_OK


def cli_main(argv: Optional[List[str]] = None) -> int:
    """Run one command and return its exit status"""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    handler = CLIErrorHandler()
    try:
        manager = ConfigurationManager(args.config)
        if args.command == "compute":
            return _compute(args, manager)
        if args.command == "verify":
            return _verify(args)
        if args.command == "blowup-rank":
            return _blowup_rank(args)
        if args.command == "build-extension":
            return _build_extension(args)
        return _oracle(args)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return 130
    except Exception as e:
        return handler.handle(e, {"command": args.command})


def main():
    """Console script entry point"""
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
