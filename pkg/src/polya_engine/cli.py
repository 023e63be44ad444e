"""Command-line front end: ``polya-engine`` / ``python3 -m polya_engine``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from .errors import SpecInvalid
from .induction import parameters_report
from .pipeline import THEOREM1, THEOREM2, RunConfig, generate_instance, run_pipeline

USAGE_ERROR = 1


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise SpecInvalid(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecInvalid(f"{path} is not valid JSON: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="polya-engine",
        description="Certify that integer-valued data is eventually polynomial and recover the polynomial.",
    )
    p.add_argument("--mode", choices=[THEOREM1, THEOREM2], default=THEOREM1)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--input", help="JSON-lines samples {\"n\", \"v\": \"num/den\", \"m\"}")
    src.add_argument("--generate", metavar="SPEC_JSON", help="instance generator spec (JSON file)")
    p.add_argument("--certificate", metavar="CERT_JSON", help="growth certificate and continuation for --input")
    p.add_argument("--horizon", type=int)
    p.add_argument("--epsilon", type=_fraction, default=Fraction(1, 2))
    p.add_argument("--lambda", dest="lam", type=_fraction, default=Fraction(1))
    p.add_argument("--precision-bits", type=int, default=128)
    engine = p.add_mutually_exclusive_group()
    engine.add_argument("--oracle-only", action="store_true", help="skip the analytic chain")
    engine.add_argument("--certificate-only", action="store_true", help="skip the exact oracle")
    p.add_argument("--L", type=int, help="x-degree of the auxiliary polynomial (with --M)")
    p.add_argument("--M", type=int, help="y-degree of the auxiliary polynomial (with --L)")
    p.add_argument("--max-degree", type=int, default=4, help="largest degree of Q to search for")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--write-instance", metavar="PREFIX",
                   help="with --generate, also write PREFIX.jsonl and PREFIX.cert.json")
    p.add_argument("--parameters-only", action="store_true", help="emit the parameter scan and exit")
    return p


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.parameters_only:
            _emit(json.dumps({"parameters": parameters_report(args.lam)}, sort_keys=True, indent=1), args.out)
            return 0
        if args.input is None and args.generate is None:
            parser.error("one of --input or --generate is required")
        generate = _read_json(args.generate) if args.generate else None
        if generate is not None and args.write_instance:
            spec = dict(generate, mode=generate.get("mode", args.mode))
            if args.horizon is not None:
                spec.setdefault("horizon", args.horizon)
            inst = generate_instance(spec)
            Path(args.write_instance + ".jsonl").write_text(inst.data.to_jsonl())
            Path(args.write_instance + ".cert.json").write_text(
                json.dumps(inst.certificate_json(), sort_keys=True, indent=1) + "\n"
            )
        engine_mode = "oracle" if args.oracle_only else "certificate" if args.certificate_only else "both"
        config = RunConfig(
            mode=args.mode,
            input=args.input,
            generate=generate,
            certificate=_read_json(args.certificate) if args.certificate else None,
            horizon=args.horizon,
            epsilon=args.epsilon,
            lam=args.lam,
            precision_bits=args.precision_bits,
            engine_mode=engine_mode,
            L=args.L,
            M=args.M,
            max_degree=args.max_degree,
            out=args.out,
        )
        report = run_pipeline(config)
    except SpecInvalid as exc:
        print(f"polya-engine: {exc}", file=sys.stderr)
        return USAGE_ERROR
    _emit(report.dumps(), args.out)
    print(f"verdict: {report.verdict}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
