"""Command-line interface: keygen, encaps, decaps, selftest, bench.

Exit status is 0 on success (implicit rejection included), 1 on usage
errors and 2 on unreadable files, malformed input or level mismatches.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, kem, selftest
from .errors import BikeError, FormatError
from .params import Level
from .sampling import fresh_seed

EXIT_OK, EXIT_USAGE, EXIT_FAILURE = 0, 1, 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _seed_hex(text: str | None) -> bytes | None:
    if text is None:
        return None
    try:
        raw = bytes.fromhex(text)
    except ValueError:
        raise FormatError(f"malformed hex seed {text!r}") from None
    if len(raw) != 32:
        raise FormatError("seed must be 64 hex characters (32 bytes)")
    return raw


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _build_parser() -> argparse.ArgumentParser:
    levels = [lv.value for lv in Level]
    parser = _Parser(prog="pybike", description="BIKE key encapsulation")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--level", choices=levels, default="sl1")
    p.add_argument("--seed", help="32-byte seed as hex (default: random)")
    p.add_argument("--out-pk", type=Path, required=True)
    p.add_argument("--out-sk", type=Path, required=True)

    p = sub.add_parser("encaps", help="encapsulate a fresh shared secret")
    p.add_argument("--pk", type=Path, required=True)
    p.add_argument("--seed", help="message as hex (default: random)")
    p.add_argument("--out-ct", type=Path, required=True)
    p.add_argument("--out-ss", type=Path)
    p.add_argument("--hex", action="store_true", help="print the shared secret as hex")

    p = sub.add_parser("decaps", help="recover the shared secret")
    p.add_argument("--sk", type=Path, required=True)
    p.add_argument("--ct", type=Path, required=True)
    p.add_argument("--out-ss", type=Path)
    p.add_argument("--hex", action="store_true", help="print the shared secret as hex")

    sub.add_parser("selftest", help="run regression vectors and round trips")

    p = sub.add_parser("bench", help="print a per-operation timing profile")
    p.add_argument("--level", choices=levels, default="sl1")
    p.add_argument("--iters", type=_positive, default=100)
    p.add_argument("--format", choices=["csv", "markdown"], default="csv")
    p.add_argument("--seed", default="00" * 32, help="master seed as hex")
    return parser


def _read(path: Path) -> bytes:
    try:
        return path.read_bytes()
    except OSError as exc:
        raise BikeError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: Path, data: bytes) -> None:
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise BikeError(f"cannot write {path}: {exc.strerror}") from None


def _emit_secret(args, secret: bytes) -> None:
    if args.out_ss is not None:
        _write(args.out_ss, secret)
    if args.hex:
        print(secret.hex())


def _run(args) -> int:
    seed = _seed_hex(getattr(args, "seed", None))
    if args.command == "keygen":
        sk, pk = kem.keygen(seed or fresh_seed(), args.level)
        _write(args.out_pk, kem.serialize_pk(pk))
        _write(args.out_sk, kem.serialize_sk(sk))
    elif args.command == "encaps":
        pk = kem.deserialize_pk(_read(args.pk))
        secret, ct = kem.encaps(pk, seed or fresh_seed())
        _write(args.out_ct, kem.serialize_ct(ct))
        _emit_secret(args, secret)
    elif args.command == "decaps":
        sk = kem.deserialize_sk(_read(args.sk))
        ct = kem.deserialize_ct(_read(args.ct))
        if ct.level != sk.level:
            raise BikeError(f"ciphertext level {ct.level.value} != key level {sk.level.value}")
        _emit_secret(args, kem.decaps(sk, ct))
    elif args.command == "selftest":
        return EXIT_OK if selftest.run() else EXIT_FAILURE
    elif args.command == "bench":
        rep = bench.run_profile(args.level, args.iters, master_seed=seed)
        sys.stdout.write(bench.render_report(rep, args.format))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        return _run(args)
    except BikeError as exc:
        print(f"pybike: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
