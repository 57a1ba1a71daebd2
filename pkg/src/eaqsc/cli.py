"""Command-line interface.

Exit codes: 0 success, 1 verification or audit failure, 2 input error,
3 resource guard.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time

from .circuit import Circuit
from .code import CodeParams, emit_check_matrix, parse_check_matrix, random_code
from .decoding import ChannelModel, coset_probability, demld, emld
from .errors import AuditError, FormatError, InvalidCodeError, ResourceGuardError
from .synthesis import DEFAULT_ALPHA, synth_encoder, synth_naive_encoder, verify_encoder

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3

BENCH_HEADER = ["n", "k", "c", "m", "gate_total", "gate_total_naive", "ratio_to_bound", "wall_time"]


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _load_code(path: str):
    try:
        return parse_check_matrix(_read(path))
    except (FormatError, InvalidCodeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _alpha(text: str) -> float:
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError(f"alpha must lie in (0, 1), got {text}")
    return v


def _sizes(text: str) -> list[CodeParams]:
    out = []
    for item in text.split(","):
        parts = item.strip().split(":")
        if len(parts) != 3 or not all(p.isdigit() for p in parts):
            raise argparse.ArgumentTypeError(f"size {item!r} is not n:k:c")
        try:
            out.append(CodeParams(*map(int, parts)))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return out


def cmd_synth(args) -> int:
    H = _load_code(args.infile)
    try:
        res = synth_naive_encoder(H) if args.naive else synth_encoder(H, args.alpha)
    except InvalidCodeError as exc:
        raise InputError(f"{args.infile}: {exc}") from None
    _write(args.outfile, res.circuit.to_text())
    report = {"n": H.n, "k": H.k, "c": H.c, "method": "naive" if args.naive else "blocked"}
    report.update(res.report.to_dict())
    print(json.dumps(report))
    return EXIT_OK


def cmd_verify(args) -> int:
    H = _load_code(args.matrix)
    try:
        circ = Circuit.from_text(_read(args.circuit))
    except FormatError as exc:
        raise InputError(f"{args.circuit}: {exc}") from None
    if circ.n != H.n:
        raise InputError(f"circuit acts on {circ.n} qubits but the code has n = {H.n}")
    ok = verify_encoder(H, circ)
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def bench_row(params: CodeParams, seed: int, alpha: float) -> dict:
    H = random_code(params, seed)
    t0 = time.perf_counter()
    res = synth_encoder(H, alpha)
    wall = time.perf_counter() - t0
    naive = synth_naive_encoder(H)
    n, k, c = params.n, params.k, params.c
    total = res.report.total_without_swaps
    bound = n * (n - k + c) / math.log2(n) if n >= 2 else float("nan")
    return {"n": n, "k": k, "c": c, "m": res.report.m, "gate_total": total,
            "gate_total_naive": naive.report.total_without_swaps,
            "ratio_to_bound": round(total / bound, 6) if bound else float("nan"),
            "wall_time": round(wall, 6)}


def cmd_bench(args) -> int:
    rows = []
    for params in args.sizes:
        for t in range(args.trials):
            rows.append(bench_row(params, args.seed + t, args.alpha))
    rows.sort(key=lambda r: (r["n"], r["k"], r["c"]))
    w = csv.DictWriter(sys.stdout, fieldnames=BENCH_HEADER, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return EXIT_OK


def _channel(args) -> ChannelModel:
    try:
        return ChannelModel(args.channel, args.p)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_decode(args) -> int:
    H = _load_code(args.matrix)
    ch = _channel(args)
    y = args.syndrome if args.syndrome is not None else "0" * H.mat.rows
    if len(y) != H.mat.rows or set(y) - {"0", "1"}:
        raise InputError(f"syndrome must be {H.mat.rows} bits of 0/1, got {y!r}")
    decode = demld if args.mode == "demld" else emld
    try:
        res = decode(H, y, ch)
    except InvalidCodeError as exc:
        raise InputError(str(exc)) from None
    out = {"mode": args.mode, "channel": ch.kind, "p": ch.p, "syndrome": y}
    out.update(res.to_dict())
    print(json.dumps(out))
    return EXIT_OK


def cmd_coset(args) -> int:
    H = _load_code(args.matrix)
    ch = _channel(args)
    e = args.error
    if len(e.replace("|", "")) != 2 * H.n or set(e) - {"0", "1", "|"}:
        raise InputError(f"error must be {2 * H.n} bits in x|z layout, got {e!r}")
    prob = coset_probability(e, H, ch)
    print(json.dumps({"e": e, "channel": ch.kind, "p": ch.p, "coset_probability": prob}))
    return EXIT_OK


def cmd_randcode(args) -> int:
    try:
        params = CodeParams(args.n, args.k, args.c)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write(args.outfile, emit_check_matrix(random_code(params, args.seed)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="eaqsc", description="Encoder synthesis and exact decoding "
                                 "for stabilizer and entanglement-assisted codes.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize an encoder circuit")
    p.add_argument("infile")
    p.add_argument("outfile")
    p.add_argument("--alpha", type=_alpha, default=DEFAULT_ALPHA)
    p.add_argument("--naive", action="store_true", help="unblocked baseline")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check that a circuit encodes a code")
    p.add_argument("matrix")
    p.add_argument("circuit")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="gate counts of blocked vs naive synthesis (CSV)")
    p.add_argument("--sizes", type=_sizes, default=_sizes("64:32:0,128:64:0,256:128:0"))
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--alpha", type=_alpha, default=DEFAULT_ALPHA)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("decode", help="exact decoding of one syndrome")
    p.add_argument("matrix")
    p.add_argument("--syndrome")
    p.add_argument("--channel", choices=["xz", "depol"], default="xz")
    p.add_argument("--p", type=float, default=0.1)
    p.add_argument("--mode", choices=["emld", "demld"], default="emld")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("coset", help="probability of the coset of an error")
    p.add_argument("matrix")
    p.add_argument("error", help="bits in x|z layout")
    p.add_argument("--channel", choices=["xz", "depol"], default="xz")
    p.add_argument("--p", type=float, default=0.1)
    p.set_defaults(func=cmd_coset)

    p = sub.add_parser("randcode", help="write a random valid check matrix")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("c", type=int)
    p.add_argument("outfile")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_randcode)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "trials", 1) < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceGuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except AuditError as exc:
        print(f"audit failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
