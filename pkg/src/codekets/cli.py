"""Command-line front end.

Exit status is 0 on success, 1 when routes disagree or a verification fails,
and 2 for usage, parse, rank and resource-limit errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections.abc import Sequence
from typing import TextIO

import numpy as np

from . import expectation as ex
from .errors import CodeketError
from .gf2core import (
    BitVector,
    LinearCode,
    NonlinearCode,
    codewords,
    contains,
    dual,
    generator_matrix,
    load_generator,
    load_words,
    parse_generator,
    parse_words,
)
from .pauli import PauliString, format_pauli, parse_pauli, parse_pauli_pair
from .statevec import DEFAULT_MAX_N, codeket, estimate_expectation, expectation
from .verify import (
    DEFAULT_SEED,
    TOL,
    fixture_codes,
    random_nonlinear_codes,
    verify_linear,
    verify_nonlinear,
)

LIST_WORDS_MAX_N = 10


class UsageError(CodeketError):
    pass


class Reporter:
    """Writes ``key=value`` lines, or one JSON object per line in machine mode."""

    def __init__(self, out: TextIO, machine: bool = False):
        self.out = out
        self.machine = machine

    def record(self, record: str, /, **fields) -> None:
        if self.machine:
            payload = {"record": record}
            payload.update({k: _jsonable(v) for k, v in fields.items()})
            self.out.write(json.dumps(payload) + "\n")
        else:
            self.out.write(" ".join(f"{k}={_text(v)}" for k, v in fields.items()) + "\n")

    def comment(self, text: str) -> None:
        if not self.machine:
            self.out.write(f"# {text}\n")


def fmt_value(z: complex | float | int) -> str:
    z = complex(z)
    if abs(z.imag) > TOL:
        return f"{z.real:.12g}{z.imag:+.12g}j"
    r = z.real
    if abs(r - round(r)) <= TOL:
        return str(int(round(r)))
    return f"{r:.12g}"


def _text(v) -> str:
    if isinstance(v, (complex, float)) and not isinstance(v, bool):
        if isinstance(v, float) and math.isnan(v):
            return "nan"
        return fmt_value(v)
    return str(v)


def _jsonable(v):
    if isinstance(v, complex):
        return v.real if abs(v.imag) <= TOL else [v.real, v.imag]
    if isinstance(v, float) and math.isnan(v):
        return None
    if isinstance(v, (BitVector, ex.Case)):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# Input handling -----------------------------------------------------------


def _load_code(args) -> LinearCode | NonlinearCode:
    if args.gen:
        return load_generator(args.gen)
    if args.gen_rows:
        return parse_generator(args.gen_rows.replace(",", "\n"), "--gen-rows")
    if args.words:
        return load_words(args.words)
    if args.word_list:
        return parse_words(args.word_list.replace(",", "\n"), "--word-list")
    raise UsageError("a code source is required (--gen, --gen-rows, --words or --word-list)")


def _has_code(args) -> bool:
    return any((args.gen, args.gen_rows, args.words, args.word_list))


def _load_pauli(args, n: int) -> PauliString:
    if args.pauli and (args.A or args.B):
        raise UsageError("give either --pauli or --A/--B, not both")
    if args.pauli:
        P = parse_pauli_pair(args.pauli) if "=" in args.pauli else parse_pauli(args.pauli)
    elif args.A and args.B:
        P = PauliString(BitVector.from_string(args.A), BitVector.from_string(args.B))
    else:
        raise UsageError("a Pauli string is required (--pauli STR or --A BITS --B BITS)")
    if P.n != n:
        raise UsageError(f"Pauli string has length {P.n} but the code has n={n}")
    return P


def _require_linear(code, what: str) -> LinearCode:
    if not isinstance(code, LinearCode):
        raise UsageError(f"unsupported input: {what} needs a linear code (--gen/--gen-rows)")
    return code


# Subcommands --------------------------------------------------------------


def cmd_expect(args, rep: Reporter) -> int:
    code = _load_code(args)
    P = _load_pauli(args, code.n)
    A, B = P.A, P.B
    head = {"A": A, "B": B, "pauli": format_pauli(P)}
    linear = isinstance(code, LinearCode)
    methods = ["closed", "sum", "oracle"] if args.method == "all" else [args.method]
    values: dict[str, complex] = {}

    for method in methods:
        if method == "closed":
            if not linear:
                if args.method == "all":
                    continue
                raise UsageError("unsupported input: the closed form needs a linear code")
            res = ex.closed_form_linear(code, A, B)
            values["closed"] = res.value
            rep.record("expect", **head, case=res.case, value=res.value, route="closed")
        elif method == "sum":
            if linear:
                if not contains(code, B):
                    if args.method == "all":
                        continue
                    raise UsageError(f"the sum route assumes B in C, but B={B} is not a codeword")
                values["sum"] = ex.exp_sum_linear(code, A, B)
            else:
                values["sum"] = ex.exp_sum_nonlinear(code, A, B)
            rep.record("expect", **head, value=values["sum"], route="sum")
        else:
            psi = codeket(code, max_n=args.max_n)
            values["oracle"] = expectation(psi, P)
            rep.record("expect", **head, value=values["oracle"], route="oracle")

    if args.method != "all":
        return 0
    ref = next(iter(values.values()))
    match = all(abs(v - ref) <= TOL for v in values.values())
    rep.record(
        "verdict", verdict="MATCH" if match else "MISMATCH", routes=",".join(values)
    )
    return 0 if match else 1


def cmd_enumerate(args, rep: Reporter) -> int:
    code = _require_linear(_load_code(args), "enumerate")
    rows = ex.enumerate_nonzero(code)
    for A, B, value in rows:
        rep.record(
            "nonzero",
            A=A,
            B=B,
            pauli=format_pauli(PauliString(A, B)),
            case=ex.Case.NONZERO,
            value=value,
        )
    rep.record("summary", count=len(rows))
    return 0


def cmd_verify(args, rep: Reporter) -> int:
    linear: list[LinearCode] = []
    nonlinear: list[NonlinearCode] = []
    if _has_code(args):
        code = _load_code(args)
        (linear if isinstance(code, LinearCode) else nonlinear).append(code)
    if args.random:
        nonlinear += random_nonlinear_codes(args.random, args.seed, n=args.n)
    if not linear and not nonlinear:
        linear = fixture_codes()
        nonlinear = random_nonlinear_codes(100, args.seed)

    ok = True
    totals = {c: 0 for c in ex.Case}
    for code in linear:
        r = verify_linear(code)
        for c in ex.Case:
            totals[c] += r.tallies[c]
        _emit_report(rep, "linear", r)
        ok &= r.passed
    for code in nonlinear:
        r = verify_nonlinear(code)
        _emit_report(rep, "nonlinear", r)
        ok &= r.passed
    rep.record(
        "result",
        linear_codes=len(linear),
        nonlinear_codes=len(nonlinear),
        **{str(c): v for c, v in totals.items()},
        seed=args.seed,
        verdict="PASS" if ok else "FAIL",
    )
    return 0 if ok else 1


def _emit_report(rep: Reporter, kind: str, report) -> None:
    for f in report.failures:
        if rep.machine:
            rep.record("failure", kind=kind, code=f.code, A=f.A, B=f.B, detail=f.detail)
        else:
            rep.out.write(f"{f}\n")
    if rep.machine:
        fields = {"kind": kind, "code": str(report.code), "pairs": report.pairs}
        if kind == "linear":
            fields.update({str(c): report.tallies[c] for c in ex.Case})
            fields["inner_sums"] = sorted(report.inner_sums)
        else:
            fields["odd_identity"] = report.odd_pairs
        fields["verdict"] = "PASS" if report.passed else "FAIL"
        rep.record("code", **fields)
    else:
        rep.out.write(report.summary() + "\n")


def cmd_sample(args, rep: Reporter) -> int:
    if args.shots < 1:
        raise UsageError(f"--shots must be >= 1, got {args.shots}")
    code = _load_code(args)
    P = _load_pauli(args, code.n)
    if P.is_identity():
        raise UsageError("identity Pauli string: nothing to measure")
    psi = codeket(code, max_n=args.max_n)
    mean, stderr = estimate_expectation(psi, P, args.shots, args.seed)
    oracle = expectation(psi, P).real
    gap = abs(mean - oracle)
    if math.isnan(stderr):
        z, ok = "undefined", True
    elif stderr == 0:
        z, ok = "exact", gap <= TOL
    else:
        z, ok = f"{gap / stderr:.3f}", gap / stderr <= 5.0
    rep.record(
        "sample",
        pauli=format_pauli(P),
        shots=args.shots,
        seed=args.seed,
        mean=mean,
        stderr=stderr,
        oracle=oracle,
        z=z,
        verdict="MATCH" if ok else "MISMATCH",
    )
    return 0 if ok else 1


def cmd_dual(args, rep: Reporter) -> int:
    code = _require_linear(_load_code(args), "dual")
    d = dual(code)
    G, H = generator_matrix(code), generator_matrix(d)
    orthogonal = not np.any((G.astype(np.int64) @ H.T.astype(np.int64)) % 2)
    if rep.machine:
        rep.record("dual", n=code.n, k=code.k, dual_k=d.k, basis=[str(h) for h in d.generator])
    else:
        rep.comment(f"n={code.n} k={code.k} n-k={d.k}")
        rep.comment("dual basis:")
        for h in d.generator:
            rep.out.write(f"{h}\n")
    if code.n <= LIST_WORDS_MAX_N:
        c_words = " ".join(str(w) for w in sorted(codewords(code), key=BitVector.index))
        d_words = " ".join(str(w) for w in sorted(codewords(d), key=BitVector.index))
        if rep.machine:
            rep.record("words", code=c_words.split(), dual=d_words.split())
        else:
            rep.comment(f"code words: {c_words}")
            rep.comment(f"dual words: {d_words}")
    status = "OK" if orthogonal else "FAILED"
    if rep.machine:
        rep.record("check", orthogonality=status)
    else:
        rep.comment(f"orthogonality G*H^T = 0: {status}")
    return 0 if orthogonal else 1


COMMANDS = {
    "expect": cmd_expect,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "dual": cmd_dual,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--gen", metavar="FILE", help="generator matrix file, one row per line")
    src.add_argument("--gen-rows", metavar="ROWS", help="inline generator rows, e.g. 110,011")
    src.add_argument("--words", metavar="FILE", help="nonlinear code file, one word per line")
    src.add_argument("--word-list", metavar="WORDS", help="inline nonlinear code, e.g. 00,01,10")
    common.add_argument("--pauli", metavar="STR", help="IXYZ string or 'A=.. B=..'")
    common.add_argument("--A", metavar="BITS")
    common.add_argument("--B", metavar="BITS")
    common.add_argument(
        "--method", choices=["closed", "sum", "oracle", "all"], default="all"
    )
    common.add_argument("--shots", type=int, default=10_000)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="dense state cap")
    common.add_argument("--machine", action="store_true", help="emit JSON lines")

    parser = argparse.ArgumentParser(
        prog="codekets", description="Pauli-product expectations on code states."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("expect", parents=[common], help="evaluate one expectation value")
    sub.add_parser("enumerate", parents=[common], help="list every nonzero expectation")
    v = sub.add_parser("verify", parents=[common], help="cross-check all routes")
    v.add_argument("--random", type=int, default=0, metavar="COUNT",
                   help="also sweep COUNT seeded random nonlinear codes")
    v.add_argument("--n", type=int, default=None, help="block length of random codes")
    sub.add_parser("sample", parents=[common], help="Monte Carlo measurement")
    sub.add_parser("dual", parents=[common], help="print a dual code basis")
    return parser


def main(argv: Sequence[str] | None = None, out: TextIO | None = None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    rep = Reporter(out, machine=args.machine)
    try:
        return COMMANDS[args.command](args, rep)
    except (CodeketError, OSError) as exc:
        print(f"codekets {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
