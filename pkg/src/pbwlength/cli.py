"""Command-line front end.

Letter i in any word refers to generators[i-1] of the input file.

Exit codes: 0 success, 1 the PBW check returned Fails, 2 input error,
3 resource truncation, 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .bounds import analyze
from .exact_linalg import FieldError, FieldSpec
from .formats import (
    FormatError, certificate_from_json, certificate_to_json, dumps, generator_digest,
    load_matrix_set, matrix_set_to_json, pbw_from_json, pbw_to_json,
)
from .pbw import FAILS, TRUNCATED, check_pbw, replay_counterexample
from .rewrite import NotApplicable, rewrite_word, verify_certificate
from .span_engine import Truncated, build_filtration
from .witnesses import is_lie_closed, quantum_plane, random_set, search_sharpness, sl2_irrep
from .words import WordError, parse_word, verify_lemma24_exhaustive

EXIT_OK, EXIT_FAILS, EXIT_INPUT, EXIT_TRUNCATED, EXIT_VERIFY = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return load_matrix_set(_read(path))
    except (FormatError, FieldError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_json(path: str) -> dict:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _ranks_line(ranks) -> str:
    return "ranks: " + " ".join(str(r) for r in ranks)


def _length_report(g, args) -> tuple:
    t0 = time.perf_counter()
    f = build_filtration(g, args.max_len)
    t1 = time.perf_counter()
    pbw = None
    if args.pbw:
        pbw = check_pbw(g, f, args.up_to)
    t2 = time.perf_counter()
    bounds = analyze(f, pbw.holds if pbw else None, is_lie_closed(g))
    report = {
        "format": 1,
        "kind": "length-report",
        "command": "length",
        "generators_sha256": generator_digest(g),
        "n": g.n,
        "t": g.t,
        "field": g.field.to_json(),
        "ranks": list(f.ranks),
        "c": f.length,
        "r_star": f.r_star,
        "bounds": bounds.to_json(),
        "pbw": pbw_to_json(pbw) if pbw else None,
    }
    if args.timings:
        report["timings"] = {"filtration_s": round(t1 - t0, 6), "pbw_s": round(t2 - t1, 6)}
    return report, f


def cmd_length(args) -> int:
    g = _load(args.input)
    try:
        report, f = _length_report(g, args)
    except Truncated as exc:
        part = exc.partial
        if args.json:
            sys.stdout.write(dumps({"format": 1, "kind": "length-report", "truncated": True,
                                    "ranks": list(part.ranks), "max_len": args.max_len}))
        else:
            print(f"truncated at level {part.levels}")
            print(_ranks_line(part.ranks))
        return EXIT_TRUNCATED
    if args.figure:
        from .plotting import rank_growth
        rank_growth(report["ranks"], g.n, args.figure, title=f"n={g.n}, t={g.t} over {g.field}")
    if args.json:
        sys.stdout.write(dumps(report))
        return EXIT_OK
    b = report["bounds"]
    print(_ranks_line(report["ranks"]))
    print(f"c: {report['c']}")
    print(f"r_star: {report['r_star']} (n^2 = {g.n * g.n})")
    print(f"paz_general: {b['paz_general']}")
    print(f"prop25.condition_met_at: {b['prop25']['condition_met_at']}")
    print(f"prop31.condition_met_at: {b['prop31']['condition_met_at']}")
    print(f"proper_subalgebra: {b['thm32_applicable']}")
    print(f"lie_hypothesis: {b['lie_hypothesis']}")
    if report["pbw"]:
        print(f"pbw: {report['pbw']['verdict']} up to {report['pbw']['checked_up_to']}")
    print("bounds_in_force: " + ", ".join(f"{k}={v}" for k, v in b["bounds_in_force"].items()))
    print(f"audit: {b['audit']}")
    print(f"consistent: {b['consistent']}")
    if "timings" in report:
        print("timings: " + ", ".join(f"{k}={v}" for k, v in report["timings"].items()))
    return EXIT_OK if b["consistent"] else EXIT_VERIFY


def cmd_pbw(args) -> int:
    g = _load(args.input)
    f = build_filtration(g)
    r = check_pbw(g, f, args.up_to, word_limit=args.word_limit)
    out = pbw_to_json(r)
    out.update({"format": 1, "kind": "pbw-report", "generators_sha256": generator_digest(g)})
    if args.json:
        sys.stdout.write(dumps(out))
    else:
        print(f"pbw: {r.verdict} up to length {r.checked_up_to} ({r.words_checked} words)")
        if r.counterexample:
            ce = r.counterexample
            print(f"counterexample: {','.join(map(str, ce.word))} (length {ce.length}, "
                  f"{len(ce.candidates)} ordered candidates, quotient dim {ce.quotient_dim})")
    if r.verdict == FAILS:
        return EXIT_FAILS
    if r.verdict == TRUNCATED:
        return EXIT_TRUNCATED
    return EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.family == "quantum-plane":
            g = quantum_plane(args.n, args.p)
        elif args.family == "sl2":
            g = sl2_irrep(args.n, FieldSpec.prime(args.p) if args.p else None)
        else:
            field = FieldSpec.rationals() if args.p is None else FieldSpec.prime(args.p)
            g = random_set(args.n, args.t, field, args.seed)
    except (ValueError, FieldError) as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(dumps(matrix_set_to_json(g)))
    return EXIT_OK


def _print_certificate(cert, g):
    F = g.field
    print(f"input: {','.join(map(str, cert.input))}  k={cert.k}  N={cert.N}  modulo L_{cert.modulo_level}")
    if not cert.terms:
        print("terms: none (the word lies in L_{m-1})")
    for c, w in cert.terms:
        print(f"  {F.format(c):>8} * {','.join(map(str, w))}")
    print(f"steps: {len(cert.steps)}")


def cmd_rewrite(args) -> int:
    g = _load(args.input)
    f = build_filtration(g)
    if args.replay:
        return _replay_certificate(g, f, _load_json(args.replay))
    if args.word is None or args.k is None:
        raise InputError("rewrite needs --word and --k (or --replay)")
    try:
        w = parse_word(args.word)
        cert = rewrite_word(g, w, args.k, f, N=args.N, ordered=args.ordered)
    except (WordError, NotApplicable) as exc:
        raise InputError(str(exc)) from None
    verdict = verify_certificate(g, cert, f)
    if not verdict:
        print(f"verification failed: {verdict.reason}", file=sys.stderr)
        return EXIT_VERIFY
    if args.json:
        sys.stdout.write(dumps(certificate_to_json(cert, g)))
    else:
        _print_certificate(cert, g)
        print("verified: true")
    return EXIT_OK


def _replay_certificate(g, f, obj) -> int:
    if obj.get("generators_sha256") not in (None, generator_digest(g)):
        print("verification failed: certificate was issued for a different matrix set", file=sys.stderr)
        return EXIT_VERIFY
    try:
        cert = certificate_from_json(obj, g)
    except FormatError as exc:
        raise InputError(str(exc)) from None
    verdict = verify_certificate(g, cert, f)
    if not verdict:
        print(f"verification failed: {verdict.reason}", file=sys.stderr)
        return EXIT_VERIFY
    print("verified: true")
    return EXIT_OK


def cmd_replay(args) -> int:
    """Re-verify a JSON report or certificate against its matrix set."""
    g = _load(args.input)
    obj = _load_json(args.report)
    kind = obj.get("kind")
    f = build_filtration(g)
    if kind == "rewrite-certificate":
        return _replay_certificate(g, f, obj)
    if obj.get("generators_sha256") != generator_digest(g):
        print("verification failed: report was issued for a different matrix set", file=sys.stderr)
        return EXIT_VERIFY
    if kind == "length-report":
        ok = obj["ranks"] == list(f.ranks) and obj["c"] == f.length and obj["r_star"] == f.r_star
        if ok and obj.get("pbw"):
            ok = pbw_to_json(check_pbw(g, f, obj["pbw"]["checked_up_to"])) == obj["pbw"]
        if ok:
            pb = obj.get("pbw")
            b = analyze(f, pb["verdict"] == "holds" if pb else None, is_lie_closed(g)).to_json()
            ok = b == obj["bounds"]
    elif kind == "pbw-report":
        r = pbw_from_json(obj)
        fresh = check_pbw(g, f, r.checked_up_to)
        ok = fresh.verdict == r.verdict
        if ok and r.counterexample:
            ok = replay_counterexample(g, f, r.counterexample)
    else:
        raise InputError(f"unknown report kind {kind!r}")
    if not ok:
        print("verification failed: recomputation disagrees with the report", file=sys.stderr)
        return EXIT_VERIFY
    print("verified: true")
    return EXIT_OK


def cmd_lemma24(args) -> int:
    try:
        r = verify_lemma24_exhaustive(args.n, args.t, args.length, args.margin)
    except WordError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        sys.stdout.write(dumps({
            "n": r.n, "t": r.t, "length": r.length, "margin": r.margin,
            "words_enumerated": r.words_enumerated, "words_checked": r.words_checked,
            "min_slack": r.min_slack,
            "violations": [{"word": list(w), "k": k, "distinct": d, "required": req}
                           for w, k, d, req in r.violations],
        }))
    else:
        slack = "n/a (no eligible words)" if r.min_slack is None else r.min_slack
        print(f"n={r.n} t={r.t} length={r.length}: {r.words_checked} of {r.words_enumerated} "
              f"ordered words checked")
        print(f"{len(r.violations)} violations, minimum slack {slack}")
        for w, k, d, req in r.violations:
            print(f"  {','.join(map(str, w))}: k={k} has {d} < {req}")
    return EXIT_OK if r.ok else EXIT_VERIFY


def cmd_search(args) -> int:
    if args.n_min < 2 or args.n_max < args.n_min - 1:
        raise InputError("need 2 <= n-min and n-max >= n-min - 1")
    out = search_sharpness(args.family, range(args.n_min, args.n_max + 1), args.budget,
                           seeds_per_n=args.seeds, ledger=args.ledger)
    if args.figure:
        from .plotting import search_summary
        search_summary(out.results, args.figure, title=f"{args.family} candidates")
    if args.json:
        sys.stdout.write(dumps({
            "family": args.family, "rejected": out.rejected, "budget_exhausted": out.exhausted,
            "results": [r.to_json() for r in out.results],
            "max_c": {str(n): r.c for n, r in sorted(out.best_per_n().items())},
        }))
    else:
        cols = ["family", "n", "seed", "t", "field", "c", "r_star", "gap_2n2", "gap_2n3", "ranks"]
        print("\t".join(cols))
        for r in out.results:
            d = r.to_json()
            d["ranks"] = " ".join(map(str, r.ranks))
            print("\t".join(str(d[c]) for c in cols))
        print(f"# rejected (not Lie-closed): {out.rejected}", file=sys.stderr)
        for n, r in sorted(out.best_per_n().items()):
            print(f"# n={n}: max c = {r.c}, 2n-3 = {2 * n - 3}", file=sys.stderr)
        if out.exhausted:
            print("# budget exhausted: results are partial", file=sys.stderr)
    return EXIT_TRUNCATED if out.exhausted else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="pbwlength",
        description="Exact generation length of matrix sets, PBW checks and certified rewriting. "
                    "Letter i in a word names generators[i-1] of the input file.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("length", help="rank sequence, c and bounds analysis")
    s.add_argument("input", help="matrix set JSON file ('-' for stdin)")
    s.add_argument("--max-len", type=int, default=None)
    s.add_argument("--pbw", action="store_true", help="also run the PBW check")
    s.add_argument("--up-to", type=int, default=None, help="PBW check length (default 2n-1)")
    s.add_argument("--figure", help="write a rank-growth figure (png/pdf/svg)")
    s.add_argument("--timings", action="store_true")
    fmt = s.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--text", dest="json", action="store_false")
    s.set_defaults(func=cmd_length)

    s = sub.add_parser("pbw", help="check the modified PBW property")
    s.add_argument("input")
    s.add_argument("--up-to", type=int, default=None)
    s.add_argument("--word-limit", type=int, default=500_000)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_pbw)

    s = sub.add_parser("gen", help="emit a matrix set file")
    s.add_argument("family", choices=["quantum-plane", "sl2", "random"])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--p", type=int, default=None, help="prime modulus (default: rationals, "
                                                       "or the smallest p = 1 mod n for quantum-plane)")
    s.add_argument("--t", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("rewrite", help="certified rewrite of a word into few distinct k-subwords")
    s.add_argument("input")
    s.add_argument("--word", help="letters, e.g. 2,1,1")
    s.add_argument("--k", type=int)
    s.add_argument("--N", type=int, default=None, help="default r_k - r_(k-1)")
    s.add_argument("--ordered", action="store_true", help="keep all words ordered (needs PBW)")
    s.add_argument("--replay", help="verify a stored certificate instead")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_rewrite)

    s = sub.add_parser("lemma24", help="exhaustive subword-count check on ordered words")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--length", type=int, default=None, help="word length (default 2n-1)")
    s.add_argument("--margin", type=int, default=2)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_lemma24)

    s = sub.add_parser("search", help="measure c over Lie-closed families (TSV on stdout)")
    s.add_argument("--family", choices=["sl2", "lie-random"], default="sl2")
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--n-max", type=int, default=5)
    s.add_argument("--seeds", type=int, default=20, help="candidates per n (lie-random)")
    s.add_argument("--budget", type=int, default=1000, help="max filtration builds")
    s.add_argument("--ledger", help="JSON-lines file to append to and resume from")
    s.add_argument("--figure", help="write a summary figure")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("replay", help="re-verify a JSON report or certificate")
    s.add_argument("input")
    s.add_argument("report")
    s.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Truncated as exc:
        print(f"truncated: {exc}", file=sys.stderr)
        return EXIT_TRUNCATED


if __name__ == "__main__":
    sys.exit(main())
