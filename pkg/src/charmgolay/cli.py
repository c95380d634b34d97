"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails (invalid SDS,
non-equivalent pairs, stage abort), 2 on bad invocation or unreadable input.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .combinatorics import (
    MODES,
    format_string,
    generate_bracelets,
    generate_charm_bracelets,
    generate_fixed_content,
    generate_necklaces,
)
from .enumeration import count_charm_bracelets
from .sds import (
    are_equivalent,
    canonical_form,
    is_periodic_golay_sds,
    parse_listing,
    read_sds_file,
    sds_to_pair,
    verify_sds,
)
from .search import (
    TERNARY,
    LiftTooLarge,
    SearchConfig,
    StageLimitExceeded,
    run_search,
    stage3_lift,
)
from .sequences import (
    compress,
    format_ternary,
    is_golay_pair,
    is_periodic_golay_pair,
    paf,
    parse_sequence,
    psd,
    to_signs,
)

log = logging.getLogger("charmgolay")


class DomainFailure(Exception):
    """A well-formed request whose answer is negative."""


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer (>= 1), got {value}")
    return value


def int_range(text: str) -> list[int]:
    """``5``, ``1..8`` or ``2,3,5``; all values >= 1."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N, LO..HI or a comma list, got {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"range {text!r} must be nonempty with values >= 1")
    return values


def int_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}") from None
    return a, b


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _open_out(path):
    return open(path, "w") if path and path != "-" else sys.stdout


# --- subcommands ---------------------------------------------------------------

def cmd_gen(args) -> int:
    out = _open_out(args.output)
    if args.content is not None:
        k = len(args.content)
        if sum(args.content) != args.n:
            raise ValueError(f"--content {args.content} sums to {sum(args.content)}, not --n {args.n}")
    else:
        k = args.k
    if args.ternary and k != 3:
        raise ValueError("--ternary needs a 3-symbol alphabet")

    def emit(s):
        if args.ternary:
            out.write(format_ternary(TERNARY[i] for i in s) + "\n")
        else:
            out.write(format_string(s, k) + "\n")

    if args.content is not None:
        total = generate_fixed_content(args.n, args.content, args.mode, emit)
    else:
        gen = {"necklace": generate_necklaces, "bracelet": generate_bracelets, "charm": generate_charm_bracelets}
        total = gen[args.mode](args.n, k, emit)
    if out is not sys.stdout:
        out.close()
    log.info("%d %s representatives", total, args.mode)
    return 0


def cmd_count(args) -> int:
    out = _open_out(args.output)
    table = {n: {k: count_charm_bracelets(n, k) for k in args.k} for n in args.n}
    out.write("n\t" + "\t".join(f"k={k}" for k in args.k) + "\n")
    for n in args.n:
        out.write(f"{n}\t" + "\t".join(str(table[n][k]) for k in args.k) + "\n")
    if out is not sys.stdout:
        out.close()
    if args.plot:
        from .plotting import plot_counts

        plot_counts(table, args.plot)
    return 0


def cmd_analyze(args) -> int:
    a = parse_sequence(args.a)
    b = parse_sequence(args.b) if args.b else None
    if b is not None and len(a) != len(b):
        raise ValueError(f"sequences differ in length ({len(a)} vs {len(b)})")
    out = _open_out(args.output)
    paf_a, psd_a = paf(a), psd(a)
    if b is None:
        out.write("s\tpaf_a\tpsd_a\n")
        for s in range(len(a)):
            out.write(f"{s}\t{paf_a[s]}\t{psd_a[s]:.6f}\n")
        out.write(f"# length {len(a)}\n# sum {int(a.sum())}\n")
    else:
        paf_b, psd_b = paf(b), psd(b)
        out.write("s\tpaf_a\tpaf_b\tpaf_sum\tpsd_a\tpsd_b\tpsd_sum\n")
        for s in range(len(a)):
            out.write(
                f"{s}\t{paf_a[s]}\t{paf_b[s]}\t{paf_a[s] + paf_b[s]}\t"
                f"{psd_a[s]:.6f}\t{psd_b[s]:.6f}\t{psd_a[s] + psd_b[s]:.6f}\n"
            )
        binary = set(a.tolist()) <= {-1, 1} and set(b.tolist()) <= {-1, 1}
        out.write(f"# length {len(a)}\n# sums {int(a.sum())} {int(b.sum())}\n")
        out.write(f"# paf_sum_zero_off_peak {'yes' if not (paf_a + paf_b)[1:].any() else 'no'}\n")
        if binary:
            out.write(f"# periodic_golay {'yes' if is_periodic_golay_pair(a, b) else 'no'}\n")
            out.write(f"# golay {'yes' if is_golay_pair(a, b) else 'no'}\n")
    if out is not sys.stdout:
        out.close()
    if args.plot:
        from .plotting import plot_pair_profiles

        plot_pair_profiles(a, a if b is None else b, args.plot)
    return 0


def cmd_compress(args) -> int:
    a = parse_sequence(args.sequence)
    print(format_ternary(compress(a, args.m)))
    return 0


def _search_config(args) -> SearchConfig:
    data = {}
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
    overrides = {
        "v": args.v,
        "m": args.m,
        "split": args.split,
        "zeros": args.zeros,
        "tol": args.tol,
        "max_candidates": args.max_candidates,
        "lift_cap": args.lift_cap,
        "candidate_dir": args.candidate_dir,
        "threads": args.threads,
    }
    data.update({k: v for k, v in overrides.items() if v is not None})
    if args.normalized_splits:
        data["normalized_splits"] = True
    if "v" not in data:
        raise ValueError("--v is required (directly or via --config)")
    return SearchConfig.from_mapping(data)


def cmd_search(args) -> int:
    config = _search_config(args)
    try:
        report = run_search(config)
    except StageLimitExceeded as exc:
        print(f"search aborted: {exc}", file=sys.stderr)
        return 1
    text = report.to_json()
    if args.report and args.report != "-":
        Path(args.report).write_text(text)
    else:
        sys.stdout.write(text)
    if args.figures:
        from .plotting import plot_pair_profiles

        outdir = Path(args.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        for i, (a, b) in enumerate(report.pairs, 1):
            plot_pair_profiles(a, b, outdir / f"pair_{config.v}_{i:03d}.png", title=f"v={config.v} pair {i}")
    print(
        f"v={config.v}: {len(report.pairs)} pair classes; "
        + ", ".join(f"{k}={v}" for k, v in report.totals.items()),
        file=sys.stderr,
    )
    return 0


def cmd_lift(args) -> int:
    a_c = parse_sequence(args.a)
    b_c = parse_sequence(args.b)
    if len(a_c) != len(b_c):
        raise ValueError("compressed sequences differ in length")
    v = args.v or 2 * len(a_c)
    try:
        pairs, stats = stage3_lift(a_c, b_c, v, args.tol, args.lift_cap)
    except LiftTooLarge as exc:
        print(f"lift refused: {exc}", file=sys.stderr)
        return 1
    out = _open_out(args.output)
    for a, b in pairs:
        out.write(f"{to_signs(a)}\t{to_signs(b)}\n")
    if out is not sys.stdout:
        out.close()
    print(", ".join(f"{k}={v}" for k, v in stats.items()), file=sys.stderr)
    return 0


def cmd_verify_sds(args) -> int:
    if args.listing:
        items = parse_listing(Path(args.file).read_text(), v=args.v, lam=args.lam, sizes=tuple(args.sizes))
    else:
        items = read_sds_file(args.file)
    ok = 0
    print("label\tv\tr\ts\tlambda\tvalid\tv=2(r+s-lambda)\tperiodic_golay")
    for i, sds in enumerate(items, 1):
        valid = verify_sds(sds)
        cond = is_periodic_golay_sds(sds)
        pgp = is_periodic_golay_pair(*sds_to_pair(sds))
        ok += valid and cond
        label = sds.label or str(i)
        print(f"{label}\t{sds.v}\t{sds.r}\t{sds.s}\t{sds.lam}\t{'yes' if valid else 'no'}\t"
              f"{'yes' if cond else 'no'}\t{'yes' if pgp else 'no'}")
    print(f"# {ok}/{len(items)} valid and satisfying v=2(r+s-lambda)")
    if ok != len(items):
        raise DomainFailure(f"{len(items) - ok} of {len(items)} SDS records failed")
    return 0


def _read_pairs(path) -> list[tuple]:
    pairs = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"expected 'A B' per line, got {line!r}")
            pairs.append(tuple(tuple(parse_sequence(p).tolist()) for p in parts))
    return pairs


def cmd_equiv(args) -> int:
    if args.dedupe:
        classes = {}
        for pair in _read_pairs(args.dedupe):
            classes.setdefault(canonical_form(pair, args.extended), pair)
        for a, b in sorted(classes):
            print(f"{to_signs(a)}\t{to_signs(b)}")
        print(f"# {len(classes)} classes", file=sys.stderr)
        return 0
    if len(args.sequences) != 4:
        raise ValueError("give A1 B1 A2 B2, or --dedupe FILE")
    a1, b1, a2, b2 = (tuple(parse_sequence(s).tolist()) for s in args.sequences)
    same = are_equivalent((a1, b1), (a2, b2), args.extended)
    print("equivalent" if same else "not equivalent")
    if not same:
        raise DomainFailure("pairs are not equivalent")
    return 0


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="charmgolay",
        allow_abbrev=False,
        description="Charm bracelets, their counts, and a compression search for periodic Golay pairs.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    g = sub.add_parser("gen", help="list necklaces, bracelets or charm bracelets",
                       description="Print one representative per line, lexicographically. Strings are digit runs "
                                   "for k <= 10, comma-separated integers otherwise.")
    g.add_argument("--n", type=positive_int, required=True, help="string length")
    g.add_argument("--k", type=positive_int, default=2, help="alphabet size (default 2)")
    g.add_argument("--mode", choices=MODES, default="charm", help="representative kind (default charm)")
    g.add_argument("--content", type=int_list, help="fixed content c0,c1,...; sets k to its length")
    g.add_argument("--ternary", action="store_true", help="print symbols 0,1,2 as 0,2,-2 (comma-separated)")
    g.add_argument("--output", "-o", help="output file (default stdout)")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("count", help="tabulate CB(n,k) by the closed formula",
                       description="Tab-separated table, one row per n, one column per k.")
    c.add_argument("--n", type=int_range, required=True, help="N, LO..HI or a comma list")
    c.add_argument("--k", type=int_range, default=[2], help="alphabet sizes (default 2)")
    c.add_argument("--output", "-o", help="output file (default stdout)")
    c.add_argument("--plot", help="also render the table as a figure to this path")
    c.set_defaults(func=cmd_count)

    a = sub.add_parser("analyze", help="PAF and PSD of a sequence or pair",
                       description="Sequences in +/- sign notation or comma-separated integers. Prints a "
                                   "tab-separated profile table followed by '#' summary lines.")
    a.add_argument("a", help="first sequence")
    a.add_argument("b", nargs="?", help="optional second sequence")
    a.add_argument("--output", "-o", help="output file (default stdout)")
    a.add_argument("--plot", help="render PSD/PAF figure to this path")
    a.set_defaults(func=cmd_analyze)

    m = sub.add_parser("compress", help="m-compress a sequence",
                       description="Prints the compressed sequence as comma-separated integers.")
    m.add_argument("sequence")
    m.add_argument("--m", type=positive_int, default=2, help="compression factor (default 2)")
    m.set_defaults(func=cmd_compress)

    s = sub.add_parser("search", help="compression search for periodic Golay pairs",
                       description="Runs candidate generation, PAF matching and lifting over all feasible "
                                   "row-sum and zero splits. Writes a JSON report. --config takes a JSON file "
                                   "with the same field names (v, m, split, zeros, tol, max_candidates, "
                                   "lift_cap, candidate_dir, normalized_splits, threads); flags override it.")
    s.add_argument("--v", type=positive_int, help="sequence length (even)")
    s.add_argument("--m", type=positive_int, help="compression factor (only 2 is supported)")
    s.add_argument("--split", type=int_pair, help="row sums a,b with a^2+b^2 = 2v (default: all)")
    s.add_argument("--zeros", type=int_pair, help="compressed zero counts zA,zB (default: all feasible)")
    s.add_argument("--tol", type=float, help="relative PSD tolerance, scaled by v (default 1e-6)")
    s.add_argument("--max-candidates", type=positive_int, help="abort a side after this many records (default 1e7)")
    s.add_argument("--lift-cap", type=positive_int, help="refuse lifts with more zeros than this (default 26)")
    s.add_argument("--candidate-dir", help="keep candidate files here (default: temporary)")
    s.add_argument("--normalized-splits", action="store_true", help="only search 0 <= a <= b")
    s.add_argument("--threads", type=positive_int, help="worker processes across splits (default 1)")
    s.add_argument("--config", help="JSON config file")
    s.add_argument("--report", help="JSON report path (default stdout)")
    s.add_argument("--figures", help="directory for per-pair PSD/PAF figures")
    s.set_defaults(func=cmd_search)

    lf = sub.add_parser("lift", help="lift a 2-compressed pair to full-length pairs",
                        description="Prints verified periodic Golay pairs as 'A<TAB>B' in sign notation.")
    lf.add_argument("--a", required=True, help="compressed A, comma-separated over {0,2,-2}")
    lf.add_argument("--b", required=True, help="compressed B")
    lf.add_argument("--v", type=positive_int, help="full length (default twice the compressed length)")
    lf.add_argument("--tol", type=float, default=1e-6, help="relative PSD tolerance (default 1e-6)")
    lf.add_argument("--lift-cap", type=positive_int, default=26, help="max zeros per side (default 26)")
    lf.add_argument("--output", "-o", help="output file (default stdout)")
    lf.set_defaults(func=cmd_lift)

    vs = sub.add_parser("verify-sds", help="check supplementary difference sets",
                        description="FILE holds records of 'v:', 'lambda:', 'X:', 'Y:' lines (comma-separated "
                                    "residues) separated by blank lines. With --listing, FILE is a numbered "
                                    "'n) [[X], [Y]]' listing instead. Exit 1 if any record fails.")
    vs.add_argument("file")
    vs.add_argument("--listing", action="store_true", help="parse a numbered bracket listing")
    vs.add_argument("--v", type=positive_int, default=68, help="modulus for --listing (default 68)")
    vs.add_argument("--lambda", dest="lam", type=int, default=26, help="lambda for --listing (default 26)")
    vs.add_argument("--sizes", type=int_pair, default=(31, 29), help="block sizes for --listing (default 31,29)")
    vs.set_defaults(func=cmd_verify_sds)

    e = sub.add_parser("equiv", help="compare or deduplicate pairs up to equivalence",
                       description="Either four sequences A1 B1 A2 B2 (exit 1 if not equivalent), or --dedupe "
                                   "FILE with one 'A B' pair per line; prints one representative per class.")
    e.add_argument("sequences", nargs="*")
    e.add_argument("--dedupe", help="file of pairs to deduplicate")
    e.add_argument("--extended", action="store_true", help="also allow negation and swapping A with B")
    e.set_defaults(func=cmd_equiv)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except DomainFailure as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
