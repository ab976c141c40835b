"""Command-line interface.

Subcommands: gen, run, eval, stats, compare, serve. Exit codes: 0 on
success, 1 on usage errors, 2 on data errors (bad files, mismatched label
sets, infeasible generator specs). Corpus-consuming commands apply the
team-size filter (2..99 authors) before disambiguating or measuring.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .corpus import filter_papers, load_corpus, read_labels, write_corpus, write_labels
from .errors import AndnetError
from .evalmetrics import evaluate
from .generator import SyntheticSpec, generate_synthetic
from .heuristic import write_pairs_tsv
from .names import NicknameTable, OriginList
from .netstats import build_graph, compute_stats, cumulative_distribution, productivity
from .report import METHODS, compare_report, run_method

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _probability(text: str) -> float:
    value = float(text)
    if not (0.0 <= value <= 1.0):
        raise argparse.ArgumentTypeError(f"{value} is not in [0, 1]")
    return value


def _write_json(obj: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _load_filtered(path: str):
    return filter_papers(load_corpus(path))


def _nicknames(args) -> NicknameTable:
    if args.nicknames:
        return NicknameTable.from_tsv(args.nicknames)
    return NicknameTable.bundled()


def _origins(args) -> OriginList:
    if args.origins:
        return OriginList.from_file(args.origins)
    return OriginList()


def _cmd_gen(args) -> int:
    spec = SyntheticSpec(
        n_authors=args.authors,
        n_papers=args.papers,
        team_size_mean=args.team_size_mean,
        collision_pool_share=args.collision_share,
        full_given_name_probability=args.full_given_prob,
        email_coverage=args.email_coverage,
        affiliation_coverage=args.affiliation_coverage,
        two_token_given_probability=args.two_token_prob,
        middle_dropout_probability=args.middle_dropout,
        surname_pool_size=args.surname_pool,
        surname_zipf_exponent=args.zipf_exponent,
        seed=args.seed,
    )
    result = generate_synthetic(spec)
    write_corpus(result.corpus, args.output)
    write_labels(result.truth, args.truth)
    if args.origins:
        OriginList(list(result.origin_surnames)).write(args.origins)
    return EXIT_OK


def _cmd_run(args) -> int:
    corpus = _load_filtered(args.corpus)
    clustering, details = run_method(
        args.method, corpus, nicknames=_nicknames(args), origins=_origins(args)
    )
    write_labels(clustering, args.output)
    if details is not None:
        review_path = args.review or f"{args.output}.review.tsv"
        blocked_path = args.blocked or f"{args.output}.blocked.tsv"
        write_pairs_tsv(details.review_pairs, review_path)
        write_pairs_tsv(details.blocked_merges, blocked_path)
    return EXIT_OK


def _cmd_eval(args) -> int:
    truth = read_labels(args.truth)
    pred = read_labels(args.pred)
    report = evaluate(pred, truth)
    _write_json(report.as_dict(), args.output)
    return EXIT_OK


def _cmd_stats(args) -> int:
    corpus = _load_filtered(args.corpus)
    clustering = read_labels(args.clusters, corpus)
    stats = compute_stats(corpus, clustering)
    _write_json(stats.as_dict(), args.output)
    if args.dist:
        directory = Path(args.dist)
        directory.mkdir(parents=True, exist_ok=True)
        prod = productivity(corpus, clustering)
        deg = build_graph(corpus, clustering).degrees()
        cumulative_distribution(list(prod.values())).write_csv(
            directory / "productivity.csv"
        )
        cumulative_distribution(list(deg.values())).write_csv(directory / "degree.csv")
    return EXIT_OK


def _cmd_compare(args) -> int:
    corpus = _load_filtered(args.corpus)
    truth = read_labels(args.truth, corpus)
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    for name in methods:
        if name not in METHODS:
            raise AndnetError(f"unknown method {name!r} (choose from {', '.join(METHODS)})")
    origins = _origins(args)
    report = compare_report(
        corpus,
        truth,
        methods=methods,
        nicknames=_nicknames(args),
        origins=origins if len(origins) else None,
        curves_dir=args.curves,
    )
    _write_json(report, args.output)
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="andnet", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a synthetic corpus with ground truth")
    gen.add_argument("--papers", type=int, required=True)
    gen.add_argument("--authors", type=int, required=True)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--output", required=True, help="corpus JSONL path")
    gen.add_argument("--truth", required=True, help="ground-truth labels TSV path")
    gen.add_argument("--origins", help="write the collision surname list here")
    gen.add_argument("--team-size-mean", type=float, default=3.5)
    gen.add_argument("--collision-share", type=_probability, default=0.0)
    gen.add_argument("--full-given-prob", type=_probability, default=0.85)
    gen.add_argument("--email-coverage", type=_probability, default=0.9)
    gen.add_argument("--affiliation-coverage", type=_probability, default=0.95)
    gen.add_argument("--two-token-prob", type=_probability, default=0.35)
    gen.add_argument("--middle-dropout", type=_probability, default=0.25)
    gen.add_argument("--surname-pool", type=int, default=1500)
    gen.add_argument("--zipf-exponent", type=float, default=1.1)
    gen.set_defaults(func=_cmd_gen)

    run = sub.add_parser("run", help="disambiguate a corpus with one method")
    run.add_argument("corpus", help="corpus JSONL path")
    run.add_argument("--method", required=True, choices=METHODS)
    run.add_argument("-o", "--output", required=True, help="clusters TSV path")
    run.add_argument("--review", help="review pairs TSV (heuristic only)")
    run.add_argument("--blocked", help="blocked merges TSV (heuristic only)")
    run.add_argument("--nicknames", help="nickname TSV (default: bundled table)")
    run.add_argument("--origins", help="origin surname list (one per line)")
    run.set_defaults(func=_cmd_run)

    ev = sub.add_parser("eval", help="score a predicted clustering against truth")
    ev.add_argument("--truth", required=True)
    ev.add_argument("--pred", required=True)
    ev.add_argument("-o", "--output", required=True, help="report JSON path")
    ev.set_defaults(func=_cmd_eval)

    stats = sub.add_parser("stats", help="network statistics for one clustering")
    stats.add_argument("corpus", help="corpus JSONL path")
    stats.add_argument("--clusters", required=True, help="labels TSV path")
    stats.add_argument("-o", "--output", required=True, help="stats JSON path")
    stats.add_argument("--dist", help="directory for distribution CSVs")
    stats.set_defaults(func=_cmd_stats)

    cmp_ = sub.add_parser("compare", help="full multi-method comparison report")
    cmp_.add_argument("corpus", help="corpus JSONL path")
    cmp_.add_argument("--truth", required=True, help="ground-truth labels TSV")
    cmp_.add_argument("-o", "--output", required=True, help="report JSON path")
    cmp_.add_argument("--curves", help="directory for distribution CSVs")
    cmp_.add_argument("--methods", default="fd,ad,hd", help="comma-separated methods")
    cmp_.add_argument("--nicknames", help="nickname TSV (default: bundled table)")
    cmp_.add_argument("--origins", help="origin surname list")
    cmp_.set_defaults(func=_cmd_compare)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AndnetError as exc:
        print(f"andnet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"andnet {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
