"""Command line interface.

Four subcommands:

* ``compute``       correlation between two ranking files
* ``estimate``      run the parameter-estimation pipeline, write a table file
* ``distribution``  sample a coefficient's null distribution, emit plot data
* ``recsys-eval``   score recommendation rankings against a ground truth

Exit codes: 0 success, 2 bad input (files, flags, rankings), 3 the
standardization map could not be built, 4 extrapolated parameters were
refused under ``--strict``.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import __version__
from .coefficients import (
    CoefficientConfig,
    CoefficientKind,
    WeightFunction,
    WeightScheme,
    evaluate,
)
from .density import DEFAULT_BINS, histogram_series
from .errors import (
    ExtrapolationRefusedError,
    RankCorrError,
    StandardizationError,
    TiesPresentError,
)
from .estimate import (
    build_parameter_models,
    default_training_settings,
    mc_sample_values,
)
from .permutations import Permutation, TiePolicy, rank_from_scores, validate_ranking
from .recsys import (
    DEFAULT_SPLIT_DATE,
    build_comparisons,
    load_ratings,
    parse_split_date,
    score_comparisons,
)
from .standardize import build_standardizer
from .tables import (
    ParameterTable,
    Provenance,
    bundled_table,
    load_table,
    lookup_params,
    save_table,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_EXTRAPOLATION = 4

_WEIGHT_CHOICES = {
    "harmonic": WeightFunction.harmonic(),
    "iq0": WeightFunction.inverse_quadratic(0),
    "iq1": WeightFunction.inverse_quadratic(1),
    "iq2": WeightFunction.inverse_quadratic(2),
}

# Table-2 style default set for recsys-eval: the classical coefficients
# plus the additive weighted variants with f = 1/i and f = 1/(i+1)^2.
_DEFAULT_RECSYS_SPECS = (
    "spearman",
    "spearman:additive:harmonic",
    "spearman:additive:iq1",
    "kendall",
    "kendall:additive:harmonic",
    "kendall:additive:iq1",
)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--coefficient",
        choices=("spearman", "kendall"),
        default="spearman",
        help="coefficient family (default: spearman)",
    )
    parser.add_argument(
        "--weighting",
        choices=("none", "additive", "multiplicative"),
        default="none",
        help="weighting scheme; 'none' selects the classical coefficient",
    )
    parser.add_argument(
        "--f",
        choices=tuple(_WEIGHT_CHOICES),
        default="harmonic",
        help="weight function: harmonic 1/i or iqK 1/(i+K)^2 "
        "(ignored when --weighting none)",
    )


def config_from_args(args: argparse.Namespace) -> CoefficientConfig:
    kind = CoefficientKind(args.coefficient)
    if args.weighting == "none":
        return CoefficientConfig(kind)
    return CoefficientConfig(
        kind, _WEIGHT_CHOICES[args.f], WeightScheme(args.weighting)
    )


def parse_coefficient_spec(text: str) -> CoefficientConfig:
    """Parse 'kendall' or 'kendall:additive:harmonic' into a config."""
    parts = text.split(":")
    try:
        kind = CoefficientKind(parts[0])
    except ValueError:
        raise RankCorrError(f"unknown coefficient {parts[0]!r} in {text!r}") from None
    if len(parts) == 1:
        return CoefficientConfig(kind)
    if len(parts) != 3:
        raise RankCorrError(
            f"bad coefficient spec {text!r}: use KIND or KIND:SCHEME:F"
        )
    try:
        scheme = WeightScheme(parts[1])
    except ValueError:
        raise RankCorrError(f"unknown scheme {parts[1]!r} in {text!r}") from None
    if parts[2] not in _WEIGHT_CHOICES:
        raise RankCorrError(
            f"unknown weight function {parts[2]!r} in {text!r}; "
            f"choose from {', '.join(_WEIGHT_CHOICES)}"
        )
    return CoefficientConfig(kind, _WEIGHT_CHOICES[parts[2]], scheme)


def read_ranking_file(path: str | Path, ties: TiePolicy) -> Permutation:
    """Load a ranking from a text file.

    Accepts one value per line or comma-separated values; rank values may
    be 0-based or 1-based.  With the reject policy the values must already
    form a permutation; with break-by-input-order they are treated as
    scores where smaller means better, so tied values are allowed and
    resolve toward the earlier line.
    """
    text = Path(path).read_text(encoding="utf-8")
    tokens = text.replace(",", " ").split()
    if not tokens:
        raise RankCorrError(f"{path}: no rank values found")
    try:
        values = [float(t) for t in tokens]
    except ValueError as exc:
        raise RankCorrError(f"{path}: {exc}") from exc
    if ties is TiePolicy.REJECT:
        integral = [int(v) for v in values]
        if integral != values:
            raise TiesPresentError(
                f"{path}: non-integer rank values need --ties break-by-input-order"
            )
        return validate_ranking(integral)
    return rank_from_scores(values, descending=False, ties=ties)


def _load_table_arg(path: str | None) -> ParameterTable:
    return bundled_table() if path is None else load_table(path)


def _checked_lookup(
    config: CoefficientConfig,
    n: int,
    table: ParameterTable,
    strict: bool,
):
    params, provenance = lookup_params(config, n, table)
    if provenance is Provenance.EXTRAPOLATED:
        message = (
            f"parameters for {config.describe()} at n={n} lie beyond the "
            "model's fitted range"
        )
        if strict:
            raise ExtrapolationRefusedError(message)
        logger.warning("%s; using the extrapolation", message)
    return params, provenance


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


# ---------------------------------------------------------------------------
# subcommands


def cmd_compute(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    ties = TiePolicy(args.ties)
    a = read_ranking_file(args.ranking_a, ties)
    b = read_ranking_file(args.ranking_b, ties)
    raw = float(evaluate(config, a, b))

    payload = {"coefficient": config.describe(), "n": len(a), "raw": raw}
    if args.standardize:
        params, provenance = _checked_lookup(
            config, len(a), _load_table_arg(args.table), args.strict
        )
        mapper = build_standardizer(params)
        payload["standardized"] = float(mapper.apply(raw))
        payload["provenance"] = provenance.value

    if args.json:
        _emit(payload, None)
        return EXIT_OK
    print(f"coefficient  {payload['coefficient']}")
    print(f"n            {payload['n']}")
    print(f"raw          {payload['raw']!r}")
    if args.standardize:
        print(f"standardized {payload['standardized']!r} ({payload['provenance']})")
    return EXIT_OK


def cmd_estimate(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    settings = default_training_settings(config.kind, seed=args.seed)
    overrides = {}
    if args.a_max is not None:
        overrides["a_max"] = args.a_max
    if args.a_min is not None:
        overrides["a_min"] = args.a_min
    if overrides:
        settings = dataclasses.replace(settings, **overrides)
    logger.info(
        "estimating %s with a in [%d, %d], seed %d",
        config.describe(),
        settings.a_min,
        settings.a_max,
        settings.seed,
    )
    entry = build_parameter_models(config, settings, threads=args.threads)
    table = ParameterTable(entries=(entry,))
    save_table(table, args.out)
    logger.info("wrote %s", args.out)
    return EXIT_OK


def cmd_distribution(args: argparse.Namespace) -> int:
    config = config_from_args(args)
    if args.n < 3:
        raise RankCorrError(f"need n >= 3, got {args.n}")
    if args.samples < 2:
        raise RankCorrError("need at least 2 samples")
    values = mc_sample_values(
        config, args.n, args.samples, args.seed, threads=args.threads
    )
    series = [histogram_series(values, "raw", bins=args.bins)]
    payload = {
        "coefficient": config.describe(),
        "n": args.n,
        "seed": args.seed,
    }
    if args.standardize:
        params, provenance = _checked_lookup(
            config, args.n, _load_table_arg(args.table), args.strict
        )
        mapper = build_standardizer(params)
        series.append(
            histogram_series(mapper.apply(values), "standardized", bins=args.bins)
        )
        payload["provenance"] = provenance.value
    payload["series"] = [s.to_dict() for s in series]
    _emit(payload, args.out)
    return EXIT_OK


def cmd_recsys_eval(args: argparse.Namespace) -> int:
    configs = [parse_coefficient_spec(s) for s in args.coefficients]
    data = load_ratings(args.ratings)
    split_ts = parse_split_date(args.split_date)
    comparisons = build_comparisons(data, split_ts, seed=args.seed)
    table = _load_table_arg(args.table) if args.standardize else None
    if args.standardize and args.strict:
        for comp in comparisons:
            for config in configs:
                _checked_lookup(config, len(comp.ground_truth), table, True)
    rows = score_comparisons(
        comparisons, configs, standardize=args.standardize, table=table
    )
    if args.json:
        _emit(
            {
                "split_date": args.split_date,
                "seed": args.seed,
                "rows": rows,
            },
            None,
        )
        return EXIT_OK

    name_w = max(len(r["comparison"]) for r in rows)
    coef_w = max(len(r["coefficient"]) for r in rows)
    header = f"{'comparison':{name_w}}  {'coefficient':{coef_w}}     n      raw"
    if args.standardize:
        header += "  standardized  provenance"
    print(header)
    for r in rows:
        line = (
            f"{r['comparison']:{name_w}}  {r['coefficient']:{coef_w}}  "
            f"{r['n']:4d}  {r['raw']:+.4f}"
        )
        if args.standardize:
            line += f"       {r['standardized']:+.4f}  {r['provenance']}"
        print(line)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankcorr",
        description="Standard and top-weighted ranking correlation "
        "coefficients with zero-mean standardization.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "--verbose", action="store_true", help="log progress to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="correlation between two ranking files")
    p.add_argument("ranking_a", help="first ranking file")
    p.add_argument("ranking_b", help="second ranking file")
    _add_config_flags(p)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--table", help="parameter table file (default: bundled)")
    p.add_argument(
        "--ties",
        choices=tuple(t.value for t in TiePolicy),
        default=TiePolicy.REJECT.value,
        help="how to treat tied rank values (default: reject)",
    )
    p.add_argument("--strict", action="store_true", help="refuse extrapolation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("estimate", help="run the estimation pipeline")
    _add_config_flags(p)
    p.add_argument("--a-max", type=int, help="largest grid exponent")
    p.add_argument("--a-min", type=int, help="smallest grid exponent")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True, help="output table file")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("distribution", help="sample the null distribution")
    _add_config_flags(p)
    p.add_argument("--n", type=int, required=True, help="ranking length")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--bins", type=int, default=DEFAULT_BINS)
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--table", help="parameter table file (default: bundled)")
    p.add_argument("--strict", action="store_true", help="refuse extrapolation")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser(
        "recsys-eval", help="score recommendation rankings against ground truth"
    )
    p.add_argument("ratings", help="user item rating timestamp file")
    p.add_argument("--split-date", default=DEFAULT_SPLIT_DATE, metavar="YYYY-MM-DD")
    p.add_argument(
        "--coefficients",
        nargs="+",
        default=list(_DEFAULT_RECSYS_SPECS),
        metavar="SPEC",
        help="coefficient specs like kendall or spearman:additive:harmonic",
    )
    p.add_argument("--seed", type=int, default=0, help="random-baseline seed")
    p.add_argument("--standardize", action="store_true")
    p.add_argument("--table", help="parameter table file (default: bundled)")
    p.add_argument("--strict", action="store_true", help="refuse extrapolation")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_recsys_eval)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ExtrapolationRefusedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXTRAPOLATION
    except StandardizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (RankCorrError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
