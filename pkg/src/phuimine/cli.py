"""Command-line front end.

Subcommands: mine (list-based miner), oracle (brute-force reference),
verify (miner-vs-oracle equivalence, fixed or fuzzed inputs), gen
(synthetic data), bench (threshold/preset sweeps and scalability
series, CSV plus a pivoted markdown summary).

Exit codes: 0 success, 1 parse/validation error, 2 bad flags,
3 verification divergence.
"""

import argparse
import statistics
import sys
from dataclasses import dataclass
from pathlib import Path

from . import dataio, datagen, oracle, verify
from .miner import PRESETS, MiningConfig, MiningStats, mine
from .model import DatabaseValidationError, Thresholds, UncertainDatabase, UtilityTable

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2
EXIT_DIVERGENCE = 3


class _UsageError(Exception):
    pass


class _DataError(Exception):
    pass


def _load_inputs(db_path: str, ptable_path: str) -> tuple[UncertainDatabase, UtilityTable]:
    try:
        db_text = Path(db_path).read_text()
    except OSError as exc:
        raise _DataError(f"{db_path}: {exc.strerror}") from None
    try:
        db = dataio.parse_database(db_text)
    except dataio.ParseError as exc:
        raise _DataError(f"{db_path}:{exc.line}: {exc}") from None
    try:
        ptable_text = Path(ptable_path).read_text()
    except OSError as exc:
        raise _DataError(f"{ptable_path}: {exc.strerror}") from None
    try:
        table = dataio.parse_ptable(ptable_text)
    except dataio.ParseError as exc:
        raise _DataError(f"{ptable_path}:{exc.line}: {exc}") from None
    return db, table


def _thresholds_from(args) -> Thresholds:
    if not 0.0 <= args.min_pro <= 1.0:
        raise _UsageError("min-pro must be in [0,1]")
    return Thresholds(args.min_util, args.min_pro)


def _config_from(args) -> MiningConfig:
    if getattr(args, "strategies", None):
        return MiningConfig.from_strategies(args.strategies.split(","))
    return MiningConfig.from_preset(args.preset)


def _write_or_print(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_mine(args) -> int:
    thresholds = _thresholds_from(args)
    config = _config_from(args)
    db, table = _load_inputs(args.db, args.ptable)
    results, stats = mine(db, table, thresholds, config)
    _write_or_print(dataio.serialize_results(results), args.out)
    if args.stats:
        Path(args.stats).write_text(dataio.serialize_stats(stats, args.stats_format))
    return EXIT_OK


def cmd_oracle(args) -> int:
    thresholds = _thresholds_from(args)
    db, table = _load_inputs(args.db, args.ptable)
    results = oracle.brute_force_mine(db, table, thresholds, max_items=args.max_items)
    _write_or_print(dataio.serialize_results(results), args.out)
    return EXIT_OK


def cmd_verify(args, mine_fn=mine) -> int:
    if args.fuzz:
        diff = verify.run_fuzz(
            args.fuzz,
            seed=args.seed,
            max_items=args.max_items,
            max_transactions=args.max_tx,
            mine_fn=mine_fn,
        )
    else:
        if not (args.db and args.ptable):
            raise _UsageError("verify needs --db/--ptable or --fuzz N")
        thresholds = _thresholds_from(args)
        db, table = _load_inputs(args.db, args.ptable)
        diff = verify.check_instance(db, table, thresholds, mine_fn=mine_fn)
    if diff is None:
        print("verify: OK")
        return EXIT_OK
    print(f"verify: DIVERGENCE: {diff}", file=sys.stderr)
    return EXIT_DIVERGENCE


def cmd_gen(args) -> int:
    params = datagen.GenParams(
        n_transactions=args.transactions,
        n_items=args.items,
        avg_tx_len=args.avg_len,
        max_tx_len=args.max_len,
        utility_range=(args.utility_lo, args.utility_hi),
        quantity_range=(1, args.max_quantity),
        negative_fraction=args.negative_fraction,
        seed=args.seed,
        per_item_probability=args.per_item_probability,
    )
    try:
        db, table = datagen.generate(params)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    Path(args.out_db).write_text(dataio.serialize_database(db))
    Path(args.out_ptable).write_text(dataio.serialize_ptable(table))
    negatives = sum(1 for u in table.entries.values() if u < 0)
    print(f"gen: {db.size} transactions, {len(table.entries)} items "
          f"({negatives} negative), seed {args.seed}")
    return EXIT_OK


@dataclass(frozen=True)
class BenchPlan:
    db_path: str
    ptable_path: str
    min_util_values: tuple[float, ...]
    min_pro_values: tuple[float, ...]
    presets: tuple[str, ...]
    repeats: int
    out_path: str | None
    prefix_sizes: tuple[int, ...] = ()
    assert_monotone: bool = False

    def validate(self) -> None:
        if not self.min_util_values or not self.min_pro_values or not self.presets:
            raise _UsageError("bench needs at least one min-util, min-pro and preset")
        if self.repeats < 1:
            raise _UsageError("repeats must be >= 1")
        for p in self.presets:
            if p.upper() not in PRESETS:
                raise _UsageError(f"unknown preset {p!r}")
        for bad in (v for v in self.min_pro_values if not 0.0 <= v <= 1.0):
            raise _UsageError(f"min-pro must be in [0,1], got {bad}")


def _truncate(db: UncertainDatabase, k: int) -> UncertainDatabase:
    kept = db.transactions[:k]
    universe = frozenset(e.item for tx in kept for e in tx.entries)
    return UncertainDatabase(kept, universe)


def _run_cell(db, table, thresholds, preset, repeats) -> MiningStats:
    """Counters from the first run; elapsed is the median over repeats."""
    results, stats = mine(db, table, thresholds, MiningConfig.from_preset(preset))
    elapsed = [stats.elapsed]
    for _ in range(repeats - 1):
        _, again = mine(db, table, thresholds, MiningConfig.from_preset(preset))
        elapsed.append(again.elapsed)
    stats.elapsed = statistics.median(elapsed)
    return stats


def _pivot_markdown(rows: list[tuple[str, str, MiningStats]]) -> str:
    """Presets as rows, threshold combos as columns, visited nodes as
    cells, plus a final row with the pattern counts."""
    combos: list[str] = []
    for _preset, combo, _stats in rows:
        if combo not in combos:
            combos.append(combo)
    presets: list[str] = []
    for preset, _combo, _stats in rows:
        if preset not in presets:
            presets.append(preset)
    cell = {(p, c): s for p, c, s in rows}
    lines = ["| visited nodes | " + " | ".join(combos) + " |",
             "|---" * (len(combos) + 1) + "|"]
    for p in presets:
        lines.append(
            f"| {p} | " + " | ".join(
                str(cell[(p, c)].visited_nodes) if (p, c) in cell else "-" for c in combos
            ) + " |"
        )
    lines.append(
        "| PHUIs | " + " | ".join(
            str(cell[(presets[0], c)].phuis_found) if (presets[0], c) in cell else "-"
            for c in combos
        ) + " |"
    )
    return "\n".join(lines) + "\n"


_PRESET_ORDER = ["P12", "P123", "P1234", "ALL"]


def _check_monotone(rows: list[tuple[str, str, MiningStats]]) -> str | None:
    """Non-increasing visited nodes along P12 -> ALL per threshold combo."""
    by_combo: dict[str, dict[str, MiningStats]] = {}
    for preset, combo, stats in rows:
        by_combo.setdefault(combo, {})[preset.upper()] = stats
    for combo, cells in by_combo.items():
        chain = [cells[p] for p in _PRESET_ORDER if p in cells]
        for a, b in zip(chain, chain[1:]):
            if a.visited_nodes < b.visited_nodes:
                return (f"{combo}: visited_nodes({a.preset})={a.visited_nodes} < "
                        f"visited_nodes({b.preset})={b.visited_nodes}")
        for s in chain:
            if s.visited_nodes < s.phuis_found:
                return f"{combo}: visited_nodes({s.preset}) below phuis_found"
    return None


def cmd_bench(args) -> int:
    plan = BenchPlan(
        db_path=args.db,
        ptable_path=args.ptable,
        min_util_values=tuple(float(v) for v in args.min_util.split(",")),
        min_pro_values=tuple(float(v) for v in args.min_pro.split(",")),
        presets=tuple(args.presets.split(",")),
        repeats=args.repeats,
        out_path=args.out,
        prefix_sizes=tuple(_parse_size(v) for v in args.prefix_sizes.split(","))
        if args.prefix_sizes else (),
        assert_monotone=args.assert_monotone,
    )
    plan.validate()
    full_db, table = _load_inputs(plan.db_path, plan.ptable_path)

    rows: list[tuple[str, str, MiningStats]] = []
    csv_lines = []
    scalability = bool(plan.prefix_sizes)
    header = list(dataio.STATS_CSV_FIELDS)
    if scalability:
        header.insert(3, "prefix")
    csv_lines.append(",".join(header))

    prefixes = plan.prefix_sizes or (full_db.size,)
    for prefix in prefixes:
        db = _truncate(full_db, prefix) if scalability else full_db
        for min_util in plan.min_util_values:
            for min_pro in plan.min_pro_values:
                thresholds = Thresholds(min_util, min_pro)
                combo = f"u={dataio._six_digits(min_util)},p={dataio._six_digits(min_pro)}"
                if scalability:
                    combo += f",n={prefix}"
                for preset in plan.presets:
                    stats = _run_cell(db, table, thresholds, preset, plan.repeats)
                    row = dataio.stats_csv_row(stats)
                    if scalability:
                        row.insert(3, str(prefix))
                    csv_lines.append(",".join(row))
                    rows.append((preset.upper(), combo, stats))

    csv_text = "\n".join(csv_lines) + "\n"
    if plan.out_path:
        Path(plan.out_path).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    sys.stdout.write(_pivot_markdown(rows))

    if plan.assert_monotone:
        problem = _check_monotone(rows)
        if problem:
            print(f"bench: monotonicity violated: {problem}", file=sys.stderr)
            return EXIT_DIVERGENCE
    return EXIT_OK


def _parse_size(text: str) -> int:
    text = text.strip().lower()
    if text.endswith("k"):
        return int(float(text[:-1]) * 1000)
    if text.endswith("m"):
        return int(float(text[:-1]) * 1_000_000)
    return int(text)


def _add_data_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--db", required=required, help="database file")
    p.add_argument("--ptable", required=required, help="utility table file")


def _add_threshold_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--min-util", type=float, required=required, default=0.0,
                   help="minimum utility (absolute, may be negative)")
    p.add_argument("--min-pro", type=float, required=required, default=0.0,
                   help="minimum probability threshold in [0,1]")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phuimine",
        description="Mine potential high-utility itemsets from uncertain "
                    "databases with signed unit utilities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="run the list-based miner")
    _add_data_flags(p)
    _add_threshold_flags(p)
    p.add_argument("--preset", default="ALL", choices=sorted(PRESETS),
                   help="pruning preset (default ALL)")
    p.add_argument("--strategies",
                   help="comma-separated strategy toggles overriding the preset, e.g. s1,s3")
    p.add_argument("--out", help="results file (default stdout)")
    p.add_argument("--stats", help="write run stats to this file")
    p.add_argument("--stats-format", default="csv", choices=["csv", "json"])
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("oracle", help="run the brute-force reference miner")
    _add_data_flags(p)
    _add_threshold_flags(p)
    p.add_argument("--max-items", type=int, default=20,
                   help="refuse item universes larger than this")
    p.add_argument("--out", help="results file (default stdout)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="compare miner presets against the oracle")
    _add_data_flags(p, required=False)
    _add_threshold_flags(p, required=False)
    p.add_argument("--fuzz", type=int, default=0, metavar="N",
                   help="run N generated cases instead of a fixed dataset")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-items", type=int, default=12)
    p.add_argument("--max-tx", type=int, default=30)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a synthetic database")
    p.add_argument("--transactions", type=int, required=True)
    p.add_argument("--items", type=int, required=True)
    p.add_argument("--avg-len", type=float, default=5.0)
    p.add_argument("--max-len", type=int, default=12)
    p.add_argument("--utility-lo", type=float, default=-1000.0)
    p.add_argument("--utility-hi", type=float, default=1000.0)
    p.add_argument("--max-quantity", type=int, default=5)
    p.add_argument("--negative-fraction", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--per-item-probability", action="store_true",
                   help="one shared probability per item instead of per occurrence")
    p.add_argument("--out-db", required=True)
    p.add_argument("--out-ptable", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="threshold/preset sweep with stats CSV")
    _add_data_flags(p)
    p.add_argument("--min-util", required=True,
                   help="comma-separated minimum-utility values")
    p.add_argument("--min-pro", required=True,
                   help="comma-separated minimum-probability values")
    p.add_argument("--presets", default="P12,P123,P1234,ALL")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--prefix-sizes",
                   help="scalability mode: comma-separated prefix sizes, e.g. 20k,40k")
    p.add_argument("--assert-monotone", action="store_true",
                   help="exit nonzero if visited nodes are not monotone across presets")
    p.add_argument("--out", help="CSV output file (default stdout)")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags already; normalize other codes
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except (DatabaseValidationError, oracle.UniverseTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
