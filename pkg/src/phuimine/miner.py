"""One-phase depth-first miner over the set-enumeration tree.

The miner scans the database once for per-item bounds, once more to
build the initial vertical lists, then explores extensions recursively.
Each candidate's exact utility and expected support come straight from
its list's column sums, so qualifying patterns are emitted without a
verification pass.

Six pruning strategies sit behind independent toggles. All of them are
sound: every configuration produces the same result set and differs
only in visited-node counts and runtime.

  s1  abandon a list join once the left operand's unmatched remainder
      puts the thresholds out of reach
  s2  drop items failing the single-item rtwu/probability bounds in the
      initial scan
  s3  do not extend a node whose summed probability is below the bound
  s4  do not extend a node whose pu + rpu sum is below min_util
  s5  do not keep a joined list whose summed probability is below the
      bound
  s6  skip extensions whose item-pair rtwu (from the co-occurrence map)
      is below min_util
"""

import time
import tracemalloc
from dataclasses import dataclass, field

from .model import (
    DatabaseValidationError,
    Item,
    MinedPattern,
    Thresholds,
    UncertainDatabase,
    UtilityTable,
    validate_database,
)
from .pulist import (
    OrderedTransaction,
    PUList,
    build_initial_pulists,
    compute_processing_order,
    construct,
    reorder_database,
)


@dataclass(frozen=True)
class MiningConfig:
    s1_pu_prune: bool = True
    s2_initial_filter: bool = True
    s3_probability_bound: bool = True
    s4_remaining_utility_bound: bool = True
    s5_empty_or_lowpro_skip: bool = True
    s6_eucp: bool = True
    preset: str | None = None

    @classmethod
    def from_preset(cls, name: str) -> "MiningConfig":
        try:
            flags = PRESETS[name.upper()]
        except KeyError:
            raise ValueError(f"unknown preset {name!r}; expected one of {sorted(PRESETS)}")
        return cls(*flags, preset=name.upper())

    @classmethod
    def from_strategies(cls, names: list[str]) -> "MiningConfig":
        """Config with exactly the named strategies enabled, e.g. ['s1', 's3']."""
        known = {"s1", "s2", "s3", "s4", "s5", "s6"}
        bad = [n for n in names if n.lower() not in known]
        if bad:
            raise ValueError(f"unknown strategies {bad}; expected subset of {sorted(known)}")
        on = {n.lower() for n in names}
        return cls(
            "s1" in on, "s2" in on, "s3" in on, "s4" in on, "s5" in on, "s6" in on,
            preset=None,
        )


# Preset -> (s1, s2, s3, s4, s5, s6)
PRESETS: dict[str, tuple[bool, bool, bool, bool, bool, bool]] = {
    "NONE": (False, False, False, False, False, False),
    "P12": (True, True, False, False, False, False),
    "P123": (True, True, True, False, False, False),
    "P1234": (True, True, True, True, False, False),
    "ALL": (True, True, True, True, True, True),
}


@dataclass
class MiningStats:
    """Instrumentation for one mining run."""

    preset: str = ""
    min_util: float = 0.0
    min_pro: float = 0.0
    visited_nodes: int = 0
    joins_attempted: int = 0
    joins_abandoned: int = 0
    eucs_skips: int = 0
    s3_cuts: int = 0
    s4_cuts: int = 0
    s5_skips: int = 0
    phuis_found: int = 0
    elapsed: float = 0.0  # seconds
    peak_alloc: int = 0  # bytes, best effort (0 unless tracemalloc is tracing)


@dataclass(frozen=True)
class EUCS:
    """Pair rtwu co-occurrence map; keys are (lower id, higher id)."""

    pair_rtwu: dict[tuple[Item, Item], float] = field(default_factory=dict)

    def pair(self, a: Item, b: Item) -> float:
        key = (a, b) if a < b else (b, a)
        return self.pair_rtwu.get(key, 0.0)


def initial_scan(
    db: UncertainDatabase,
    table: UtilityTable,
    thresholds: Thresholds,
    *,
    apply_filter: bool = True,
) -> tuple[dict[Item, tuple[float, float]], int]:
    """First database pass: per-item rtwu and expected support.

    Returns ({item: (rtwu, pro)}, |D|) for the surviving items. With the
    filter on, an item survives only if both pro >= min_pro * |D| and
    rtwu >= min_util; with it off every occurring item survives.
    """
    acc: dict[Item, list[float]] = {i: [0.0, 0.0] for i in sorted(db.item_universe)}
    for tx in db.transactions:
        rtu = 0.0
        for e in tx.entries:
            u = table.unit_utility(e.item) * e.quantity
            if u > 0.0:
                rtu += u
        for e in tx.entries:
            a = acc[e.item]
            a[0] += rtu
            a[1] += e.probability
    n = db.size
    if apply_filter:
        bound = thresholds.probability_bound(n)
        survivors = {
            i: (v[0], v[1])
            for i, v in acc.items()
            if v[1] >= bound and v[0] >= thresholds.min_util
        }
    else:
        survivors = {i: (v[0], v[1]) for i, v in acc.items()}
    return survivors, n


def build_eucs(ordered_db: list[OrderedTransaction]) -> EUCS:
    """Register every co-occurring item pair with its summed rtu.

    Works on the filtered, reordered transactions, so the rtu values
    reflect surviving items only (a tighter, still-sound bound)."""
    pair_rtwu: dict[tuple[Item, Item], float] = {}
    for _tid, entries in ordered_db:
        rtu = 0.0
        for _item, u, _p in entries:
            if u > 0.0:
                rtu += u
        n = len(entries)
        for i in range(n):
            a = entries[i][0]
            for j in range(i + 1, n):
                b = entries[j][0]
                key = (a, b) if a < b else (b, a)
                if key in pair_rtwu:
                    pair_rtwu[key] += rtu
                else:
                    pair_rtwu[key] = rtu
    return EUCS(pair_rtwu)


def search(
    prefix: PUList | None,
    extensions: list[PUList],
    thresholds: Thresholds,
    pro_bound: float,
    config: MiningConfig,
    eucs: EUCS,
    stats: MiningStats,
    out: list[MinedPattern],
) -> None:
    """Depth-first exploration of the extensions of one prefix node.

    Every extension examined here counts as a visited node. A node is
    emitted when both of its exact measures reach their bounds; it is
    extended unless s3/s4 rule the whole subtree out. Joined child
    lists with no supporting transaction are always discarded (they
    cannot describe a pattern of the database).
    """
    min_util = thresholds.min_util
    for idx, py in enumerate(extensions):
        stats.visited_nodes += 1
        if py.sum_pro >= pro_bound and py.sum_pu + py.sum_nu >= min_util:
            out.append(MinedPattern(py.pattern, py.sum_pu + py.sum_nu, py.sum_pro))
            stats.phuis_found += 1

        if config.s3_probability_bound and not py.sum_pro >= pro_bound:
            stats.s3_cuts += 1
            continue
        if config.s4_remaining_utility_bound and not py.sum_pu + py.sum_rpu >= min_util:
            stats.s4_cuts += 1
            continue

        y = py.pattern_po[-1]
        children: list[PUList] = []
        for pz in extensions[idx + 1:]:
            if config.s6_eucp and eucs.pair(y, pz.pattern_po[-1]) < min_util:
                stats.eucs_skips += 1
                continue
            stats.joins_attempted += 1
            pyz = construct(
                prefix, py, pz,
                min_util=min_util, pro_bound=pro_bound,
                la_prune=config.s1_pu_prune,
            )
            if pyz is None:
                stats.joins_abandoned += 1
                continue
            if not pyz.tids:
                continue
            if config.s5_empty_or_lowpro_skip and not pyz.sum_pro >= pro_bound:
                stats.s5_skips += 1
                continue
            children.append(pyz)
        if children:
            search(py, children, thresholds, pro_bound, config, eucs, stats, out)


def mine(
    db: UncertainDatabase,
    table: UtilityTable,
    thresholds: Thresholds,
    config: MiningConfig | None = None,
) -> tuple[list[MinedPattern], MiningStats]:
    """Mine the complete set of qualifying patterns.

    Returns the patterns (each with exact utility and expected support)
    in depth-first discovery order, plus the per-run stats. The config
    only changes counters and runtime, never the result set.
    """
    if config is None:
        config = MiningConfig.from_preset("ALL")
    if not 0.0 <= thresholds.min_pro <= 1.0:
        raise ValueError(f"min_pro must be in [0, 1], got {thresholds.min_pro}")
    report = validate_database(db, table)
    if not report.ok:
        raise DatabaseValidationError(report)

    stats = MiningStats(
        preset=config.preset or "custom",
        min_util=thresholds.min_util,
        min_pro=thresholds.min_pro,
    )
    started = time.perf_counter()

    survivors, n = initial_scan(
        db, table, thresholds, apply_filter=config.s2_initial_filter
    )
    pro_bound = thresholds.probability_bound(n)
    out: list[MinedPattern] = []
    if survivors:
        order = compute_processing_order(table, {i: v[0] for i, v in survivors.items()})
        ordered_db = reorder_database(db, table, order)
        lists = build_initial_pulists(ordered_db, order)
        eucs = build_eucs(ordered_db) if config.s6_eucp else EUCS()
        extensions = [lists[i] for i in order.ordered_items if lists[i].tids]
        search(None, extensions, thresholds, pro_bound, config, eucs, stats, out)

    stats.elapsed = time.perf_counter() - started
    if tracemalloc.is_tracing():
        stats.peak_alloc = tracemalloc.get_traced_memory()[1]
    return out, stats


def mine_preset(
    db: UncertainDatabase,
    table: UtilityTable,
    thresholds: Thresholds,
    preset: str,
) -> tuple[list[MinedPattern], MiningStats]:
    return mine(db, table, thresholds, MiningConfig.from_preset(preset))


__all__ = [
    "EUCS",
    "MiningConfig",
    "MiningStats",
    "PRESETS",
    "build_eucs",
    "initial_scan",
    "mine",
    "mine_preset",
    "search",
]
