"""Brute-force reference miner.

Enumerates every itemset that occurs in at least one transaction,
totals its utility and expected support directly from the definitions,
and applies the two threshold tests. Deliberately naive; its only job
is to be obviously correct so the list-based miner can be checked
against it. Patterns with zero support are never emitted, even under
degenerate thresholds.
"""

from itertools import combinations

from .model import (
    MinedPattern,
    Pattern,
    Thresholds,
    UncertainDatabase,
    UtilityTable,
)


class UniverseTooLargeError(ValueError):
    pass


def enumerate_supported(
    db: UncertainDatabase,
    table: UtilityTable,
    max_items: int = 20,
) -> dict[tuple[int, ...], tuple[float, float]]:
    """Exact (utility, expected support) for every supported itemset.

    Walks the subsets of each transaction (bounded by sum of 2^|T|,
    far below 2^universe on sparse data) and accumulates per-pattern
    totals in ascending tid order.
    """
    if len(db.item_universe) > max_items:
        raise UniverseTooLargeError(
            f"item universe has {len(db.item_universe)} items, limit is {max_items}"
        )
    totals: dict[tuple[int, ...], list[float]] = {}
    for tx in db.transactions:
        entries = sorted(tx.entries, key=lambda e: e.item)
        values = [(e.item, table.unit_utility(e.item) * e.quantity, e.probability)
                  for e in entries]
        for size in range(1, len(values) + 1):
            for combo in combinations(values, size):
                key = tuple(v[0] for v in combo)
                u = 0.0
                p = 1.0
                for _item, iu, ip in combo:
                    u += iu
                    p *= ip
                acc = totals.get(key)
                if acc is None:
                    totals[key] = [u, p]
                else:
                    acc[0] += u
                    acc[1] += p
    return {k: (v[0], v[1]) for k, v in totals.items()}


def qualifying_patterns(
    measures: dict[tuple[int, ...], tuple[float, float]],
    thresholds: Thresholds,
    db_size: int,
) -> list[MinedPattern]:
    """Apply the two threshold tests to pre-enumerated measures."""
    bound = thresholds.probability_bound(db_size)
    hits = [
        MinedPattern(Pattern(items), u, p)
        for items, (u, p) in measures.items()
        if u >= thresholds.min_util and p >= bound
    ]
    hits.sort(key=lambda m: (len(m.pattern.items), m.pattern.items))
    return hits


def brute_force_mine(
    db: UncertainDatabase,
    table: UtilityTable,
    thresholds: Thresholds,
    max_items: int = 20,
) -> list[MinedPattern]:
    """All qualifying patterns, sorted by (length, item ids)."""
    return qualifying_patterns(
        enumerate_supported(db, table, max_items), thresholds, db.size
    )
