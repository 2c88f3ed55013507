"""Shared fixtures-in-code for the test suite: the worked five-transaction
example database and the join-vs-scan list cross-check."""

from phuimine.miner import initial_scan
from phuimine.model import Thresholds, UncertainDatabase, UtilityTable
from phuimine.pulist import (
    PUList,
    build_initial_pulists,
    build_pulist_by_scan,
    compute_processing_order,
    construct,
    reorder_database,
)
from phuimine import dataio

# Item ids for the worked example: a..e -> 1..5.
A, B, C, D, E = 1, 2, 3, 4, 5

EXAMPLE_DB_TEXT = """\
1:5:0.6 2:3:0.5 4:2:0.9 5:4:0.8
3:1:0.75 4:1:0.9 5:2:1.0
1:4:1.0 2:3:1.0 3:2:0.7 5:1:0.75
1:3:0.9 3:1:0.9
2:2:1.0 3:4:0.95 4:5:0.6 5:4:1.0
"""

EXAMPLE_PTABLE_TEXT = "1:8 2:5 3:-2 4:12 5:7\n"


def example_db() -> UncertainDatabase:
    return dataio.parse_database(EXAMPLE_DB_TEXT)


def example_table() -> UtilityTable:
    return dataio.parse_ptable(EXAMPLE_PTABLE_TEXT)


# The ten expected results on the example at min_util=20, min_pro=0.25:
# pattern items -> (utility, expected support).
EXAMPLE_PHUIS = {
    (A,): (96.0, 2.50),
    (B,): (40.0, 2.50),
    (D,): (96.0, 2.40),
    (E,): (77.0, 3.55),
    (A, B): (102.0, 1.30),
    (A, C): (50.0, 1.51),
    (B, E): (103.0, 2.15),
    (C, E): (35.0, 2.225),
    (D, E): (166.0, 2.22),
    (B, C, E): (48.0, 1.475),
}


def rel_close(a: float, b: float, rel_tol: float = 1e-9) -> bool:
    return abs(a - b) <= rel_tol * max(abs(a), abs(b))


def entries_of(pul: PUList) -> list[tuple[int, float, float, float, float]]:
    return [(e.tid, e.pro, e.pu, e.nu, e.rpu) for e in pul.entries()]


def lists_match(a: PUList, b: PUList, rel_tol: float = 1e-9) -> bool:
    """Same tids, exact pu/nu/rpu, pro within relative tolerance."""
    if a.tids != b.tids or a.pu != b.pu or a.nu != b.nu or a.rpu != b.rpu:
        return False
    return all(rel_close(x, y, rel_tol) for x, y in zip(a.pro, b.pro))


def join_equivalence_walk(db, table, rel_tol: float = 1e-9):
    """Rebuild every reachable (non-empty) list twice: bottom-up joins
    without early abandonment vs a direct scan. Returns mismatching
    patterns (empty list = all equal)."""
    survivors, _n = initial_scan(db, table, Thresholds(0.0, 0.0), apply_filter=False)
    if not survivors:
        return []
    order = compute_processing_order(table, {i: rw for i, (rw, _p) in survivors.items()})
    ordered_db = reorder_database(db, table, order)
    lists = build_initial_pulists(ordered_db, order)
    mismatches = []

    def rec(prefix, extensions):
        for i, py in enumerate(extensions):
            scanned = build_pulist_by_scan(ordered_db, order, py.pattern_po)
            if not lists_match(py, scanned, rel_tol):
                mismatches.append(py.pattern_po)
            children = []
            for pz in extensions[i + 1:]:
                pyz = construct(prefix, py, pz)
                if pyz.tids:
                    children.append(pyz)
            if children:
                rec(py, children)

    roots = [lists[i] for i in order.ordered_items if lists[i].tids]
    rec(None, roots)
    return mismatches


def results_map(results):
    return {m.pattern.items: (m.utility, m.expected_support) for m in results}
