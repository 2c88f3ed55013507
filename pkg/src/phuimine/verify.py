"""Miner-vs-oracle equivalence harness.

Drives the miner under every preset against the brute-force reference
on fixed inputs or on seeded fuzz instances, comparing result sets
exactly on membership and utility and within a relative tolerance on
expected support. Shared by the CLI `verify` command and the test
suite.
"""

import random
from dataclasses import dataclass

from . import oracle
from .datagen import generate_small
from .miner import MiningConfig, mine
from .model import (
    MinedPattern,
    Pattern,
    Thresholds,
    UncertainDatabase,
    UtilityTable,
)

PRO_REL_TOL = 1e-9

PRESET_SEQUENCE = ["NONE", "P12", "P123", "P1234", "ALL"]


def probabilities_close(a: float, b: float, rel_tol: float = PRO_REL_TOL) -> bool:
    return abs(a - b) <= rel_tol * max(abs(a), abs(b))


@dataclass(frozen=True)
class Divergence:
    """First difference found between two result sets."""

    label_a: str
    label_b: str
    pattern: Pattern
    detail: str

    def __str__(self) -> str:
        ids = " ".join(str(i) for i in self.pattern.items)
        return f"{self.label_a} vs {self.label_b}: pattern {{{ids}}}: {self.detail}"


def compare_results(
    label_a: str,
    results_a: list[MinedPattern],
    label_b: str,
    results_b: list[MinedPattern],
) -> Divergence | None:
    """None when the sets agree (utility exact, probability within
    tolerance); otherwise the first divergent pattern."""
    by_pattern_a = {m.pattern: m for m in results_a}
    by_pattern_b = {m.pattern: m for m in results_b}
    for pattern in sorted(set(by_pattern_a) | set(by_pattern_b),
                          key=lambda p: (len(p.items), p.items)):
        ma = by_pattern_a.get(pattern)
        mb = by_pattern_b.get(pattern)
        if ma is None:
            return Divergence(label_a, label_b, pattern, f"missing from {label_a}")
        if mb is None:
            return Divergence(label_a, label_b, pattern, f"missing from {label_b}")
        if ma.utility != mb.utility:
            return Divergence(label_a, label_b, pattern,
                              f"utility {ma.utility} != {mb.utility}")
        if not probabilities_close(ma.expected_support, mb.expected_support):
            return Divergence(label_a, label_b, pattern,
                              f"expected support {ma.expected_support} != {mb.expected_support}")
    return None


def check_instance(
    db: UncertainDatabase,
    table: UtilityTable,
    thresholds: Thresholds,
    presets: list[str] | None = None,
    mine_fn=mine,
) -> Divergence | None:
    """Run every preset plus the oracle on one instance; first divergence
    or None. `mine_fn` is swappable so the harness can be self-tested
    against a deliberately broken miner."""
    reference = oracle.brute_force_mine(db, table, thresholds)
    for preset in presets or PRESET_SEQUENCE:
        found, _stats = mine_fn(db, table, thresholds, MiningConfig.from_preset(preset))
        diff = compare_results("oracle", reference, preset, found)
        if diff is not None:
            return diff
    return None


NEGATIVE_FRACTIONS = [0.0, 0.2, 0.5, 1.0]


@dataclass(frozen=True)
class FuzzCase:
    seed: int
    db: UncertainDatabase
    table: UtilityTable
    thresholds_list: tuple[Thresholds, ...]
    # exact (utility, expected support) per supported itemset, from the
    # oracle's enumeration; reusable for reference filtering
    measures: dict


def make_fuzz_case(
    seed: int,
    *,
    max_items: int = 12,
    max_transactions: int = 30,
) -> FuzzCase:
    """One seeded instance plus a spread of threshold pairs.

    Thresholds mix random values with exact boundaries taken from a
    supported pattern's own measures, so the non-strict >= comparisons
    get exercised on both sides of equality.
    """
    negative_fraction = NEGATIVE_FRACTIONS[seed % len(NEGATIVE_FRACTIONS)]
    db, table = generate_small(
        seed,
        max_items=max_items,
        max_transactions=max_transactions,
        negative_fraction=negative_fraction,
    )
    rng = random.Random(seed ^ 0x5EED)
    measures = oracle.enumerate_supported(db, table)
    patterns = sorted(measures)
    n = db.size

    thresholds_list = []
    max_u = max(u for u, _ in measures.values())
    # Random thresholds; min_util occasionally negative or zero.
    u_pick = rng.choice([0.0, rng.uniform(-10.0, 0.0), rng.uniform(0.0, max(1.0, max_u))])
    thresholds_list.append(Thresholds(u_pick, rng.random()))
    # Exact boundary: both thresholds sit on one pattern's measures.
    u, p = measures[patterns[rng.randrange(len(patterns))]]
    thresholds_list.append(Thresholds(u, min(1.0, p / n)))
    # Boundary utility with an easy probability, and vice versa.
    u2, p2 = measures[patterns[rng.randrange(len(patterns))]]
    thresholds_list.append(Thresholds(u2, 0.0))
    thresholds_list.append(Thresholds(min(0.0, -max_u), min(1.0, p2 / n)))
    return FuzzCase(seed, db, table, tuple(thresholds_list), measures)


def run_fuzz(
    n_cases: int,
    seed: int = 0,
    *,
    max_items: int = 12,
    max_transactions: int = 30,
    presets: list[str] | None = None,
    mine_fn=mine,
) -> Divergence | None:
    """Fuzz sweep; None when every case agrees under every preset."""
    for index in range(n_cases):
        case = make_fuzz_case(
            seed + index, max_items=max_items, max_transactions=max_transactions
        )
        for thresholds in case.thresholds_list:
            diff = check_instance(case.db, case.table, thresholds, presets, mine_fn)
            if diff is not None:
                return diff
    return None


__all__ = [
    "Divergence",
    "FuzzCase",
    "NEGATIVE_FRACTIONS",
    "PRESET_SEQUENCE",
    "PRO_REL_TOL",
    "check_instance",
    "compare_results",
    "make_fuzz_case",
    "probabilities_close",
    "run_fuzz",
]
