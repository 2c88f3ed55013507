"""Vertical probability-utility lists with signed utilities.

A pattern's list holds one entry per supporting transaction:
(tid, pro, pu, nu, rpu) where

  pro  existence probability of the pattern in that transaction,
  pu   positive part of the pattern's utility there,
  nu   negative part (nu <= 0; pu + nu is the actual utility),
  rpu  summed utility of positive-group items that follow the
       pattern's last item in the processing order.

Entries are kept as tid-sorted flat arrays; joins locate matching tids
by binary search. Lists for k-itemsets are built by joining two
(k-1)-item lists that share a (k-2)-item prefix, optionally abandoning
the join early once the unmatched remainder of the left operand can no
longer reach the thresholds.
"""

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .model import Item, Pattern, UncertainDatabase, UtilityTable


@dataclass(frozen=True)
class ProcessingOrder:
    """Total item order: positive-group items first, rtwu-ascending
    within each group, ties broken by ascending id."""

    ordered_items: tuple[Item, ...]
    rank: Mapping[Item, int]

    def __contains__(self, item: Item) -> bool:
        return item in self.rank


@dataclass(frozen=True)
class PUEntry:
    tid: int
    pro: float
    pu: float
    nu: float
    rpu: float


class PUList:
    """Per-pattern list stored as parallel tid-sorted columns.

    `pattern_po` keeps the items in processing order (the order they
    were appended along the enumeration path); `pattern` exposes the
    canonical ascending-id form.
    """

    __slots__ = ("pattern_po", "tids", "pro", "pu", "nu", "rpu",
                 "sum_pro", "sum_pu", "sum_nu", "sum_rpu")

    def __init__(self, pattern_po: tuple[Item, ...]):
        self.pattern_po = pattern_po
        self.tids: list[int] = []
        self.pro: list[float] = []
        self.pu: list[float] = []
        self.nu: list[float] = []
        self.rpu: list[float] = []
        self.sum_pro = 0.0
        self.sum_pu = 0.0
        self.sum_nu = 0.0
        self.sum_rpu = 0.0

    @property
    def pattern(self) -> Pattern:
        return Pattern.of(self.pattern_po)

    def append(self, tid: int, pro: float, pu: float, nu: float, rpu: float) -> None:
        self.tids.append(tid)
        self.pro.append(pro)
        self.pu.append(pu)
        self.nu.append(nu)
        self.rpu.append(rpu)
        self.sum_pro += pro
        self.sum_pu += pu
        self.sum_nu += nu
        self.sum_rpu += rpu

    def __len__(self) -> int:
        return len(self.tids)

    def entries(self) -> Iterator[PUEntry]:
        for i, tid in enumerate(self.tids):
            yield PUEntry(tid, self.pro[i], self.pu[i], self.nu[i], self.rpu[i])

    def sums(self) -> tuple[float, float, float, float, float]:
        """(sum_pro, sum_pu, sum_nu, sum_rpu, sum_iu) where the total
        utility sum_iu is sum_pu + sum_nu."""
        return (self.sum_pro, self.sum_pu, self.sum_nu, self.sum_rpu,
                self.sum_pu + self.sum_nu)


def compute_processing_order(
    table: UtilityTable,
    item_rtwu: Mapping[Item, float],
) -> ProcessingOrder:
    """Order the surviving items: every positive-group item precedes
    every negative-group item; within a group ascending rtwu, ties by
    ascending id."""
    items = sorted(
        item_rtwu,
        key=lambda i: (not table.is_positive_group(i), item_rtwu[i], i),
    )
    return ProcessingOrder(tuple(items), {it: r for r, it in enumerate(items)})


# One reordered transaction: (tid, [(item, utility, probability), ...])
# with entries restricted to ordered items and sorted by their rank.
OrderedTransaction = tuple[int, list[tuple[Item, float, float]]]


def reorder_database(
    db: UncertainDatabase,
    table: UtilityTable,
    order: ProcessingOrder,
) -> list[OrderedTransaction]:
    """Project every transaction onto the surviving items and sort its
    entries by processing rank. Transactions left empty are dropped from
    the projection (the database size used in bounds is unaffected)."""
    rank = order.rank
    out: list[OrderedTransaction] = []
    for tx in db.transactions:
        kept = [
            (e.item, table.unit_utility(e.item) * e.quantity, e.probability)
            for e in tx.entries
            if e.item in rank
        ]
        if not kept:
            continue
        kept.sort(key=lambda t: rank[t[0]])
        out.append((tx.tid, kept))
    return out


def build_initial_pulists(
    ordered_db: Sequence[OrderedTransaction],
    order: ProcessingOrder,
) -> dict[Item, PUList]:
    """One list per surviving item.

    A single positive-group item has nu = 0 per entry, a negative-group
    item has pu = 0; rpu sums the positive utilities that follow the
    item in the reordered transaction (one reverse suffix scan per
    transaction).
    """
    lists = {item: PUList((item,)) for item in order.ordered_items}
    for tid, entries in ordered_db:
        n = len(entries)
        suffix = [0.0] * (n + 1)
        for j in range(n - 1, -1, -1):
            u = entries[j][1]
            suffix[j] = suffix[j + 1] + (u if u > 0.0 else 0.0)
        for j, (item, u, p) in enumerate(entries):
            if u >= 0.0:
                lists[item].append(tid, p, u, 0.0, suffix[j + 1])
            else:
                lists[item].append(tid, p, 0.0, u, suffix[j + 1])
    return lists


ABANDONED = None  # construct() result when the early-abandon test fires


def construct(
    prefix: PUList | None,
    py: PUList,
    pz: PUList,
    *,
    min_util: float = 0.0,
    pro_bound: float = 0.0,
    la_prune: bool = False,
) -> PUList | None:
    """Join the lists of Py = P + y and Pz = P + z into the list of Pyz.

    For a shared tid the joined entry is
      (tid, ey.pro * ez.pro / e.pro, ey.pu + ez.pu - e.pu,
       ey.nu + ez.nu - e.nu, ez.rpu)
    against the prefix entry e; without a prefix the e terms drop out.

    With la_prune enabled, a running probability budget (sum of Py.pro)
    and utility budget (sum of Py.pu + Py.rpu) lose each unmatched Py
    entry's contribution; once either drops below its threshold no
    extension of Py by z (or any superset) can qualify, and the join
    returns ABANDONED (None).
    """
    out = PUList(py.pattern_po + (pz.pattern_po[-1],))
    o_tids, o_pro, o_pu, o_nu, o_rpu = out.tids, out.pro, out.pu, out.nu, out.rpu
    s_pro = s_pu = s_nu = s_rpu = 0.0

    probability = py.sum_pro
    utility = py.sum_pu + py.sum_rpu

    y_tids, y_pro, y_pu, y_nu, y_rpu = py.tids, py.pro, py.pu, py.nu, py.rpu
    z_tids, z_pro, z_pu, z_nu, z_rpu = pz.tids, pz.pro, pz.pu, pz.nu, pz.rpu
    z_len = len(z_tids)
    p_tids = prefix.tids if prefix is not None else None

    k = 0  # tids ascend, so each binary search can start past the last hit
    for i, tid in enumerate(y_tids):
        k = bisect_left(z_tids, tid, k)
        if k < z_len and z_tids[k] == tid:
            if p_tids is not None:
                m = bisect_left(p_tids, tid)
                if m >= len(p_tids) or p_tids[m] != tid:
                    raise ValueError(
                        f"prefix list for {prefix.pattern_po} lacks tid {tid} "
                        "shared by both extensions"
                    )
                pro = y_pro[i] * z_pro[k] / prefix.pro[m]
                pu = y_pu[i] + z_pu[k] - prefix.pu[m]
                nu = y_nu[i] + z_nu[k] - prefix.nu[m]
            else:
                pro = y_pro[i] * z_pro[k]
                pu = y_pu[i] + z_pu[k]
                nu = y_nu[i] + z_nu[k]
            rpu = z_rpu[k]
            o_tids.append(tid)
            o_pro.append(pro)
            o_pu.append(pu)
            o_nu.append(nu)
            o_rpu.append(rpu)
            s_pro += pro
            s_pu += pu
            s_nu += nu
            s_rpu += rpu
        elif la_prune:
            probability -= y_pro[i]
            utility -= y_pu[i] + y_rpu[i]
            if probability < pro_bound or utility < min_util:
                return ABANDONED
    out.sum_pro = s_pro
    out.sum_pu = s_pu
    out.sum_nu = s_nu
    out.sum_rpu = s_rpu
    return out


def build_pulist_by_scan(
    ordered_db: Sequence[OrderedTransaction],
    order: ProcessingOrder,
    pattern_items: Sequence[Item],
) -> PUList:
    """Direct scan construction of an arbitrary pattern's list.

    Independent of the join: used to cross-check construct(). The
    pattern is given in any order and normalized to processing order.
    """
    rank = order.rank
    members = sorted(pattern_items, key=lambda i: rank[i])
    member_set = set(members)
    last_rank = rank[members[-1]]
    out = PUList(tuple(members))
    for tid, entries in ordered_db:
        found = {item: (u, p) for item, u, p in entries if item in member_set}
        if len(found) != len(member_set):
            continue
        pro = 1.0
        pu = 0.0
        nu = 0.0
        for item in members:
            u, p = found[item]
            pro *= p
            if u >= 0.0:
                pu += u
            else:
                nu += u
        rpu = sum(u for item, u, _ in entries if rank[item] > last_rank and u > 0.0)
        out.append(tid, pro, pu, nu, rpu)
    return out
