"""Orders of shuttling tours for irreducible finite K, keyed by canonical positions.

A row ((s, s'), (t, t')) -> k says: with s_beta = w_x^s, s_gamma = w_y^t,
J = [x] + {s, s'} = [y] + {t, t'} and K = J_~(J - [y]) of the given type, the tour has order k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

Pair = Tuple[int, int]
RowKey = Tuple[Pair, Pair]


@dataclass(frozen=True)
class TableRow:
    family: str
    rank: int
    ss: Pair
    tt: Pair
    order: int
    m: Optional[int] = None

    @property
    def type_name(self) -> str:
        return f"I2({self.m})" if self.family == "I2" else f"{self.family}{self.rank}"

    @property
    def label(self) -> str:
        return f"{self.type_name} {self.ss} {self.tt} -> {self.order}"


def _same(pairs: Dict[Pair, int]) -> Dict[RowKey, int]:
    return {(p, p): k for p, k in pairs.items()}


def _rows_for(family: str, n: int, m: Optional[int]) -> Dict[RowKey, int]:
    rows: Dict[RowKey, int] = {}
    if family == "A":
        if n >= 3:
            rows[((1, 2), (n, n - 1))] = 1
        elif n == 2:
            rows[((1, 2), (2, 1))] = 3
    elif family == "B":
        if n >= 2:
            rows[((1, 2), (2, 1))] = 4
        if n >= 3:
            rows[((3, 1), (3, 2))] = 2
        if n >= 4:
            rows[((4, 2), (4, 2))] = 2
        for i in range(5, n + 1):
            rows[((i, i - 2), (i, i - 2))] = 1
        for i in range(4, n + 1):
            rows[((i, i - 1), (i, i - 1))] = 1
    elif family == "D":
        rows[((1, 2), (1, 2))] = 2
        if n >= 6:
            rows[((4, 2), (4, 2))] = 2
        for i in range(3, n - 1):
            if i != 4:
                rows[((i, i - 2), (i, i - 2))] = 1
        if n >= 5 and n % 2 == 0:
            rows[((n - 1, n - 2), (n - 1, n - 2))] = 1
        if n >= 5 and n % 2 == 1:
            rows[((n - 1, n - 2), (n, n - 2))] = 1
    elif family == "E":
        if n == 6:
            rows = {((1, 3), (6, 5)): 1, ((2, 4), (2, 4)): 3, ((3, 6), (5, 1)): 1}
        elif n == 7:
            rows = _same({(1, 3): 3, (2, 4): 1, (2, 7): 1, (3, 6): 1, (6, 1): 2, (7, 6): 1})
        elif n == 8:
            rows = _same(
                {(1, 3): 1, (1, 8): 2, (2, 4): 1, (2, 7): 1, (3, 6): 1, (7, 1): 1, (8, 7): 3}
            )
    elif family == "F":
        rows = {((1, 2), (1, 2)): 3, ((1, 4), (4, 1)): 4, ((2, 4), (3, 1)): 2}
    elif family == "H":
        if n == 3:
            rows = {((1, 2), (3, 2)): 2}
        elif n == 4:
            rows = _same({(1, 2): 3, (2, 4): 2, (4, 3): 5})
    elif family == "I2" and m is not None:
        rows = {((1, 2), (2, 1)): int(m)}
    return rows


def shuttling_rows(family: str, rank: int, m: Optional[int] = None) -> List[TableRow]:
    """All rows that apply to one concrete type."""
    return [
        TableRow(family, rank, ss, tt, k, m)
        for (ss, tt), k in _rows_for(family, rank, m).items()
    ]


def lookup_order(
    family: str, rank: int, m: Optional[int], ss: Pair, tt: Pair
) -> Optional[int]:
    """Order for one placement, closed under swapping the two loops."""
    rows = _rows_for(family, rank, m)
    if (ss, tt) in rows:
        return rows[(ss, tt)]
    return rows.get((tt, ss))


def verification_instances() -> Iterator[Tuple[str, int, Optional[int]]]:
    """Concrete types covering every row at its three smallest admissible ranks."""
    for n in range(2, 6):
        yield "A", n, None
    for n in range(2, 8):
        yield "B", n, None
    for n in range(4, 11):
        yield "D", n, None
    for n in (6, 7, 8):
        yield "E", n, None
    yield "F", 4, None
    yield "H", 3, None
    yield "H", 4, None
    for m in range(5, 13):
        yield "I2", 2, m
