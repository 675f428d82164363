"""Published reference runs: parameters and reported values for each table row."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TableRow:
    table: str
    m: int
    r: int
    constraint: str
    tau: int
    t: int
    delta: float
    paper_z_hat: float
    paper_rate: float | None = None
    exact_z: int | None = None
    paper_lb: float | None = None

    @property
    def n(self) -> int:
        return 1 << self.m


TABLE_I = [
    TableRow("I", 4, 2, "rll:1", 5_000, 50, 0.1, 80, 0.3951, 83),
    TableRow("I", 5, 2, "rll:1", 10_000, 50, 0.1, 278.446, 0.2538, 259),
    TableRow("I", 5, 3, "rll:1", 10_000, 10, 0.001, 126490, 0.5296, 89172),
    TableRow("I", 6, 1, "rll:1", 10_000, 10, 0.001, 5.551, 0.0386, 4),
    TableRow("I", 6, 2, "rll:1", 10_000, 10, 0.001, 997.7, 0.1557, 803),
    TableRow("I", 7, 2, "rll:1", 10_000, 5, 0.1, 3128.4, 0.0907, 2467),
    TableRow("I", 7, 2, "rll:1", 10_000, 100, 0.001, 2515.5, 0.0883, 2467),
    TableRow("I", 8, 1, "rll:1", 100_000, 10, 0.001, 5.3787, 0.0095, 4),
]

TABLE_II = [
    TableRow("II", 7, 3, "rll:1", 10_000, 100, 0.001, 2.926e8, 0.1678, paper_lb=0.1211),
    TableRow("II", 7, 4, "rll:1", 10_000, 100, 0.001, 1.199e18, 0.4692, paper_lb=0.3945),
    TableRow("II", 7, 5, "rll:1", 10_000, 100, 0.001, 2.676e24, 0.6340, paper_lb=0.5586),
    TableRow("II", 8, 2, "rll:1", 100_000, 10, 0.1, 1.255e4, 0.0526, paper_lb=0.0312),
    TableRow("II", 8, 3, "rll:1", 100_000, 10, 0.1, 5.249e10, 0.1391, paper_lb=0.1133),
    TableRow("II", 8, 4, "rll:1", 100_000, 10, 0.1, 5.754e25, 0.3343, paper_lb=0.2598),
    TableRow("II", 8, 5, "rll:1", 100_000, 10, 0.1, 3.464e42, 0.5520, paper_lb=0.4785),
]

TABLE_III = [
    TableRow("III", 4, 1, "rll:2", 10_000, 100, 0.001, 1.101, exact_z=1),
    TableRow("III", 4, 2, "rll:2", 10_000, 100, 0.001, 36.614, exact_z=37),
    TableRow("III", 4, 3, "rll:2", 10_000, 100, 0.001, 350.743, exact_z=303),
    TableRow("III", 5, 2, "rll:2", 10_000, 100, 0.001, 87.025, exact_z=81),
    TableRow("III", 5, 3, "rll:2", 10_000, 100, 0.001, 4998.2, exact_z=4917),
    TableRow("III", 5, 4, "rll:2", 10_000, 100, 0.001, 1.271e5),
    TableRow("III", 6, 2, "rll:2", 10_000, 100, 0.001, 184.473, exact_z=177),
    TableRow("III", 6, 3, "rll:2", 10_000, 100, 0.001, 6.663e4),
    TableRow("III", 7, 2, "rll:2", 10_000, 100, 0.001, 357.672),
]

TABLE_IV = [
    TableRow("IV", 9, 4, "weight:76", 500_000, 1, 0.001, 4.079e22, 0.1467),
    TableRow("IV", 9, 4, "weight:80", 500_000, 1, 0.001, 2.991e23, 0.1523),
    TableRow("IV", 9, 4, "weight:84", 500_000, 1, 0.001, 1.429e25, 0.1632),
]

TABLES = {"I": TABLE_I, "II": TABLE_II, "III": TABLE_III, "IV": TABLE_IV}
