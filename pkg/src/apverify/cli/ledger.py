"""The assumption ledger: global facts consumed without recomputation."""

from __future__ import annotations

from dataclasses import dataclass, field

STATUSES = ("recomputed", "partially-evidenced", "assumed")


@dataclass
class LedgerEntry:
    id: str
    statement: str
    citation: str
    status: str
    evidence: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def is_assumption(self) -> bool:
        return self.status != "recomputed"

    def to_json(self):
        return {"id": self.id, "statement": self.statement, "citation": self.citation,
                "status": self.status, "evidence": list(self.evidence)}


class AssumptionLedger:
    def __init__(self, entries=()):
        self._entries = {}
        for e in entries:
            self.add(e)

    def add(self, entry: LedgerEntry):
        if entry.id in self._entries:
            raise ValueError(f"duplicate ledger id {entry.id}")
        self._entries[entry.id] = entry

    def has(self, key: str) -> bool:
        return key in self._entries

    def get(self, key: str) -> LedgerEntry:
        return self._entries[key]

    def remove(self, key: str):
        self._entries.pop(key, None)

    def add_evidence(self, key: str, item: str):
        if key in self._entries:
            self._entries[key].evidence.append(item)

    def assumptions(self):
        return [e for e in self._entries.values() if e.is_assumption]

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self):
        return len(self._entries)

    def to_json(self):
        return [e.to_json() for e in self._entries.values()]


NO_POINTS_C2 = "no_points_C2"
TWO_DIVISIBILITY = "two_divisibility"
RANK_AND_ODD_INDEX = "rank_and_odd_index"

# entries carrying status "assumed" in the default ledger
DOCUMENTED_ASSUMED = (TWO_DIVISIBILITY, RANK_AND_ODD_INDEX)

DEPENDS = {
    "C1_points": (TWO_DIVISIBILITY, RANK_AND_ODD_INDEX),
    "C2_points": (NO_POINTS_C2,),
}


def default_ledger() -> AssumptionLedger:
    """The three global facts this artifact consumes."""
    return AssumptionLedger([
        LedgerEntry(
            NO_POINTS_C2,
            "C_2 (and the isomorphic C_-2) has no rational points",
            "global 2-cover descent on C_2: class group and S-unit data of the degree-10 "
            "field Q[x]/(f_2); local solubility and the height search are recomputed here",
            "partially-evidenced",
        ),
        LedgerEntry(
            TWO_DIVISIBILITY,
            "for every P in C_1(Q), the class [P - inf-] lies in 2 J_1(Q)",
            "fake 2-Selmer set of C_1 via the x - T map (global field arithmetic in Q[x]/(f_1))",
            "assumed",
        ),
        LedgerEntry(
            RANK_AND_ODD_INDEX,
            "rank J_1(Q) <= 2 and (J_1(Q) : <Q1, Q2>) is odd",
            "2-Selmer group of J_1; the local images at 2 use Q1, Q2 and three Q_2-rational "
            "divisors, and f_1 stays irreducible over Q_3 and Q_5",
            "assumed",
        ),
    ])
