"""Fake projective planes with nontrivial automorphisms, with group predicates.

Records are read from a checksummed TSV fixture shipped with the package.
Groups are finite abelian, stored in primary decomposition.
"""

from __future__ import annotations

import csv
import hashlib
import math
import re
import unicodedata
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache, reduce
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Union

__all__ = [
    "AbelianGroup",
    "FppRecord",
    "Applicability",
    "ChecksumMismatch",
    "UnknownLabel",
    "load_records",
    "records",
    "lookup",
    "query",
    "normalize_label",
    "invariant_torsion_exponent",
    "unique_c3_subgroup",
    "theorem_applicability",
    "coverage_report",
    "CUBIC_ROOT_METADATA",
]


def _prime_powers(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append(q)
        p += 1
    if n > 1:
        out.append(n)
    return out


_SUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉⁰¹²³⁴⁵⁶⁷⁸⁹", "01234567890123456789")
_SUP_DIGITS = "⁰¹²³⁴⁵⁶⁷⁸⁹"


@dataclass(frozen=True)
class AbelianGroup:
    """Finite abelian group as a sorted tuple of prime-power cyclic orders.

    >>> AbelianGroup.parse("C2^2 x C13").factors
    (2, 2, 13)
    >>> AbelianGroup.parse("C12").factors
    (3, 4)
    """

    factors: tuple[int, ...] = ()

    def __post_init__(self):
        flat = []
        for n in self.factors:
            if n < 1:
                raise ValueError(f"cyclic order {n} must be positive")
            flat.extend(_prime_powers(n))
        object.__setattr__(self, "factors", tuple(sorted(flat)))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        s = text.strip()
        for ch in _SUP_DIGITS:
            s = s.replace(ch, "^" + str(_SUP_DIGITS.index(ch)))
        s = s.translate(_SUB).replace("_", "").replace("{", "").replace("}", "")
        s = s.replace(" ", "")
        if s in ("", "0", "1", "trivial", "{1}"):
            return cls(())
        orders = []
        for part in re.split(r"[x×*]", s):
            m = re.fullmatch(r"C(\d+)(?:\^(\d+))?", part)
            if not m:
                raise ValueError(f"cannot parse group factor {part!r} in {text!r}")
            orders += [int(m.group(1))] * int(m.group(2) or 1)
        return cls(tuple(orders))

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def exponent(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), self.factors, 1)

    def p_rank(self, p: int) -> int:
        return sum(1 for q in self.factors if q % p == 0)

    def subgroups_of_order(self, p: int) -> int:
        """Number of subgroups of prime order p: (p^r - 1)/(p - 1)."""
        r = self.p_rank(p)
        return (p ** r - 1) // (p - 1)

    def is_trivial(self) -> bool:
        return not self.factors

    def __str__(self):
        if not self.factors:
            return "0"
        parts = []
        for q in sorted(set(self.factors)):
            c = self.factors.count(q)
            parts.append(f"C{q}" + (f"^{c}" if c > 1 else ""))
        return "x".join(parts)


class Applicability(str, Enum):
    """Which argument settles the exceptional collection for a record."""

    C7_ACTION = "ec_via_C7_fixed_points"
    C3xC3_ORBITS = "ec_via_C3xC3_orbits"
    C3_QUOTIENT_C3 = "ec_via_C3_with_quotient_torsion_C3"
    C3_QUOTIENT_C2xC3 = "ec_via_C3_with_quotient_torsion_C2xC3"
    H0_2L_ONLY = "h0_2L_vanishes_only"
    UNPROVEN = "unproven"

    def __str__(self):
        return self.value

    @property
    def covered(self) -> bool:
        return self not in (Applicability.H0_2L_ONLY, Applicability.UNPROVEN)


@dataclass(frozen=True)
class FppRecord:
    table: int
    class_id: str
    label: str
    aut_group: str
    h1_M: AbelianGroup
    h: str
    h1_quotient: AbelianGroup
    in_C18: bool
    in_C2: bool
    k_is_3L: bool

    def to_json(self):
        return {"table": self.table, "class_id": self.class_id, "label": self.label,
                "aut": self.aut_group, "h1_M": str(self.h1_M), "h": self.h,
                "h1_quotient": str(self.h1_quotient), "in_C18": self.in_C18,
                "in_C2": self.in_C2, "k_is_3L": self.k_is_3L,
                "applicability": theorem_applicability(self).value}


class ChecksumMismatch(RuntimeError):
    pass


class UnknownLabel(KeyError):
    pass


def _data_path(name: str) -> Path:
    return Path(str(resources.files("fpp_certifier") / "data" / name))


_AUT = {"C7:C3", "C3xC3", "C3"}
_H = {"C7", "C3", "Aut(M)"}


def _bool(s: str) -> bool:
    if s not in ("true", "false"):
        raise ValueError(f"expected true/false, got {s!r}")
    return s == "true"


def load_records(path: Optional[Union[str, Path]] = None, verify: bool = True) -> tuple[FppRecord, ...]:
    p = Path(path) if path is not None else _data_path("fpp_records.tsv")
    raw = p.read_bytes()
    if verify:
        ck = p.with_name(p.name + ".sha256")
        expected = ck.read_text().split()[0]
        actual = hashlib.sha256(raw).hexdigest()
        if expected != actual:
            raise ChecksumMismatch(f"{p}: sha256 {actual} does not match {expected}")
    lines = [ln for ln in raw.decode("utf-8").splitlines() if ln and not ln.startswith("#")]
    out = []
    for row in csv.DictReader(lines, delimiter="\t"):
        if row["aut"] not in _AUT or row["h"] not in _H:
            raise ValueError(f"bad aut/h in row {row['label']}")
        out.append(FppRecord(int(row["table"]), row["class_id"], row["label"], row["aut"],
                             AbelianGroup.parse(row["h1_M"]), row["h"],
                             AbelianGroup.parse(row["h1_quotient"]),
                             _bool(row["in_C18"]), _bool(row["in_C2"]), _bool(row["k_is_3L"])))
    keys = [normalize_label(r.label) for r in out]
    if len(set(keys)) != len(keys):
        raise ValueError("labels are not unique after normalization")
    return tuple(out)


@lru_cache(maxsize=1)
def records() -> tuple[FppRecord, ...]:
    return load_records()


# TeX and Unicode spellings reduce to one key; known misprints map to the
# intended label.
_ALIASES = {"(a=1,p=5,∅,{2},D3)": "(a=1,p=5,{2},D3)"}


def normalize_label(label: str) -> str:
    """Canonical lookup key for a plane label.

    >>> normalize_label(r"({\\mathcal C}_{18},p=3,\\emptyset, d_3 D_3)")
    '(C18,p=3,∅,d3D3)'
    """
    s = unicodedata.normalize("NFC", label)
    for ch in _SUP_DIGITS:
        s = s.replace(ch, str(_SUP_DIGITS.index(ch)))
    s = s.translate(_SUB)
    s = s.replace("\\emptyset", "∅").replace("\\mathcal", "").replace("\\{", "{").replace("\\}", "}")
    s = s.replace("−", "-").replace("′", "'")
    s = re.sub(r"\{\s*C\s*\}", "C", s)
    s = re.sub(r"_\{(\w+)\}", r"\1", s)
    s = re.sub(r"\^\{?(\w)\}?", r"\1", s)
    s = re.sub(r"\s+", "", s).replace("_", "").replace("{}", "∅")
    return _ALIASES.get(s, s)


def lookup(label: str) -> FppRecord:
    key = normalize_label(label)
    for r in records():
        if normalize_label(r.label) == key:
            return r
    raise UnknownLabel(f"no record with label {label!r}")


def query(aut: Optional[str] = None, table: Optional[int] = None) -> list[FppRecord]:
    out = list(records())
    if aut is not None:
        a = aut.replace("×", "x").replace(" ", "")
        out = [r for r in out if r.aut_group == a]
    if table is not None:
        out = [r for r in out if r.table == table]
    return out


def invariant_torsion_exponent(r: Union[FppRecord, AbelianGroup]) -> int:
    g = r.h1_quotient if isinstance(r, FppRecord) else r
    return g.exponent


def unique_c3_subgroup(g: AbelianGroup) -> bool:
    """True iff g has exactly one subgroup of order 3."""
    return g.subgroups_of_order(3) == 1


def theorem_applicability(r: FppRecord) -> Applicability:
    if r.aut_group == "C7:C3":
        return Applicability.C7_ACTION
    if r.aut_group == "C3xC3":
        return Applicability.C3xC3_ORBITS
    q = r.h1_quotient.factors
    if q == (3,):
        return Applicability.C3_QUOTIENT_C3
    if q == (2, 3):
        return Applicability.H0_2L_ONLY if r.in_C18 else Applicability.C3_QUOTIENT_C2xC3
    return Applicability.UNPROVEN


CUBIC_ROOT_METADATA = {
    "total_planes": 100,
    "candidates_in_C2_or_C18": 12,
    "candidates_without_3_torsion": 3,
    "non_liftable_classes": ["(C18,p=3,{2},D₃)", "(C18,p=3,{2},(dD)₃)",
                             "(C18,p=3,{2},(d²D)₃)", "(C18,p=3,{2I})"],
    "planes_per_class": 2,
    "planes_with_K_equal_3L": 92,
    "source": "registerofgps.txt, http://www.maths.usyd.edu.au/u/donaldc/fakeprojectiveplanes/",
    "note": "stored, not derivable from the records",
}


def coverage_report(recs: Optional[Iterable[FppRecord]] = None) -> dict:
    recs = list(records() if recs is None else recs)
    tallies: dict[str, int] = {}
    for r in recs:
        a = theorem_applicability(r)
        tallies[a.value] = tallies.get(a.value, 0) + 1
    covered = [r for r in recs if theorem_applicability(r).covered]
    md = CUBIC_ROOT_METADATA
    return {
        "classes": len(recs),
        "table1": sum(1 for r in recs if r.table == 1),
        "table3": sum(1 for r in recs if r.table == 3),
        "covered_records": len(covered),
        "covered_planes": md["planes_per_class"] * len(covered),
        "by_aut": {a: sum(1 for r in recs if r.aut_group == a) for a in sorted(_AUT)},
        "tallies": dict(sorted(tallies.items())),
        "cubic_roots": {"planes_with_K_equal_3L": md["planes_with_K_equal_3L"],
                        "check": md["total_planes"] - md["planes_per_class"] * len(md["non_liftable_classes"])},
    }
