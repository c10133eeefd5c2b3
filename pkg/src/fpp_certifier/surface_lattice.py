"""Intersection theory on the minimal resolution Z of Y = M/C3.

Y has three A2 points a, b, c.  Over each sits a chain E_s1 + E_s2 of
(-2)-curves meeting once.  For an invariant curve C on M with image C_Y,

    mu^* C_Y = C_Z + E_Z,   E_Z = sum of local corrections over the sites,

and the local correction is fixed by (mu^* C_Y) . E = 0 for every E.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

from .verdicts import Verdict

__all__ = [
    "SurfaceConstants",
    "SURFACE",
    "SITES",
    "EXCEPTIONAL_NAMES",
    "Passage",
    "CurveOnZ",
    "Table2Row",
    "LatticeConfig",
    "InconsistentIncidence",
    "chain_gram",
    "pullback_decomposition",
    "standard_curve",
    "curve_numerics",
    "derived_pair_intersection",
    "build_intersection_matrix",
    "exact_determinant",
    "cofactor_determinant",
    "exact_rank",
    "picard_contradiction",
    "PicardResult",
    "mirror_config",
    "pullback_vector",
    "numerical_dependency_defect",
]

Matrix = list[list[Fraction]]


@dataclass(frozen=True)
class SurfaceConstants:
    L_squared: int = 1
    K_numerical_multiple: int = 3
    picard_number_Z: int = 7
    K_Z_squared: int = 3
    K_Y_squared: int = 3
    num_singular_points: int = 3
    chi_O: int = 1

    @property
    def euler_number_Z(self) -> int:
        # 3 for M/C3 with three fixed points, plus two curves per A2 point
        return (3 - 3) // 3 + 3 + 2 * self.num_singular_points

    def noether_holds(self) -> bool:
        return self.K_Z_squared + self.euler_number_Z == 12 * self.chi_O


SURFACE = SurfaceConstants()
SITES = ("a", "b", "c")
EXCEPTIONAL_NAMES = tuple(f"E_{s}{i}" for s in SITES for i in (1, 2))


class InconsistentIncidence(ValueError):
    pass


class Passage(str, Enum):
    ABSENT = "absent"
    SMOOTH_E1 = "smooth_E1"
    SMOOTH_E2 = "smooth_E2"
    NODE = "node"
    TACNODE_E1 = "tacnode_E1"
    TACNODE_E2 = "tacnode_E2"

    @property
    def incidence(self) -> tuple[int, int]:
        """(C_Z . E1, C_Z . E2) of the proper transform."""
        return _INCIDENCE[self]

    def mirrored(self) -> "Passage":
        return _MIRROR[self]


_INCIDENCE = {
    Passage.ABSENT: (0, 0),
    Passage.SMOOTH_E1: (1, 0),
    Passage.SMOOTH_E2: (0, 1),
    Passage.NODE: (1, 1),
    Passage.TACNODE_E1: (2, 0),
    Passage.TACNODE_E2: (0, 2),
}
_MIRROR = {
    Passage.ABSENT: Passage.ABSENT,
    Passage.SMOOTH_E1: Passage.SMOOTH_E2,
    Passage.SMOOTH_E2: Passage.SMOOTH_E1,
    Passage.NODE: Passage.NODE,
    Passage.TACNODE_E1: Passage.TACNODE_E2,
    Passage.TACNODE_E2: Passage.TACNODE_E1,
}


def chain_gram() -> Matrix:
    return [[Fraction(-2), Fraction(1)], [Fraction(1), Fraction(-2)]]


def _quad(u: Sequence[Fraction], g: Matrix, v: Sequence[Fraction]) -> Fraction:
    return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def pullback_decomposition(p: Union[Passage, str]) -> tuple[tuple[Fraction, Fraction], Fraction]:
    """Coefficients (a1, a2) of E_Z on the chain and the local value E_Z^2.

    Solves G (a1, a2) = -(C_Z.E1, C_Z.E2) for the chain Gram matrix G.
    """
    p = Passage(p)
    if p is Passage.ABSENT:
        raise ValueError("no pullback correction for an absent passage")
    i1, i2 = p.incidence
    # inverse of [[-2,1],[1,-2]] is -(1/3)[[2,1],[1,2]]
    a1 = Fraction(2 * i1 + i2, 3)
    a2 = Fraction(i1 + 2 * i2, 3)
    coeffs = (a1, a2)
    return coeffs, _quad(coeffs, chain_gram(), coeffs)


@dataclass(frozen=True)
class Table2Row:
    CE: Fraction
    C2: Fraction
    p_a: Fraction
    KC: Fraction
    x: Fraction

    def as_tuple(self):
        return (self.CE, self.C2, self.p_a, self.KC, self.x)

    def to_json(self):
        return {k: str(v) for k, v in zip(("C_Z.E_Z", "C_Z^2", "p_a", "K_Z.C_Z", "x"), self.as_tuple())}


@dataclass(frozen=True)
class CurveOnZ:
    """Proper transform of an invariant curve numerically equal to k L.

    ``components`` counts irreducible components, which on Z are disjoint
    smooth curves in every configuration used here.
    """

    name: str
    k: int
    passages: tuple[tuple[str, Passage], ...]
    label: str = ""
    components: int = 1

    @classmethod
    def make(cls, name: str, k: int, passages: Mapping[str, Union[str, Passage]],
             label: str = "", components: int = 1) -> "CurveOnZ":
        items = []
        for site, kind in passages.items():
            if site not in SITES:
                raise ValueError(f"unknown site {site!r}")
            kind = Passage(kind)
            if kind is not Passage.ABSENT:
                items.append((site, kind))
        return cls(name, k, tuple(sorted(items)), label, components)

    def passage(self, site: str) -> Passage:
        return dict(self.passages).get(site, Passage.ABSENT)

    def local_E(self, site: str) -> tuple[Fraction, Fraction]:
        p = self.passage(site)
        if p is Passage.ABSENT:
            return (Fraction(0), Fraction(0))
        return pullback_decomposition(p)[0]

    def E_coefficients(self) -> list[Fraction]:
        out = []
        for s in SITES:
            out.extend(self.local_E(s))
        return out

    def incidences(self) -> list[int]:
        out = []
        for s in SITES:
            out.extend(self.passage(s).incidence)
        return out

    @property
    def CE(self) -> Fraction:
        return sum((c * i for c, i in zip(self.E_coefficients(), self.incidences())), Fraction(0))

    @property
    def self_intersection(self) -> Fraction:
        return Fraction(self.k * self.k, 3) - self.CE

    @property
    def arithmetic_genus(self) -> Fraction:
        return 1 + Fraction(self.k * (self.k + 3), 6) - self.CE / 2

    @property
    def canonical_degree(self) -> Fraction:
        return Fraction(self.k)

    def adjunction_genus(self) -> Fraction:
        return 1 + (self.self_intersection + self.canonical_degree) / 2

    @property
    def invariant_genus(self) -> Fraction:
        """Sum of component genera, assuming components smooth and disjoint."""
        return self.arithmetic_genus + self.components - 1

    def numerics(self) -> Table2Row:
        return Table2Row(self.CE, self.self_intersection, self.arithmetic_genus,
                         self.canonical_degree, self.invariant_genus)

    def mirrored(self) -> "CurveOnZ":
        return CurveOnZ(self.name, self.k, tuple((s, p.mirrored()) for s, p in self.passages),
                        self.label, self.components)

    def to_json(self):
        return {"name": self.name, "label": self.label, "k": self.k,
                "components": self.components,
                "passages": {s: p.value for s, p in self.passages}}

    @classmethod
    def from_json(cls, d) -> "CurveOnZ":
        return cls.make(d["name"], int(d["k"]), d.get("passages", {}),
                        d.get("label", ""), int(d.get("components", 1)))


# Standard placement of each type; which chain curve is met is a convention.
_STANDARD = {
    "N": (1, {"a": "smooth_E1", "b": "smooth_E1"}, 1),
    "I1": (2, {"a": "smooth_E1", "b": "smooth_E1"}, 1),
    "I2": (2, {"a": "node", "b": "smooth_E1", "c": "smooth_E1"}, 1),
    "I3": (2, {"a": "tacnode_E1", "b": "smooth_E1"}, 1),
    "X": (2, {"a": "node", "b": "smooth_E1", "c": "smooth_E1"}, 2),
}


def standard_curve(label: str, name: Optional[str] = None) -> CurveOnZ:
    if label not in _STANDARD:
        raise KeyError(f"unknown curve type {label!r}")
    k, passages, comps = _STANDARD[label]
    return CurveOnZ.make(name or label, k, passages, label, comps)


def curve_numerics(type_label: str) -> Table2Row:
    """(C_Z.E_Z, C_Z^2, p_a, K_Z.C_Z, x) for a curve type.  For N the curve
    is the reduced part C = L of Sigma = 2C."""
    return standard_curve(type_label).numerics()


def derived_pair_intersection(c1: CurveOnZ, c2: CurveOnZ) -> Fraction:
    """C_Z . C'_Z = C_Y . C'_Y + E_Z . E'_Z, where C_Y.C'_Y = k k'/3."""
    g = chain_gram()
    total = Fraction(c1.k * c2.k, 3)
    for s in SITES:
        total += _quad(c1.local_E(s), g, c2.local_E(s))
    return total


@dataclass
class LatticeConfig:
    """Curves on Z plus optional supplied pairwise intersections.

    Pairs not supplied are derived, and must come out as nonnegative
    integers.
    """

    curves: list[CurveOnZ]
    pair_intersections: dict[tuple[int, int], Fraction] = field(default_factory=dict)
    name: str = ""

    def pair(self, i: int, j: int) -> Fraction:
        key = (min(i, j), max(i, j))
        if key in self.pair_intersections:
            return Fraction(self.pair_intersections[key])
        v = derived_pair_intersection(self.curves[i], self.curves[j])
        if v < 0 or v.denominator != 1:
            raise InconsistentIncidence(
                f"derived {self.curves[i].name}.{self.curves[j].name} = {v} "
                "is not a nonnegative integer")
        return v

    def labels(self) -> list[str]:
        return [c.name for c in self.curves] + list(EXCEPTIONAL_NAMES)

    def to_json(self):
        return {"name": self.name,
                "curves": [c.to_json() for c in self.curves],
                "pair_intersections": [{"curves": [i, j], "value": str(v)}
                                       for (i, j), v in sorted(self.pair_intersections.items())]}

    @classmethod
    def from_json(cls, d) -> "LatticeConfig":
        if isinstance(d, str):
            d = json.loads(d)
        curves = [CurveOnZ.from_json(c) for c in d["curves"]]
        pairs = {}
        for p in d.get("pair_intersections", []):
            i, j = p["curves"]
            if not (0 <= i < len(curves) and 0 <= j < len(curves)) or i == j:
                raise ValueError(f"bad curve indices {p['curves']}")
            pairs[(min(i, j), max(i, j))] = Fraction(p["value"])
        return cls(curves, pairs, d.get("name", ""))


def build_intersection_matrix(config: LatticeConfig) -> Matrix:
    """Gram matrix in the order: curves, then E_a1, E_a2, E_b1, E_b2, E_c1, E_c2."""
    nc = len(config.curves)
    size = nc + 2 * len(SITES)
    m = [[Fraction(0)] * size for _ in range(size)]
    for i, c in enumerate(config.curves):
        m[i][i] = c.self_intersection
        for j in range(i + 1, nc):
            m[i][j] = m[j][i] = config.pair(i, j)
        for e, inc in enumerate(c.incidences()):
            m[i][nc + e] = m[nc + e][i] = Fraction(inc)
    g = chain_gram()
    for s in range(len(SITES)):
        base = nc + 2 * s
        for u in range(2):
            for v in range(2):
                m[base + u][base + v] = g[u][v]
    return m


def mirror_config(config: LatticeConfig) -> LatticeConfig:
    return LatticeConfig([c.mirrored() for c in config.curves],
                         dict(config.pair_intersections), config.name + " (mirrored)")


def _as_fraction_matrix(matrix) -> Matrix:
    rows = [list(r) for r in matrix]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    return [[Fraction(x) for x in r] for r in rows]


def _normalize(x: Fraction):
    return int(x) if x.denominator == 1 else x


def exact_determinant(matrix):
    """Determinant by Bareiss fraction-free elimination on the integer matrix
    obtained after clearing denominators."""
    a = _as_fraction_matrix(matrix)
    n = len(a)
    if n == 0:
        return 1
    den = 1
    for r in a:
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
    m = [[int(x * den) for x in r] for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return _normalize(Fraction(sign * m[n - 1][n - 1], den ** n))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def cofactor_determinant(matrix):
    """Laplace expansion along the first row; an independent oracle for small n."""
    a = _as_fraction_matrix(matrix)
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return _normalize(a[0][0])
    total = Fraction(0)
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        total += (-1) ** j * a[0][j] * Fraction(cofactor_determinant(minor))
    return _normalize(total)


def exact_rank(matrix) -> int:
    a = [list(r) for r in _as_fraction_matrix(matrix)] if matrix else []
    rank, rows = 0, len(a)
    cols = len(a[0]) if a else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        for r in range(rank + 1, rows):
            f = a[r][col] / a[rank][col]
            if f:
                for c in range(col, cols):
                    a[r][c] -= f * a[rank][c]
        rank += 1
    return rank


def _json_number(v):
    v = Fraction(v)
    return int(v) if v.denominator == 1 else str(v)


@dataclass
class PicardResult:
    verdict: Verdict
    rank: int
    dimension: int
    determinant: Union[int, Fraction]
    picard_number: int

    def to_json(self):
        return {"verdict": self.verdict.value, "rank": self.rank, "dimension": self.dimension,
                "determinant": _json_number(self.determinant), "picard_number": self.picard_number}


def picard_contradiction(matrix, picard_number: int = SURFACE.picard_number_Z) -> PicardResult:
    """Classes whose Gram matrix has rank above rho(Z) cannot all live in NS(Z)."""
    det = exact_determinant(matrix)
    rank = exact_rank(matrix)
    dim = len(matrix)
    verdict = Verdict.CONTRADICTION if rank > picard_number else Verdict.INCONCLUSIVE
    return PicardResult(verdict, rank, dim, det, picard_number)


def pullback_vector(config: LatticeConfig, i: int) -> list[Fraction]:
    """Coordinates of mu^*C_Y = C_Z + E_Z in the matrix basis."""
    nc = len(config.curves)
    v = [Fraction(0)] * (nc + 2 * len(SITES))
    v[i] = Fraction(1)
    for e, coeff in enumerate(config.curves[i].E_coefficients()):
        v[nc + e] = coeff
    return v


def numerical_dependency_defect(config: LatticeConfig, matrix=None,
                                i: int = 0, j: int = 1) -> list[Fraction]:
    """I.(mu^*C_Y - mu^*C'_Y) for two curves of the same degree k.

    rho(Y) = 1, so C_Y and C'_Y are numerically equivalent and the difference
    of pullbacks lies in the radical of any correct Gram matrix.  A nonzero
    entry means the matrix disagrees with the pullback formula.
    """
    a, b = config.curves[i], config.curves[j]
    if a.k != b.k:
        raise ValueError("curves must have the same numerical degree")
    m = build_intersection_matrix(config) if matrix is None else _as_fraction_matrix(matrix)
    v = [x - y for x, y in zip(pullback_vector(config, i), pullback_vector(config, j))]
    return [sum((row[c] * v[c] for c in range(len(v))), Fraction(0)) for row in m]
