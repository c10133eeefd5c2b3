"""Fixed-point counts, case equations and root-of-unity searches.

For a cyclic group of prime order l acting on a smooth curve of genus g with
n fixed points and an invariant subspace of H^1(O) of dimension x, the
holomorphic Lefschetz formula summed over the group gives

    n = 2 - 2g + 2 l Delta / (l - 1),    Delta = g - x.

A single generator gives the finer equation

    sum_i 1/(1 - zeta^eta_i) + sum_j zeta^xi_j = 1 - x,

with one term per fixed point on the left and the Delta non-trivial
eigenvalues on H^1(O) moved across.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .exact_arith import (
    CyclotomicElement,
    cyc_inv_one_minus_zeta,
    is_prime,
)

__all__ = [
    "InfeasibleAction",
    "LefschetzInstance",
    "DiophantineConstraint",
    "arithmetic_genus",
    "fixed_point_count",
    "case_equation",
    "solve_diophantine",
    "search_lefschetz_solutions",
    "trace_target",
    "CurveTypeRow",
    "CandidateRecord",
    "classify_candidates",
    "classify_invariant_curve_types",
    "orbit_counting_contradiction",
]


class InfeasibleAction(ValueError):
    """The counting formula does not give a nonnegative integer."""


def arithmetic_genus(k: int) -> int:
    """p_a of a curve numerically equivalent to kL on a fake projective plane."""
    return 1 + k * (k + 3) // 2


@dataclass(frozen=True)
class LefschetzInstance:
    l: int
    g: int
    delta: int
    x: int
    n: int

    def __post_init__(self):
        if min(self.g, self.delta, self.x, self.n) < 0:
            raise ValueError("Lefschetz data must be nonnegative")
        if self.x > self.g:
            raise ValueError("x cannot exceed g")

    @property
    def Delta(self) -> int:
        return self.g - self.x

    def is_consistent(self) -> bool:
        try:
            return fixed_point_count(self.l, self.g, self.Delta) == self.n
        except InfeasibleAction:
            return False


def fixed_point_count(l: int, g: int, Delta: int) -> int:
    if not is_prime(l):
        raise ValueError(f"l={l} is not prime")
    if g < 0 or Delta < 0:
        raise ValueError("g and Delta must be nonnegative")
    n = Fraction(2 - 2 * g) + Fraction(2 * l * Delta, l - 1)
    if n.denominator != 1:
        raise InfeasibleAction(f"n = {n} is not an integer (l={l}, g={g}, Delta={Delta})")
    if n < 0:
        raise InfeasibleAction(f"n = {n} is negative (l={l}, g={g}, Delta={Delta})")
    return int(n)


@dataclass(frozen=True)
class DiophantineConstraint:
    """a*n + b*x = c over nonnegative integers, with optional bounds on n."""

    a: int
    b: int
    c: int
    n_min: Optional[int] = None
    n_max: Optional[int] = None

    def __post_init__(self):
        if self.a <= 0 or self.b <= 0:
            raise ValueError("coefficients a and b must be positive")

    def holds(self, n: int, x: int) -> bool:
        return self.a * n + self.b * x == self.c

    def bounded(self, n_min=None, n_max=None) -> "DiophantineConstraint":
        return DiophantineConstraint(self.a, self.b, self.c,
                                     self.n_min if n_min is None else n_min,
                                     self.n_max if n_max is None else n_max)

    def __str__(self):
        s = f"{self.a}n+{self.b}x={self.c}"
        if self.a == 1:
            s = f"n+{self.b}x={self.c}"
        bounds = []
        if self.n_min is not None:
            bounds.append(f"n>={self.n_min}")
        if self.n_max is not None:
            bounds.append(f"n<={self.n_max}")
        return s + (f" ({', '.join(bounds)})" if bounds else "")


def case_equation(k: int, l: int, delta: int) -> DiophantineConstraint:
    """Linear relation between n and x for an invariant curve C = kL.

    Clearing denominators in the counting formula with g = p_a - delta gives
    (l-1) n + 2l x = 2(l - 1 + g); we divide through by the gcd.
    """
    if k not in (1, 2):
        raise ValueError(f"k must be 1 or 2, got {k}")
    if not is_prime(l) or l < 3:
        raise ValueError(f"l={l} must be an odd prime")
    g = arithmetic_genus(k) - delta
    if g < 0 or delta < 0:
        raise ValueError(f"delta={delta} out of range for k={k}")
    a, b, c = l - 1, 2 * l, 2 * (l - 1 + g)
    d = math.gcd(math.gcd(a, b), c)
    return DiophantineConstraint(a // d, b // d, c // d)


def solve_diophantine(c: DiophantineConstraint) -> list[tuple[int, int]]:
    lo = 0 if c.n_min is None else max(0, c.n_min)
    hi = c.c // c.a
    if c.n_max is not None:
        hi = min(hi, c.n_max)
    out = []
    for n in range(lo, hi + 1):
        rest = c.c - c.a * n
        if rest >= 0 and rest % c.b == 0:
            out.append((n, rest // c.b))
    return out


def _scaled_vectors(l: int, elements: Sequence[CyclotomicElement], scale: int):
    return [tuple(int(v * scale) for v in e.coefficients) for e in elements]


def _common_denominator(elements: Iterable[CyclotomicElement]) -> int:
    d = 1
    for e in elements:
        for v in e.coefficients:
            d = d * v.denominator // math.gcd(d, v.denominator)
    return d


def _half_sums(vectors: Sequence[tuple[int, ...]], count: int, width: int):
    """Map each summed vector to the exponent tuples producing it."""
    table: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for combo in itertools.product(range(len(vectors)), repeat=count):
        acc = [0] * width
        for idx in combo:
            for i, v in enumerate(vectors[idx]):
                acc[i] += v
        table.setdefault(tuple(acc), []).append(tuple(i + 1 for i in combo))
    return table


def search_lefschetz_solutions(l: int, num_fixed_terms: int, num_eigen_terms: int,
                               target, unordered: bool = False):
    """All (eta, xi) in ((Z/l)^x)^(a+b) with cyc_eval_sum(l, eta, xi) == target.

    The search is a meet-in-the-middle over integer vectors after scaling by
    a common denominator, so it is exact.  Returns a sorted list of
    ``(eta_tuple, xi_tuple)``; with ``unordered=True`` each tuple is sorted
    and duplicates are dropped.
    """
    a, b = num_fixed_terms, num_eigen_terms
    if a < 0 or b < 0:
        raise ValueError("term counts must be nonnegative")
    if a + b > 8:
        raise ValueError("search limited to a + b <= 8")
    if not isinstance(target, CyclotomicElement):
        target = CyclotomicElement.rational(l, target)
    if target.order != l:
        raise ValueError("target lives in a different cyclotomic field")

    fixed = [cyc_inv_one_minus_zeta(l, k) for k in range(1, l)]
    eigen = [CyclotomicElement.zeta(l, k) for k in range(1, l)]
    scale = _common_denominator(fixed + eigen + [target])
    fv = _scaled_vectors(l, fixed, scale)
    ev = _scaled_vectors(l, eigen, scale)
    tv = tuple(int(v * scale) for v in target.coefficients)
    width = l - 1

    left = _half_sums(fv, a, width)
    solutions = []
    for combo in itertools.product(range(l - 1), repeat=b):
        acc = list(tv)
        for idx in combo:
            for i, v in enumerate(ev[idx]):
                acc[i] -= v
        for eta in left.get(tuple(acc), ()):
            solutions.append((eta, tuple(i + 1 for i in combo)))
    if unordered:
        solutions = {(tuple(sorted(e)), tuple(sorted(x))) for e, x in solutions}
    return sorted(solutions)


def trace_target(x: int) -> int:
    """Right-hand side of the single-generator equation: tr H^0 minus the
    invariant part of tr H^1."""
    return 1 - x


# --- classification of integral invariant curves ---------------------------

# Singular fixed points admitted for l = 3 (node: delta 1, tacnode: delta 2),
# each lifting to two fixed points of the normalization.
_SINGULAR_CONFIGS = {
    0: [()],
    1: [("node",)],
    2: [("tacnode",), ("node", "node")],
}


@dataclass(frozen=True)
class CurveTypeRow:
    label: str
    n: int
    delta: int
    x: int

    def as_tuple(self):
        return (self.label, self.n, self.delta, self.x)


@dataclass
class CandidateRecord:
    """One (k, delta, singular configuration, (n, x)) candidate and its fate."""

    k: int
    delta: int
    singularities: tuple[str, ...]
    n: int
    x: int
    genus: int
    smooth_fixed: Optional[int]
    accepted: bool
    reason: str
    label: Optional[str] = None
    lefschetz_witness: Optional[tuple] = None
    searched: bool = False

    def to_json(self):
        return {
            "k": self.k, "delta": self.delta, "singularities": list(self.singularities),
            "n": self.n, "x": self.x, "genus": self.genus,
            "smooth_fixed_points": self.smooth_fixed, "accepted": self.accepted,
            "reason": self.reason, "label": self.label,
            "lefschetz_witness": None if self.lefschetz_witness is None
            else [list(self.lefschetz_witness[0]), list(self.lefschetz_witness[1])],
        }


def _label_for(k: int, sing: tuple[str, ...]) -> str:
    if k == 1:
        return "N"
    return {(): "I1", ("node",): "I2", ("tacnode",): "I3"}[sing]


def classify_candidates(l: int = 3, ks: Sequence[int] = (1, 2),
                        deltas: Optional[Sequence[int]] = None,
                        fixed_point_bound: int = 3,
                        lefschetz_filter: bool = True) -> list[CandidateRecord]:
    """Run every candidate through the counting equation and the filters.

    Filters, in order: n >= 1 (an odd-order action on a curve in 2L has a
    fixed point); the local lift rule for l = 3 (node and tacnode each lift
    to two fixed points, smooth fixed points of C plus singular ones fit in
    the fixed locus of size ``fixed_point_bound``); for other l only the
    smooth case is bounded.  Survivors are then required to admit a solution
    of the single-generator Lefschetz equation.
    """
    from .geometry_checks import schwarz_bounds

    records: list[CandidateRecord] = []
    for k in ks:
        dmax, _ = schwarz_bounds(k)
        allowed = range(dmax + 1) if deltas is None else [d for d in deltas if d <= dmax]
        for delta in allowed:
            g = arithmetic_genus(k) - delta
            eq = case_equation(k, l, delta).bounded(n_min=1)
            configs = _SINGULAR_CONFIGS.get(delta, []) if l == 3 else [("singular",) * bool(delta)]
            for sing in configs:
                for n, x in solve_diophantine(eq):
                    rec = CandidateRecord(k, delta, sing, n, x, g, None, False, "")
                    if l == 3:
                        smooth = n - 2 * len(sing)
                        rec.smooth_fixed = smooth
                        if smooth < 0:
                            rec.reason = (f"{len(sing)} singular fixed point(s) lift to "
                                          f"{2 * len(sing)} > n={n}")
                        elif smooth + len(sing) > fixed_point_bound:
                            rec.reason = (f"needs {smooth + len(sing)} fixed points on M, "
                                          f"only {fixed_point_bound}")
                        else:
                            rec.accepted = True
                    elif delta == 0:
                        rec.smooth_fixed = n
                        if n > fixed_point_bound:
                            rec.reason = f"n={n} exceeds {fixed_point_bound} fixed points on M"
                        else:
                            rec.accepted = True
                    else:
                        rec.accepted = True
                    if rec.accepted and lefschetz_filter:
                        rec.searched = True
                        sols = search_lefschetz_solutions(l, n, g - x, trace_target(x))
                        if sols:
                            rec.lefschetz_witness = sols[0]
                        else:
                            rec.accepted = False
                            rec.reason = (f"no solution of the Lefschetz equation with "
                                          f"{n} fixed terms and {g - x} eigenvalues, target {trace_target(x)}")
                    if rec.accepted:
                        rec.reason = "admissible"
                        if l == 3:
                            rec.label = _label_for(k, sing)
                    records.append(rec)
    return records


def classify_invariant_curve_types(l: int = 3, deltas: Optional[Sequence[int]] = None,
                                   fixed_point_bound: int = 3,
                                   ks: Sequence[int] = (1, 2),
                                   lefschetz_filter: bool = True) -> list[CurveTypeRow]:
    """Types of integral invariant curves C = L or 2L as (label, n, delta, x).

    >>> [r.as_tuple() for r in classify_invariant_curve_types(3)]
    [('N', 2, 0, 1), ('I1', 2, 0, 2), ('I2', 4, 1, 1), ('I3', 3, 2, 1)]
    """
    rows = []
    for rec in classify_candidates(l, ks=ks, deltas=deltas, fixed_point_bound=fixed_point_bound,
                                   lefschetz_filter=lefschetz_filter):
        if rec.accepted:
            rows.append(CurveTypeRow(rec.label or f"k{rec.k}d{rec.delta}", rec.n, rec.delta, rec.x))
    return rows


@dataclass
class OrbitCount:
    piece: str
    smooth_fixed_points: int
    orbit_size: int
    contradiction: bool


def orbit_counting_contradiction(orbit_size: int = 3) -> list[OrbitCount]:
    """For C3 x C3 the second factor permutes the smooth fixed points of the
    first freely, so each invariant piece would need a multiple of 3 of them.

    Pieces: the integral types from the classification, plus each component
    of a reducible curve L + L', which is a curve of type N's reduced class.
    """
    out = []
    for rec in classify_candidates(3):
        if rec.accepted:
            m = rec.smooth_fixed
            out.append(OrbitCount(rec.label, m, orbit_size, m % orbit_size != 0))
    n_row = next(o for o in out if o.piece == "N")
    out.append(OrbitCount("X component", n_row.smooth_fixed_points, orbit_size,
                          n_row.contradiction))
    return out
