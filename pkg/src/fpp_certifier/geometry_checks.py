"""Numeric ledgers: Riemann-Roch, Schwarz bounds, Euler quotients,
Riemann-Hurwitz, canonical degree, elliptic pencils.

Every check returns a small result object carrying the verdict and the
inequality chain that produced it, so a contradiction can be audited term by
term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .verdicts import Verdict

__all__ = [
    "NumericalClass",
    "RamifiedCover",
    "LedgerResult",
    "riemann_roch_chi",
    "h0_2L_bound",
    "schwarz_bounds",
    "euler_quotient_check",
    "riemann_hurwitz_check",
    "canonical_degree_ledger",
    "cubic_surface_ledger",
    "elliptic_pencil_check",
    "restricted_degree",
]


@dataclass(frozen=True)
class NumericalClass:
    """The class m*L, optionally twisted by a torsion element."""

    m: int
    torsion_tag: Optional[tuple] = None

    @property
    def self_intersection(self) -> int:
        return self.m * self.m

    @property
    def canonical_degree(self) -> int:
        return 3 * self.m


@dataclass(frozen=True)
class RamifiedCover:
    degree: int
    ramification_indices: tuple[int, ...]
    base_genus: int = 0
    genus: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ramification_indices", tuple(self.ramification_indices))
        if self.degree < 1:
            raise ValueError("cover degree must be positive")
        for e in self.ramification_indices:
            if e < 0 or e > self.degree - 1:
                raise ValueError(f"ramification index {e} outside 0..{self.degree - 1}")


@dataclass
class LedgerResult:
    verdict: Verdict
    chain: list[str] = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def to_json(self):
        return {"verdict": self.verdict.value, "chain": list(self.chain),
                "values": {k: _jsonable(v) for k, v in self.values.items()}}


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def riemann_roch_chi(m: int) -> int:
    """chi(M, mL) = 1 + m(m-3)/2, using chi(O)=1, L^2=1, K=3L."""
    return 1 + m * (m - 3) // 2


def h0_2L_bound(h0_4L: Optional[int] = None) -> LedgerResult:
    """Bound h^0(2L) from the injection Sym-free multiplication
    H^0(2L) x H^0(2L) -> H^0(4L), which gives h^0(4L) >= 2 h^0(2L) - 1."""
    chain = []
    if h0_4L is None:
        h0_4L = riemann_roch_chi(4)
        chain.append(f"h0(4L) = chi(4L) = 1 + 4*1/2 = {h0_4L} (higher cohomology vanishes)")
    else:
        chain.append(f"h0(4L) = {h0_4L} (given)")
    bound = (h0_4L + 1) // 2
    chain.append(f"{h0_4L} >= 2*h0(2L) - 1")
    chain.append(f"h0(2L) <= {bound}")
    return LedgerResult(Verdict.CONSISTENT, chain, {"h0_4L": h0_4L, "bound": bound})


def schwarz_bounds(k: int, strict: bool = True) -> tuple[int, int]:
    """(delta_max, genus_min) for an invariant curve C = kL.

    The Schwarz inequality 2k < deg K_{C^nu} = k(k+3) - 2 delta rearranges to
    delta < (k^2 + k)/2; ``strict=False`` admits equality.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    half = (k * k + k) // 2
    delta_max = half - 1 if strict else half
    p_a = 1 + k * (k + 3) // 2
    return delta_max, p_a - delta_max


def euler_quotient_check(genus: int, group_order: int) -> Verdict:
    """Can a group of prime order act freely on a curve of this genus?"""
    from .exact_arith import is_prime

    if genus < 2:
        raise ValueError("genus must be at least 2")
    if not is_prime(group_order):
        raise ValueError("group order must be prime")
    chi = Fraction(2 - 2 * genus, group_order)
    if chi.denominator == 1 and chi % 2 == 0 and chi <= 2:
        return Verdict.FREE_ACTION_POSSIBLE
    return Verdict.FIXED_POINT_FORCED


def riemann_hurwitz_check(c: RamifiedCover) -> LedgerResult:
    required = (2 * c.genus - 2) - c.degree * (2 * c.base_genus - 2)
    total = sum(c.ramification_indices)
    terms = " + ".join(map(str, c.ramification_indices)) or "0"
    chain = [f"deg R = 2g - 2 - d(2g' - 2) = {2 * c.genus - 2} - {c.degree}*({2 * c.base_genus - 2}) = {required}",
             f"sum of lower bounds on ramification = {terms} = {total}"]
    if total > required:
        chain.append(f"{total} > {required}: contradiction")
        verdict = Verdict.CONTRADICTION
    else:
        chain.append(f"{total} <= {required}: consistent")
        verdict = Verdict.CONSISTENT
    return LedgerResult(verdict, chain, {"degree": c.degree, "indices": list(c.ramification_indices),
                                         "required": required, "total": total})


def canonical_degree_ledger(KY2, pullback_multiple, D_multiple) -> LedgerResult:
    """K_Y = Psi^*K_S + R with Psi^*K_S = p K_Y, D <= R, D = d K_Y.

    Pairing with K_Y: K_Y^2 = (p + d) K_Y^2 + K_Y.(R - D) >= (p + d) K_Y^2.
    """
    KY2 = Fraction(KY2)
    p, d = Fraction(pullback_multiple), Fraction(D_multiple)
    rhs = (p + d) * KY2
    chain = [f"K_Y = ({p})K_Y + (R - D) + ({d})K_Y",
             f"{KY2} = K_Y^2 = {rhs} + K_Y.(R - D) >= {rhs}"]
    if rhs > KY2:
        chain.append(f"{rhs} > {KY2}: contradiction")
        verdict = Verdict.CONTRADICTION
    else:
        chain.append(f"{rhs} <= {KY2}: consistent")
        verdict = Verdict.CONSISTENT
    return LedgerResult(verdict, chain, {"KY2": KY2, "pullback_multiple": p,
                                         "D_multiple": d, "rhs_min": rhs})


def cubic_surface_ledger(power: int, KY2: int = 3, hyperplane_sq: int = 3,
                         curve_class=Fraction(2, 3), num_curves: int = 3) -> LedgerResult:
    """Ledger for the map to a cubic surface given by t_i^power and a mixed
    monomial, where (t_i = 0) are three invariant curves of class 2L.

    Each (t_i = 0) is (2/3) K_Y on Y; the sections t_i^power live in
    |(2 power / 3) K_Z|, Psi^* O_S(1) = (2 power/3) K_Z and K_S = -O_S(1);
    the map ramifies to order power - 1 along each (t_i = 0).
    """
    if power % 3:
        raise ValueError("the mixed monomial needs power divisible by 3")
    curve_class = Fraction(curve_class)
    pull = Fraction(2 * power, 3)
    D = (power - 1) * num_curves * curve_class
    degree = pull * pull * KY2 / hyperplane_sq
    res = canonical_degree_ledger(KY2, -pull, D)
    res.chain.insert(0, f"deg(Psi) = ({pull}K_Z)^2 / O_S(1)^2 = {degree}")
    res.chain.insert(1, f"D = {power - 1} * sum(t_i = 0) = {D} K_Y")
    res.values.update({"power": power, "map_degree": degree})
    return res


def restricted_degree(multiple: int, curve_k: int) -> Fraction:
    """Degree of mu^*(multiple * L_Y) on C_Z for C = curve_k * L (L_Y.C_Y = k/3)."""
    return Fraction(multiple * curve_k, 3)


def elliptic_pencil_check(bundle_degree: int, independent_sections: int,
                          base_point_count: int, sections_independent: bool = True) -> LedgerResult:
    """A complete linear system of degree >= 2 on an elliptic curve is base-point
    free.  Degree 1 is special: its single section vanishes at one point.

    ``sections_independent`` records the hypothesis that the restricted
    sections are linearly independent; it is taken as given, not verified.
    """
    if bundle_degree <= 0:
        raise ValueError("bundle degree must be positive")
    h0 = bundle_degree
    chain = [f"h0 = deg = {h0} on a genus 1 curve",
             f"restricted sections: {independent_sections}"
             + (" (independence assumed)" if sections_independent else "")]
    complete = sections_independent and independent_sections == h0
    if complete and bundle_degree >= 2 and base_point_count > 0:
        chain.append(f"complete system of degree {h0} is base-point free, "
                     f"but {base_point_count} base point(s) forced: contradiction")
        verdict = Verdict.CONTRADICTION
    else:
        chain.append("no contradiction")
        verdict = Verdict.CONSISTENT
    return LedgerResult(verdict, chain, {"h0": h0, "independent_sections": independent_sections,
                                         "base_points": base_point_count})
