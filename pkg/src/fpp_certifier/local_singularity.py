"""Equivariant curve germs at a 1/3(1,2) point and their delta invariants.

Local coordinates (x, y) carry weights (1, 2) under the generator.  A branch
t -> (u(t), v(t)) stable under the action with t of weight alpha has

    u(t) supported on exponents m with alpha*m = 1 (mod 3),
    v(t) supported on exponents n with alpha*n = 2 (mod 3).

Branches are summarised by valuation semigroups, and delta counts gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Optional, Sequence

__all__ = [
    "BranchData",
    "LocalConfig",
    "LocalType",
    "LOCAL_CONFIGS",
    "semigroup_delta",
    "semigroup_gaps",
    "admissible_branches",
    "unibranched_delta_bound",
    "smooth_contact_orders",
    "classify_equivariant_singularity",
    "local_intersection_mult",
    "contact_from_normal_form",
    "delta_additivity",
]


def semigroup_gaps(generators: Iterable[int]) -> list[int]:
    gens = sorted(set(int(g) for g in generators))
    if not gens or gens[0] <= 0:
        raise ValueError("generators must be positive integers")
    if reduce(math.gcd, gens) != 1:
        raise ValueError(f"generators {gens} have gcd > 1 (non-reduced branch)")
    m = gens[0]
    if m == 1:
        return []
    # Walk upward until m consecutive members appear; beyond that all are members.
    member = [True]
    run, x = 0, 0
    while run < m:
        x += 1
        ok = any(x >= g and member[x - g] for g in gens)
        member.append(ok)
        run = run + 1 if ok else 0
    return [i for i, ok in enumerate(member) if not ok]


def semigroup_delta(generators: Iterable[int]) -> int:
    """Number of gaps of the numerical semigroup generated by ``generators``.

    >>> semigroup_delta([2, 7])
    3
    """
    return len(semigroup_gaps(generators))


@dataclass(frozen=True)
class BranchData:
    alpha: int
    generators: tuple[int, ...]
    note: str = ""

    @property
    def delta(self) -> int:
        return semigroup_delta(self.generators)

    @property
    def multiplicity(self) -> int:
        return min(self.generators)


def _u_class(alpha: int) -> int:
    return (pow(alpha, -1, 3) * 1) % 3


def _v_class(alpha: int) -> int:
    return (pow(alpha, -1, 3) * 2) % 3


def admissible_branches(alpha: int = 1, cap: int = 20) -> list[BranchData]:
    """Semigroups that bound every equivariant branch from above.

    Multiplicity e is the smaller of ord u, ord v; neither order is divisible
    by 3.  For e = 2 the order-2 coordinate can be normalised to s^2 with s
    still of weight alpha, so the semigroup is <2, beta> with beta the first
    odd exponent of the other coordinate.  For e >= 4 we use the largest
    semigroup of multiplicity e, <e, e+1, ..., 2e-1>, whose gap count e-1 is
    a lower bound for delta.  Any branch's semigroup is contained in one of
    these, and shrinking a semigroup only adds gaps.
    """
    if alpha not in (1, 2):
        raise ValueError("alpha must be 1 or 2")
    cu, cv = _u_class(alpha), _v_class(alpha)
    out = [BranchData(alpha, (1,), "smooth")]
    orders = [e for e in range(2, cap + 1) if e % 3 in (cu, cv)]
    for e in orders:
        if e == 2:
            other = cu if 2 % 3 == cv else cv
            for beta in range(3, cap + 1, 2):
                if beta % 3 == other:
                    out.append(BranchData(alpha, (2, beta), "multiplicity 2"))
        else:
            out.append(BranchData(alpha, tuple(range(e, 2 * e)), f"multiplicity {e}"))
    return out


def unibranched_delta_bound(alpha: int = 1, cap: int = 20) -> tuple[int, BranchData]:
    """Smallest delta of a singular equivariant branch, with a witness."""
    singular = [b for b in admissible_branches(alpha, cap) if b.multiplicity > 1]
    best = min(singular, key=lambda b: (b.delta, b.generators))
    return best.delta, best


def smooth_contact_orders(cap: int = 20) -> dict[str, list[int]]:
    """Contact orders between two distinct smooth invariant branches.

    A smooth invariant branch is tangent to one eigendirection.  Two of them
    in different directions meet transversally.  In the same direction both
    are graphs x = c y^2 + d y^5 + ..., exponents forced into the class 2 mod 3,
    so the difference has order 2, 5, 8, ...
    """
    return {"different": [1], "same": [k for k in range(2, cap + 1) if k % 3 == 2]}


@dataclass(frozen=True)
class LocalType:
    name: str
    delta: int
    branches: int
    lifts_to: int
    branch_deltas: tuple[int, ...] = ()
    contact: Optional[int] = None

    def to_json(self):
        return {"name": self.name, "delta": self.delta, "branches": self.branches,
                "lifts_to_fixed_points": self.lifts_to}


def delta_additivity(branch_deltas: Sequence[int], pairwise_mults) -> int:
    """delta of a multi-branch germ: sum of branch deltas plus pairwise
    intersection numbers.  Diagonal entries of ``pairwise_mults`` are ignored."""
    r = len(branch_deltas)
    total = sum(branch_deltas)
    for i in range(r):
        for j in range(i + 1, r):
            a, b = pairwise_mults[i][j], pairwise_mults[j][i]
            if a != b:
                raise ValueError("pairwise multiplicities must be symmetric")
            if a < 0:
                raise ValueError("pairwise multiplicities must be nonnegative")
            total += a
    return total


def classify_equivariant_singularity(delta_max: int = 2, alpha: int = 1,
                                     cap: int = 20) -> list[LocalType]:
    """Admissible germs of an invariant curve at a 1/3(1,2) point with
    delta <= delta_max.  Returns [smooth] when no singular germ qualifies.

    The group has order 3, so it fixes each branch of a germ with at most two
    branches.  Since delta >= r(r-1)/2, delta_max <= 2 forces r <= 2, and a
    singular branch already costs ``unibranched_delta_bound`` >= 3.  Germs
    with three or more branches are outside this enumeration, so for
    delta_max >= 3 the list is partial.
    """
    found: list[LocalType] = []
    for b in admissible_branches(alpha, cap):
        if b.multiplicity > 1 and b.delta <= delta_max:
            found.append(LocalType(f"unibranch{b.generators}", b.delta, 1, 1, (b.delta,)))

    contacts = smooth_contact_orders(cap)
    names = {1: "node", 2: "tacnode"}
    seen = set()
    for c in contacts["different"] + contacts["same"]:
        d = delta_additivity([0, 0], [[0, c], [c, 0]])
        if d <= delta_max and c not in seen:
            seen.add(c)
            found.append(LocalType(names.get(c, f"contact{c}"), d, 2, 2, (0, 0), c))
    if not found:
        return [LocalType("smooth", 0, 1, 1, (0,))]
    return sorted(found, key=lambda t: (t.delta, t.name))


@dataclass(frozen=True)
class LocalConfig:
    """Local intersection of Sigma_red and Sigma'_red at a common fixed point.

    ``branch`` parametrises the smooth branch of Sigma_red as
    (x(t), y(t)), each a {exponent: coefficient} map; ``other`` is the
    equation of Sigma'_red as a {(i, j): coefficient} map for x^i y^j.
    """

    label: str
    local_equation: str
    mult: int
    first: str
    second: str
    branch: tuple
    other: dict = field(hash=False, compare=False)


_T = {1: 1}
_T2 = {2: 1}
_ZERO: dict = {}

LOCAL_CONFIGS = {
    "tr": LocalConfig("tr", "xy=0", 1, "smooth", "smooth",
                      (_T, _ZERO), {(1, 0): 1}),
    "tan_sm": LocalConfig("tan_sm", "x(x-y^2)=0", 2, "smooth", "smooth",
                          (_T2, _T), {(1, 0): 1}),
    "tan_tan": LocalConfig("tan_tan", "(x-y^2)(x+y^2)=0", 4, "smooth", "smooth",
                           (_T2, _T), {(1, 0): 1, (0, 2): 1}),
    "tr_tac": LocalConfig("tr_tac", "y*x(x-y^2)=0", 2, "smooth", "tacnode",
                          (_T, _ZERO), {(2, 0): 1, (1, 2): -1}),
    "tan_node": LocalConfig("tan_node", "(x-y^2)*xy=0", 3, "smooth", "node",
                            (_T2, _T), {(1, 1): 1}),
    "tan_tac": LocalConfig("tan_tac", "x(x^2-y^4)=0", 4, "smooth", "tacnode",
                           (_ZERO, _T), {(2, 0): 1, (0, 4): -1}),
}


def local_intersection_mult(c) -> int:
    label = c.label if isinstance(c, LocalConfig) else str(c)
    if label not in LOCAL_CONFIGS:
        raise KeyError(f"unknown local configuration {label!r}")
    return LOCAL_CONFIGS[label].mult


def _series_mul(p: dict, q: dict) -> dict:
    out: dict = {}
    for i, a in p.items():
        for j, b in q.items():
            out[i + j] = out.get(i + j, 0) + a * b
    return {k: v for k, v in out.items() if v}


def _series_pow(p: dict, e: int) -> dict:
    out = {0: 1}
    for _ in range(e):
        out = _series_mul(out, p)
    return out


def contact_from_normal_form(label: str) -> int:
    """Intersection multiplicity recomputed from the displayed normal form:
    substitute the smooth branch of Sigma_red into the equation of
    Sigma'_red and take the t-order."""
    cfg = LOCAL_CONFIGS[label]
    xt, yt = cfg.branch
    total: dict = {}
    for (i, j), c in cfg.other.items():
        term = _series_mul(_series_pow(xt, i), _series_pow(yt, j))
        for k, v in term.items():
            total[k] = total.get(k, 0) + c * v
    orders = [k for k, v in total.items() if v]
    if not orders:
        raise ValueError(f"branch lies on the other curve for {label}")
    return min(orders)
