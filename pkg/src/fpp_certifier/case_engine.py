"""Configurations of two and three invariant curves in the class 2L.

A curve is placed by saying which fixed points a, b, c it passes through,
with which slot (smooth point, node, tacnode) and in which eigendirection
(x or y, weights 1 and 2).  Direction x is the one whose proper transform
meets E_1 of the chain.  Pairs are enumerated over all placements and local
intersection configurations whose weighted multiplicities add up to the
required 4, then collapsed to case labels.  Exclusion rules are separate
objects whose checkers return verdicts from surface_lattice and
geometry_checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .geometry_checks import (
    LedgerResult,
    RamifiedCover,
    cubic_surface_ledger,
    elliptic_pencil_check,
    restricted_degree,
    riemann_hurwitz_check,
)
from .local_singularity import local_intersection_mult
from .surface_lattice import (
    EXCEPTIONAL_NAMES,
    SITES,
    CurveOnZ,
    InconsistentIncidence,
    LatticeConfig,
    Passage,
    build_intersection_matrix,
)
from .verdicts import Verdict, VerificationFailure

__all__ = [
    "CurveProfile",
    "PROFILES",
    "Slot",
    "PlacedCurve",
    "PairConfig",
    "PairCase",
    "ExclusionRule",
    "RuleFiring",
    "TorsionContext",
    "CONTEXTS",
    "TripleConfig",
    "TripleResult",
    "ECVerdict",
    "placements",
    "local_options",
    "pair_configs",
    "enumerate_pairs",
    "case_label",
    "PAIR_RULES",
    "apply_exclusions",
    "pencil_check",
    "free_pencil_numerics",
    "site_compatible",
    "enumerate_triples",
    "filter_triples",
    "exceptional_collection_verdict",
    "ec_vanishing_requirements",
    "reduce_requirements",
]


# --- profiles and placements -----------------------------------------------

@dataclass(frozen=True)
class CurveProfile:
    label: str
    multiplicity: int
    slots: tuple[str, ...]

    @property
    def reduced_degree(self) -> int:
        return 2 // self.multiplicity


PROFILES = {
    "N": CurveProfile("N", 2, ("smooth", "smooth")),
    "I1": CurveProfile("I1", 1, ("smooth", "smooth")),
    "I2": CurveProfile("I2", 1, ("node", "smooth", "smooth")),
    "I3": CurveProfile("I3", 1, ("tacnode", "smooth")),
    "X": CurveProfile("X", 1, ("node", "smooth", "smooth")),
}

_ORDER = {"N": 0, "I1": 1, "I2": 2, "I3": 3, "X": 4}


@dataclass(frozen=True, order=True)
class Slot:
    site: str
    kind: str
    direction: Optional[str]  # None for a node, which uses both

    def passage(self) -> Passage:
        if self.kind == "node":
            return Passage.NODE
        e = "E1" if self.direction == "x" else "E2"
        return Passage(f"{self.kind}_{e}")


@dataclass(frozen=True)
class PlacedCurve:
    label: str
    slots: tuple[Slot, ...]

    @property
    def profile(self) -> CurveProfile:
        return PROFILES[self.label]

    @property
    def sites(self) -> frozenset:
        return frozenset(s.site for s in self.slots)

    def slot_at(self, site: str) -> Optional[Slot]:
        return next((s for s in self.slots if s.site == site), None)

    def on_Z(self, name: str) -> CurveOnZ:
        """Proper transform of the reduced curve."""
        return CurveOnZ.make(name, self.profile.reduced_degree,
                             {s.site: s.passage() for s in self.slots}, self.label)

    def transformed(self, perm: dict, mirror: bool) -> "PlacedCurve":
        flip = {"x": "y", "y": "x", None: None}
        slots = tuple(sorted(Slot(perm[s.site], s.kind, flip[s.direction] if mirror else s.direction)
                             for s in self.slots))
        return PlacedCurve(self.label, slots)

    def key(self):
        return (_ORDER[self.label], tuple((s.site, s.kind, s.direction or "") for s in self.slots))

    def __str__(self):
        inner = ", ".join(f"{s.site}:{s.kind}{'/' + s.direction if s.direction else ''}"
                          for s in self.slots)
        return f"{self.label}[{inner}]"


def placements(label: str) -> list[PlacedCurve]:
    """Every way to put the slots of a profile on distinct fixed points."""
    prof = PROFILES[label]
    out = set()
    for sites in itertools.permutations(SITES, len(prof.slots)):
        dir_choices = [[None] if k == "node" else ["x", "y"] for k in prof.slots]
        for dirs in itertools.product(*dir_choices):
            slots = tuple(sorted(Slot(s, k, d) for s, k, d in zip(sites, prof.slots, dirs)))
            out.add(PlacedCurve(label, slots))
    return sorted(out, key=lambda c: c.key())


# --- local configurations ---------------------------------------------------

def local_options(s: Slot, t: Slot) -> list[str]:
    """Local configurations possible when slots s and t of two curves meet.

    Two two-branched germs at one point always meet with multiplicity above 4.
    """
    kinds = {s.kind, t.kind}
    if s.kind != "smooth" and t.kind != "smooth":
        return []
    if kinds == {"smooth"}:
        return ["tr"] if s.direction != t.direction else ["tan_sm", "tan_tan"]
    if "node" in kinds:
        return ["tan_node"]
    return ["tr_tac"] if s.direction != t.direction else ["tan_tac"]


# Contact order between branches: each germ is a list of (direction, id)
# branches; a local configuration fixes the cross contacts.
def _branches(slot: Slot) -> list[str]:
    if slot.kind == "smooth":
        return [slot.direction]
    if slot.kind == "node":
        return ["x", "y"]
    return [slot.direction, slot.direction]


def _internal_contact(slot: Slot) -> int:
    return 1 if slot.kind == "node" else 2


def _cross_contact(config: str, b1: str, b2: str) -> int:
    if b1 != b2:
        return 1
    return {"tan_sm": 2, "tan_tan": 4, "tan_node": 2, "tan_tac": 2}[config]


_CASE_KEYS = {
    (0, ("tan_node", "tr")): "1a",
    (1, ("tr_tac",)): "1b-1",
    (0, ("tr_tac", "tr_tac")): "1b-2",
    (0, ("tan_sm", "tr_tac")): "1b-3",
    (0, ("tan_tac",)): "1c",
    (0, ("tan_tan",)): "2a",
    (0, ("tan_sm", "tan_sm")): "2b",
    (2, ("tr",)): "3a",
    (1, ("tr", "tr")): "3b",
    (1, ("tan_sm",)): "3c",
}
CASE_LABELS = tuple(sorted(_CASE_KEYS.values()))


def case_label(n_double: int, configs: Iterable[str]) -> str:
    key = (n_double, tuple(sorted(configs)))
    return _CASE_KEYS.get(key, f"unlisted{key}")


@dataclass(frozen=True)
class PairConfig:
    first: PlacedCurve
    second: PlacedCurve
    assignment: tuple[tuple[str, str], ...]  # (site, local config)

    @property
    def n_double(self) -> int:
        return (self.first.label == "N") + (self.second.label == "N")

    @property
    def factor(self) -> int:
        return self.first.profile.multiplicity * self.second.profile.multiplicity

    @property
    def total_mult(self) -> int:
        return self.factor * sum(local_intersection_mult(c) for _, c in self.assignment)

    @property
    def label(self) -> str:
        return case_label(self.n_double, (c for _, c in self.assignment))

    @property
    def profiles(self) -> tuple[str, str]:
        return tuple(sorted((self.first.label, self.second.label), key=_ORDER.get))

    def config_at(self, site: str) -> Optional[str]:
        return dict(self.assignment).get(site)

    def canonical(self) -> "PairConfig":
        best = None
        for perm in itertools.permutations(SITES):
            p = dict(zip(SITES, perm))
            for mirror in (False, True):
                a = self.first.transformed(p, mirror)
                b = self.second.transformed(p, mirror)
                asg = tuple(sorted((p[s], c) for s, c in self.assignment))
                for x, y in ((a, b), (b, a)):
                    cand = PairConfig(x, y, asg)
                    k = cand._key()
                    if best is None or k < best[0]:
                        best = (k, cand)
        return best[1]

    def _key(self):
        return (self.first.key(), self.second.key(), self.assignment)

    def to_json(self):
        return {"label": self.label, "first": str(self.first), "second": str(self.second),
                "assignment": {s: c for s, c in self.assignment},
                "total_mult": self.total_mult}

    def __str__(self):
        loc = " + ".join(f"{local_intersection_mult(c)}({c})@{s}" for s, c in self.assignment)
        return f"({self.first}, {self.second}) {self.factor}x[{loc}]"


def pair_configs(c1: PlacedCurve, c2: PlacedCurve, target: int = 4) -> list[PairConfig]:
    """Every assignment of local configurations at the shared fixed points
    with weighted total equal to ``target``.  Intersections away from the
    fixed points are not allowed."""
    shared = sorted(c1.sites & c2.sites)
    if not shared:
        return []
    choices = [local_options(c1.slot_at(s), c2.slot_at(s)) for s in shared]
    out = []
    factor = c1.profile.multiplicity * c2.profile.multiplicity
    for combo in itertools.product(*choices):
        if factor * sum(local_intersection_mult(c) for c in combo) == target:
            out.append(PairConfig(c1, c2, tuple(zip(shared, combo))))
    return out


@dataclass
class PairCase:
    label: str
    profiles: list[tuple[str, str]]
    configs: list[PairConfig]

    def to_json(self):
        return {"label": self.label, "profiles": [list(p) for p in self.profiles],
                "representatives": [c.to_json() for c in self.configs]}


def _all_pair_configs(profiles: Optional[Sequence[str]] = None,
                      labels: Sequence[str] = ("N", "I1", "I2", "I3")) -> list[PairConfig]:
    if profiles is not None:
        combos = [tuple(profiles)]
    else:
        combos = list(itertools.combinations_with_replacement(labels, 2))
    seen = {}
    for p, q in combos:
        for c1 in placements(p):
            for c2 in placements(q):
                for pc in pair_configs(c1, c2):
                    can = pc.canonical()
                    seen.setdefault(can._key(), can)
    return [seen[k] for k in sorted(seen)]


def enumerate_pairs(profiles: Optional[Sequence[str]] = None) -> list[PairCase]:
    """Pair configurations collapsed to case labels, sorted by label.

    ``profiles`` restricts to one unordered pair of types, e.g. ("N", "N").
    """
    cases: dict[str, PairCase] = {}
    for pc in _all_pair_configs(profiles):
        case = cases.setdefault(pc.label, PairCase(pc.label, [], []))
        if pc.profiles not in case.profiles:
            case.profiles.append(pc.profiles)
        case.configs.append(pc)
    for case in cases.values():
        case.profiles.sort(key=lambda p: (_ORDER[p[0]], _ORDER[p[1]]))
    return [cases[k] for k in sorted(cases)]


# --- pencils on Z -----------------------------------------------------------

@dataclass
class _Lattice:
    """Divisors on Z as {basis name: coefficient}, with the Gram form."""

    names: list[str]
    gram: list[list[Fraction]]

    def dot(self, u: dict, v: dict) -> Fraction:
        idx = {n: i for i, n in enumerate(self.names)}
        return sum((cu * cv * self.gram[idx[a]][idx[b]]
                    for a, cu in u.items() for b, cv in v.items()), Fraction(0))


def _lattice(curves: Sequence[PlacedCurve]) -> _Lattice:
    cz = [c.on_Z(f"C{i}") for i, c in enumerate(curves)]
    cfg = LatticeConfig(cz)
    gram = build_intersection_matrix(cfg)
    return _Lattice(cfg.labels(), gram)


def _fmt(div: dict) -> str:
    parts = [f"{v}*{k}" for k, v in div.items() if v]
    return " + ".join(parts) or "0"


def pencil_check(curves: Sequence[PlacedCurve], i: int, j: int, exponent: int) -> LedgerResult:
    """Pencil spanned by e*Sigma_i and e*Sigma_j on Z, moved off the chains.

    With d = m_i E_i - m_j E_j (m = multiplicity, E = pullback correction),
    S = e(m_i C_i + max(d, 0)) and T = e(m_j C_j + max(-d, 0)) are linearly
    equivalent once e kills the torsion.  If S.T = 0 and some chain curve E
    outside both supports meets S and T each in one point with degree d, the
    pencil restricts to a degree-d cover E -> P^1 totally ramified over
    S and T.  A further curve F outside both supports with F.S = F.T = 0 and
    F.E > 0 lies in another fibre and adds ramification at least 1 where it
    meets E (taken as given, as in the pencil argument).  Riemann-Hurwitz then
    fails.  CONTRADICTION when all pieces are found, otherwise INCONCLUSIVE.
    """
    try:
        lat = _lattice(curves)
    except InconsistentIncidence as exc:
        return LedgerResult(Verdict.INCONCLUSIVE, [f"no integral lattice: {exc}"], {})
    ci, cj = curves[i], curves[j]
    zi, zj = ci.on_Z("i").E_coefficients(), cj.on_Z("j").E_coefficients()
    mi, mj = ci.profile.multiplicity, cj.profile.multiplicity
    d = [mi * a - mj * b for a, b in zip(zi, zj)]
    S = {f"C{i}": Fraction(exponent * mi)}
    T = {f"C{j}": Fraction(exponent * mj)}
    for name, v in zip(EXCEPTIONAL_NAMES, d):
        if v > 0:
            S[name] = exponent * v
        elif v < 0:
            T[name] = -exponent * v
    chain = [f"S = {_fmt(S)}", f"T = {_fmt(T)}"]
    values = {"S": {k: v for k, v in S.items()}, "T": {k: v for k, v in T.items()},
              "exponent": exponent}
    if any(v.denominator != 1 for v in list(S.values()) + list(T.values())):
        chain.append("S or T is not integral")
        return LedgerResult(Verdict.INCONCLUSIVE, chain, values)
    st = lat.dot(S, T)
    chain.append(f"S.T = {st}")
    values["S.T"] = st
    if st != 0:
        return LedgerResult(Verdict.INCONCLUSIVE, chain, values)

    support = set(S) | set(T)
    others = [f"C{k}" for k in range(len(curves)) if k not in (i, j)]
    reduced = {f"C{k}": {f"C{k}": Fraction(1)} for k in range(len(curves))}
    reduced.update({n: {n: Fraction(1)} for n in EXCEPTIONAL_NAMES})

    def single_point(D: dict, E: str) -> bool:
        touching = [k for k in D if lat.dot(reduced[k], reduced[E]) > 0]
        return len(touching) == 1 and lat.dot(reduced[touching[0]], reduced[E]) == 1

    for E in EXCEPTIONAL_NAMES:
        if E in support:
            continue
        deg = lat.dot(S, reduced[E])
        if deg <= 1 or lat.dot(T, reduced[E]) != deg:
            continue
        if not (single_point(S, E) and single_point(T, E)):
            continue
        for F in list(EXCEPTIONAL_NAMES) + others:
            if F in support or F == E:
                continue
            if lat.dot(reduced[F], S) == 0 and lat.dot(reduced[F], T) == 0 \
                    and lat.dot(reduced[F], reduced[E]) > 0:
                deg_i = int(deg)
                rh = riemann_hurwitz_check(RamifiedCover(deg_i, (deg_i - 1, deg_i - 1, 1)))
                chain.append(f"{E}: S.{E} = T.{E} = {deg_i}, one point each; "
                             f"restriction is a degree {deg_i} cover of P^1")
                chain.append(f"{F} lies in another fibre, {F}.{E} = {lat.dot(reduced[F], reduced[E])}")
                chain.extend(rh.chain)
                values.update({"chain_curve": E, "fibre_curve": F, "degree": deg_i,
                               "indices": [deg_i - 1, deg_i - 1, 1]})
                return LedgerResult(rh.verdict, chain, values)
    chain.append("no chain curve with a fibre curve found")
    return LedgerResult(Verdict.INCONCLUSIVE, chain, values)


def free_pencil_numerics(curves: Sequence[PlacedCurve], exponent: int = 24) -> LedgerResult:
    """Numeric part of the net for two curves of class L meeting once at a
    fixed point: S.T is the length of the single base point on the chain
    over that point, and one blow-up there leaves S'^2 = 0, so the net maps
    onto a curve.  The rest of the argument is not numeric."""
    if len(curves) != 2 or any(c.profile.reduced_degree != 1 for c in curves):
        raise ValueError("expects two curves with reduced class L")
    lat = _lattice(curves)
    zi, zj = curves[0].on_Z("i").E_coefficients(), curves[1].on_Z("j").E_coefficients()
    d = [a - b for a, b in zip(zi, zj)]
    S = {"C0": Fraction(exponent)}
    T = {"C1": Fraction(exponent)}
    for name, v in zip(EXCEPTIONAL_NAMES, d):
        if v > 0:
            S[name] = exponent * v
        elif v < 0:
            T[name] = -exponent * v
    S2, ST = lat.dot(S, S), lat.dot(S, T)
    shared = sorted(curves[0].sites & curves[1].sites)
    site = shared[0]
    mS = S.get(f"E_{site}1", 0) + S.get(f"E_{site}2", 0)
    mT = T.get(f"E_{site}1", 0) + T.get(f"E_{site}2", 0)
    blown = S2 - mS * mT
    chain = [f"S = {_fmt(S)}", f"T = {_fmt(T)}", f"S^2 = {S2}, S.T = {ST}",
             f"base point E_{site}1 n E_{site}2 with multiplicities {mS}, {mT}",
             f"after one blow-up S'^2 = {S2} - {mS}*{mT} = {blown}"]
    ok = S2 == ST and mS * mT == ST and blown == 0
    return LedgerResult(Verdict.CONSISTENT if ok else Verdict.INCONCLUSIVE, chain,
                        {"S^2": S2, "S.T": ST, "S'^2": blown})


# --- exclusion rules --------------------------------------------------------

@dataclass(frozen=True)
class ExclusionRule:
    """A named check applied to pair cases with labels in ``scope``.

    ``checker`` maps a PairCase to (verdict, certificate dict).  A rule fires
    only on CONTRADICTION.  ``citation_only`` marks prose-geometric steps
    whose verdict is recorded, not computed.
    """

    name: str
    scope: tuple[str, ...]
    checker: Callable
    description: str = ""
    citation_only: bool = False


@dataclass
class RuleFiring:
    rule: str
    target: str
    verdict: Verdict
    certificate: dict = field(default_factory=dict)
    citation_only: bool = False

    def to_json(self):
        return {"rule": self.rule, "target": self.target, "verdict": self.verdict.value,
                "citation_only": self.citation_only, "certificate": self.certificate}


def _golden_m4_checker(case: PairCase, golden: Optional[dict] = None):
    from .surface_lattice import picard_contradiction
    from . import golden as golden_mod

    data = golden if golden is not None else golden_mod.load()
    results = []
    verdict = Verdict.CONTRADICTION
    for entry in golden_mod.lattice_entries(data, "m4"):
        matrix = golden_mod.matrix_from(entry)
        res = picard_contradiction(matrix)
        if res.verdict is not Verdict.CONTRADICTION or res.determinant != entry["determinant"]:
            verdict = Verdict.INCONCLUSIVE
        results.append({"name": entry["name"], **res.to_json()})
    return verdict, {"matrices": results,
                     "note": "matrices as supplied; pair intersection 0 is input data"}


def _pencil_pair_checker(exponent: int):
    def check(case: PairCase):
        certs, verdict = [], Verdict.CONTRADICTION
        for pc in case.configs:
            res = pencil_check([pc.first, pc.second], 0, 1, exponent)
            if res.verdict is not Verdict.CONTRADICTION:
                alt = pencil_check([pc.second, pc.first], 0, 1, exponent)
                if alt.verdict is Verdict.CONTRADICTION:
                    res = alt
            certs.append({"config": str(pc), **res.to_json()})
            if res.verdict is not Verdict.CONTRADICTION:
                verdict = Verdict.INCONCLUSIVE
        return verdict, {"pencils": certs}
    return check


def _nn_checker(case: PairCase):
    certs = []
    for pc in case.configs:
        certs.append({"config": str(pc), **free_pencil_numerics([pc.first, pc.second]).to_json()})
    return Verdict.CONTRADICTION, {"numeric_subcheck": certs,
                                   "note": "connectedness of the special fibres is prose-geometric"}


PAIR_RULES = (
    ExclusionRule("m=4", ("2a",), _golden_m4_checker,
                  "Gram matrix of the two curves and six chain curves is nondegenerate"),
    ExclusionRule("I1I1", ("2b",), _pencil_pair_checker(12),
                  "degree 12 pencil violates Riemann-Hurwitz on a chain curve"),
    ExclusionRule("NN", ("3a",), _nn_checker,
                  "net of class 24L has a single base point and maps to a curve",
                  citation_only=True),
)

X_RULE = RuleFiring("X", "type X", Verdict.CONTRADICTION,
                    {"note": "reducible type excluded before enumeration; "
                             "the net argument is prose-geometric"}, citation_only=True)


def apply_exclusions(cases: Sequence[PairCase], rules: Sequence[ExclusionRule] = PAIR_RULES,
                     strict: bool = True):
    """Remove every case on which some rule in scope returns CONTRADICTION.

    Each rule is evaluated on each case independently, so the survivors do
    not depend on rule order.  With ``strict``, a rule that returns anything
    else on a case in its scope raises VerificationFailure.
    """
    log: list[RuleFiring] = []
    killed = set()
    for case in cases:
        for rule in rules:
            if case.label not in rule.scope:
                continue
            verdict, cert = rule.checker(case)
            log.append(RuleFiring(rule.name, case.label, verdict, cert, rule.citation_only))
            if verdict is Verdict.CONTRADICTION:
                killed.add(case.label)
            elif strict:
                raise VerificationFailure(f"rule {rule.name} did not exclude {case.label}: {verdict}")
    return [c for c in cases if c.label not in killed], log


# --- torsion contexts ---------------------------------------------------------

@dataclass(frozen=True)
class TorsionContext:
    name: str
    torsion_exponent: int
    excluded_types: tuple[str, ...] = ()
    three_cubic_roots: bool = True
    restriction_argument: bool = False
    K_split_default: bool = True
    description: str = ""


CONTEXTS = {
    "H1_quotient_C3": TorsionContext(
        "H1_quotient_C3", 3, ("N", "X"), True, False, True,
        "invariant torsion is C3; N and X would give a section of K_M"),
    "H1_quotient_C2xC3_nonC18": TorsionContext(
        "H1_quotient_C2xC3_nonC18", 6, (), True, True, True,
        "invariant torsion is C2 x C3, K_M = 3L"),
    "H1_quotient_C2xC3_C18": TorsionContext(
        "H1_quotient_C2xC3_C18", 6, (), True, True, False,
        "invariant torsion is C2 x C3, K_M = 3L + omega"),
    "generic": TorsionContext(
        "generic", 12, (), True, False, True,
        "no torsion-specific facts; 12 kills every invariant torsion"),
}


def _ctx(ctx) -> TorsionContext:
    if isinstance(ctx, TorsionContext):
        return ctx
    try:
        return CONTEXTS[ctx]
    except KeyError:
        raise KeyError(f"unknown torsion context {ctx!r}; choose from {sorted(CONTEXTS)}") from None


# --- triples --------------------------------------------------------------------

def site_compatible(curves: Sequence[PlacedCurve], pair_assign: dict, site: str) -> bool:
    """Branch contacts at one point must be ultrametric: for branches u, v, w,
    c(u, w) >= min(c(u, v), c(v, w)).  Contacts come from each germ's own
    structure and from the chosen pairwise local configurations."""
    branches = []
    for idx, c in enumerate(curves):
        slot = c.slot_at(site)
        if slot is None:
            continue
        for b, direction in enumerate(_branches(slot)):
            branches.append((idx, b, direction, slot))
    n = len(branches)
    if n <= 2:
        return True
    contact = [[0] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            iu, _, du, su = branches[u]
            iv, _, dv, sv = branches[v]
            if iu == iv:
                c = _internal_contact(su)
            else:
                cfg = pair_assign[(min(iu, iv), max(iu, iv))][site]
                c = _cross_contact(cfg, du, dv)
            contact[u][v] = contact[v][u] = c
    for u, v, w in itertools.permutations(range(n), 3):
        if contact[u][w] < min(contact[u][v], contact[v][w]):
            return False
    return True


@dataclass(frozen=True)
class TripleConfig:
    curves: tuple[PlacedCurve, PlacedCurve, PlacedCurve]
    pairs: tuple[PairConfig, PairConfig, PairConfig]  # (0,1), (0,2), (1,2)

    @property
    def types(self) -> tuple[str, ...]:
        return tuple(sorted((c.label for c in self.curves), key=_ORDER.get))

    def pair_labels(self) -> tuple[str, ...]:
        return tuple(p.label for p in self.pairs)

    def common_points(self) -> list[str]:
        s = self.curves[0].sites & self.curves[1].sites & self.curves[2].sites
        return sorted(s)

    def _key(self):
        return (tuple(c.key() for c in self.curves), tuple(p.assignment for p in self.pairs))

    def canonical(self) -> "TripleConfig":
        best = None
        idx_pairs = ((0, 1), (0, 2), (1, 2))
        for perm in itertools.permutations(SITES):
            p = dict(zip(SITES, perm))
            for mirror in (False, True):
                cs = [c.transformed(p, mirror) for c in self.curves]
                asg = {ij: tuple(sorted((p[s], cfg) for s, cfg in pc.assignment))
                       for ij, pc in zip(idx_pairs, self.pairs)}
                for order in itertools.permutations(range(3)):
                    new_c = tuple(cs[o] for o in order)
                    new_p = []
                    for a, b in idx_pairs:
                        oa, ob = order[a], order[b]
                        new_p.append(PairConfig(new_c[a], new_c[b], asg[(min(oa, ob), max(oa, ob))]))
                    cand = TripleConfig(new_c, tuple(new_p))
                    k = cand._key()
                    if best is None or k < best[0]:
                        best = (k, cand)
        return best[1]

    def to_json(self):
        return {"types": list(self.types), "curves": [str(c) for c in self.curves],
                "pairs": [p.to_json() for p in self.pairs],
                "common_points": self.common_points()}

    def __str__(self):
        return " | ".join(str(p) for p in self.pairs)


def enumerate_triples(labels: Sequence[str] = ("N", "I1", "I2", "I3")) -> tuple[list[TripleConfig], list[dict]]:
    """Triples of placed curves with a valid configuration on every pair.

    Returns (candidates, structural_rejections).  A rejection records a
    triple of placements whose pairwise configurations all exist but are
    incompatible at some shared point.
    """
    pool = [c for lab in labels for c in placements(lab)]
    valid: dict = {}
    for a, b in itertools.combinations_with_replacement(range(len(pool)), 2):
        opts = pair_configs(pool[a], pool[b])
        if opts:
            valid[(a, b)] = opts
    seen: dict = {}
    rejected: dict = {}
    for a, b, c in itertools.combinations_with_replacement(range(len(pool)), 3):
        if (a, b) not in valid or (a, c) not in valid or (b, c) not in valid:
            continue
        curves = (pool[a], pool[b], pool[c])
        shared = curves[0].sites | curves[1].sites | curves[2].sites
        for p01, p02, p12 in itertools.product(valid[(a, b)], valid[(a, c)], valid[(b, c)]):
            assign = {(0, 1): dict(p01.assignment), (0, 2): dict(p02.assignment),
                      (1, 2): dict(p12.assignment)}
            t = TripleConfig(curves, (p01, p02, p12))
            ok = all(site_compatible(curves, assign, s) for s in shared)
            store = seen if ok else rejected
            can = t.canonical()
            store.setdefault(can._key(), can)
    cands = [seen[k] for k in sorted(seen)]
    rej = [{"triple": str(rejected[k]), "types": list(rejected[k].types),
            "rule": "structural", "reason": "branch contacts not ultrametric at a shared point"}
           for k in sorted(rejected) if k not in seen]
    return cands, rej


@dataclass
class TripleResult:
    context: str
    survivors: list[TripleConfig]
    eliminated: list[dict]
    log: list[RuleFiring]
    consequences: list[dict]

    @property
    def survivor_types(self) -> list[tuple[str, ...]]:
        return sorted({t.types for t in self.survivors})

    def to_json(self):
        return {"context": self.context,
                "survivor_types": [list(t) for t in self.survivor_types],
                "survivors": [t.to_json() for t in self.survivors],
                "eliminated": self.eliminated,
                "pair_rules": [f.to_json() for f in self.log],
                "consequences": self.consequences}


def _triple_pencil(t: TripleConfig, labels: set, exponent: int, with_E_pair: bool = True):
    """Pencil on some pair of the triple whose case label is in ``labels``;
    the third curve may serve as the fibre curve."""
    pair_idx = ((0, 1), (0, 2), (1, 2))
    tried = []
    for (i, j), pc in zip(pair_idx, t.pairs):
        if pc.label not in labels:
            continue
        for a, b in ((i, j), (j, i)):
            res = pencil_check(list(t.curves), a, b, exponent)
            tried.append(res)
            if res.verdict is Verdict.CONTRADICTION:
                return res
    return tried[0] if tried else None


def _empty_common_ledger(t: TripleConfig, ctx: TorsionContext):
    if t.common_points():
        return None
    return cubic_surface_ledger(ctx.torsion_exponent)


def _triple_rules(ctx: TorsionContext):
    """Ordered (name, predicate, checker) triple rules; first kill wins."""
    e = ctx.torsion_exponent
    return [
        ("I3I3", lambda t: "1b-2" in t.pair_labels(),
         lambda t: _triple_pencil(t, {"1b-2"}, e)),
        ("1b3", lambda t: "1b-3" in t.pair_labels(),
         lambda t: _triple_pencil(t, {"1b-3"}, e)),
        ("3I3", lambda t: "N" not in t.types,
         lambda t: _empty_common_ledger(t, ctx)),
        ("last-ledger", lambda t: t.types.count("N") == 1,
         lambda t: _empty_common_ledger(t, ctx)),
        ("last-RH", lambda t: t.types.count("N") == 1,
         lambda t: _triple_pencil(t, {"3b", "3c", "1b-1"}, e)),
    ]


def filter_triples(ctx="H1_quotient_C2xC3_nonC18", strict: bool = True) -> TripleResult:
    """Triples of distinct invariant curves in 2L surviving every rule.

    Order: structural compatibility, context pre-exclusions, pair rules,
    then the triple rules.  Each eliminated triple records the first rule
    that killed it.
    """
    ctx = _ctx(ctx)
    cands, structural = enumerate_triples()
    eliminated = list(structural)
    pairs = enumerate_pairs()
    surviving_pairs, log = apply_exclusions(pairs, PAIR_RULES, strict=strict)
    ok_labels = {c.label for c in surviving_pairs}
    survivors = []
    rules = _triple_rules(ctx)
    for t in cands:
        record = {"triple": str(t), "types": list(t.types)}
        bad_type = next((x for x in t.types if x in ctx.excluded_types), None)
        if bad_type:
            eliminated.append({**record, "rule": "NX", "reason": f"type {bad_type} excluded in {ctx.name}"})
            continue
        bad_pair = next((p for p in t.pairs if p.label not in ok_labels), None)
        if bad_pair:
            fired = next(f.rule for f in log if f.target == bad_pair.label)
            eliminated.append({**record, "rule": fired, "reason": f"contains pair case {bad_pair.label}"})
            continue
        for name, applies, checker in rules:
            if not applies(t):
                continue
            res = checker(t)
            if res is not None and res.verdict is Verdict.CONTRADICTION:
                eliminated.append({**record, "rule": name, "certificate": res.to_json()})
                break
        else:
            survivors.append(t)
    return TripleResult(ctx.name, survivors, eliminated, log, _consequences(cands, eliminated))


def _consequences(cands, eliminated) -> list[dict]:
    """Statements that follow from the elimination log rather than from a
    dedicated computation."""
    by_triple = {e["triple"]: e["rule"] for e in eliminated}

    def summary(name, statement, group):
        rules = sorted({by_triple.get(str(t), "survived") for t in group})
        return {"name": name, "statement": statement, "count": len(group),
                "eliminated_by": rules, "holds": "survived" not in rules}

    with_1a = [t for t in cands if "1a" in t.pair_labels() and "N" not in t.types]
    i133 = [t for t in cands if t.types == ("I1", "I3", "I3")]
    return [
        summary("I1I21a", "no triple without N contains a (1a) pair", with_1a),
        summary("I1I3I3", "no triple of type (I1, I3, I3) survives", i133),
    ]


# --- exceptional collection verdict ---------------------------------------------

class ECVerdict(str, Enum):
    EC_EXISTS = "EC_EXISTS"
    H0_VANISHES_ONLY = "H0_VANISHES_ONLY"
    UNDECIDED = "UNDECIDED"

    def __str__(self):
        return self.value


def _restriction_check(t: TripleConfig) -> LedgerResult:
    """On the elliptic curve C_Z (type N), 3 Sigma'_Y and 3 Sigma''_Y restrict
    to sections of a degree-2 bundle that vanish together over the common
    fixed points.  Independence of the two sections is a hypothesis."""
    deg = restricted_degree(6, 1)
    base = len(t.common_points())
    return elliptic_pencil_check(int(deg), 2, base, sections_independent=True)


def exceptional_collection_verdict(ctx, K_split: Optional[bool] = None) -> tuple[ECVerdict, dict]:
    ctx = _ctx(ctx)
    if K_split is None:
        K_split = ctx.K_split_default
    evidence: dict = {"context": ctx.name, "K_split": K_split}
    if not ctx.three_cubic_roots:
        return ECVerdict.UNDECIDED, {**evidence, "reason": "fewer than three invariant cubic roots"}
    res = filter_triples(ctx)
    types = res.survivor_types
    evidence["survivor_types"] = [list(x) for x in types]
    vanishes = False
    if not types:
        vanishes = True
        evidence["reason"] = "no triple survives, so one of the three 2L-classes has no sections"
    elif types == [("N", "I1", "I2")] and ctx.restriction_argument:
        checks = [_restriction_check(t) for t in res.survivors]
        evidence["restriction_checks"] = [c.to_json() for c in checks]
        vanishes = all(c.verdict is Verdict.CONTRADICTION for c in checks)
        evidence["reason"] = ("surviving (N, I1, I2) refuted on the elliptic curve" if vanishes
                              else "restriction argument inconclusive")
    else:
        evidence["reason"] = "surviving triples not refuted"
    if not vanishes:
        return ECVerdict.UNDECIDED, evidence
    if K_split:
        return ECVerdict.EC_EXISTS, evidence
    return ECVerdict.H0_VANISHES_ONLY, evidence


def ec_vanishing_requirements(mu1=0, mu2=0, omega=0, order: int = 6) -> list[tuple[int, int]]:
    """Classes (m, t) = mL + t (torsion t in Z/order) whose h^0 must vanish for
    O, -(L + mu1), -(2L + mu2) to be exceptional when K = 3L + omega."""
    req = [
        (1, mu1), (1, omega - mu2), (1, mu2 - mu1),
        (2, omega - mu1), (2, mu2), (2, omega + mu1 - mu2),
    ]
    return sorted({(m, t % order) for m, t in req})


def reduce_requirements(req: Iterable[tuple[int, int]], order: int = 6) -> list[tuple[int, int]]:
    """Drop (1, t) when (2, 2t) is also required: a section of L + t squares
    to a section of 2L + 2t.

    >>> reduce_requirements(ec_vanishing_requirements())
    [(2, 0)]
    """
    req = {(m, t % order) for m, t in req}
    return sorted((m, t) for m, t in req if not (m == 1 and (2, (2 * t) % order) in req))
