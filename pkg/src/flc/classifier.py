"""Framed circles: tw and rot, and which exact sequences hold.

Given X (through pi_1, pi_2 and w2) and a class c in pi_1 X, decide

* whether the framings ``nu c`` and ``tw(nu c)`` agree (the full twist);
* whether the normal rotation ``rot`` dies in pi_1 of framed immersions;
* which of the four immersion cases holds, and whether ``rot`` splits;
* the corresponding statement for framed embeddings, where ``rot`` can
  only die along spheres on which the Dax invariant vanishes.  The Dax
  invariant is not computed; it is supplied as a vanishing oracle.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field, fields

from .groups import (
    FGAbelianGroup,
    FiniteTableGroup,
    SelfCentralizingZ,
    SubgroupDescriptor,
    UnsupportedQuery,
    ValidationError,
)
from .loopspace import describe_pi1_imm, imm_invariants
from .pi2mod import Pi2Module, SubmoduleDescriptor, fixed_submodule, validate_action
from .spinclass import (
    NONSPLIT,
    SPLIT,
    AbelianCocycle,
    AlmostSpinAbelian,
    AlmostSpinCocycle,
    ExtensionDescriptor,
    FrameBundlePi1,
    SpinType,
    TotallyNonspin,
    W2Data,
    build_pi1_frame_bundle,
    classify_spin_type,
    h1_frame_bundle,
    lifted_commutator,
    restricted_splitting,
    validate_w2,
)

SCHEMA_VERSION = "1"
COMBINATION_BOUND = 12

# -- inputs -----------------------------------------------------------------------


@dataclass
class ManifoldData:
    name: str
    pi1: object
    pi2: Pi2Module
    w2: W2Data
    notes: str = ""

    def violations(self) -> list[str]:
        out = [f"pi2: {v}" for v in validate_action(self.pi2, self.pi1)]
        if self.pi2.pi1 is not self.pi1 and self.pi2.pi1 != self.pi1:
            out.append("pi2: module is over a different pi1")
        if isinstance(self.w2, TotallyNonspin) and len(self.w2.w2s) != self.pi2.ngens:
            out.append(f"w2: w2s has {len(self.w2.w2s)} entries for {self.pi2.ngens} pi2 generators")
        else:
            out += [f"w2: {v}" for v in validate_w2(self.w2, self.pi1, self.pi2)]
        return out

    def validate(self) -> None:
        bad = self.violations()
        if bad:
            raise ValidationError(bad, self.name)


def normalize_element(G, c):
    if isinstance(G, FGAbelianGroup):
        return G.check(G.reduce(c))
    return G.check(c)


@dataclass
class CircleClass:
    """The homotopy class of the circle, with its centralizer and the fixed part of pi_2."""

    element: object
    centralizer: SubgroupDescriptor | None
    fixed: SubmoduleDescriptor

    @classmethod
    def of(cls, X: ManifoldData, c) -> CircleClass:
        c = normalize_element(X.pi1, c)
        try:
            C = X.pi1.centralizer(c)
        except UnsupportedQuery:
            C = None
        return cls(c, C, fixed_submodule(X.pi2, c))

    def is_identity(self, G) -> bool:
        return self.element == G.identity


@dataclass(frozen=True)
class DaxOracle:
    """Vanishing of ``dax_c`` on Fix_c(pi_2), keyed by Fix-generator combinations.

    ``mode`` is ``all-zero``, ``all-nonzero``, ``table`` or ``absent``.  Table
    keys are generator indices (``"0"``) or sums of them (``"0+2"``); the
    value is 1 when dax vanishes there.  Since dax is a homomorphism, a sum
    vanishes when all its terms do and does not vanish when exactly one term
    does not.
    """

    mode: str = "absent"
    table: tuple[tuple[str, int], ...] = ()

    @classmethod
    def from_table(cls, table: dict) -> DaxOracle:
        return cls("table", tuple(sorted((_combo_key(_parse_key(k)), int(bool(v))) for k, v in table.items())))

    def vanishes(self, combo: tuple[int, ...]) -> bool | None:
        if self.mode == "all-zero":
            return True
        if self.mode == "all-nonzero":
            return False
        if self.mode == "absent":
            return None
        t = dict(self.table)
        key = _combo_key(combo)
        if key in t:
            return bool(t[key])
        parts = [t.get(str(i)) for i in combo]
        if any(p is None for p in parts):
            return None
        nonvanishing = sum(1 for p in parts if not p)
        if nonvanishing == 0:
            return True
        if nonvanishing == 1:
            return False
        return None

    def to_dict(self) -> dict:
        out = {"mode": self.mode}
        if self.mode == "table":
            out["vanishes"] = {k: v for k, v in self.table}
        return out


def _parse_key(k) -> tuple[int, ...]:
    return tuple(sorted(int(x) for x in str(k).split("+")))


def _combo_key(combo) -> str:
    return "+".join(str(i) for i in sorted(combo))


# -- the individual decisions ---------------------------------------------------------


@dataclass
class TwStatus:
    equal: bool
    justification: str
    witness: object = None


def tw_status(X: ManifoldData, c: CircleClass) -> TwStatus:
    """Whether ``tw(nu c)`` and ``nu c`` are isotopic as framed immersions."""
    G = X.pi1
    st = classify_spin_type(X.w2, X.pi2, G)
    if st is SpinType.TOTALLY_NONSPIN:
        return TwStatus(True, "w2s-nonzero")
    if st is not SpinType.H_NONSPIN:
        return TwStatus(False, "w2h-zero")
    x = c.element
    if isinstance(G, SelfCentralizingZ):
        return TwStatus(False, "centralizer-is-<c>: com(c^k, c) = 0")
    if isinstance(G, FGAbelianGroup) and isinstance(X.w2, AlmostSpinAbelian):
        for y in G.basis():
            if lifted_commutator(X.w2, G, y, x):
                return TwStatus(True, "torus-witness", G.label(y))
        return TwStatus(False, "pairing-vanishes-on-centralizer")
    for y in c.centralizer.elements:
        if lifted_commutator(X.w2, G, y, x):
            return TwStatus(True, "torus-witness", G.label(y))
    return TwStatus(False, "pairing-vanishes-on-centralizer")


def tw_bruteforce_oracle(X: ManifoldData, c: CircleClass, fb: FrameBundlePi1 | None = None) -> bool:
    """tw = nu c iff ``z c~`` is conjugate to ``c~`` in pi_1 Fr X; exhaustive search."""
    fb = fb or build_pi1_frame_bundle(X.w2, X.pi1, X.pi2)
    if not fb.has_table:
        raise UnsupportedQuery("oracle unavailable: pi1 FrX is not an explicit finite group")
    E = fb.table
    ct = fb.lift(c.element)
    target = E.product(fb.z, ct)
    return any(E.product(E.product(w, ct), E.inverse[w]) == target for w in range(E.order))


@dataclass
class RotStatus:
    trivial: bool
    witness: tuple[int, ...] | None = None
    witness_combination: tuple[int, ...] | None = None


def _w2s_values(X: ManifoldData, fixed: SubmoduleDescriptor) -> list[int]:
    if not isinstance(X.w2, TotallyNonspin):
        return [0] * len(fixed.generators)
    f = X.w2.w2s
    return [sum(a * b for a, b in zip(f, u)) & 1 for u in fixed.generators]


def rot_status_imm(X: ManifoldData, c: CircleClass) -> RotStatus:
    """rot dies in pi_1 of framed immersions iff w2s is nonzero on Fix_c(pi_2)."""
    vals = _w2s_values(X, c.fixed)
    for i, v in enumerate(vals):
        if v:
            return RotStatus(True, tuple(c.fixed.generators[i]), (i,))
    return RotStatus(False)


def rot_status_by_enumeration(X: ManifoldData, c: CircleClass, bound: int = COMBINATION_BOUND) -> RotStatus:
    """Same decision by enumerating F2-combinations of Fix generators."""
    gens = c.fixed.generators
    if len(gens) > bound:
        raise UnsupportedQuery(f"{len(gens)} Fix generators exceed the enumeration bound {bound}")
    f = X.w2.w2s if isinstance(X.w2, TotallyNonspin) else None
    for r in range(1, len(gens) + 1):
        for combo in itertools.combinations(range(len(gens)), r):
            b = [sum(gens[i][k] for i in combo) for k in range(X.pi2.ngens)]
            if f is not None and sum(x * y for x, y in zip(f, b)) % 2:
                return RotStatus(True, tuple(b), combo)
    return RotStatus(False)


CASE_SEQUENCES = {
    "1a": "π₁Imm^fr ↣ π₁Imm ↠ Z/2, νc = tw",
    "1b": "Z/2 ↣ π₁Imm^fr → π₁Imm ↠ Z/2, νc = tw",
    "2a": "Z/2 ↣ π₁Imm^fr → π₁Imm ↠ Z/2, νc = tw",
    "2b": "Z/2 ↣ π₁Imm^fr ↠ π₁Imm, νc ≠ tw",
}


def _structure(rot_dies: bool, tw_equal: bool, space: str) -> dict:
    return {
        "head": None if rot_dies else "Z/2",
        "head_map": None if rot_dies else "rot",
        "middle": f"π₁{space}^fr → π₁{space}",
        "middle_injective": rot_dies,
        "middle_surjective": not tw_equal,
        "tail": "Z/2" if tw_equal else None,
        "tw_equals_nu": tw_equal,
    }


def render_sequence(rot_dies: bool, tw_equal: bool, space: str) -> str:
    head = "" if rot_dies else "Z/2 ↣ "
    if rot_dies:
        arrow = " ↣ "
    elif not tw_equal:
        arrow = " ↠ "
    else:
        arrow = " → "
    tail = " ↠ Z/2, νc = tw" if tw_equal else ", νc ≠ tw"
    return f"{head}π₁{space}^fr{arrow}π₁{space}{tail}"


@dataclass
class CaseResult:
    case: str
    sequence: str
    structure: dict


def theorem_a_case(X: ManifoldData, c: CircleClass, tw: TwStatus | None = None,
                   rot: RotStatus | None = None) -> CaseResult:
    st = classify_spin_type(X.w2, X.pi2, X.pi1)
    tw = tw or tw_status(X, c)
    rot = rot or rot_status_imm(X, c)
    if st is SpinType.TOTALLY_NONSPIN:
        case = "1a" if rot.trivial else "1b"
    else:
        case = "2a" if tw.equal else "2b"
    seq = render_sequence(rot.trivial, tw.equal, "Imm")
    if seq != CASE_SEQUENCES[case]:
        raise AssertionError(f"case {case} rendered as {seq!r}")
    return CaseResult(case, seq, _structure(rot.trivial, tw.equal, "Imm"))


@dataclass
class RotSplitting:
    tag: str
    detail: ExtensionDescriptor | None
    warnings: list[str] = field(default_factory=list)


def _h_prime(X: ManifoldData, c: CircleClass, fb: FrameBundlePi1) -> tuple[SubgroupDescriptor, bool]:
    """Image of the centralizer of a lift of c in pi_1 Fr X; flag whether it is all of Fix_c."""
    G = X.pi1
    x = c.element
    if isinstance(G, SelfCentralizingZ):
        return SubgroupDescriptor(G, [1], False, None, "<c> = Z"), True
    if isinstance(G, FGAbelianGroup) and isinstance(X.w2, AlmostSpinAbelian):
        om = AbelianCocycle(G, X.w2.ext_bits, X.w2.pairing)
        f = [om.pairing_value(e, x) for e in G.basis()]
        n = G.ngens
        ones = [i for i in range(n) if f[i]]
        if not ones:
            els = G.elements() if G.is_finite else None
            return SubgroupDescriptor(G, G.basis(), G.is_finite, els, G.describe()), True
        i0 = ones[0]
        e = G.basis()
        gens = [e[i] for i in range(n) if not f[i]]
        gens.append(G.power(e[i0], 2))
        gens += [G.product(e[i], e[i0]) for i in ones[1:]]
        els = [g for g in G.elements() if om.pairing_value(g, x) == 0] if G.is_finite else None
        return SubgroupDescriptor(G, gens, G.is_finite, els, "{y : com(y, c) = 0}"), False
    C = c.centralizer.elements
    els = [y for y in C if lifted_commutator(X.w2, G, y, x) == 0]
    return (SubgroupDescriptor(G, els, True, els, f"{{y in C(c) : com(y, c) = 0}}, order {len(els)}"),
            len(els) == len(C))


def rot_splitting(X: ManifoldData, c: CircleClass, fb: FrameBundlePi1 | None = None) -> RotSplitting:
    fb = fb or build_pi1_frame_bundle(X.w2, X.pi1, X.pi2)
    st = fb.spin_type
    if st is SpinType.SPIN:
        return RotSplitting("by-spin", None)
    if st is SpinType.TOTALLY_NONSPIN:
        return RotSplitting("by-restriction", restricted_splitting(fb, c.centralizer or
                            SubgroupDescriptor(X.pi1, [], False, None, "Fix_c")))
    H, full = _h_prime(X, c, fb)
    warnings = []
    if not full:
        warnings.append("Fix_{νc}(π₁FrX) → Fix_c(π₁X) is not surjective; splitting decided over its image "
                        + H.description)
    detail = restricted_splitting(fb, H)
    tag = "by-restriction" if detail.status == SPLIT else "unknown"
    if detail.status == NONSPLIT:
        detail.notes.append("restricted extension is nonsplit; no conclusion about rot")
    return RotSplitting(tag, detail, warnings)


def theorem_b_branch(X: ManifoldData, c: CircleClass, dax: DaxOracle, tw: TwStatus | None = None,
                     split: RotSplitting | None = None, bound: int = COMBINATION_BOUND) -> dict:
    tw = tw or tw_status(X, c)
    warnings: list[str] = []
    if c.is_identity(X.pi1) and dax.mode != "all-zero":
        if dax.mode != "absent":
            warnings.append("c = 1 forces dax to vanish on all of π₂; oracle input ignored")
        dax = DaxOracle("all-zero")
    part1 = {
        "tw_equals_nu": tw.equal,
        "sequence": "π₁Emb^fr → π₁Emb ↠ Z/2, νc = tw" if tw.equal else "π₁Emb^fr ↠ π₁Emb, νc ≠ tw",
    }
    gens = c.fixed.generators
    vals = _w2s_values(X, c.fixed)
    deciding = [i for i, v in enumerate(vals) if v]
    if len(gens) <= bound:
        combos = [cb for r in range(1, len(gens) + 1) for cb in itertools.combinations(range(len(gens)), r)]
    else:
        combos = [(i,) for i in range(len(gens))]
        warnings.append(f"{len(gens)} Fix generators: only single generators searched for b")
    candidates = [cb for cb in combos if sum(vals[i] for i in cb) & 1]
    found = None
    unknown = []
    for cb in candidates:
        v = dax.vanishes(cb)
        if v:
            found = cb
            break
        if v is None:
            unknown.append(cb)
    split = split or rot_splitting(X, c)
    if found is not None:
        status = "rot-dies"
    elif unknown:
        status = "conditional"
    else:
        status = "rot-survives"
    part2: dict = {"status": status, "fix_generators": [list(u) for u in gens]}
    if status == "rot-dies":
        b = [sum(gens[i][k] for i in found) for k in range(X.pi2.ngens)]
        part2["sequence"] = "π₁Emb^fr ↣ π₁Emb"
        part2["witness"] = {"combination": _combo_key(found), "b": b}
    elif status == "rot-survives":
        part2["sequence"] = "Z/2 ↣ π₁Emb^fr → π₁Emb"
        part2["rot_splits"] = split.tag
    else:
        part2["sequence"] = "conditional on Dax oracle"
        part2["if_vanishing"] = "π₁Emb^fr ↣ π₁Emb"
        part2["otherwise"] = "Z/2 ↣ π₁Emb^fr → π₁Emb"
        part2["rot_splits_otherwise"] = split.tag
        part2["deciding_generators"] = [i for i in deciding if any(i in cb for cb in unknown)]
        part2["undetermined_combinations"] = [_combo_key(cb) for cb in unknown[:64]]
    out = {"part1": part1, "part2": part2, "dax": dax.to_dict(), "warnings": warnings}
    if status != "conditional":
        rot_dies = status == "rot-dies"
        out["sequence"] = render_sequence(rot_dies, tw.equal, "Emb")
        if not rot_dies and not tw.equal and split.tag != "unknown":
            out["isomorphism"] = "π₁Emb^fr ≅ Z/2 × π₁Emb"
            out["split_status"] = split.tag
    return out


# -- the report ----------------------------------------------------------------------


@dataclass
class ClassificationReport:
    schema_version: str
    manifold: str
    circle: dict
    spin_alternative: str
    pi0_imm: dict
    pi1_imm: dict
    frame_bundle: dict
    tw_equals_nu: bool
    tw_justification: str
    tw_witness: object
    rot_trivial_imm: bool
    rot_witness: list | None
    theorem_a_case: str
    theorem_a_sequence: dict
    rot_splits: str
    rot_splitting_detail: dict | None
    theorem_b_branch: dict
    warnings: list

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> ClassificationReport:
        names = [f.name for f in fields(cls)]
        missing = [n for n in names if n not in d]
        if missing:
            raise ValueError(f"report is missing fields {missing}")
        return cls(**{n: d[n] for n in names})

    @property
    def unsupported(self) -> bool:
        return any(w.startswith("unsupported") for w in self.warnings)


def classify(X: ManifoldData, c, dax: DaxOracle | None = None) -> ClassificationReport:
    X.validate()
    dax = dax or DaxOracle()
    G = X.pi1
    circle = CircleClass.of(X, c)
    warnings: list[str] = []
    st = classify_spin_type(X.w2, X.pi2, G)
    fb = build_pi1_frame_bundle(X.w2, G, X.pi2)
    try:
        h1 = h1_frame_bundle(fb)
        rank, tors = h1.canonical_form
        h1_field = {"rank": rank, "torsion": list(tors), "description": h1.describe()}
    except UnsupportedQuery as exc:
        h1_field = {"symbolic": "Z/2 + H1 X" if st is SpinType.SPIN else "H1 FrX"}
        warnings.append(f"unsupported: H1 of the frame bundle left symbolic ({exc})")

    loops = imm_invariants(G, X.pi2, circle.element)
    warnings += [f"unsupported: {w}" for w in loops.warnings]
    pi1_imm = loops.pi1_extension.to_dict()
    pi1_imm["description"] = describe_pi1_imm(loops)
    pi1_imm["self_centralizing"] = loops.self_centralizing
    if loops.product_decomposition:
        pi1_imm["product_decomposition"] = loops.product_decomposition

    tw = tw_status(X, circle)
    rot = rot_status_imm(X, circle)
    case = theorem_a_case(X, circle, tw, rot)
    split = rot_splitting(X, circle, fb)
    warnings += split.warnings
    branch = theorem_b_branch(X, circle, dax, tw, split)
    warnings += branch["warnings"]

    fixed = circle.fixed
    circle_field = {
        "element": _element_json(circle.element),
        "label": G.label(circle.element),
        "centralizer": circle.centralizer.description if circle.centralizer else G.describe(),
        "fixed_pi2": {"generators": [list(u) for u in fixed.generators], "orders": list(fixed.orders),
                      "description": fixed.describe()},
    }
    report = ClassificationReport(
        schema_version=SCHEMA_VERSION,
        manifold=X.name,
        circle=circle_field,
        spin_alternative=st.value,
        pi0_imm=loops.pi0_summary(),
        pi1_imm=pi1_imm,
        frame_bundle={**fb.summary(), "h1": h1_field},
        tw_equals_nu=tw.equal,
        tw_justification=tw.justification,
        tw_witness=tw.witness,
        rot_trivial_imm=rot.trivial,
        rot_witness=list(rot.witness) if rot.witness is not None else None,
        theorem_a_case=case.case,
        theorem_a_sequence={"sequence": case.sequence, **case.structure},
        rot_splits=split.tag,
        rot_splitting_detail=split.detail.to_dict() if split.detail else None,
        theorem_b_branch=branch,
        warnings=warnings,
    )
    # plain JSON values throughout, so that a parsed report compares equal
    return ClassificationReport.from_dict(json.loads(json.dumps(report.to_dict())))


def _element_json(x):
    return list(x) if isinstance(x, tuple) else x


__all__ = [
    "COMBINATION_BOUND",
    "CaseResult",
    "CircleClass",
    "ClassificationReport",
    "DaxOracle",
    "ManifoldData",
    "RotSplitting",
    "RotStatus",
    "SCHEMA_VERSION",
    "TwStatus",
    "classify",
    "render_sequence",
    "rot_splitting",
    "rot_status_by_enumeration",
    "rot_status_imm",
    "theorem_a_case",
    "theorem_b_branch",
    "tw_bruteforce_oracle",
    "tw_status",
]
