"""Invariants of the free loop space, hence of immersed circles.

By Smale-Hirsch and the 2-connected fibre of the sphere bundle,
``pi_0 Imm(S^1, X)`` and ``pi_1(Imm; c)`` agree with ``pi_0`` and ``pi_1``
of the free loop space ``LX``:

    pi_0 LX = conjugacy classes of pi_1 X,
    pi_2 X / (b = c.b)  >->  pi_1(LX; c)  ->>  Fix_c(pi_1 X),

with ``Fix_c(pi_1) = C(c)`` acting on the kernel through the usual action.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import (
    FGAbelianGroup,
    FiniteTableGroup,
    SelfCentralizingZ,
    UnsupportedQuery,
    is_self_centralizing,
)
from .intalg import IntMatrix
from .pi2mod import Pi2Module, coinvariants, induced_action_on_coinvariants
from .spinclass import SPLIT, UNDETERMINED, ExtensionDescriptor


def delta_lambda(M: Pi2Module, c, b) -> tuple[int, ...]:
    """Connecting map ``pi_2 X -> pi_1(Omega X)``: ``b - c.b``."""
    cb = M.act(c, b)
    return tuple(x - y for x, y in zip(b, cb))


def delta_lambda_0(G, h, c):
    """Connecting map ``pi_1 X -> pi_0(Omega X)``: ``h c h^-1``."""
    return G.product(G.product(h, c), G.inv(h))


def _centralizer_generators(G, c) -> tuple[list, str]:
    C = G.centralizer(c)
    if isinstance(G, FiniteTableGroup):
        sub = C.elements
        gens: list[int] = []
        span = {G.identity}
        for g in sub:
            if g not in span:
                gens.append(g)
                span = set(G.generated_subgroup(gens))
        return gens, C.description
    if isinstance(G, FGAbelianGroup):
        return list(C.generators), G.describe()
    return list(C.generators), C.description


def pi1_free_loop_extension(G, M: Pi2Module, c) -> ExtensionDescriptor:
    """``coinvariants >-> pi_1(LX; c) ->> C(c)`` with the induced action."""
    K = coinvariants(M, c)
    if isinstance(G, SelfCentralizingZ) and c == G.identity:
        # the centralizer of 1 is the whole opaque group; only the section is known
        return ExtensionDescriptor(
            kernel=K.describe(), quotient=G.describe(), status=SPLIT, kernel_group=K,
            witness="constant loops: a section of ev_e",
            notes=["semidirect product with the natural action of pi_1 on pi_2"])
    gens, qdesc = _centralizer_generators(G, c)
    action = [induced_action_on_coinvariants(M, c, y) for y in gens]
    ext = ExtensionDescriptor(
        kernel=K.describe(), quotient=qdesc, status=UNDETERMINED, kernel_group=K,
        quotient_generators=gens, action=action,
    )
    ext.named_generators["ev"] = "pi_1 ev_e onto the centralizer"
    if K.is_trivial():
        ext.status = SPLIT
        ext.witness = "kernel is trivial"
        ext.notes.append("pi_1(LX; c) = C(c)")
    elif not gens:
        ext.status = SPLIT
        ext.witness = "quotient is trivial"
        ext.notes.append("pi_1(LX; c) = coinvariants")
    elif is_self_centralizing(G, c):
        if not all(A == IntMatrix.identity(A.rows) for A in action):
            raise AssertionError("c must act trivially on its own coinvariants")
        ext.status = SPLIT
        ext.witness = "rot: c^k -> k full rotations of the loop c"
        ext.named_generators["rot"] = G.label(c)
        ext.notes.append("C(c) = <c> of infinite order: direct product <c> x coinvariants")
    elif c == G.identity:
        ext.status = SPLIT
        ext.witness = "constant loops: a section of ev_e"
        ext.notes.append("semidirect product with the natural action of pi_1 on pi_2")
    elif _centralizer_is_generated_by(G, c, gens):
        ext.notes.append("C(c) = <c> but c has finite order; the rotation section need not be a homomorphism")
    return ext


def _centralizer_is_generated_by(G, c, gens) -> bool:
    if isinstance(G, FiniteTableGroup):
        return set(G.centralizer(c).elements) == set(G.generated_subgroup([c]))
    return False


@dataclass
class LoopSpaceReport:
    pi0: list | str
    pi1_extension: ExtensionDescriptor
    self_centralizing: bool
    product_decomposition: dict | None = None
    warnings: list[str] = field(default_factory=list)

    def pi0_summary(self) -> dict:
        if isinstance(self.pi0, str):
            return {"symbolic": self.pi0}
        return {"count": len(self.pi0), "classes": self.pi0}


def imm_invariants(G, M: Pi2Module, c) -> LoopSpaceReport:
    warnings = []
    try:
        classes = G.conjugacy_classes()
        if isinstance(classes, list):
            pi0 = [[G.label(x) for x in cls] for cls in classes]
        else:
            pi0 = classes
    except UnsupportedQuery as exc:
        pi0 = f"conjugacy classes of {G.describe()}"
        warnings.append(f"pi0 left symbolic: {exc}")
    ext = pi1_free_loop_extension(G, M, c)
    sc = is_self_centralizing(G, c)
    decomposition = None
    if sc:
        K = ext.kernel_group
        decomposition = {
            "factors": [f"<{G.label(c)}> = Z", K.describe()],
            "maps": {"ev": "pi_1 ev_e", "unrot": "sphere traced by a loop times rot of its inverse image"},
            "unrot_orders": [m for m in K.moduli if m != 1],
        }
    return LoopSpaceReport(pi0, ext, sc, decomposition, warnings)


def describe_pi1_imm(report: LoopSpaceReport) -> str:
    ext = report.pi1_extension
    if report.product_decomposition:
        a, b = report.product_decomposition["factors"]
        return a if b == "0" else f"{a} x {b}"
    if ext.kernel == "0":
        return ext.quotient
    return f"{ext.kernel} >-> pi1 Imm ->> {ext.quotient}"


__all__ = [
    "LoopSpaceReport",
    "delta_lambda",
    "delta_lambda_0",
    "describe_pi1_imm",
    "imm_invariants",
    "pi1_free_loop_extension",
]
