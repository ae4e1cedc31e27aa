import random

from flc.groups import FGAbelianGroup, SelfCentralizingZ, cyclic, symmetric, trivial_group
from flc.intalg import IntMatrix
from flc.loopspace import (
    delta_lambda,
    delta_lambda_0,
    describe_pi1_imm,
    imm_invariants,
    pi1_free_loop_extension,
)
from flc.pi2mod import PresentedAbelianGroup, Pi2Module, coinvariants
from randominputs import random_finite_module, finite_group

Z = FGAbelianGroup(1)


def test_delta_lambda_examples():
    M = Pi2Module(Z, 2)
    assert delta_lambda(M, (1,), (3, 4)) == (0, 0)
    M = Pi2Module(Z, 2, (), {0: [[0, 1], [1, 0]]})
    assert delta_lambda(M, (1,), (1, 0)) == (1, -1)
    assert delta_lambda_0(FGAbelianGroup(2), (1, 1), (0, 1)) == (0, 1)
    S3 = symmetric(3)
    # conjugation h c h^-1 lands in the class of c
    cls = next(k for k in S3.conjugacy_classes() if 1 in k)
    assert all(delta_lambda_0(S3, h, 1) in cls for h in range(6))


def test_coinvariants_are_pi2_mod_image_of_delta():
    rng = random.Random(2)
    for name in ("S3", "Z4", "D4", "Q8", "A4"):
        G = finite_group(name)
        for _ in range(4):
            M, _ = random_finite_module(rng, G)
            for c in range(G.order):
                n = M.ngens
                images = [delta_lambda(M, c, [int(i == j) for i in range(n)]) for j in range(n)]
                rows = [M.relations.row(i) for i in range(M.relations.rows)] + images
                Q = PresentedAbelianGroup(n, IntMatrix.from_rows(rows, cols=n))
                assert Q.canonical_form == coinvariants(M, c).canonical_form


def test_circle_generator_no_pi2():
    ext = pi1_free_loop_extension(Z, Pi2Module(Z, 0), (1,))
    assert ext.kernel == "0" and ext.status == "split-with-witness"


def test_circle_generator_trivial_pi2_splits_as_product():
    r = imm_invariants(Z, Pi2Module(Z, 1), (1,))
    assert r.self_centralizing
    assert r.product_decomposition["factors"] == ["<(1)> = Z", "Z"]
    assert r.pi1_extension.status == "split-with-witness"


def test_s3_transposition():
    S3 = symmetric(3)
    t = next(g for g in range(6) if S3.order_of(g) == 2)
    r = imm_invariants(S3, Pi2Module(S3, 0), t)
    assert r.pi1_extension.quotient.endswith("order 2")
    assert describe_pi1_imm(r).endswith("order 2")
    assert len(r.pi0) == 3


def test_trivial_group_pi2_z():
    G = trivial_group()
    r = imm_invariants(G, Pi2Module(G, 1), 0)
    assert r.pi0 == [["1"]]
    assert r.pi1_extension.kernel == "Z"


def test_s3_identity_circle():
    S3 = symmetric(3)
    r = imm_invariants(S3, Pi2Module(S3, 1), 0)
    assert r.pi1_extension.quotient.endswith("order 6")
    assert r.pi1_extension.kernel == "Z"
    assert r.pi1_extension.status == "split-with-witness"


def test_opaque_group():
    G = SelfCentralizingZ()
    r = imm_invariants(G, Pi2Module(G, 2), 1)
    assert isinstance(r.pi0, str) and r.warnings
    assert describe_pi1_imm(r) == "<c> = Z x Z^2"
    r = imm_invariants(G, Pi2Module(G, 1, (), {"c": [[-1]]}), 2)
    assert not r.self_centralizing
    assert r.pi1_extension.status == "undetermined"


def test_finite_order_self_centralizing_is_not_flagged():
    G = cyclic(3)
    ext = pi1_free_loop_extension(G, Pi2Module(G, 1), 1)
    assert ext.status == "undetermined"
    assert any("finite order" in n for n in ext.notes)


def test_self_centralizing_group_is_abelian():
    # the induced action of <c> on the coinvariants is trivial
    M = Pi2Module(Z, 3, (), {0: [[0, 0, 1], [1, 0, 0], [0, 1, 0]]})
    ext = pi1_free_loop_extension(Z, M, (1,))
    assert ext.status == "split-with-witness"
    assert all(A == IntMatrix.identity(A.rows) for A in ext.action)
