import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flc.builtins import Q8_COCYCLE
from flc.groups import (
    FGAbelianGroup,
    SelfCentralizingZ,
    SubgroupDescriptor,
    UnsupportedQuery,
    cyclic,
    direct_product,
    quaternion,
    symmetric,
    trivial_group,
)
from flc.pi2mod import Pi2Module
from flc.spinclass import (
    AlmostSpinAbelian,
    AlmostSpinCocycle,
    Spin,
    SpinType,
    TotallyNonspin,
    abelianization_from_table,
    build_pi1_frame_bundle,
    classify_spin_type,
    coboundary_of,
    cocycle_space_basis,
    cocycle_violations,
    h1_frame_bundle,
    is_coboundary,
    lifted_commutator,
    restricted_splitting,
    validate_w2,
)
from randominputs import FINITE_GROUPS, finite_group, random_cocycle

Z2 = cyclic(2)
Z4_COCYCLE = ((0, 0), (0, 1))
KLEIN = direct_product(cyclic(2), cyclic(2))


def q8_cocycle_from_quaternions():
    """Cocycle of Q8 over Z/2 x Z/2 recomputed from quaternion multiplication."""
    Q = quaternion()
    lift = {0: "1", 1: "i", 2: "j", 3: "k"}
    om = [[0] * 4 for _ in range(4)]
    for g, h in itertools.product(range(4), repeat=2):
        p = Q.product(Q.index_of_name(lift[g]), Q.index_of_name(lift[h]))
        om[g][h] = 0 if Q.names[p] == lift[g ^ h] else 1
    return om


def test_builtin_q8_cocycle_is_quaternionic():
    assert [list(r) for r in Q8_COCYCLE] == q8_cocycle_from_quaternions()


def test_spin_types_of_examples():
    assert classify_spin_type(Spin(), None, Z2) is SpinType.SPIN
    assert classify_spin_type(AlmostSpinCocycle(Z4_COCYCLE), None, Z2) is SpinType.H_SPIN
    q8 = AlmostSpinCocycle(tuple(map(tuple, Q8_COCYCLE)))
    assert classify_spin_type(q8, None, KLEIN) is SpinType.H_NONSPIN
    assert classify_spin_type(TotallyNonspin((1,)), None, trivial_group()) is SpinType.TOTALLY_NONSPIN


def test_lifted_commutator_examples():
    q8 = AlmostSpinCocycle(tuple(map(tuple, Q8_COCYCLE)))
    assert lifted_commutator(q8, KLEIN, 1, 2) == 1
    assert lifted_commutator(q8, KLEIN, 1, 0) == 0
    assert lifted_commutator(q8, KLEIN, 3, 3) == 0
    with pytest.raises(ValueError):
        S3 = symmetric(3)
        lifted_commutator(Spin(), S3, 1, 2)


def test_lifted_commutator_bilinear_on_abelian_groups():
    rng = random.Random(3)
    for name in ("Z2^2", "Z2xZ4", "Z2^3", "Z4xZ4"):
        G = finite_group(name)
        for _ in range(5):
            w = AlmostSpinCocycle(tuple(map(tuple, random_cocycle(rng, name))))
            for a, b, h in itertools.product(range(G.order), repeat=3):
                ab = G.product(a, b)
                lhs = lifted_commutator(w, G, ab, h)
                assert lhs == (lifted_commutator(w, G, a, h) + lifted_commutator(w, G, b, h)) % 2


def test_is_coboundary_examples():
    assert is_coboundary([[0, 0], [0, 0]], Z2) == (0, 0)
    assert is_coboundary([list(r) for r in Z4_COCYCLE], Z2) is None
    S3 = symmetric(3)
    rng = random.Random(0)
    f = [0] + [rng.randint(0, 1) for _ in range(5)]
    w = is_coboundary(coboundary_of(f, S3), S3)
    assert w is not None and coboundary_of(w, S3) == coboundary_of(f, S3)


@pytest.mark.parametrize("name", ["Z2", "Z4", "Z2^2", "Z6", "S3", "Q8", "D4"])
def test_is_coboundary_matches_enumeration(name):
    G = finite_group(name)
    rng = random.Random(hash(name) & 0xffff)
    others = [g for g in range(G.order) if g != G.identity]
    boundaries = set()
    for bits in itertools.product((0, 1), repeat=len(others)):
        f = [0] * G.order
        for g, b in zip(others, bits):
            f[g] = b
        boundaries.add(tuple(map(tuple, coboundary_of(f, G))))
    for _ in range(8):
        om = random_cocycle(rng, name)
        assert (is_coboundary(om, G) is not None) == (tuple(map(tuple, om)) in boundaries)


def test_cocycle_space_dimensions():
    # dim Z^2 = dim B^2 + dim H^2(G; Z/2)
    assert len(cocycle_space_basis(cyclic(4))) == 2 + 1
    assert len(cocycle_space_basis(KLEIN)) == 1 + 3
    assert len(cocycle_space_basis(symmetric(3))) == 4 + 1
    for B in cocycle_space_basis(quaternion()):
        assert cocycle_violations(B, quaternion()) == []


def test_cocycle_violations_name_triple():
    om = [list(r) for r in Q8_COCYCLE]
    om[1][2] ^= 1
    bad = cocycle_violations(om, KLEIN)
    assert bad and "cocycle identity fails on" in bad[0]


def test_abelian_data_validation():
    A = FGAbelianGroup(1, [2, 3])
    M = Pi2Module(A, 0)
    assert validate_w2(AlmostSpinAbelian((0, 1, 0), ((0, 0, 0),) * 3), A, M) == []
    assert validate_w2(AlmostSpinAbelian((1, 0, 0), ((0, 0, 0),) * 3), A, M)
    assert validate_w2(AlmostSpinAbelian((0, 0, 1), ((0, 0, 0),) * 3), A, M)
    assert validate_w2(AlmostSpinAbelian((0, 0, 0), ((0, 1, 0), (1, 0, 0), (0, 0, 0))), A, M) == []
    assert validate_w2(AlmostSpinAbelian((0, 0, 0), ((0, 0, 1), (0, 0, 0), (1, 0, 0))), A, M)
    assert validate_w2(AlmostSpinAbelian((0, 0, 0), ((1, 0, 0), (0, 0, 0), (0, 0, 0))), A, M)


def test_totally_nonspin_validation():
    G = FGAbelianGroup(1)
    M = Pi2Module(G, 2, (), {0: [[0, 1], [1, 0]]})
    assert validate_w2(TotallyNonspin((1, 1)), G, M) == []
    assert any("invariant" in v for v in validate_w2(TotallyNonspin((1, 0)), G, M))
    assert validate_w2(TotallyNonspin((0, 2)), G, M)
    M2 = Pi2Module(G, 1, [[2]])
    assert validate_w2(TotallyNonspin((1,)), G, M2) == []
    M3 = Pi2Module(G, 1, [[3]])
    assert validate_w2(TotallyNonspin((1,)), G, M3)


def test_frame_bundle_examples():
    Z = FGAbelianGroup(1)
    fb = build_pi1_frame_bundle(Spin(), Z)
    assert fb.kind == "product"
    assert h1_frame_bundle(fb).canonical_form == (1, (2,))
    fb = build_pi1_frame_bundle(TotallyNonspin((1,)), trivial_group(), Pi2Module(trivial_group(), 1))
    assert fb.kind == "iso" and h1_frame_bundle(fb).is_trivial()
    fb = build_pi1_frame_bundle(AlmostSpinCocycle(Z4_COCYCLE), Z2)
    E = fb.table
    assert E.order == 4 and max(E.order_of(e) for e in range(4)) == 4
    assert h1_frame_bundle(fb).describe() == "Z/4"
    fb = build_pi1_frame_bundle(AlmostSpinCocycle(tuple(map(tuple, Q8_COCYCLE))), KLEIN)
    assert h1_frame_bundle(fb).describe() == "Z/2 + Z/2"
    assert abelianization_from_table(fb.table).canonical_form == (0, (2, 2))


def test_opaque_cocycle_is_unsupported():
    with pytest.raises(UnsupportedQuery):
        classify_spin_type(AlmostSpinCocycle(((0,),)), None, SelfCentralizingZ())


def test_extension_is_central_and_surjective():
    rng = random.Random(5)
    for name in FINITE_GROUPS:
        G = finite_group(name)
        w = AlmostSpinCocycle(tuple(map(tuple, random_cocycle(rng, name))))
        fb = build_pi1_frame_bundle(w, G)
        E = fb.table
        assert E.order == 2 * G.order
        z = fb.z
        assert E.order_of(z) == 2
        assert all(E.product(z, e) == E.product(e, z) for e in range(E.order))
        for a, b in itertools.product(range(E.order), repeat=2):
            assert fb.project(E.product(a, b)) == G.product(fb.project(a), fb.project(b))


def test_abelian_data_frame_bundles():
    A = FGAbelianGroup(0, [2])
    fb = build_pi1_frame_bundle(AlmostSpinAbelian((1,), ((0,),)), A)
    assert h1_frame_bundle(fb).describe() == "Z/4"
    B = FGAbelianGroup(0, [2, 2])
    fb = build_pi1_frame_bundle(AlmostSpinAbelian((0, 0), ((0, 1), (1, 0))), B)
    assert not fb.table.is_abelian()
    assert h1_frame_bundle(fb).describe() == "Z/2 + Z/2"
    T2 = FGAbelianGroup(2)
    fb = build_pi1_frame_bundle(AlmostSpinAbelian((0, 0), ((0, 1), (1, 0))), T2)
    assert h1_frame_bundle(fb).describe() == "Z^2"


def test_restricted_splitting_examples():
    fb = build_pi1_frame_bundle(AlmostSpinCocycle(tuple(map(tuple, Q8_COCYCLE))), KLEIN)
    whole = SubgroupDescriptor(KLEIN, [1, 2], True, [0, 1, 2, 3], "Z/2 x Z/2")
    assert restricted_splitting(fb, whole).status == "nonsplit"
    fb = build_pi1_frame_bundle(AlmostSpinCocycle(Z4_COCYCLE), Z2)
    triv = SubgroupDescriptor(Z2, [], True, [0], "1")
    assert restricted_splitting(fb, triv).status == "split-with-witness"
    assert restricted_splitting(fb, SubgroupDescriptor(Z2, [1], True, [0, 1], "Z/2")).status == "nonsplit"
    fb = build_pi1_frame_bundle(Spin(), symmetric(3))
    assert restricted_splitting(fb, SubgroupDescriptor(symmetric(3), [], True, [0], "1")).status == \
        "split-with-witness"


def test_restricted_splitting_abelian_route_matches_table_route():
    B = FGAbelianGroup(0, [2, 4])
    rng = random.Random(9)
    for _ in range(10):
        ext = (rng.randint(0, 1), rng.randint(0, 1))
        b = rng.randint(0, 1)
        w = AlmostSpinAbelian(ext, ((0, b), (b, 0)))
        fb = build_pi1_frame_bundle(w, B)
        for gen in B.elements():
            H = sorted(set(B.power(gen, k) for k in range(8)))
            table_route = restricted_splitting(fb, SubgroupDescriptor(B, [gen], True, H, "H")).status
            abelian_route = restricted_splitting(fb, SubgroupDescriptor(B, [gen], False, None, "H")).status
            assert table_route == abelian_route


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(sorted(FINITE_GROUPS)), st.integers(0, 10 ** 6))
def test_classification_is_total_and_exclusive(name, seed):
    G = finite_group(name)
    w = AlmostSpinCocycle(tuple(map(tuple, random_cocycle(random.Random(seed), name))))
    st_ = classify_spin_type(w, None, G)
    assert st_ in (SpinType.SPIN, SpinType.H_SPIN, SpinType.H_NONSPIN)
    assert (st_ is SpinType.SPIN) == (is_coboundary(w.omega, G) is not None)
