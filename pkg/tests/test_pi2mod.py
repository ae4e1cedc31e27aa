import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from flc.groups import FGAbelianGroup, cyclic, symmetric
from flc.intalg import IntMatrix
from flc.pi2mod import (
    PresentedAbelianGroup,
    Pi2Module,
    coinvariants,
    evaluate_functional,
    fixed_submodule,
    induced_action_on_coinvariants,
    validate_action,
)


def test_presented_group_canonical_form():
    A = PresentedAbelianGroup(2, [[2, 0], [0, 3]])
    assert A.canonical_form == (0, (6,))
    assert A.describe() == "Z/6"
    assert A.is_zero((2, 3))
    assert not A.is_zero((1, 0))
    assert PresentedAbelianGroup(2, [[1, 1]]).canonical_form == (1, ())


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-6, 6), min_size=2, max_size=2), min_size=1, max_size=3),
       st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_relations_are_zero(rels, x):
    A = PresentedAbelianGroup(2, rels)
    for r in rels:
        assert A.is_zero(r)
    y = [a + b for a, b in zip(x, rels[0])]
    assert A.coords(x) == A.coords(y)


def test_swap_action_fix_and_coinvariants():
    Z = FGAbelianGroup(1)
    M = Pi2Module(Z, 2, (), {0: [[0, 1], [1, 0]]})
    assert validate_action(M) == []
    F = fixed_submodule(M, (1,))
    assert F.generators == ((1, 1),) and F.orders == (0,)
    assert coinvariants(M, (1,)).describe() == "Z"
    # c^2 acts trivially
    assert coinvariants(M, (2,)).describe() == "Z^2"


def test_non_homomorphic_action_is_named():
    G = cyclic(2)
    M = Pi2Module(G, 1, [[2]], {0: [[1]], 1: [[2]]})
    bad = validate_action(M)
    assert any("(1, 1)" in b for b in bad)


def test_sign_action():
    Z = FGAbelianGroup(1)
    M = Pi2Module(Z, 1, (), {0: [[-1]]})
    assert fixed_submodule(M, (1,)).orders == ()
    assert coinvariants(M, (1,)).describe() == "Z/2"
    assert coinvariants(M, (2,)).describe() == "Z"


def test_induced_action_on_coinvariants():
    Z2 = FGAbelianGroup(2)
    M = Pi2Module(Z2, 1, (), {0: [[1]], 1: [[-1]]})
    assert induced_action_on_coinvariants(M, (1, 0), (0, 1)) == IntMatrix.from_rows([[-1]])
    assert induced_action_on_coinvariants(M, (1, 0), (1, 0)) == IntMatrix.from_rows([[1]])


def test_functional_evaluation():
    M = Pi2Module(FGAbelianGroup(0), 2, [[2, 0]])
    assert evaluate_functional([1, 1], M, [1, 2]) == 1


def regular_module(G):
    n = G.order
    # g sends basis vector e_x to e_{gx}
    return Pi2Module(G, n, (), {g: [[int(G.table[g][x] == y) for x in range(n)] for y in range(n)]
                                for g in range(n)})


def test_regular_module_fixed_points():
    S3 = symmetric(3)
    M = regular_module(S3)
    assert validate_action(M) == []
    for c in range(6):
        k = S3.order_of(c)
        F = fixed_submodule(M, c)
        assert F.canonical_form == (6 // k, ())
        assert coinvariants(M, c).canonical_form == (6 // k, ())


def test_finite_module_against_enumeration():
    # (Z/4)^2 with the swap
    M = Pi2Module(cyclic(2), 2, [[4, 0], [0, 4]], {0: [[1, 0], [0, 1]], 1: [[0, 1], [1, 0]]})
    fixed = [v for v in itertools.product(range(4), repeat=2) if v[0] == v[1]]
    F = fixed_submodule(M, 1)
    size = 1
    for o in F.orders:
        size *= o
    assert size == len(fixed)
    assert coinvariants(M, 1).canonical_form == (0, (4,))
