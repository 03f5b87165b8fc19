import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors as sympy_factors

from asphera.abelian import AbelianGroup
from asphera.borel import milnor_join
from asphera.grp import cyclic, dihedral
from asphera.lattice import SimplicialComplex, coset_poset, order_complex, subgroup_lattice, trivial_simplicial_action
from asphera.models import coset_shift_action, cycle_graph, hexagon_action, point, rotation_action, triangle
from asphera.topo import (
    ChainComplex,
    NonFreeActionError,
    boundary_matrix,
    chain_complex,
    coinvariant_complex,
    components,
    euler_characteristic,
    homology,
    homology_groups,
    is_free_action,
)


def sympy_homology(K, k):
    """Homology from sympy ranks and invariant factors of dense boundaries."""
    def dense(j):
        B = boundary_matrix(K, j)
        return Matrix(B.rows, B.cols, lambda i, c: B[i, c])

    n = K.count(k)
    rank_k = dense(k).rank() if k > 0 and n and K.count(k - 1) else 0
    nxt = dense(k + 1) if K.count(k + 1) else None
    factors = [abs(int(x)) for x in sympy_factors(nxt, domain=ZZ) if x != 0] if nxt is not None else []
    return AbelianGroup.from_invariant_factors(factors, n - rank_k)


CORPUS = {
    "gamma6": order_complex(coset_poset(cyclic(6))),
    "s3": order_complex(coset_poset(dihedral(3))),
    "triangle": triangle(),
    "octahedron": milnor_join(cyclic(2), 3).complex,
    "solid": SimplicialComplex.from_maximal(4, [(0, 1, 2, 3)]),
    "point": point(),
    "two-points": order_complex(subgroup_lattice(cyclic(6))),
    "rp2": SimplicialComplex.from_maximal(6, [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
    ]),
}


def test_boundary_examples():
    B = boundary_matrix(triangle(), 1)
    assert B.shape == (3, 3)
    for col in B.columns():
        assert sorted(x for x in col if x) == [-1, 1]
    assert boundary_matrix(CORPUS["gamma6"], 1).shape == (11, 12)
    assert boundary_matrix(CORPUS["gamma6"], 2).shape == (12, 0)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_boundary_squares_to_zero(name):
    K = CORPUS[name]
    for k in range(1, K.dimension):
        assert (boundary_matrix(K, k) @ boundary_matrix(K, k + 1)).is_zero()


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_homology_matches_sympy(name):
    K = CORPUS[name]
    for k in range(K.dimension + 1):
        assert homology(K, k).group == sympy_homology(K, k)


def test_homology_examples():
    g = CORPUS["gamma6"]
    assert [str(h) for h in homology_groups(g)] == ["Z", "Z^2"]
    assert str(homology(g, 2).group) == "0"
    assert str(homology(CORPUS["two-points"], 0).group) == "Z^2"
    assert str(homology(CORPUS["octahedron"], 2).group) == "Z"
    assert str(homology(CORPUS["rp2"], 1).group) == "Z_2"


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_generators_are_cycles(name):
    K = CORPUS[name]
    for k in range(K.dimension + 1):
        hb = homology(K, k)
        for z in hb.generators:
            assert all(x == 0 for x in boundary_matrix(K, k).apply(z)) if k else True
        assert len(hb.generators) == hb.group.free_rank + len(hb.group.torsion)


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_euler_characteristic_equals_betti_sum(name):
    K = CORPUS[name]
    hs = homology_groups(K)
    assert euler_characteristic(K) == sum((-1) ** k * h.free_rank for k, h in enumerate(hs))


def test_euler_and_components_examples():
    assert (euler_characteristic(CORPUS["gamma6"]), components(CORPUS["gamma6"])) == (-1, 1)
    assert euler_characteristic(point()) == 1
    assert (euler_characteristic(CORPUS["s3"]), components(CORPUS["s3"])) == (-7, 1)


def test_freeness_verdicts():
    assert is_free_action(rotation_action(3, 1)).free
    v = is_free_action(hexagon_action("reflection"))
    assert not v.free and len(v.witness[1]) == 1
    _, sa = coset_shift_action(cyclic(6))
    v = is_free_action(sa)
    assert not v.free
    g, s = v.witness
    assert g != 0 and sa.image(g, s)[0] == s


def test_shift_on_gamma6_stabilises_order_three_cosets():
    P, sa = coset_shift_action(cyclic(6))
    for k, c in enumerate(P.items):
        if c.subgroup.members == (0, 2, 4):
            stab = tuple(g for g in sa.group.elements if sa.perms[g][k] == k)
            assert stab == (0, 2, 4)


def test_coinvariant_examples():
    for sa in (rotation_action(3, 1), hexagon_action("antipodal")):
        cc = coinvariant_complex(sa.complex, sa)
        assert [str(cc.homology_group(k)) for k in range(2)] == ["Z", "Z"]
    K = cycle_graph(5)
    one = trivial_simplicial_action(cyclic(1), K)
    assert coinvariant_complex(K, one).ranks == chain_complex(K).ranks
    with pytest.raises(NonFreeActionError) as err:
        coinvariant_complex(hexagon_action("trivial").complex, hexagon_action("trivial"))
    assert err.value.witness is not None


@pytest.mark.parametrize("n", range(1, 7))
@pytest.mark.parametrize("k", range(1, 7))
def test_euler_multiplicativity_and_nielsen_schreier(n, k):
    if k * n < 3:
        pytest.skip("cycle needs three vertices")
    sa = rotation_action(n, k)
    K = sa.complex
    assert is_free_action(sa).free
    cc = coinvariant_complex(K, sa)
    assert euler_characteristic(K) == n * cc.euler_characteristic()
    r = homology(K, 1).group.free_rank
    rq = cc.homology_group(1).free_rank
    assert r - 1 == n * (rq - 1)


def test_chain_complex_json_round_trip_and_validation():
    cc = chain_complex(CORPUS["rp2"])
    again = ChainComplex.from_dict(cc.to_dict())
    assert [again.homology_group(k) for k in range(3)] == [cc.homology_group(k) for k in range(3)]
    bad = chain_complex(triangle()).boundaries
    with pytest.raises(ArithmeticError):
        ChainComplex([bad[0], bad[1], bad[1]])
    with pytest.raises(ValueError):
        ChainComplex([bad[1]])
