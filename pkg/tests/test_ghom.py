import random
from itertools import product

import pytest

from asphera.abelian import AbelianGroup
from asphera.borel import borel_homology
from asphera.ghom import (
    GModuleError,
    coinvariants,
    cyclic_group_cohomology,
    cyclic_group_homology,
    extension_group,
    group_cohomology,
    group_homology,
    h2_classes,
    homology_gmodule,
    invariants,
    is_cocycle,
    make_gmodule,
    second_cohomology,
    sign_module,
    trivial_module,
)
from asphera.grp import GroupError, cyclic, dihedral, direct_product
from asphera.lattice import trivial_simplicial_action
from asphera.limits import ScaleExceeded
from asphera.models import hexagon_action, point, zpq_graph

G6_ROTATION = {2: [[0, 1], [1, 0]], 3: [[0, -1], [1, -1]], 4: [[0, -1], [1, 0]], 6: [[0, -1], [1, 1]]}


def generator_module(G, A, relations=None, name="rank-2"):
    """Module where the cyclic generator acts by A."""
    from asphera.snf import IntMatrix

    gen = G.cyclic_generator()
    mat = IntMatrix.from_rows(A)
    mats = [None] * G.order
    P = IntMatrix.identity(len(A))
    x = G.identity
    for _ in range(G.order):
        mats[x] = P
        P = mat @ P
        x = G.mul(gen, x)
    return make_gmodule(G, len(A), relations, mats, name)


def module_corpus(n):
    G = cyclic(n)
    mods = [trivial_module(G)] + [trivial_module(G, m) for m in (2, 3, 4)]
    if n % 2 == 0:
        mods.append(sign_module(G))
    if n in G6_ROTATION:
        mods.append(generator_module(G, G6_ROTATION[n]))
    if n == 4:
        mods.append(generator_module(G, G6_ROTATION[4], [[4, 0], [0, 4]], "Z_4^2 twisted"))
    if n == 6:
        mods.append(homology_gmodule(zpq_graph(2, 3)[1], 1))
    return G, mods


# modules


def test_valid_and_invalid_modules():
    G = cyclic(2)
    assert trivial_module(G).is_honest
    assert sign_module(G).action[1].to_rows() == [[-1]]
    with pytest.raises(GModuleError, match="homomorphism law"):
        make_gmodule(G, 1, None, [[[1]], [[2]]])
    with pytest.raises(GModuleError, match="relation lattice"):
        make_gmodule(G, 2, [[2, 0]], [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])
    with pytest.raises(GModuleError):
        make_gmodule(G, 1, None, [[[1]]])


def test_homology_modules():
    refl = homology_gmodule(hexagon_action("reflection"), 1)
    assert [refl.action[g].to_rows() for g in (0, 1)] == [[[1]], [[-1]]]
    triv = homology_gmodule(hexagon_action("trivial"), 1)
    assert all(triv.action[g].to_rows() == [[1]] for g in (0, 1))
    M = homology_gmodule(zpq_graph(2, 3)[1], 1)
    assert M.n_gens == 2 and M.underlying == AbelianGroup(2)
    assert M.is_honest


def test_reflection_module_matches_chain_map():
    sa = hexagon_action("reflection")
    M = homology_gmodule(sa, 1)
    from asphera.topo import homology

    z = homology(sa.complex, 1).generators[0]
    pushed = [0] * len(z)
    for i, s in enumerate(sa.complex.faces(1)):
        img, sign = sa.image(1, s)
        pushed[sa.complex.index_of(img)] += sign * z[i]
    assert pushed == [-x for x in z]
    assert M.action[1].to_rows() == [[-1]]


# group homology


@pytest.mark.parametrize("G", [cyclic(1), cyclic(5), dihedral(3), direct_product(cyclic(2), cyclic(2))], ids=str)
def test_degree_zero_trivial_coefficients(G):
    assert group_homology(G, trivial_module(G), 0) == AbelianGroup(1)


def test_cyclic_six_trivial_coefficients():
    G = cyclic(6)
    M = trivial_module(G)
    for method in ("periodic", "bar"):
        assert [str(group_homology(G, M, k, method)) for k in (1, 2, 3)] == ["Z_6", "0", "Z_6"]


def test_vanishing_for_gamma6_module():
    G = cyclic(6)
    M = homology_gmodule(zpq_graph(2, 3)[1], 1)
    assert all(group_homology(G, M, k, "periodic").is_trivial for k in range(7))
    assert all(group_homology(G, M, k, "bar").is_trivial for k in range(4))


def test_second_cohomology_of_order_two():
    G = cyclic(2)
    for method in ("periodic", "bar"):
        assert group_cohomology(G, sign_module(G), 2, method).is_trivial
        assert str(group_cohomology(G, trivial_module(G), 2, method)) == "Z_2"


def test_cyclic_resolution_examples():
    G = cyclic(2)
    assert str(cyclic_group_homology(2, trivial_module(G), 1)) == "Z_2"
    # sign coefficients: H_0 = Z/2, H_1 = ker(-2)/im(0) = 0, H_2 = ker(0)/im(-2) = Z_2
    assert [str(cyclic_group_homology(2, sign_module(G), k)) for k in range(3)] == ["Z_2", "0", "Z_2"]
    assert [str(cyclic_group_cohomology(2, sign_module(G), k)) for k in range(3)] == ["0", "Z_2", "0"]
    with pytest.raises(GroupError):
        cyclic_group_homology(6, trivial_module(dihedral(3)), 1)
    with pytest.raises(GroupError):
        cyclic_group_homology(4, trivial_module(G), 1)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_bar_and_periodic_agree(n):
    G, mods = module_corpus(n)
    for M in mods:
        for k in range(4):
            assert group_homology(G, M, k, "bar") == group_homology(G, M, k, "periodic"), (M.name, k)
            assert group_cohomology(G, M, k, "bar") == group_cohomology(G, M, k, "periodic"), (M.name, k)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_degree_zero_is_coinvariants_and_invariants(n):
    G, mods = module_corpus(n)
    for M in mods:
        assert group_homology(G, M, 0, "bar") == coinvariants(M)
        assert group_cohomology(G, M, 0, "bar") == invariants(M)
    D = dihedral(3)
    for M in (trivial_module(D), trivial_module(D, 4), sign_module(D)):
        assert group_homology(D, M, 0) == coinvariants(M)
        assert group_cohomology(D, M, 0) == invariants(M)


def test_group_order_annihilates_positive_degrees():
    cases = [module_corpus(n) for n in (2, 3, 4, 6)]
    D = dihedral(3)
    cases.append((D, [trivial_module(D), sign_module(D), trivial_module(D, 2)]))
    for G, mods in cases:
        for M in mods:
            for k in range(1, 4):
                h = group_homology(G, M, k)
                assert h.free_rank == 0
                assert all(G.order % d == 0 for d in h.torsion), (G, M.name, k, h)


def test_bar_homology_matches_borel_quotient_of_a_point():
    D = dihedral(3)
    pt = point()
    borel = borel_homology(pt, trivial_simplicial_action(D, pt), m=5, kmax=3)
    bar = [group_homology(D, trivial_module(D), k, "bar") for k in range(4)]
    assert borel.groups == bar
    assert [str(h) for h in bar] == ["Z", "Z_2", "0", "Z_6"]


def test_klein_four_group():
    V = direct_product(cyclic(2), cyclic(2))
    assert [str(group_homology(V, trivial_module(V), k)) for k in range(4)] == ["Z", "Z_2 + Z_2", "Z_2", "Z_2 + Z_2 + Z_2"]


def test_rank_guard_and_override(monkeypatch):
    D = dihedral(3)
    monkeypatch.setenv("ASPHERA_MAX_RANK", "50")
    with pytest.raises(ScaleExceeded):
        group_homology(D, trivial_module(D), 3)
    # the cyclic fast path is exempt
    assert str(group_homology(cyclic(6), trivial_module(cyclic(6)), 5)) == "Z_6"
    monkeypatch.setenv("ASPHERA_MAX_RANK", "1000000")
    assert str(group_homology(D, trivial_module(D), 3)) == "Z_6"


# extensions


def brute_extension_classes(G, m):
    """Congruence classes of extensions of G by trivial Z_m, by exhaustive cocycle search."""
    pairs = list(product(G.elements, repeat=2))
    cocycles = []
    for values in product(range(m), repeat=len(pairs)):
        c = dict(zip(pairs, values))
        if all(
            (c[h, k] - c[G.mul(g, h), k] + c[g, G.mul(h, k)] - c[g, h]) % m == 0
            for g, h, k in product(G.elements, repeat=3)
        ):
            cocycles.append(c)
    coboundaries = set()
    for f in product(range(m), repeat=G.order):
        coboundaries.add(tuple((f[h] - f[G.mul(g, h)] + f[g]) % m for g, h in pairs))
    classes = set()
    for c in cocycles:
        vec = tuple(c[p] for p in pairs)
        classes.add(min(tuple((a - b) % m for a, b in zip(vec, cb)) for cb in coboundaries))
    return classes, pairs


def test_three_extensions_over_integers():
    G = cyclic(2)
    triv = h2_classes(G, trivial_module(G))
    assert len(triv) == 2 and sum(c.is_split for c in triv) == 1
    nonsplit = next(c for c in triv if not c.is_split)
    # the square of a lift of the generator is an odd integer: middle group Z
    assert nonsplit.representative[1, 1][0] % 2 == 1
    sign = h2_classes(G, sign_module(G))
    assert len(sign) == 1 and sign[0].is_split


@pytest.mark.parametrize("n,m", [(2, 2), (3, 3), (2, 3), (2, 4)])
def test_class_count_matches_exhaustive_search(n, m):
    G = cyclic(n)
    expected, _ = brute_extension_classes(G, m)
    h2 = second_cohomology(G, trivial_module(G, m))
    assert len(h2.classes) == len(expected) == h2.group.order


def test_middle_groups_of_order_four():
    G = cyclic(2)
    M = trivial_module(G, 2)
    kinds = sorted(extension_group(G, M, c.representative)[0].is_cyclic() for c in h2_classes(G, M))
    assert kinds == [False, True]


def test_cocycles_and_coboundary_invariance():
    rng = random.Random(3)
    cases = [(cyclic(2), trivial_module(cyclic(2))), (cyclic(4), trivial_module(cyclic(4), 2)),
             (dihedral(3), trivial_module(dihedral(3))), (cyclic(3), trivial_module(cyclic(3), 3)),
             (cyclic(4), sign_module(cyclic(4)))]
    for G, M in cases:
        h2 = second_cohomology(G, M)
        for cls in h2.classes:
            c = cls.representative
            assert is_cocycle(G, M, c)
            f = {g: [rng.randint(-5, 5) for _ in range(M.n_gens)] for g in G.elements}
            f[G.identity] = [0] * M.n_gens
            shifted = {}
            for g, h in product(G.elements, repeat=2):
                gf = M.act(g, f[h])
                shifted[g, h] = tuple(c[g, h][i] + gf[i] - f[G.mul(g, h)][i] + f[g][i] for i in range(M.n_gens))
            assert is_cocycle(G, M, shifted)
            assert h2.class_of(shifted) == cls.coordinates
            assert h2.class_of(c) == cls.coordinates
        assert len(h2.classes) == h2.group.order
        assert sum(c.is_split for c in h2.classes) == 1


def test_dihedral_second_cohomology():
    D = dihedral(3)
    assert str(second_cohomology(D, trivial_module(D)).group) == "Z_2"


def test_class_of_rejects_non_cocycles():
    G = cyclic(2)
    M = trivial_module(G, 3)
    h2 = second_cohomology(G, M)
    with pytest.raises(GModuleError):
        h2.class_of({(1, 1): (1,), (0, 1): (1,)})
