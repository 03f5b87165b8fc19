import pytest
from hypothesis import given, settings, strategies as st

from asphera.abelian import AbelianGroup
from asphera.ghom import group_homology, make_gmodule, trivial_module
from asphera.grp import cyclic, dihedral, generated_subgroup
from asphera.lattice import SimplicialComplex, trivial_simplicial_action
from asphera.models import (
    coset_shift_action,
    dihedral_polygon_action,
    hexagon_action,
    rotation_action,
    zpq_graph,
)
from asphera.specseq import (
    CARTAN_SERRE,
    DETERMINED,
    DIAGRAM_ONLY,
    FREE,
    GRADED_ONLY,
    HOCHSCHILD_MOSTOV,
    SPLIT_FIXED_POINT,
    E2Page,
    abutment,
    e2_page,
    subgroup_diagram_check,
    subordinate_report,
)
from asphera.topo import NonFreeActionError, homology_groups

Z, Z2, Z6, O = AbelianGroup(1), AbelianGroup(0, (2,)), AbelianGroup(0, (6,)), AbelianGroup()


def rows(page):
    return [[str(g) for g in r] for r in page.entries]


def test_gamma6_page_and_abutment():
    _, sa = zpq_graph(2, 3)
    page = e2_page(sa, 5, 1)
    assert rows(page) == [["Z", "Z_6", "0", "Z_6", "0", "Z_6"], ["0"] * 6]
    assert page.label == HOCHSCHILD_MOSTOV
    ab = abutment(page)
    assert ab.all_determined
    assert [str(v) for v in ab.values] == ["Z", "Z_6", "0", "Z_6", "0", "Z_6"]


def test_trivial_group_page_is_homology_of_the_complex():
    K = SimplicialComplex.from_maximal(6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
                                           (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5)])
    sa = trivial_simplicial_action(cyclic(1), K)
    page = e2_page(sa, 2, 2)
    assert [page[0, q] for q in range(3)] == homology_groups(K)
    assert page.label == CARTAN_SERRE
    ab = abutment(page)
    assert ab.all_determined and ab.values == homology_groups(K)


def test_reflection_page():
    page = e2_page(hexagon_action("reflection"), 2, 1)
    assert rows(page)[0] == ["Z", "Z_2", "0"]
    # coefficients Z with the sign action: coinvariants Z_2, then 0, then Z_2
    assert rows(page)[1] == ["Z_2", "0", "Z_2"]
    deg1 = abutment(page).degrees[1]
    assert deg1.status == GRADED_ONLY
    assert sorted((p.p, p.q) for p in deg1.pieces if not p.group.is_trivial) == [(0, 1), (1, 0)]


def test_cohomological_page():
    page = e2_page(hexagon_action("reflection"), 2, 1, cohomological=True)
    assert rows(page) == [["Z", "0", "Z_2"], ["0", "Z_2", "0"]]


def synthetic(entries, dim=1):
    qmax = len(entries) - 1
    return E2Page(len(entries[0]) - 1, qmax, entries, [], False, CARTAN_SERRE, dim)


def test_two_nonzero_pieces_are_graded_only():
    page = synthetic([[Z, Z2, O], [Z2, O, O]])
    d = abutment(page).degrees[1]
    assert d.status == GRADED_ONLY and d.value is None
    assert len([p for p in d.pieces if not p.group.is_trivial]) == 2


def test_insufficient_page_is_rejected():
    with pytest.raises(ValueError):
        abutment(synthetic([[Z, Z2, O], [Z2, O, O]]), 3)
    with pytest.raises(ValueError):
        abutment(synthetic([[Z, Z2, O]], dim=2), 2)


groups = st.sampled_from([O, O, Z, Z2, Z6])


@settings(max_examples=300, deadline=None)
@given(st.lists(groups, min_size=5, max_size=5), st.lists(groups, min_size=5, max_size=5))
def test_abutment_never_determined_with_two_nonzero_pieces(row0, row1):
    ab = abutment(synthetic([row0, row1]))
    for d in ab.degrees:
        nonzero = [p for p in d.pieces if not p.group.is_trivial]
        if len(nonzero) >= 2:
            assert d.status != DETERMINED
        if d.status == DETERMINED:
            assert d.value == (nonzero[0].group if nonzero else O)


ACTIONS = {
    "gamma6": zpq_graph(2, 3)[1],
    "hex-trivial": hexagon_action("trivial"),
    "hex-antipodal": hexagon_action("antipodal"),
    "hex-reflection": hexagon_action("reflection"),
    "d6": dihedral_polygon_action(3),
    "rot": rotation_action(4, 2),
    "s3-cosets": coset_shift_action(dihedral(3))[1],
}


@pytest.mark.parametrize("name", sorted(ACTIONS))
def test_bottom_row_is_homology_of_the_group(name):
    sa = ACTIONS[name]
    page = e2_page(sa, 3, 0)
    G = sa.group
    assert page.row(0) == [group_homology(G, trivial_module(G), p) for p in range(4)]


def test_hexagon_trichotomy_reports():
    t = subordinate_report(hexagon_action("trivial"))
    assert t.kind == SPLIT_FIXED_POINT and t.data["h1_action"]["1"] == [[1]] and t.data["action_trivial"]
    a = subordinate_report(hexagon_action("antipodal"))
    assert a.kind == FREE and (a.data["pi1_rank"], a.data["quotient_pi1_rank"]) == (1, 1)
    assert a.data["nielsen_schreier"] and a.data["index"] == 2
    r = subordinate_report(hexagon_action("reflection"))
    assert r.kind == SPLIT_FIXED_POINT and r.data["h1_action"]["1"] == [[-1]]


def test_split_actions_satisfy_module_law():
    for name in ("hex-trivial", "hex-reflection"):
        sa = ACTIONS[name]
        rep = subordinate_report(sa)
        mats = [rep.data["h1_action"][sa.group.names[g]] for g in sa.group.elements]
        make_gmodule(sa.group, len(mats[0]), None, mats)
        assert rep.data["homomorphism_law"]


def test_dihedral_triangle_is_diagram_only():
    rep = subordinate_report(dihedral_polygon_action(3))
    assert rep.kind == DIAGRAM_ONLY
    assert [c["subgroup"] for c in rep.data["free_subgroups"]] == [[0, 1, 2]]


def test_free_reports_satisfy_nielsen_schreier():
    for n, k in [(2, 3), (3, 1), (4, 2), (6, 1), (5, 2)]:
        sa = rotation_action(n, k)
        rep = subordinate_report(sa)
        assert rep.kind == FREE
        assert rep.data["pi1_rank"] - 1 == n * (rep.data["quotient_pi1_rank"] - 1)


def test_report_requires_connected_graph():
    K = SimplicialComplex.from_maximal(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError):
        subordinate_report(trivial_simplicial_action(cyclic(2), K))
    K2 = SimplicialComplex.from_maximal(3, [(0, 1, 2)])
    with pytest.raises(ValueError):
        subordinate_report(trivial_simplicial_action(cyclic(2), K2))


def test_dihedral_rotation_row():
    sa = dihedral_polygon_action(3)
    H = generated_subgroup(sa.group, [1])
    d = subgroup_diagram_check(sa, H)
    assert d.quotient_is_circle and d.induced_map == [[3]] and str(d.cokernel) == "Z_3"
    assert d.index == 2 and d.nielsen_schreier and d.euler_relation is None
    with pytest.raises(NonFreeActionError):
        subgroup_diagram_check(sa, generated_subgroup(sa.group, [3]))


def test_rotation_subaction_rows():
    sa = rotation_action(6, 2)
    d = subgroup_diagram_check(sa, generated_subgroup(sa.group, [2]))
    assert d.index == 2 and d.nielsen_schreier and d.euler_relation
    assert d.induced_map == [[3]]
    e = subgroup_diagram_check(sa, generated_subgroup(sa.group, []))
    assert e.induced_map == [[1]] and e.cokernel.is_trivial and e.quotient_euler == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_cokernel_order_is_subgroup_order_for_polygon_rotations(n):
    sa = dihedral_polygon_action(n)
    H = generated_subgroup(sa.group, [1])
    d = subgroup_diagram_check(sa, H)
    assert d.cokernel.order == H.order == n


def test_json_shapes():
    page = e2_page(hexagon_action("reflection"), 2, 1)
    data = page.to_dict()
    assert data["rows"][0] == ["Z", "Z_2", "0"] and data["kind"] == "homological"
    ab = abutment(page).to_dict()
    assert ab["degrees"][1]["status"] == GRADED_ONLY
    rep = subordinate_report(hexagon_action("antipodal")).to_dict()
    assert rep["kind"] == FREE
