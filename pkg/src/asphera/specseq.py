"""E2 pages for a group acting on a complex, forced-collapse abutment, and
extension reports for actions on connected graphs.

No differential is ever computed.  A page entry is read off as a graded
piece of the abutment only when every d^r into or out of it is forced to
vanish because its source or target group is zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .abelian import AbelianGroup
from .ghom import GModule, group_cohomology, group_homology, homology_gmodule
from .grp import Subgroup, all_subgroups, index
from .lattice import SimplicialAction
from .snf import IntMatrix, invariant_factors
from .topo import (
    NonFreeActionError,
    chain_homology,
    euler_characteristic,
    homology,
    is_connected_graph,
    is_free_action,
    orbit_complex,
)

DETERMINED = "DETERMINED"
GRADED_ONLY = "GRADED-ONLY"

HOCHSCHILD_MOSTOV = "hochschild-mostov"
CARTAN_SERRE = "cartan-serre"


@dataclass
class E2Page:
    pmax: int
    qmax: int
    entries: list[list[AbelianGroup]]  # entries[q][p]
    modules: list[GModule] = field(repr=False)
    cohomological: bool = False
    label: str = CARTAN_SERRE
    complex_dimension: int = 0

    def __getitem__(self, pq: tuple[int, int]) -> AbelianGroup:
        p, q = pq
        return self.entries[q][p]

    def row(self, q: int) -> list[AbelianGroup]:
        return self.entries[q]

    def known(self, p: int, q: int) -> AbelianGroup | None:
        """Entry if it is determined by the page; rows above dim K vanish."""
        if p < 0 or q < 0:
            return AbelianGroup()
        if q > self.qmax:
            return AbelianGroup() if q > self.complex_dimension else None
        if p > self.pmax:
            return None
        return self.entries[q][p]

    def to_dict(self) -> dict:
        return {
            "pmax": self.pmax,
            "qmax": self.qmax,
            "kind": "cohomological" if self.cohomological else "homological",
            "label": self.label,
            "rows": [[str(g) for g in row] for row in self.entries],
            "invariant_factors": [[g.to_dict() for g in row] for row in self.entries],
        }


def e2_page(sa: SimplicialAction, pmax: int, qmax: int, cohomological: bool = False, method: str = "auto") -> E2Page:
    """E2_{p,q} = H_p(G; H_q(K)) (or H^p(G; H^q) for the cohomological page).

    The cohomological page uses the coefficient module H_q with the
    transposed-inverse action, which for q = 0, 1 on a graph computes
    H^p(G; H^q(K)) by universal coefficients.
    """
    G = sa.group
    K = sa.complex
    fn = group_cohomology if cohomological else group_homology
    modules, rows = [], []
    for q in range(qmax + 1):
        M = homology_gmodule(sa, q)
        if cohomological:
            M = _dual_module(M)
        modules.append(M)
        rows.append([fn(G, M, p, method) for p in range(pmax + 1)])
    label = HOCHSCHILD_MOSTOV if is_connected_graph(K) else CARTAN_SERRE
    return E2Page(pmax, qmax, rows, modules, cohomological, label, K.dimension)


def _dual_module(M: GModule) -> GModule:
    """Hom(M_free, Z) with g acting by (A_{g^-1})^T; torsion of H_q is ignored.

    Only valid when H_q(K) is free and H_{q-1}(K) has no torsion, which the
    caller must ensure (true for graphs).
    """
    from .ghom import make_gmodule

    if M.n_relations:
        raise ValueError("cohomological page needs torsion-free homology")
    G = M.group
    mats = [M.action[G.inv(g)].transpose() for g in G.elements]
    return make_gmodule(G, M.n_gens, None, mats, f"dual {M.name}")


@dataclass
class Piece:
    p: int
    q: int
    group: AbelianGroup
    stable: bool

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "group": str(self.group), "stable": self.stable}


@dataclass
class DegreeReport:
    degree: int
    pieces: list[Piece]
    status: str
    value: AbelianGroup | None

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "status": self.status,
            "value": None if self.value is None else str(self.value),
            "pieces": [x.to_dict() for x in self.pieces],
        }


@dataclass
class AbutmentReport:
    degrees: list[DegreeReport]

    @property
    def values(self) -> list[AbelianGroup | None]:
        return [d.value for d in self.degrees]

    @property
    def all_determined(self) -> bool:
        return all(d.status == DETERMINED for d in self.degrees)

    def to_dict(self) -> dict:
        return {"degrees": [d.to_dict() for d in self.degrees]}


def _stable(page: E2Page, p: int, q: int) -> bool:
    """Every d^r (r >= 2) touching (p, q) has a zero source or target."""
    sign = -1 if page.cohomological else 1
    r = 2
    while True:
        out_pq = (p - sign * r, q + r - 1)
        in_pq = (p + sign * r, q - r + 1)
        out_ok = page.known(*out_pq)
        in_ok = page.known(*in_pq)
        if out_ok is None or not out_ok.is_trivial:
            return False
        if in_ok is None or not in_ok.is_trivial:
            return False
        # once both sides leave the first quadrant for good, nothing else can hit
        out_gone = out_pq[0] < 0 or out_pq[1] > max(page.complex_dimension, page.qmax)
        in_gone = in_pq[1] < 0 or in_pq[0] < 0
        if out_gone and in_gone:
            return True
        r += 1


def abutment(page: E2Page, nmax: int | None = None) -> AbutmentReport:
    """Graded pieces of H_n for n <= nmax, DETERMINED where collapse is forced."""
    nmax = page.pmax if nmax is None else nmax
    if nmax > page.pmax:
        raise ValueError(f"total degree {nmax} exceeds the page width {page.pmax}")
    if nmax > page.qmax and page.qmax < page.complex_dimension:
        raise ValueError(f"page needs qmax >= {min(nmax, page.complex_dimension)} for total degree {nmax}")
    out = []
    for n in range(nmax + 1):
        pieces = []
        for q in range(min(n, page.qmax) + 1):
            p = n - q
            grp = page[p, q]
            pieces.append(Piece(p, q, grp, grp.is_trivial or _stable(page, p, q)))
        nonzero = [x for x in pieces if not x.group.is_trivial]
        if all(x.stable for x in pieces) and len(nonzero) <= 1:
            value = nonzero[0].group if nonzero else AbelianGroup()
            out.append(DegreeReport(n, pieces, DETERMINED, value))
        else:
            out.append(DegreeReport(n, pieces, GRADED_ONLY, None))
    return AbutmentReport(out)


# extension reports

FREE = "FREE"
SPLIT_FIXED_POINT = "SPLIT-FIXED-POINT"
DIAGRAM_ONLY = "DIAGRAM-ONLY"


@dataclass
class DiagramReport:
    subgroup: tuple[int, ...]
    index: int
    quotient_euler: int
    quotient_h1: AbelianGroup
    quotient_is_circle: bool
    induced_map: list[list[int]]
    cokernel: AbelianGroup
    nielsen_schreier: bool
    euler_relation: bool | None

    def to_dict(self) -> dict:
        return {
            "subgroup": list(self.subgroup),
            "index": self.index,
            "quotient_euler": self.quotient_euler,
            "quotient_h1": str(self.quotient_h1),
            "quotient_is_circle": self.quotient_is_circle,
            "induced_h1_map": self.induced_map,
            "cokernel": str(self.cokernel),
            "nielsen_schreier": self.nielsen_schreier,
            "euler_relation": self.euler_relation,
        }


def _require_graph(sa: SimplicialAction) -> None:
    if not is_connected_graph(sa.complex):
        raise ValueError("complex must be a connected graph (dimension <= 1) for extension semantics")


def _normalize_rows(rows: list[list[int]]) -> list[list[int]]:
    out = []
    for row in rows:
        lead = next((x for x in row if x), 0)
        out.append([-x for x in row] if lead < 0 else list(row))
    return out


def subgroup_diagram_check(sa: SimplicialAction, H: Subgroup) -> DiagramReport:
    """Numeric shadows of the covering K -> K/H for a subgroup acting freely."""
    _require_graph(sa)
    K = sa.complex
    G = sa.group
    sub = sa.restrict(H)
    verdict = is_free_action(sub)
    if not verdict.free:
        g, s = verdict.witness
        raise NonFreeActionError(
            f"restriction to the subgroup is not free: {sub.group.names[g]} fixes {s}", (H.members[g], s)
        )
    oc = orbit_complex(K, sub, 1)
    qcc = oc.chain_complex
    src = homology(K, 1)
    tgt = chain_homology(qcc, 1)
    cols = [tgt.coordinates(oc.projections[1].apply(z)) for z in src.generators]
    n_t = len(tgt.generators)
    rows = [[c[i] for c in cols] for i in range(n_t)]
    rows = _normalize_rows(rows)
    mat = IntMatrix.from_rows(rows, len(cols)) if rows else IntMatrix.zeros(0, len(cols))
    coker = AbelianGroup.from_invariant_factors(invariant_factors(mat), n_t)
    chi_k = euler_characteristic(K)
    chi_q = qcc.euler_characteristic()
    ns = (1 - chi_k) - 1 == H.order * ((1 - chi_q) - 1)
    euler_rel = None
    if is_free_action(sa).free:
        chi_g = orbit_complex(K, sa, 1).chain_complex.euler_characteristic()
        euler_rel = chi_q == index(G, H) * chi_g
    qh = [qcc.homology_group(k) for k in range(2)]
    circle = qh[0] == AbelianGroup(1) and qh[1] == AbelianGroup(1)
    return DiagramReport(H.members, index(G, H), chi_q, qh[1], circle, rows, coker, ns, euler_rel)


@dataclass
class ExtensionReport:
    kind: str
    data: dict

    def to_dict(self) -> dict:
        return {"kind": self.kind, **self.data}


def subordinate_report(sa: SimplicialAction) -> ExtensionReport:
    """Classify the subordinate extension of an action on a connected graph."""
    _require_graph(sa)
    G, K = sa.group, sa.complex
    chi = euler_characteristic(K)
    if is_free_action(sa).free:
        rank = 1 - chi
        qrank = 1 - chi // G.order
        qcc = orbit_complex(K, sa, 1).chain_complex
        qh1 = qcc.homology_group(1)
        return ExtensionReport(
            FREE,
            {
                "pi1_rank": rank,
                "quotient_pi1_rank": qrank,
                "index": G.order,
                "quotient_h1": str(qh1),
                "nielsen_schreier": rank - 1 == G.order * (qrank - 1) and qh1.free_rank == qrank,
            },
        )
    fixed = sa.global_fixed_vertices()
    if fixed:
        M = homology_gmodule(sa, 1)
        action = {G.names[g]: M.action[g].to_rows() for g in G.elements}
        return ExtensionReport(
            SPLIT_FIXED_POINT,
            {
                "fixed_vertex": fixed[0],
                "pi1_rank": 1 - chi,
                "h1_action": action,
                "action_trivial": all(M.action[g] == IntMatrix.identity(M.n_gens) for g in G.elements),
                "homomorphism_law": M.is_honest,
            },
        )
    checks = []
    for H in all_subgroups(G):
        if H.order == 1:
            continue
        if is_free_action(sa.restrict(H)).free:
            checks.append(subgroup_diagram_check(sa, H).to_dict())
    return ExtensionReport(DIAGRAM_ONLY, {"pi1_rank": 1 - chi, "free_subgroups": checks})
