"""Posets of cosets and subgroups, their order complexes, and induced actions."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, Iterable, Sequence

from .grp import (
    Coset,
    FiniteGroup,
    GroupAction,
    GroupError,
    Subgroup,
    all_subgroups,
    left_cosets,
    trivial_action,
)


class PosetError(ValueError):
    pass


BOTTOM = "bottom"
TOP = "top"


@dataclass(frozen=True)
class Poset:
    """Finite strict order stored by its Hasse diagram.

    ``items`` carries the originating Coset/Subgroup (or None) for each
    element; ``labels`` are display strings.  ``hasse`` holds exactly the
    covering pairs (i, j) meaning i < j with nothing in between.
    """

    labels: tuple[str, ...]
    hasse: tuple[tuple[int, int], ...]
    items: tuple[Any, ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_relation(cls, labels: Sequence[str], less: Iterable[tuple[int, int]], items: Sequence[Any] = ()) -> Poset:
        """Build from any generating set of strict relations; closure and Hasse pairs are derived."""
        n = len(labels)
        up = [set() for _ in range(n)]
        for a, b in less:
            if a == b:
                raise PosetError(f"relation {a} < {a} is reflexive")
            up[a].add(b)
        closed = _transitive_closure(up)
        for a in range(n):
            if a in closed[a]:
                raise PosetError(f"relation has a cycle through element {a}")
        hasse = []
        for a in range(n):
            for b in sorted(closed[a]):
                if not any(b in closed[c] for c in closed[a]):
                    hasse.append((a, b))
        return cls(tuple(labels), tuple(hasse), tuple(items) if items else (None,) * n)

    @classmethod
    def from_leq(cls, labels: Sequence[str], less_fn, items: Sequence[Any] = ()) -> Poset:
        n = len(labels)
        rel = [(a, b) for a in range(n) for b in range(n) if a != b and less_fn(a, b)]
        return cls.from_relation(labels, rel, items)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @cached_property
    def above(self) -> tuple[frozenset[int], ...]:
        """Strict upper sets (transitive closure of the Hasse diagram)."""
        up = [set() for _ in range(self.size)]
        for a, b in self.hasse:
            up[a].add(b)
        return tuple(frozenset(s) for s in _transitive_closure(up))

    def less(self, a: int, b: int) -> bool:
        return b in self.above[a]

    def chains(self, max_length: int | None = None) -> list[list[tuple[int, ...]]]:
        """Chains grouped by length-1; each chain listed bottom to top.

        Depth-first extension along the closure; output sorted.
        """
        out: list[list[tuple[int, ...]]] = []

        def extend(chain):
            k = len(chain) - 1
            while len(out) <= k:
                out.append([])
            out[k].append(tuple(chain))
            if max_length is not None and len(chain) >= max_length:
                return
            for b in sorted(self.above[chain[-1]]):
                chain.append(b)
                extend(chain)
                chain.pop()

        for a in range(self.size):
            extend([a])
        return [sorted(c) for c in out]

    def with_extremes(self, top: bool = True, bottom: bool = False) -> Poset:
        """Copy with a new maximum and/or minimum element appended."""
        labels = list(self.labels)
        items = list(self.items)
        rel = list(self.hasse)
        n = self.size
        if top:
            labels.append("TOP")
            items.append(None)
            rel += [(a, len(labels) - 1) for a in range(n)]
        if bottom:
            labels.append("BOTTOM")
            items.append(None)
            rel += [(len(labels) - 1, a) for a in range(n)]
        return Poset.from_relation(labels, rel, items)

    def to_dot(self, name: str = "hasse") -> str:
        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, lab in enumerate(self.labels):
            lines.append(f'  n{i} [label="{lab}"];')
        for a, b in self.hasse:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "hasse": [list(p) for p in self.hasse]}


def _transitive_closure(up: list[set[int]]) -> list[set[int]]:
    n = len(up)
    closed: list[set[int] | None] = [None] * n
    state = [0] * n

    def visit(a):
        if closed[a] is not None:
            return closed[a]
        if state[a] == 1:
            # cycle: report by letting a reach itself
            return {a}
        state[a] = 1
        acc = set()
        for b in up[a]:
            acc.add(b)
            acc |= visit(b)
        closed[a] = acc
        state[a] = 2
        return acc

    for a in range(n):
        visit(a)
    return closed  # type: ignore[return-value]


def _coset_label(G: FiniteGroup, members: Sequence[int]) -> str:
    return "{" + ",".join(G.names[g] for g in members) + "}"


def coset_poset(G: FiniteGroup) -> Poset:
    """Cosets of all proper subgroups (singletons included) under strict inclusion.

    Elements are ordered by (subgroup size, subgroup members, representative),
    which is a linear extension of the order.
    """
    cosets: list[Coset] = []
    for H in all_subgroups(G):
        if H.order == G.order:
            continue
        cosets.extend(left_cosets(G, H))
    sets = [frozenset(c.members) for c in cosets]
    labels = [_coset_label(G, c.members) for c in cosets]
    return Poset.from_leq(labels, lambda a, b: sets[a] < sets[b], cosets)


def subgroup_lattice(G: FiniteGroup) -> Poset:
    """Proper nontrivial subgroups under strict inclusion."""
    subs = [H for H in all_subgroups(G) if 1 < H.order < G.order]
    sets = [frozenset(H.members) for H in subs]
    labels = [_coset_label(G, H.members) for H in subs]
    return Poset.from_leq(labels, lambda a, b: sets[a] < sets[b], subs)


def segment(P: Poset, lo: int | str = BOTTOM, hi: int | str = TOP) -> tuple[Poset, list[int]]:
    """Induced poset on elements strictly between ``lo`` and ``hi``.

    ``lo``/``hi`` are element indices or the BOTTOM/TOP sentinels.  Returns
    the segment and the original indices of its elements.
    """
    def above_lo(x):
        return lo == BOTTOM or P.less(lo, x)

    def below_hi(x):
        return hi == TOP or P.less(x, hi)

    if lo == TOP or hi == BOTTOM:
        raise PosetError("segment endpoints out of order")
    if lo != BOTTOM and hi != TOP and not P.less(lo, hi):
        raise PosetError(f"segment needs lo < hi, got {lo} and {hi}")
    keep = [x for x in range(P.size) if above_lo(x) and below_hi(x)]
    pos = {x: k for k, x in enumerate(keep)}
    rel = [(pos[a], pos[b]) for a in keep for b in P.above[a] if b in pos]
    return Poset.from_relation([P.labels[x] for x in keep], rel, [P.items[x] for x in keep]), keep


def find_element(P: Poset, members: Iterable[int]) -> int:
    """Index of the coset/subgroup with the given member set."""
    target = tuple(sorted(members))
    for k, it in enumerate(P.items):
        if it is not None and it.members == target:
            return k
    raise PosetError(f"no element with members {target}")


def is_isomorphic(P: Poset, Q: Poset, bijection: Sequence[int]) -> bool:
    """Whether ``bijection`` (P index -> Q index) is an order isomorphism."""
    if P.size != Q.size or sorted(bijection) != list(range(Q.size)):
        return False
    return all(
        P.less(a, b) == Q.less(bijection[a], bijection[b]) for a in range(P.size) for b in range(P.size) if a != b
    )


# actions on posets


@dataclass(frozen=True)
class PosetAction:
    action: GroupAction
    source: Poset

    def __post_init__(self):
        a, P = self.action, self.source
        if a.ground_size != P.size:
            raise PosetError(f"action on {a.ground_size} points but poset has {P.size} elements")
        for g in a.group.elements:
            p = a.perms[g]
            for x, y in P.hasse:
                if not P.less(p[x], p[y]):
                    raise PosetError(f"element {a.group.names[g]} breaks the order on Hasse pair ({x}, {y})")


def induced_poset_action(a: GroupAction, P: Poset) -> PosetAction:
    return PosetAction(a, P)


# simplicial complexes


@dataclass(frozen=True)
class SimplicialComplex:
    """Finite abstract simplicial complex on vertices 0..n_vertices-1.

    ``simplices[k]`` is the sorted list of k-simplices, each a strictly
    increasing vertex tuple; the list is closed under taking faces.
    """

    n_vertices: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        simp = tuple(tuple(sorted(tuple(s) for s in layer)) for layer in self.simplices)
        while simp and not simp[-1]:
            simp = simp[:-1]
        object.__setattr__(self, "simplices", simp)
        if simp and simp[0] != tuple((v,) for v in range(self.n_vertices)):
            raise ValueError("0-simplices must be exactly the vertices")
        if not simp and self.n_vertices:
            raise ValueError("vertices missing from simplex list")
        present = [set(layer) for layer in simp]
        for k, layer in enumerate(simp):
            for s in layer:
                if len(s) != k + 1 or any(s[i] >= s[i + 1] for i in range(k)):
                    raise ValueError(f"simplex {s} is not a strictly increasing {k + 1}-tuple")
            if len(set(layer)) != len(layer):
                raise ValueError(f"duplicate {k}-simplices")
            if k:
                for s in layer:
                    for face in combinations(s, k):
                        if face not in present[k - 1]:
                            raise ValueError(f"face {face} of {s} missing")

    @classmethod
    def from_maximal(cls, n_vertices: int, faces: Iterable[Sequence[int]]) -> SimplicialComplex:
        """Downward closure of the given faces (plus all vertices)."""
        layers: list[set[tuple[int, ...]]] = [set((v,) for v in range(n_vertices))]
        for f in faces:
            f = tuple(sorted(set(f)))
            if any(not 0 <= v < n_vertices for v in f):
                raise ValueError(f"face {f} uses a vertex outside 0..{n_vertices - 1}")
            for k in range(1, len(f)):
                while len(layers) <= k:
                    layers.append(set())
                layers[k].update(combinations(f, k + 1))
        return cls(n_vertices, tuple(tuple(sorted(l)) for l in layers))

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def count(self, k: int) -> int:
        return len(self.simplices[k]) if 0 <= k < len(self.simplices) else 0

    def faces(self, k: int) -> tuple[tuple[int, ...], ...]:
        return self.simplices[k] if 0 <= k < len(self.simplices) else ()

    @cached_property
    def _index(self) -> tuple[dict[tuple[int, ...], int], ...]:
        return tuple({s: i for i, s in enumerate(layer)} for layer in self.simplices)

    def index_of(self, simplex: Sequence[int]) -> int:
        s = tuple(simplex)
        return self._index[len(s) - 1][s]

    def __contains__(self, simplex) -> bool:
        s = tuple(simplex)
        k = len(s) - 1
        return 0 <= k < len(self.simplices) and s in self._index[k]

    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self.faces(1)

    def to_dict(self) -> dict:
        return {"n_vertices": self.n_vertices, "simplices": [[list(s) for s in layer] for layer in self.simplices]}

    @classmethod
    def from_dict(cls, data: dict) -> SimplicialComplex:
        n = int(data["n_vertices"])
        layers = data.get("simplices")
        if layers is None:
            return cls.from_maximal(n, data.get("facets", []))
        return cls.from_maximal(n, [s for layer in layers for s in layer])

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_dot(self, labels: Sequence[str] | None = None, name: str = "complex") -> str:
        if self.dimension > 1:
            raise ValueError("DOT export is only for 1-dimensional complexes")
        lines = [f"graph {name} {{"]
        for v in range(self.n_vertices):
            lab = labels[v] if labels else str(v)
            lines.append(f'  v{v} [label="{lab}"];')
        for a, b in self.edges():
            lines.append(f"  v{a} -- v{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def order_complex(P: Poset) -> SimplicialComplex:
    """k-simplices are the (k+1)-chains of P, as sorted element-index tuples."""
    layers = [[tuple(sorted(c)) for c in layer] for layer in P.chains()]
    if not layers:
        return SimplicialComplex(0, ())
    return SimplicialComplex(P.size, tuple(tuple(sorted(l)) for l in layers))


def sorting_sign(seq: Sequence[int]) -> int:
    """Parity of the permutation sorting ``seq`` (distinct entries)."""
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class SimplicialAction:
    """Group acting on a simplicial complex through vertex permutations."""

    group: FiniteGroup
    complex: SimplicialComplex
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        action = GroupAction(self.group, self.complex.n_vertices, self.perms)
        object.__setattr__(self, "perms", action.perms)
        K = self.complex
        for g in self.group.elements:
            p = self.perms[g]
            for layer in K.simplices[1:]:
                for s in layer:
                    if tuple(sorted(p[v] for v in s)) not in K:
                        raise GroupError(f"element {self.group.names[g]} sends simplex {s} outside the complex")

    @property
    def vertex_action(self) -> GroupAction:
        return GroupAction(self.group, self.complex.n_vertices, self.perms)

    def image(self, g: int, simplex: Sequence[int]) -> tuple[tuple[int, ...], int]:
        """Sorted image of an oriented simplex and the orientation sign."""
        img = [self.perms[g][v] for v in simplex]
        return tuple(sorted(img)), sorting_sign(img)

    def signed_permutation(self, k: int) -> list[list[tuple[int, int]]]:
        """For each group element, k-simplex index -> (image index, sign)."""
        K = self.complex
        out = []
        for g in self.group.elements:
            row = []
            for s in K.faces(k):
                img, sign = self.image(g, s)
                row.append((K.index_of(img), sign))
            out.append(row)
        return out

    def restrict(self, H: Subgroup) -> SimplicialAction:
        from .grp import subgroup_as_group

        Hg = subgroup_as_group(self.group, H)
        return SimplicialAction(Hg, self.complex, [self.perms[g] for g in H.members])

    def global_fixed_vertices(self) -> list[int]:
        return [v for v in range(self.complex.n_vertices) if all(p[v] == v for p in self.perms)]


def simplicial_action(pa: PosetAction) -> SimplicialAction:
    K = order_complex(pa.source)
    return SimplicialAction(pa.action.group, K, pa.action.perms)


def trivial_simplicial_action(G: FiniteGroup, K: SimplicialComplex) -> SimplicialAction:
    return SimplicialAction(G, K, trivial_action(G, K.n_vertices).perms)
