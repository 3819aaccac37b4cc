"""Cayley graphs over finite abelian groups and gcd-graphs.

Vertices are group elements; a and b are adjacent iff a - b lies in the
connection set S. A loop (0 in S) puts a 1 on the diagonal, never 2.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from pst_lab.abelian import Element, GroupSpec, format_int_list, gcd_tuples_array, parse_int_list, subgroup_generated
from pst_lab.config import LIMITS

SCHEMA_VERSION = 1


class AsymmetricConnectionSet(ValueError):
    pass


@dataclass(frozen=True)
class GcdSetSpec:
    """A set of divisor tuples D of the moduli; S_G(D) is the union of the gcd-classes."""

    group: GroupSpec
    tuples: frozenset[Element]

    def __post_init__(self):
        tuples = frozenset(tuple(int(c) for c in d) for d in self.tuples)
        for d in tuples:
            if not self.group.is_divisor_tuple(d):
                raise ValueError(f"{d} is not a divisor tuple of {self.group.moduli}")
        object.__setattr__(self, "tuples", tuples)


def build_gcd_set(spec: GcdSetSpec) -> frozenset[Element]:
    """Elements x with gcd(x, m) in D."""
    if not spec.tuples:
        return frozenset()
    g = gcd_tuples_array(spec.group)
    wanted = np.array(sorted(spec.tuples), dtype=np.int64)
    mask = (g[:, None, :] == wanted[None, :, :]).all(axis=2).any(axis=1)
    return frozenset(spec.group.element(int(i)) for i in np.flatnonzero(mask))


def gcd_class_labels(group: GroupSpec) -> list[Element]:
    """gcd tuple of every element, in element order."""
    return [tuple(int(c) for c in row) for row in gcd_tuples_array(group)]


def is_gcd_set(group: GroupSpec, S: Iterable[Sequence[int]]) -> bool:
    """True iff S is a union of whole gcd-classes."""
    S = {group.check(s) for s in S}
    labels = gcd_class_labels(group)
    hit = {labels[group.index(s)] for s in S}
    return sum(1 for lab in labels if lab in hit) == len(S)


@dataclass(frozen=True)
class CayleyGraph:
    group: GroupSpec
    connection: frozenset[Element]
    # divisor tuples when the graph was built as a gcd-graph; provenance only
    divisor_tuples: frozenset[Element] | None = field(default=None, compare=False)

    def __post_init__(self):
        conn = frozenset(self.group.check(s) for s in self.connection)
        for s in conn:
            if self.group.neg(s) not in conn:
                raise AsymmetricConnectionSet(f"connection set is not symmetric: -{s} missing")
        object.__setattr__(self, "connection", conn)
        if self.divisor_tuples is not None:
            object.__setattr__(self, "divisor_tuples", frozenset(tuple(d) for d in self.divisor_tuples))

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def degree(self) -> int:
        return len(self.connection)

    @property
    def has_loops(self) -> bool:
        return self.group.zero in self.connection

    def connection_indices(self) -> np.ndarray:
        return np.array(sorted(self.group.index(s) for s in self.connection), dtype=np.int64)

    def sorted_connection(self) -> list[Element]:
        return sorted(self.connection)

    def is_adjacent(self, a: Element, b: Element) -> bool:
        return self.group.sub(a, b) in self.connection

    def neighbors(self, a: Element) -> Iterator[Element]:
        for s in self.sorted_connection():
            yield self.group.add(a, s)

    def adjacency_matrix(self, cap: int = LIMITS.matrix_cap) -> np.ndarray:
        N = self.order
        if N > cap:
            raise ValueError(f"refusing to materialize a {N}x{N} adjacency matrix (cap {cap})")
        indicator = np.zeros(N, dtype=np.int64)
        indicator[self.connection_indices()] = 1
        # A[a, b] = [a - b in S] = indicator[D[b, a]]
        return indicator[self.group.difference_table().T]

    def edges(self) -> list[tuple[int, int]]:
        """Undirected edges (u <= v) by vertex index; loops appear as (u, u)."""
        out = []
        conn = self.connection_indices()
        c = self.group.coords
        for u in range(self.order):
            targets = self.group.indices_of(c[u][None, :] + c[conn])
            out.extend((u, int(v)) for v in np.unique(targets) if v >= u)
        return out

    def is_connected(self) -> bool:
        """Breadth-first reachability from 0.

        For circulant gcd-graphs the result is cross-checked against the
        criterion gcd(n, d_1, ..., d_k) = 1.
        """
        connected = _reach_count(self) == self.order
        if self.group.rank == 1 and self.divisor_tuples is not None:
            n = self.group.moduli[0]
            by_gcd = math.gcd(n, *(d[0] for d in self.divisor_tuples)) == 1
            if by_gcd != connected:
                raise RuntimeError(
                    f"internal inconsistency: BFS says connected={connected} but gcd criterion says "
                    f"{by_gcd} for ICG_{n}({sorted(d[0] for d in self.divisor_tuples)})"
                )
        return connected

    def generates_group(self) -> bool:
        return len(subgroup_generated(self.connection, self.group)) == self.order

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA_VERSION,
            "moduli": list(self.group.moduli),
            "connection_set": [list(s) for s in self.sorted_connection()],
            "edges": [[u, v] for u, v in self.edges()],
            "has_loops": self.has_loops,
        }
        if self.divisor_tuples is not None:
            out["divisor_tuples"] = [list(d) for d in sorted(self.divisor_tuples)]
        return out

    @classmethod
    def from_json(cls, data: dict) -> CayleyGraph:
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported graph schema {data.get('schema')!r}")
        group = GroupSpec(tuple(data["moduli"]))
        conn = frozenset(tuple(s) for s in data["connection_set"])
        tuples = data.get("divisor_tuples")
        graph = cls(group, conn, None if tuples is None else frozenset(tuple(d) for d in tuples))
        if "edges" in data and sorted(map(tuple, data["edges"])) != graph.edges():
            raise ValueError("edge list does not match the connection set")
        return graph

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for idx in range(self.order):
            lines.append(f'  {idx} [label="{format_int_list(self.group.element(idx))}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def adjacency_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(self.adjacency_matrix().tolist())
        return buf.getvalue()


def _reach_count(graph: CayleyGraph) -> int:
    group = graph.group
    conn = graph.group.coords[graph.connection_indices()]
    seen = np.zeros(group.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size and conn.size:
        nxt = group.indices_of(group.coords[frontier][:, None, :] + conn[None, :, :]).ravel()
        nxt = np.unique(nxt)
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return int(seen.sum())


def build_cayley(group: GroupSpec, S: Iterable[Sequence[int]]) -> CayleyGraph:
    return CayleyGraph(group, frozenset(tuple(s) for s in S))


def gcd_graph(group: GroupSpec | Sequence[int], tuples: Iterable[Sequence[int]]) -> CayleyGraph:
    """Cay(G, S_G(D)) for a set of divisor tuples D."""
    if not isinstance(group, GroupSpec):
        group = GroupSpec(tuple(group))
    spec = GcdSetSpec(group, frozenset(tuple(d) for d in tuples))
    return CayleyGraph(group, build_gcd_set(spec), spec.tuples)


def icg(n: int, D: Iterable[int]) -> CayleyGraph:
    """Integral circulant graph ICG_n(D)."""
    return gcd_graph(GroupSpec((n,)), [(d,) for d in D])


def adjacency_commute(g1: CayleyGraph, g2: CayleyGraph) -> bool:
    """Exact integer check A1 A2 == A2 A1."""
    if g1.group != g2.group:
        raise ValueError("graphs live on different groups")
    a, b = g1.adjacency_matrix(), g2.adjacency_matrix()
    return bool(np.array_equal(a @ b, b @ a))


def kronecker_cayley(g1: CayleyGraph, g2: CayleyGraph) -> CayleyGraph:
    """G1 x G2 as a Cayley graph on the direct sum, connection set S1 x S2.

    Vertex order matches ``np.kron(A1, A2)``.
    """
    group = GroupSpec(g1.group.moduli + g2.group.moduli)
    conn = frozenset(s + t for s in g1.connection for t in g2.connection)
    tuples = None
    if g1.divisor_tuples is not None and g2.divisor_tuples is not None:
        tuples = frozenset(d + e for d in g1.divisor_tuples for e in g2.divisor_tuples)
    return CayleyGraph(group, conn, tuples)


def parse_tuple_list(text: str) -> list[Element]:
    """``"1,1;2,1"`` -> ``[(1, 1), (2, 1)]``; an empty string gives no tuples."""
    return [parse_int_list(part) for part in text.split(";") if part.strip()]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)
