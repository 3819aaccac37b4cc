"""Builders for the periodic and PST gcd-graph families.

Every builder checks its hypotheses, builds the graph, and then confirms
the promised property with the exact backend; a graph that fails its
guarantee raises ConstructionFailure instead of being returned.

Coordinates ``i`` are 1-based, as in Z_{m_1} + ... + Z_{m_r}.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from pst_lab.abelian import GroupSpec, crt_join, crt_split, divisors, two_adic_split
from pst_lab.analysis import check_periodic_quarter, find_pst_quarter
from pst_lab.cayley import CayleyGraph, gcd_graph, icg, kronecker_cayley
from pst_lab.cubelike import CubelikeSpec
from pst_lab.evolution import Entry, quarter_transition


class HypothesisViolation(ValueError):
    """The parameters do not satisfy the construction's hypotheses."""


class ConstructionFailure(RuntimeError):
    """A constructed graph does not have the property its construction guarantees."""


# ---------------------------------------------------------------- divisor families


@dataclass(frozen=True)
class DivisorFamilyElement:
    """D = tilde u D' u 2D' u 4D' with n/d in 8N on tilde and n/d in 8N - 4 on D'."""

    n: int
    tilde: frozenset[int]
    dprime: frozenset[int]
    D: frozenset[int] = field(init=False)

    def __post_init__(self):
        n = self.n
        if n % 4:
            raise HypothesisViolation(f"n={n} is not a multiple of 4")
        for d in self.tilde:
            if n % d or (n // d) % 8:
                raise HypothesisViolation(f"{d} is not a divisor with n/d in 8N (n={n})")
        for d in self.dprime:
            if n % d or (n // d) % 8 != 4:
                raise HypothesisViolation(f"{d} is not a divisor with n/d in 8N-4 (n={n})")
        D = set(self.tilde)
        for d in self.dprime:
            D.update((d, 2 * d, 4 * d))
        D = frozenset(D)
        if math.gcd(n, *D) != 1:
            raise HypothesisViolation(f"D={sorted(D)} does not generate Z_{n}")
        object.__setattr__(self, "D", D)

    @property
    def has_loops(self) -> bool:
        return self.n in self.D

    def to_json(self) -> dict:
        return {"n": self.n, "tilde": sorted(self.tilde), "dprime": sorted(self.dprime), "D": sorted(self.D)}


def family_candidates(n: int) -> tuple[list[int], list[int]]:
    if n < 4 or n % 4:
        raise HypothesisViolation(f"n={n} is not in 4N")
    divs = divisors(n)
    return [d for d in divs if (n // d) % 8 == 0], [d for d in divs if (n // d) % 8 == 4]


def decompose_family_member(n: int, D: Iterable[int]) -> DivisorFamilyElement:
    """Recover (tilde, D') from D, or raise HypothesisViolation if D is not in the family."""
    D = frozenset(int(d) for d in D)
    if any(d < 1 or n % d for d in D):
        raise HypothesisViolation(f"{sorted(D)} are not all divisors of {n}")
    tilde_c, dprime_c = family_candidates(n)
    tilde = frozenset(d for d in D if d in tilde_c)
    dprime = frozenset(d for d in D if d in dprime_c)
    member = DivisorFamilyElement(n, tilde, dprime)
    if member.D != D:
        raise HypothesisViolation(f"D={sorted(D)} is not of the form tilde u D' u 2D' u 4D' for n={n}")
    return member


def enumerate_divisor_family(
    n: int, limit: int | None = None, max_tilde: int | None = None, max_dprime: int | None = None
) -> Iterator[DivisorFamilyElement]:
    """Family members in order of |tilde| + |D'|, then lexicographically.

    The smallest generating members come first: {1} for n in 8N and
    {1, 2, 4} for n in 8N - 4.
    """
    tilde_c, dprime_c = family_candidates(n)
    pool = [("t", d) for d in tilde_c] + [("p", d) for d in dprime_c]
    produced = 0
    for size in range(1, len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            tilde = frozenset(d for kind, d in combo if kind == "t")
            dprime = frozenset(d for kind, d in combo if kind == "p")
            if max_tilde is not None and len(tilde) > max_tilde:
                continue
            if max_dprime is not None and len(dprime) > max_dprime:
                continue
            try:
                member = DivisorFamilyElement(n, tilde, dprime)
            except HypothesisViolation:
                continue
            yield member
            produced += 1
            if limit is not None and produced >= limit:
                return


def sample_divisor_family(n: int, count: int, seed: int = 0, max_tries: int = 10000) -> list[DivisorFamilyElement]:
    """Distinct random members, each candidate divisor included with probability 1/2."""
    rng = random.Random(seed)
    tilde_c, dprime_c = family_candidates(n)
    seen: dict[frozenset, DivisorFamilyElement] = {}
    for _ in range(max_tries):
        if len(seen) >= count:
            break
        tilde = frozenset(d for d in tilde_c if rng.random() < 0.5)
        dprime = frozenset(d for d in dprime_c if rng.random() < 0.5)
        try:
            member = DivisorFamilyElement(n, tilde, dprime)
        except HypothesisViolation:
            continue
        seen.setdefault(member.D, member)
    return list(seen.values())


# ---------------------------------------------------------------- Z_n as a Kronecker product


def prop1c_cubelike_set(alpha: int, beta: int) -> frozenset[tuple[int, ...]]:
    """Bit vectors c in Z_2^alpha with c_j = 0 for j < beta and c_beta = 1.

    For beta = alpha the condition on c_beta is vacuous and the set is {0}:
    gcd(x, 2^alpha) = 2^alpha only for x = 0.
    """
    if not 0 <= beta <= alpha:
        raise ValueError(f"need 0 <= beta <= alpha, got beta={beta}, alpha={alpha}")
    if beta == alpha:
        return frozenset({(0,) * alpha})
    free = alpha - beta - 1
    return frozenset((0,) * beta + (1,) + rest for rest in itertools.product((0, 1), repeat=free))


@dataclass(frozen=True)
class IsoWitness:
    """z -> (2-adic digits of z mod 2^alpha, z mod m) between Cay(Z_n, S(d)) and X(C) x Cay(Z_m, S(m'))."""

    n: int
    source: CayleyGraph
    target: CayleyGraph

    def forward(self, z: int) -> tuple[int, ...]:
        bits, rest = crt_split(z, self.n)
        return bits + (rest,)

    def inverse(self, x: tuple[int, ...]) -> int:
        return crt_join(x[:-1], x[-1], self.n)

    def permutation(self) -> np.ndarray:
        return np.array([self.target.group.index(self.forward(z)) for z in range(self.n)], dtype=np.int64)

    def verify(self) -> bool:
        """Bijection, and adjacency preserved in both directions over all vertex pairs."""
        f = self.permutation()
        if sorted(f.tolist()) != list(range(self.n)):
            return False
        back = np.array([self.inverse(x) for x in self.target.group.elements()], dtype=np.int64)
        if not np.array_equal(f[back], np.arange(self.n)):
            return False
        A_src = self.source.adjacency_matrix()
        A_tgt = self.target.adjacency_matrix()
        forward_ok = np.array_equal(A_tgt[np.ix_(f, f)], A_src)
        backward_ok = np.array_equal(A_src[np.ix_(back, back)], A_tgt)
        return bool(forward_ok and backward_ok)


@dataclass(frozen=True)
class Prop1cDecomposition:
    cubelike: CubelikeSpec
    alpha: int
    beta: int
    m: int
    m_prime: int
    witness: IsoWitness


def prop1c_decompose(n: int, d: int) -> Prop1cDecomposition:
    if n < 2 or n % 2:
        raise HypothesisViolation(f"n={n} must be even")
    if d < 1 or n % d or d == n:
        raise HypothesisViolation(f"d={d} is not a proper divisor of {n}")
    alpha, m = two_adic_split(n)
    beta, m_prime = two_adic_split(d)
    C = CubelikeSpec(alpha, prop1c_cubelike_set(alpha, beta))
    target = kronecker_cayley(C.cayley(), icg(m, [m_prime]))
    witness = IsoWitness(n, icg(n, [d]), target)
    return Prop1cDecomposition(C, alpha, beta, m, m_prime, witness)


# ---------------------------------------------------------------- periodic circulants


def _require_identity(g: CayleyGraph, what: str):
    h = quarter_transition(g, 1)
    if not h.is_identity():
        raise ConstructionFailure(f"{what}: H(pi/2) is not the identity")


def lemma3b_graph(n: int, d: int, verify: bool = True) -> CayleyGraph:
    """ICG_n({d}) for n/d in 8N; H(pi/2) = I."""
    if d < 1 or n % d or (n // d) % 8:
        raise HypothesisViolation(f"need d | n and n/d in 8N, got n={n}, d={d}")
    g = icg(n, [d])
    if verify:
        _require_identity(g, f"ICG_{n}({{{d}}})")
    return g


def lemma3c_graph(n: int, d: int, verify: bool = True) -> CayleyGraph:
    """ICG_n({d, 2d, 4d}) for n/d in 8N - 4; H(pi/2) = I."""
    if d < 1 or n % d or (n // d) % 8 != 4:
        raise HypothesisViolation(f"need d | n and n/d in 8N-4, got n={n}, d={d}")
    g = icg(n, [d, 2 * d, 4 * d])
    if verify:
        _require_identity(g, f"ICG_{n}({{{d},{2 * d},{4 * d}}})")
    return g


def lemma3c_cubelike_set(n: int, d: int) -> CubelikeSpec:
    """C_1 u C_2 u C_3 in Z_2^alpha for ICG_n({d, 2d, 4d}); four elements summing to 0."""
    if d < 1 or n % d or (n // d) % 8 != 4:
        raise HypothesisViolation(f"need d | n and n/d in 8N-4, got n={n}, d={d}")
    alpha, _ = two_adic_split(n)
    C = prop1c_cubelike_set(alpha, alpha - 2) | prop1c_cubelike_set(alpha, alpha - 1) | prop1c_cubelike_set(alpha, alpha)
    spec = CubelikeSpec(alpha, C)
    assert len(C) == 4 and not any(spec.sigma), f"unexpected cubelike set {sorted(C)}"
    return spec


def theorem3d_graph(member: DivisorFamilyElement, verify: bool = True) -> CayleyGraph:
    g = icg(member.n, member.D)
    if verify:
        _require_identity(g, f"ICG_{member.n}({sorted(member.D)})")
    return g


# ---------------------------------------------------------------- gcd-graphs over general groups


def _coordinate(group: GroupSpec, i: int) -> int:
    if not 1 <= i <= group.rank:
        raise HypothesisViolation(f"coordinate i={i} out of range 1..{group.rank}")
    if group.moduli[i - 1] % 4:
        raise HypothesisViolation(f"m_{i}={group.moduli[i - 1]} is not a multiple of 4")
    return i - 1


def _replace(values: tuple[int, ...], pos: int, value: int) -> tuple[int, ...]:
    return values[:pos] + (value,) + values[pos + 1:]


def theorem3f_tuples(group: GroupSpec, i: int, D: Iterable[int]) -> frozenset[tuple[int, ...]]:
    pos = _coordinate(group, i)
    member = D if isinstance(D, DivisorFamilyElement) else decompose_family_member(group.moduli[pos], D)
    ones = (1,) * group.rank
    return frozenset(_replace(ones, pos, d) for d in member.D)


def theorem3f_graph(group: GroupSpec, i: int, D: Iterable[int], verify: bool = True) -> CayleyGraph:
    """Cay(G, S_G(D)) with D = {(1, ..., d_i, ..., 1) : d_i in D}; periodic at pi/2 with H = I."""
    g = gcd_graph(group, theorem3f_tuples(group, i, D))
    if verify:
        _require_identity(g, f"periodic gcd-graph over {group.moduli}")
    return g


def half_shift(group: GroupSpec, i: int) -> tuple[int, ...]:
    """The element with m_i/2 at coordinate i and 0 elsewhere."""
    pos = _coordinate(group, i)
    return _replace(group.zero, pos, group.moduli[pos] // 2)


def theorem3e_graphs(
    group: GroupSpec, i: int, D: Iterable[int], loopless: bool = False, verify: bool = True
) -> tuple[CayleyGraph, CayleyGraph]:
    """The periodic graph plus the gcd-class of (m_1, ..., m_i/2, ..., m_r), resp. m_i/4.

    Both have PST at pi/2 from every u to u + half_shift(group, i).
    """
    pos = _coordinate(group, i)
    base = theorem3f_tuples(group, i, D)
    if loopless and group.moduli in base:
        raise HypothesisViolation("D contains the tuple of moduli itself (loops) but loopless=True")
    mi = group.moduli[pos]
    out = []
    for extra in (_replace(group.moduli, pos, mi // 2), _replace(group.moduli, pos, mi // 4)):
        if extra in base:
            raise HypothesisViolation(f"added tuple {extra} already lies in D")
        g = gcd_graph(group, base | {extra})
        if verify:
            _require_pst(g, half_shift(group, i), f"gcd-graph over {group.moduli} with D u {{{extra}}}")
        out.append(g)
    return out[0], out[1]


def _require_pst(g: CayleyGraph, shift: tuple[int, ...], what: str) -> Entry:
    found = find_pst_quarter(g, 1)
    if [p.shift for p in found] != [shift]:
        raise ConstructionFailure(f"{what}: expected PST shift {shift} at pi/2, found {[p.shift for p in found]}")
    return found[0].phase


def default_family_choice(m: int) -> frozenset[int]:
    """{1} when m is in 8N, {1, 2, 4} otherwise (m in 4N)."""
    if m % 4:
        raise HypothesisViolation(f"{m} is not a multiple of 4")
    return frozenset({1}) if m % 8 == 0 else frozenset({1, 2, 4})


def theorem3g_construct(group: GroupSpec, verify: bool = True) -> CayleyGraph:
    """A gcd-graph with PST on any group of rank > 1 having a factor m_i = 0 mod 4."""
    if group.rank < 2:
        raise HypothesisViolation("the construction needs r > 1 cyclic factors")
    positions = [j for j, m in enumerate(group.moduli) if m % 4 == 0]
    if not positions:
        raise HypothesisViolation(f"no modulus of {group.moduli} is divisible by 4")
    i = positions[0] + 1
    half, _ = theorem3e_graphs(group, i, default_family_choice(group.moduli[i - 1]), verify=verify)
    return half


def corollary_graphs(n: int, D: Iterable[int], verify: bool = True) -> tuple[CayleyGraph, CayleyGraph]:
    """ICG_n(D u {n/2}) and ICG_n(D u {n/4}) for D in the family with n not in D."""
    member = decompose_family_member(n, D)
    return theorem3e_graphs(GroupSpec((n,)), 1, member, loopless=True, verify=verify)


# ---------------------------------------------------------------- provenance records


@dataclass
class Construction:
    theorem: str
    params: dict
    graph: CayleyGraph
    periodic_gamma: Entry | None = None
    pst_shift: tuple[int, ...] | None = None
    pst_phase: Entry | None = None

    def to_json(self) -> dict:
        group = self.graph.group
        out = {
            "theorem": self.theorem,
            "params": self.params,
            "graph": self.graph.to_json(),
        }
        if self.periodic_gamma is not None:
            out["periodic_gamma"] = self.periodic_gamma.to_json()
        if self.pst_shift is not None:
            out["pst"] = {
                "shift": group.format(self.pst_shift),
                "phase": self.pst_phase.to_json(),
                "phase_str": str(self.pst_phase),
            }
        return out


def describe(theorem: str, params: dict, g: CayleyGraph) -> Construction:
    """Attach the exact quarter-period verdict to a built graph."""
    periodic = check_periodic_quarter(g, 1)
    pairs = find_pst_quarter(g, 1)
    return Construction(
        theorem,
        params,
        g,
        periodic_gamma=None if periodic is None else periodic.gamma,
        pst_shift=pairs[0].shift if pairs else None,
        pst_phase=pairs[0].phase if pairs else None,
    )
