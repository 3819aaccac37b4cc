"""Instance-by-instance replication of the periodicity / PST results.

Each scope expands to a list of parameter instances within a size bound;
each instance is checked with the exact backend (the Kronecker rule is
checked in floating point against the dense oracle). Failures are data.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from pst_lab.abelian import GroupSpec, divisors
from pst_lab.analysis import check_periodic_quarter, find_pst_quarter
from pst_lab.cayley import gcd_graph, icg, kronecker_cayley
from pst_lab.constructions import (
    DivisorFamilyElement,
    enumerate_divisor_family,
    half_shift,
    lemma3b_graph,
    lemma3c_cubelike_set,
    lemma3c_graph,
    prop1c_decompose,
    theorem3e_graphs,
    theorem3f_graph,
    theorem3g_construct,
)
from pst_lab.cubelike import CubelikeSpec, PstShift, classify_half_pi, cubelike_adjacency, cubelike_half_pi, cubelike_transition
from pst_lab.evolution import Entry, kron_transition, quarter_transition, transition_family, union_transition
from pst_lab.oracle import dense_adjacency, expm_oracle
from pst_lab.spectra import full_spectrum

SCOPES = ("lemma3b", "lemma3c", "thm3d", "thm3f", "thm3e", "thm3g", "thm2c", "prop2d", "prop3a", "propaa", "prop1c")
HALF_PI = math.pi / 2


@dataclass
class InstanceResult:
    scope: str
    name: str
    params: dict
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "params": self.params, "status": "pass" if self.passed else "fail", "detail": self.detail}


@dataclass
class SuiteReport:
    scope: str
    size_bound: int
    results: list[InstanceResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "size_bound": self.size_bound,
            "instances": len(self.results),
            "failed": len(self.failures),
            "results": [r.to_json() for r in self.results],
        }

    def table(self) -> str:
        lines = [f"{self.scope}: {len(self.results) - len(self.failures)}/{len(self.results)} instances pass"]
        for r in self.results:
            mark = "pass" if r.passed else "FAIL"
            lines.append(f"  {mark}  {r.name}" + (f"  ({r.detail})" if r.detail else ""))
        return "\n".join(lines)


# ---------------------------------------------------------------- per-instance checks


def check_lemma3b(n: int, d: int) -> tuple[bool, str]:
    return quarter_transition(lemma3b_graph(n, d, verify=False), 1).is_identity(), ""


def check_lemma3c(n: int, d: int) -> tuple[bool, str]:
    lemma3c_cubelike_set(n, d)
    return quarter_transition(lemma3c_graph(n, d, verify=False), 1).is_identity(), ""


def check_thm3d(n: int, tilde: list[int], dprime: list[int]) -> tuple[bool, str]:
    member = DivisorFamilyElement(n, frozenset(tilde), frozenset(dprime))
    return quarter_transition(icg(n, member.D), 1).is_identity(), ""


def check_thm3f(moduli: list[int], i: int, D: list[int]) -> tuple[bool, str]:
    g = theorem3f_graph(GroupSpec(tuple(moduli)), i, D, verify=False)
    periodic = check_periodic_quarter(g, 1)
    return periodic is not None and periodic.gamma == Entry(1, 0, 1), ""


def _pst_with_oracle(g, shift) -> tuple[bool, str]:
    found = find_pst_quarter(g, 1)
    if [p.shift for p in found] != [shift]:
        return False, f"exact PST shifts {[p.shift for p in found]}"
    if g.order <= 256:
        H = expm_oracle(dense_adjacency(g.group.moduli, g.connection), HALF_PI)
        modulus = abs(H[0, g.group.index(shift)])
        if modulus < 1 - 1e-9:
            return False, f"oracle |H[0,shift]|={modulus:.3e}"
    return True, f"phase {found[0].phase}"


def check_thm3e(moduli: list[int], i: int, D: list[int]) -> tuple[bool, str]:
    group = GroupSpec(tuple(moduli))
    shift = half_shift(group, i)
    details = []
    for g in theorem3e_graphs(group, i, D, verify=False):
        ok, detail = _pst_with_oracle(g, shift)
        details.append(detail)
        if not ok:
            return False, detail
    return True, "; ".join(details)


def check_thm3g(moduli: list[int]) -> tuple[bool, str]:
    group = GroupSpec(tuple(moduli))
    g = theorem3g_construct(group, verify=False)
    i = next(j for j, m in enumerate(moduli) if m % 4 == 0) + 1
    return _pst_with_oracle(g, half_shift(group, i))


def check_thm2c(n: int, C: list[list[int]]) -> tuple[bool, str]:
    spec = CubelikeSpec(n, frozenset(tuple(u) for u in C))
    verdict = classify_half_pi(spec)
    h = quarter_transition(spec.cayley(), 1)
    if isinstance(verdict, PstShift):
        exact_ok = h.at(verdict.shift).normalized() == verdict.phase and verdict.shift == spec.sigma
    else:
        exact_ok = h.scalar() == verdict.gamma and verdict.gamma == Entry.i_power(len(spec.C) % 4)
    if not exact_ok:
        return False, "classification disagrees with the exact transition"
    err = np.abs(expm_oracle(cubelike_adjacency(spec), HALF_PI) - cubelike_half_pi(spec).to_array()).max()
    return bool(err < 1e-9), f"oracle error {err:.1e}"


def check_prop2d(n: int, C: list[list[int]], g_moduli: list[int], g_tuples: list[list[int]]) -> tuple[bool, str]:
    spec = CubelikeSpec(n, frozenset(tuple(u) for u in C))
    G = gcd_graph(GroupSpec(tuple(g_moduli)), [tuple(d) for d in g_tuples])
    H = kron_transition(lambda t: cubelike_transition(spec, t), full_spectrum(G), HALF_PI)
    err = np.abs(H.entries - np.eye(H.entries.shape[0])).max()
    exact = quarter_transition(kronecker_cayley(spec.cayley(), G), 1).is_identity()
    return bool(err < 1e-9 and exact), f"float error {err:.1e}, exact identity {exact}"


def check_prop3a(moduli: list[int], S: list[list[int]], T: list[list[int]], q: int) -> tuple[bool, str]:
    group = GroupSpec(tuple(moduli))
    gS = gcd_graph(group, [tuple(d) for d in S])
    gT = gcd_graph(group, [tuple(d) for d in T])
    gU = gcd_graph(group, [tuple(d) for d in S + T])
    prod = union_transition(quarter_transition(gS, q), quarter_transition(gT, q))
    return prod.same_matrix(quarter_transition(gU, q)), ""


def check_propaa(
    g_moduli: list[int], g_tuples: list[list[int]], h_moduli: list[int], h_tuples: list[list[int]], t: float
) -> tuple[bool, str]:
    G = gcd_graph(GroupSpec(tuple(g_moduli)), [tuple(d) for d in g_tuples])
    Hg = gcd_graph(GroupSpec(tuple(h_moduli)), [tuple(d) for d in h_tuples])
    rule = kron_transition(transition_family(G), full_spectrum(Hg), t).entries
    A = dense_adjacency(G.group.moduli, G.connection)
    B = dense_adjacency(Hg.group.moduli, Hg.connection)
    err = np.abs(rule - expm_oracle(np.kron(A, B), t)).max()
    return bool(err < 1e-8), f"max error {err:.1e}"


def check_prop1c(n: int, d: int) -> tuple[bool, str]:
    dec = prop1c_decompose(n, d)
    return dec.witness.verify(), f"|C|={len(dec.cubelike.C)}, m={dec.m}, m'={dec.m_prime}"


# ---------------------------------------------------------------- instance generation

Task = tuple[str, Callable[..., tuple[bool, str]], dict]


def _groups_with_four(size_bound: int) -> list[tuple[int, ...]]:
    """Rank-2 groups (m_1, m_2) with 4 | m_1, plus a few rank-3 ones, N <= size_bound."""
    out = [(m1, m2) for m1 in range(4, size_bound + 1, 4) for m2 in range(1, size_bound // m1 + 1)]
    out += [(m1, 2, 2) for m1 in range(4, size_bound // 4 + 1, 4)]
    return out


def _random_tuple_set(rng: random.Random, group: GroupSpec, max_size: int = 3) -> list[list[int]]:
    tuples = group.divisor_tuples()
    return [list(d) for d in rng.sample(tuples, rng.randint(1, min(max_size, len(tuples))))]


def _random_cubelike(rng: random.Random, n: int, max_size: int | None = None) -> list[list[int]]:
    vectors = list(itertools.product((0, 1), repeat=n))
    k = rng.randint(0, len(vectors) if max_size is None else min(max_size, len(vectors)))
    return [list(u) for u in rng.sample(vectors, k)]


def instances(scope: str, size_bound: int, seed: int = 0) -> list[Task]:
    rng = random.Random(seed)
    tasks: list[Task] = []
    if scope == "lemma3b":
        for n in range(8, size_bound + 1, 8):
            for d in divisors(n):
                if (n // d) % 8 == 0:
                    tasks.append((f"ICG_{n}({{{d}}})", check_lemma3b, {"n": n, "d": d}))
    elif scope == "lemma3c":
        for n in range(4, size_bound + 1, 4):
            for d in divisors(n):
                if (n // d) % 8 == 4:
                    tasks.append((f"ICG_{n}({{{d},{2 * d},{4 * d}}})", check_lemma3c, {"n": n, "d": d}))
    elif scope == "thm3d":
        for n in range(4, size_bound + 1, 4):
            for member in enumerate_divisor_family(n, max_tilde=2, max_dprime=2):
                params = {"n": n, "tilde": sorted(member.tilde), "dprime": sorted(member.dprime)}
                tasks.append((f"ICG_{n}({sorted(member.D)})", check_thm3d, params))
    elif scope in ("thm3f", "thm3e"):
        check = check_thm3f if scope == "thm3f" else check_thm3e
        for moduli in _groups_with_four(size_bound):
            for member in enumerate_divisor_family(moduli[0], limit=3):
                if scope == "thm3e" and any(
                    extra in {(d,) + (1,) * (len(moduli) - 1) for d in member.D}
                    for extra in ((moduli[0] // 2,) + moduli[1:], (moduli[0] // 4,) + moduli[1:])
                ):
                    continue
                params = {"moduli": list(moduli), "i": 1, "D": sorted(member.D)}
                tasks.append((f"G={moduli}, D={sorted(member.D)}", check, params))
    elif scope == "thm3g":
        # a rank-2 group with a trivial second factor is a circulant in disguise; the recipe
        # then adds a tuple that is already present (e.g. (2, 1) for G = (4, 1))
        for moduli in _groups_with_four(size_bound):
            if len(moduli) > 1 and any(m > 1 for m in moduli[1:]):
                tasks.append((f"G={moduli}", check_thm3g, {"moduli": list(moduli)}))
    elif scope == "thm2c":
        max_n = min(4, max(1, int(math.log2(max(size_bound, 2)))))
        for n in range(1, max_n + 1):
            vectors = list(itertools.product((0, 1), repeat=n))
            if n <= 3:
                subsets = [c for k in range(0, min(5, len(vectors)) + 1) for c in itertools.combinations(vectors, k)]
            else:
                subsets = [tuple(map(tuple, _random_cubelike(rng, n, 5))) for _ in range(200)]
            for C in subsets:
                C = [list(u) for u in C]
                name = f"n={n}, C={{{','.join(''.join(map(str, u)) for u in C)}}}"
                tasks.append((name, check_thm2c, {"n": n, "C": C}))
    elif scope == "prop2d":
        factors = [((3,), [[1]]), ((4,), [[1]]), ((6,), [[1], [3]]), ((2, 2), [[1, 1]]), ((5,), [[1], [5]])]
        for n in (2, 3):
            vectors = list(itertools.product((0, 1), repeat=n))
            for k in range(0, len(vectors) + 1, 4):
                for C in itertools.combinations(vectors, k):
                    if any(sum(col) % 2 for col in zip(*C)):
                        continue
                    for moduli, tuples in factors:
                        if 2**n * math.prod(moduli) > size_bound:
                            continue
                        C_json = [list(u) for u in C]
                        params = {"n": n, "C": C_json, "g_moduli": list(moduli), "g_tuples": tuples}
                        tasks.append((f"X(C) n={n} |C|={k} x G{moduli}{tuples}", check_prop2d, params))
    elif scope == "prop3a":
        ns = [n for n in (24, 36) if n <= size_bound] or [max(2, size_bound)]
        for n in ns:
            divs = divisors(n)
            for case in range(25):
                labels = [rng.randrange(3) for _ in divs]
                S = [[d] for d, lab in zip(divs, labels) if lab == 1]
                T = [[d] for d, lab in zip(divs, labels) if lab == 2]
                q = 1 + case % 3
                params = {"moduli": [n], "S": S, "T": T, "q": q}
                tasks.append((f"Z_{n} case {case}", check_prop3a, params))
    elif scope == "propaa":
        small = [(2,), (3,), (4,), (5,), (6,), (8,), (2, 2), (4, 2), (9,), (12,)]
        for case in range(40):
            gm, hm = rng.choice(small), rng.choice(small)
            if math.prod(gm) * math.prod(hm) > size_bound:
                continue
            params = {
                "g_moduli": list(gm),
                "g_tuples": _random_tuple_set(rng, GroupSpec(gm)),
                "h_moduli": list(hm),
                "h_tuples": _random_tuple_set(rng, GroupSpec(hm)),
                "t": rng.choice([math.pi / 6, 1.0, HALF_PI]),
            }
            tasks.append((f"case {case}: G{gm} x H{hm}", check_propaa, params))
    elif scope == "prop1c":
        for n in range(2, size_bound + 1, 2):
            for d in divisors(n)[:-1]:
                tasks.append((f"n={n}, d={d}", check_prop1c, {"n": n, "d": d}))
    else:
        raise ValueError(f"unknown scope {scope!r}; choose from {', '.join(SCOPES)}")
    return tasks


def run_task(scope: str, task: Task) -> InstanceResult:
    name, check, params = task
    try:
        passed, detail = check(**params)
    except Exception as exc:  # failures are reported, not raised
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return InstanceResult(scope, name, params, bool(passed), detail)


def _run_packed(args):
    return run_task(*args)


def verify_theorem_suite(scope: str, size_bound: int, seed: int = 0, workers: int | None = None) -> SuiteReport:
    if workers is None:
        workers = int(os.environ.get("PST_LAB_THREADS", "1") or 1)
    tasks = instances(scope, size_bound, seed)
    report = SuiteReport(scope, size_bound)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            report.results = list(pool.map(_run_packed, [(scope, t) for t in tasks], chunksize=8))
    else:
        report.results = [run_task(scope, t) for t in tasks]
    return report
