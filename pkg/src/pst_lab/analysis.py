"""Periodicity and perfect state transfer decisions.

Verdicts at t = q*pi/2 come from the exact backend: an entry (a + bi)/N has
unit modulus iff a^2 + b^2 = N^2. The float scan is a heuristic search for
candidate times and proves nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from pst_lab.abelian import Element
from pst_lab.cayley import CayleyGraph
from pst_lab.config import TOLERANCES
from pst_lab.evolution import Entry, QuarterTransition, float_rows, quarter_transition
from pst_lab.spectra import full_spectrum


@dataclass(frozen=True)
class Periodic:
    gamma: Entry


@dataclass(frozen=True)
class PstShift:
    """PST from every u to u + shift."""

    shift: Element
    phase: Entry


@dataclass(frozen=True)
class ScanHit:
    t: float
    u: Element
    v: Element
    modulus: float


@dataclass
class PstReport:
    graph: CayleyGraph
    time: int | float
    backend: str  # "exact" (time is q) or "float" (time is t)
    periodic: Periodic | None = None
    pairs: list[PstShift] = field(default_factory=list)
    candidates: list[ScanHit] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.periodic is not None:
            return "periodic"
        if self.pairs or self.candidates:
            return "pst"
        return "none"

    def to_json(self) -> dict:
        group = self.graph.group
        out = {
            "schema": 1,
            "moduli": list(group.moduli),
            "connection_set": [list(s) for s in self.graph.sorted_connection()],
            "backend": self.backend,
            "verdict": self.verdict,
        }
        if self.backend == "exact":
            out["quarter"] = self.time
            out["gamma"] = None if self.periodic is None else self.periodic.gamma.to_json()
            out["pst"] = [
                {
                    "u": group.format(group.zero),
                    "v": group.format(p.shift),
                    "shift": group.format(p.shift),
                    "phase": p.phase.to_json(),
                    "phase_str": str(p.phase),
                }
                for p in self.pairs
            ]
        else:
            out["candidates"] = [
                {"t": f"{h.t:.9f}", "u": group.format(h.u), "v": group.format(h.v), "modulus": f"{h.modulus:.12f}"}
                for h in self.candidates
            ]
        return out


def check_periodic_quarter(g: CayleyGraph, q: int, h: QuarterTransition | None = None) -> Periodic | None:
    """Periodic(gamma) if H(q*pi/2) = gamma*I, else None.

    Decided twice: from the exact matrix, and from the residues of the
    eigenvalues (all q*r mod 4 equal over occupied classes r).
    """
    spectrum = full_spectrum(g)
    h = h or quarter_transition(g, q, spectrum)
    gamma = h.scalar()
    phases = {(q * r) % 4 for r in spectrum.residue_classes}
    by_residue = Entry.i_power(phases.pop()) if len(phases) == 1 else None
    if gamma != by_residue:
        raise RuntimeError(f"internal inconsistency: matrix gives gamma={gamma}, residues give {by_residue}")
    return None if gamma is None else Periodic(gamma)


def find_pst_quarter(g: CayleyGraph, q: int, h: QuarterTransition | None = None) -> list[PstShift]:
    """Shifts w != 0 with |H(q*pi/2)[0, w]| = 1, exactly."""
    h = h or quarter_transition(g, q)
    N = h.den
    out = []
    for idx, (a, b) in enumerate(h.row):
        if idx and a * a + b * b == N * N:
            out.append(PstShift(g.group.element(idx), Entry(a, b, N).normalized()))
    # a unitary row has squared moduli summing to 1
    assert len(out) <= 1, "more than one unit-modulus entry in a unitary row"
    return out


def analyze_quarter(g: CayleyGraph, q: int) -> PstReport:
    h = quarter_transition(g, q)
    return PstReport(g, q, "exact", check_periodic_quarter(g, q, h), find_pst_quarter(g, q, h))


def scan_times(t_min: float, t_max: float, step: float) -> np.ndarray:
    if step <= 0:
        raise ValueError("step must be positive")
    count = int(np.floor((t_max - t_min) / step + 1e-9)) + 1
    return t_min + step * np.arange(max(count, 0))


def scan_pst_float(
    g: CayleyGraph,
    t_min: float = 0.0,
    t_max: float = TOLERANCES.scan_t_max,
    step: float = TOLERANCES.scan_step,
    tol: float = TOLERANCES.pst_candidate,
) -> list[ScanHit]:
    """Grid times t at which some off-diagonal |H(t)[0, w]| exceeds 1 - tol. Heuristic only."""
    times = scan_times(t_min, t_max, step)
    hits = []
    chunk = max(1, (1 << 20) // max(g.order, 1))
    for start in range(0, len(times), chunk):
        ts = times[start:start + chunk]
        mod = np.abs(float_rows(g, ts))
        mod[:, 0] = 0.0
        for i, w in zip(*np.nonzero(mod > 1 - tol)):
            hits.append(ScanHit(float(ts[i]), g.group.zero, g.group.element(int(w)), float(mod[i, w])))
    return hits
