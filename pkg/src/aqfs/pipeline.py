"""End-to-end selection pipeline shared by the estimator and the CLI."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .evolution import (EvolutionTrace, GapScan, Schedule, DEFAULT_GRID_POINTS,
                        drift_norm, evolve, global_time_bound,
                        local_delay_integral, scan_gap)
from .exceptions import ConfigurationError
from .ising import (IsingProblem, annealing_driver, build_problem_hamiltonian,
                    encode_qubo)
from .mi import MIMatrix, normalize_mi_matrix
from .oracle import alpha_star

DEFAULT_SAFETY = 10.0


@dataclass
class SelectionResult:
    """Everything one anneal-based selection run produced."""

    mi_matrix: MIMatrix
    problem: IsingProblem
    alpha: float
    k: int
    gap_scan: GapScan
    gamma: float
    local_delay: float
    total_time: float
    trace: EvolutionTrace
    wall_clock_seconds: float

    @property
    def candidates(self) -> list:
        return self.trace.candidates

    @property
    def selected(self):
        return self.trace.candidates[0][0]

    def report(self, include_wall_clock: bool = True) -> dict:
        out = {
            "n": self.mi_matrix.n,
            "k": self.k,
            "alpha": self.alpha,
            "g_min": self.gap_scan.g_min,
            "s_at_g_min": self.gap_scan.s_at_g_min,
            "gamma": self.gamma,
            "local_delay_integral": self.local_delay,
            "total_time": self.total_time,
            "steps": self.trace.steps,
            "final_success_prob": float(self.trace.success_prob[-1]),
            "final_ground_fidelity": float(self.trace.ground_fidelity[-1]),
            "selected": {"bits": list(self.selected.bits),
                         "indices": list(self.selected.indices),
                         "probability": self.trace.candidates[0][1]},
            "candidates": [{"bits": list(sub.bits), "indices": list(sub.indices),
                            "probability": prob}
                           for sub, prob in self.trace.candidates],
        }
        if include_wall_clock:
            out["wall_clock_seconds"] = self.wall_clock_seconds
        return out


def resolve_alpha(m: MIMatrix, alpha) -> float:
    """Map the user's alpha setting ("auto" or a number) to a value."""
    if isinstance(alpha, str):
        if alpha.lower() == "auto":
            return alpha_star(m)
        try:
            return float(alpha)
        except ValueError:
            raise ConfigurationError(f"alpha must be a number or 'auto', "
                                     f"got {alpha!r}") from None
    value = float(alpha)
    if value < 0:
        raise ConfigurationError(f"alpha must be >= 0, got {value}")
    return value


def select_features(m: MIMatrix, k: int, alpha="auto",
                    grid_points: int = DEFAULT_GRID_POINTS,
                    safety: float = DEFAULT_SAFETY,
                    total_time=None, steps=None,
                    normalize: bool = True,
                    candidate_tolerance: float = 0.01) -> SelectionResult:
    """Run MI matrix -> Ising encoding -> gap scan -> anneal -> readout.

    The anneal duration defaults to T = safety / g_min^2 with the minimum
    gap taken from the scan; pass ``total_time`` to override it.
    """
    started = time.perf_counter()
    scaled = normalize_mi_matrix(m) if normalize else m
    alpha_value = resolve_alpha(scaled, alpha)
    problem = encode_qubo(scaled, alpha_value, k)
    hp = build_problem_hamiltonian(problem)
    driver = annealing_driver(problem.n)

    scan = scan_gap(driver, hp, Schedule.gap_scan(grid_points))
    norm = drift_norm(driver, hp)
    gamma = global_time_bound(scan.g_min, norm)
    local = local_delay_integral(scan.s, scan.gaps, norm)
    run_time = float(total_time) if total_time is not None else safety / scan.g_min ** 2

    trace = evolve(driver, hp, run_time, steps=steps,
                   candidate_tolerance=candidate_tolerance)
    wall = time.perf_counter() - started
    return SelectionResult(scaled, problem, alpha_value, int(k), scan, gamma,
                           local, run_time, trace, wall)
