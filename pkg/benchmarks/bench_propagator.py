"""Compiled-kernel vs pure-scipy integrator timings.

Runs the same transition-probability sweeps on both backends and reports
wall time per solve, the speedup, and the largest disagreement. Invoke as

    python3 benchmarks/bench_propagator.py [--repeats N]
"""

from __future__ import annotations

import argparse
import time
import warnings

from superddp import (
    PropagationConfig,
    WindowWarning,
    make_erf,
    make_gaussian,
    make_landau_zener,
    transition_probability,
)
from superddp._backend import HAVE_COMPILED

CASES = [
    ("gaussian sweep", lambda v: make_gaussian(v, 1.0, 1.0), [0.5 + 0.25 * i for i in range(20)]),
    ("erf pulse", lambda v: make_erf(v, 1.0), [2.0 + 0.4 * i for i in range(20)]),
    ("linear sweep", lambda v: make_landau_zener(v, 1.0), [0.5 + 0.1 * i for i in range(20)]),
]


def run(backend: str, repeats: int) -> tuple[float, dict[str, float]]:
    cfg = PropagationConfig(backend=backend)
    probs: dict[str, float] = {}
    best = float("inf")
    n_solves = sum(len(values) for _, _, values in CASES)
    with warnings.catch_warnings():
        # the linear-sweep window truncates an infinite ramp; the boundary
        # warning is expected there and irrelevant to timing
        warnings.simplefilter("ignore", WindowWarning)
        for _ in range(repeats):
            start = time.perf_counter()
            for name, build, values in CASES:
                for v in values:
                    res = transition_probability(build(v), cfg)
                    probs[f"{name}@{v:g}"] = res.p_adiabatic
            best = min(best, time.perf_counter() - start)
    return best / n_solves, probs


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    t_pure, p_pure = run("pure", args.repeats)
    print(f"pure:     {1e3 * t_pure:8.3f} ms/solve")
    if not HAVE_COMPILED:
        print("compiled: extension not built; nothing to compare")
        return 0
    t_comp, p_comp = run("compiled", args.repeats)
    gap = max(abs(p_pure[k] - p_comp[k]) for k in p_pure)
    print(f"compiled: {1e3 * t_comp:8.3f} ms/solve")
    print(f"speedup:  {t_pure / t_comp:8.1f}x")
    print(f"largest probability disagreement: {gap:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
