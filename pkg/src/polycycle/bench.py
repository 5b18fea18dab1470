"""Success-rate experiment harness over an (m, n) grid.

Each cell runs a fixed number of generated instances through the embedding
pipeline and reports the exact success fraction. Per-trial seeds derive
deterministically from (master seed, m, n, trial), so the success counts
in the CSV are byte-reproducible; mean runtimes are wall-clock and are the
one column that varies between runs (zeroed when timing is disabled).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .generators import GenConfig, GenerationExhaustedError, random_instance
from .pipeline import EmbeddingResult, embed_cycle
from .rng import derive_seed

CSV_HEADER = "m,n,trials,successes,ratio,mean_ms,seed"


@dataclass
class CellResult:
    m: int
    n: int
    trials: int
    successes: int
    mean_ms: float
    seed: int
    generation_failures: int = 0
    mean_reflex: float = 0.0
    mean_cost_proxy: float = 0.0  # r * (n^2 m + n^3), averaged over trials

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.successes, self.trials) if self.trials else Fraction(0)

    def csv_row(self, with_timing: bool = True) -> str:
        ratio = f"{float(self.ratio):.4f}"
        mean = f"{self.mean_ms:.3f}" if with_timing else "0.000"
        return (
            f"{self.m},{self.n},{self.trials},{self.successes},"
            f"{ratio},{mean},{self.seed}"
        )


def run_trial(m: int, n: int, seed: int) -> tuple[EmbeddingResult, float, int]:
    """One generated instance through the pipeline; returns the result,
    elapsed milliseconds, and the polygon's reflex count."""
    cfg = GenConfig(m=m, n=n, seed=seed)
    inst = random_instance(cfg, name=f"bench-m{m}-n{n}")
    start = time.perf_counter()
    result = embed_cycle(inst)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return result, elapsed_ms, result.decomposition.reflex_count


def run_cell(m: int, n: int, trials: int, master_seed: int) -> CellResult:
    successes = 0
    total_ms = 0.0
    gen_failures = 0
    total_r = 0
    total_proxy = 0.0
    for trial in range(trials):
        seed = derive_seed(master_seed, m, n, trial)
        try:
            result, elapsed_ms, reflex = run_trial(m, n, seed)
        except GenerationExhaustedError:
            gen_failures += 1
            continue
        total_ms += elapsed_ms
        total_r += reflex
        total_proxy += reflex * (n * n * m + n ** 3)
        if result.success:
            successes += 1
    done = trials - gen_failures
    return CellResult(
        m=m,
        n=n,
        trials=trials,
        successes=successes,
        mean_ms=total_ms / done if done else 0.0,
        seed=master_seed,
        generation_failures=gen_failures,
        mean_reflex=total_r / done if done else 0.0,
        mean_cost_proxy=total_proxy / done if done else 0.0,
    )


def run_grid(
    ms: list[int], ns: list[int], trials: int, master_seed: int
) -> list[CellResult]:
    return [run_cell(m, n, trials, master_seed) for m in ms for n in ns]


def to_csv(cells: list[CellResult], with_timing: bool = True) -> str:
    rows = [CSV_HEADER]
    rows += [c.csv_row(with_timing=with_timing) for c in cells]
    return "\n".join(rows) + "\n"
