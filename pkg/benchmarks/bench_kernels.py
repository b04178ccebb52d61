#!/usr/bin/env python3
"""Compare the compiled kernel backend against the NumPy fallback.

Runs each measurement in a subprocess so the TOOLTALK_BACKEND choice is
honored (the backend binds once at import time), then prints a table of
per-call times and the compiled/python speedup.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
from pathlib import Path

CASES = ("matvec_add", "rnn_step", "rnn_chain_grad", "softmax", "train_batch")


def run_cases(repeats: int) -> dict:
    import tempfile
    import time

    import numpy as np

    from tooltalk import _core
    from tooltalk.autodiff import Tape, Tensor
    from tooltalk.dataset import DatasetSplit, default_table, sample_instance
    from tooltalk.game import GameSample
    from tooltalk.trainer import TrainConfig, train

    def best_of(fn, n_calls: int) -> float:
        """Median per-call seconds over `repeats` timed loops."""
        times = []
        for _ in range(repeats):
            t0 = time.perf_counter()
            for _ in range(n_calls):
                fn()
            times.append((time.perf_counter() - t0) / n_calls)
        times.sort()
        return times[len(times) // 2]

    rng = np.random.default_rng(0)
    out = {"backend": _core.BACKEND}

    W = rng.standard_normal((100, 300))
    x = rng.standard_normal(300)
    b = rng.standard_normal(100)
    out["matvec_add"] = best_of(lambda: _core.matvec_add(W, x, b), 2000)

    Wih = rng.standard_normal((100, 50))
    Whh = rng.standard_normal((100, 100))
    bh = rng.standard_normal(100)
    xs = rng.standard_normal(50)
    h0 = rng.standard_normal(100)
    out["rnn_step"] = best_of(
        lambda: _core.rnn_fwd(Wih, Whh, bh, xs, h0), 2000)

    tWih, tWhh, tb = Tensor(Wih), Tensor(Whh), Tensor(bh)
    xt, h_in = Tensor(xs), Tensor(h0)

    def chain_grad():
        tape = Tape()
        h = h_in
        for _ in range(20):
            h = tape.rnn(tWih, tWhh, tb, xt, h)
        tape.backward(tape.vsum(h))
        for t in (tWih, tWhh, tb, xt, h_in):
            t.zero_grad()

    out["rnn_chain_grad"] = best_of(chain_grad, 20)

    logits = rng.standard_normal(30)
    out["softmax"] = best_of(lambda: _core.softmax_fwd(logits), 2000)

    table = default_table()
    srng = np.random.default_rng(7)
    cats = table.fruit_categories
    tools = table.tool_categories
    samples = tuple(
        GameSample(fruit=sample_instance(cats[i % len(cats)], srng),
                   tool1=sample_instance(tools[i % len(tools)], srng),
                   tool2=sample_instance(tools[(i + 1) % len(tools)], srng))
        for i in range(64)
    )
    split = DatasetSplit(in_domain_train=list(samples), in_domain_test=[],
                         validation=list(samples[:16]), transfer=[])
    config = TrainConfig(batch_size=32, total_batches=4,
                         validation_every=1000, validation_batches=4,
                         validation_batch_games=4)

    def four_batches():
        with tempfile.TemporaryDirectory() as tmp:
            train(config, split, 0, tmp, resume=False)

    per_run = best_of(four_batches, 1)
    out["train_batch"] = per_run / config.total_batches
    return out


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--one", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.one:
        print(json.dumps(run_cases(args.repeats)))
        return 0

    results = {}
    for backend in ("python", "compiled"):
        env = dict(os.environ, TOOLTALK_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, __file__, "--one",
             "--repeats", str(args.repeats)],
            capture_output=True, text=True, env=env,
            cwd=Path(__file__).resolve().parent.parent)
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            return 1
        results[backend] = json.loads(proc.stdout)

    width = max(len(c) for c in CASES)
    print(f"{'case':<{width}}  {'python':>12}  {'compiled':>12}  speedup")
    for case in CASES:
        py = results["python"][case]
        cc = results["compiled"][case]
        print(f"{case:<{width}}  {py * 1e6:>10.1f}us  {cc * 1e6:>10.1f}us"
              f"  {py / cc:>6.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
