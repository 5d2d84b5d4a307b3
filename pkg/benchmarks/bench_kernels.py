"""Compare the compiled node sweep with the numpy fallback.

Times one forward and one backward sweep on complete trees of several depths,
then a full training epoch with each backend in a fresh interpreter (the
backend is fixed at import, so the epoch timing needs separate processes).

    python benchmarks/bench_kernels.py [--batch 64] [--repeat 50]
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from budforest import _sweep_py
from budforest.tree import VARIANT_CODE, Tree, gate_scores

try:
    from budforest import _sweep as _sweep_c
except ImportError:
    _sweep_c = None

EPOCH_SNIPPET = """
import time
import numpy as np
from budforest import BACKEND
from budforest.data import make_xor
from budforest.tree import Tree
from budforest.training import TrainConfig, train_tree
data = make_xor(500, 0.5, 0)
tree = Tree.complete("{variant}", 2, 2, {depth}, rng=0)
t0 = time.perf_counter()
train_tree(tree, data, TrainConfig(epochs=1, batch_size={batch}))
print(BACKEND, time.perf_counter() - t0)
"""


def sweep_args(tree, X):
    s1, _, s2, _ = gate_scores(tree, X)
    return (tree.left, tree.right, tree.inner_of, VARIANT_CODE[tree.variant], s1,
            s1 if s2 is None else s2, tree.leaf_logit, tree.payoff)


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_sweeps(variant, depths, batch, repeat):
    rng = np.random.default_rng(0)
    print(f"\n{variant} sweeps, batch {batch}, best of {repeat} (microseconds)")
    print(f"{'depth':>5} {'nodes':>6} {'fwd numpy':>10} {'fwd cython':>11} {'bwd numpy':>10} "
          f"{'bwd cython':>11} {'speedup':>8}")
    for depth in depths:
        tree = Tree.complete(variant, 16, 10, depth, rng=rng)
        tree.leaf_logit[:] = rng.normal(size=tree.n_inner)
        args = sweep_args(tree, rng.uniform(0, 1, (batch, 16)))
        dy = rng.normal(size=(batch, 10))
        row = {}
        for name, mod in (("numpy", _sweep_py), ("cython", _sweep_c)):
            if mod is None:
                row[name] = (float("nan"), float("nan"))
                continue
            Y = mod.sweep_forward(*args)
            row[name] = (best_of(lambda: mod.sweep_forward(*args), repeat),
                         best_of(lambda: mod.sweep_backward(*args, Y, dy), repeat))
        (fp, bp), (fc, bc) = row["numpy"], row["cython"]
        print(f"{depth:>5} {tree.n_nodes:>6} {fp * 1e6:>10.1f} {fc * 1e6:>11.1f} {bp * 1e6:>10.1f} "
              f"{bc * 1e6:>11.1f} {(fp + bp) / (fc + bc):>7.1f}x")


def bench_epoch(variant, depth, batch):
    print(f"\none training epoch, {variant} depth {depth}, 2000 XOR points, batch {batch}")
    for flag in ("1", ""):
        env = dict(os.environ, BFOREST_PURE_PYTHON=flag)
        code = EPOCH_SNIPPET.format(variant=variant, depth=depth, batch=batch)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, seconds = out.stdout.split()
        print(f"  {backend:<7} {float(seconds):.3f} s")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--batch", type=int, default=64)
    ap.add_argument("--repeat", type=int, default=50)
    ap.add_argument("--depths", type=int, nargs="+", default=[1, 3, 5, 7])
    args = ap.parse_args(argv)
    if _sweep_c is None:
        print("compiled kernel not built; only the numpy column is meaningful")
    for variant in ("budding", "distributed"):
        bench_sweeps(variant, args.depths, args.batch, args.repeat)
    bench_epoch("budding", 5, args.batch)


if __name__ == "__main__":
    main()
