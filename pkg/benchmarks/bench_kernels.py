"""Compare the compiled and pure-Python fixpoint kernels on ring models.

Usage: python3 benchmarks/bench_kernels.py [--sizes 100 400 1600] [--repeat 5]
"""
import argparse
import time

from lambkit import kernels
from lambkit.checker import _groups, _mask
from lambkit.formula import coalition
from lambkit.random_gen import ring_model


def time_once(impl, model, coal, repeat):
    groups, k = _groups(model, coal)
    succ, n_prof = model.succ_matrix, len(model.profiles)
    goal = _mask(model, model.props["q"])
    hold = _mask(model, model.props["p"] | model.props["q"] | {s for s in model.states if s % 2})
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        impl.until(succ, n_prof, groups, k, goal, _mask(model, model.states))
        impl.release(succ, n_prof, groups, k, hold, goal)
        impl.pre(succ, n_prof, groups, k, goal)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[100, 400, 1600])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    impls = kernels.backends()
    print(f"active backend: {kernels.BACKEND}")
    print(f"{'states':>8} " + " ".join(f"{name:>12}" for name in impls) + "   speedup")
    for n in args.sizes:
        model = ring_model(n)
        times = {name: time_once(impl, model, coalition(1, 2), args.repeat) for name, impl in impls.items()}
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{n:>8} " + " ".join(f"{t * 1e3:>10.2f}ms" for t in times.values()) + f"   {speedup:6.1f}x")


if __name__ == "__main__":
    main()
