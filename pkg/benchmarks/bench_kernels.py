"""Compare the compiled and pure-Python kernels.

Run ``python3 benchmarks/bench_kernels.py``.  The kernel timings call each
backend module directly on the same random phrases.  The end-to-end rows
time a group computation in a subprocess, once per backend, since the
backend is fixed at import time.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from nanophrase import kernels
from nanophrase.core import preset
from nanophrase.sampling import random_phrase

END_TO_END = ("from nanophrase.core import preset; from nanophrase.groups import group_structure;"
              "group_structure(preset('gauss'), 1, 4)")


def sample(n: int, rank: int, seed: int = 0):
    rng = random.Random(seed)
    data = preset("vknot")
    out = []
    for _ in range(n):
        p = random_phrase(rng, data, rng.randint(1, 3), rank)
        out.append((p.word, p.lengths, dict(p.proj)))
    return out


def bench_module(mod, phrases, repeat: int):
    def canon():
        for w, l, pr in phrases:
            mod.canonicalize(w, l, pr)

    def subs():
        for w, l, pr in phrases:
            mod.subforms(w, l, pr)

    return (min(timeit.repeat(canon, number=1, repeat=repeat)),
            min(timeit.repeat(subs, number=1, repeat=repeat)))


def end_to_end(pure: bool) -> float:
    env = dict(os.environ)
    env.pop("NANOPHRASE_PURE_PYTHON", None)
    if pure:
        env["NANOPHRASE_PURE_PYTHON"] = "1"
    code = f"import time; t=time.perf_counter(); {END_TO_END}; print(time.perf_counter()-t)"
    out = subprocess.run([sys.executable, "-c", code], env=env, check=True,
                         capture_output=True, text=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--phrases", type=int, default=300)
    ap.add_argument("--rank", type=int, default=7)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()

    phrases = sample(args.phrases, args.rank)
    print(f"{args.phrases} random phrases of rank {args.rank}")
    print(f"{'backend':<10}{'canonicalize':>14}{'subforms':>12}")
    times = {}
    for mod in kernels.backends():
        times[mod.BACKEND] = bench_module(mod, phrases, args.repeat)
        c, s = times[mod.BACKEND]
        print(f"{mod.BACKEND:<10}{c:>13.3f}s{s:>11.3f}s")
    if len(times) == 2:
        (pc, ps), (cc, cs) = times.values()
        print(f"{'speedup':<10}{pc / cc:>13.1f}x{ps / cs:>11.1f}x")
    else:
        print("compiled backend not available; only the fallback was timed")
    if not args.skip_end_to_end:
        print("gauss G4 end to end:")
        for pure in (True, False):
            print(f"  {'python' if pure else 'default':<8}{end_to_end(pure):.2f}s")


if __name__ == "__main__":
    main()
