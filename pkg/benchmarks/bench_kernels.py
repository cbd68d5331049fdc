"""Compare the compiled kernels with their pure-Python twins.

Kernel timings call both modules directly on the same inputs. End-to-end
timings run a workload in a subprocess once per backend, selecting the
fallback with SEPREG_PURE_PYTHON=1.

    python benchmarks/bench_kernels.py [--repeat 5] [--states 60]
"""

import argparse
import os
import random
import subprocess
import sys
import timeit
from array import array

from sepreg import _pykernels
from sepreg.nfa import Nfa

try:
    from sepreg import _ckernels
except ImportError:
    _ckernels = None

WORKLOAD = """
import random, time
from sepreg.nfa import Nfa
from sepreg.oracles import pt_oracle
from sepreg.pt import decide_pt

def rand(rng):
    n = rng.randint(1, 4)
    trans = [(p, g, q) for p in range(n) for g in "ab" for q in range(n) if rng.random() < 0.35]
    return Nfa(n, "ab", trans, {0}, {s for s in range(n) if rng.random() < 0.4})

rng = random.Random(1)
pairs = [(rand(rng), rand(rng)) for _ in range(150)]
t0 = time.perf_counter()
for a, b in pairs:
    decide_pt(a, b)
    pt_oracle(a, b, 5)
print(time.perf_counter() - t0)
"""


def random_csr(rng, n, alphabet_size, density):
    trans = [(p, chr(97 + g), q) for p in range(n) for g in range(alphabet_size) for q in range(n)
             if rng.random() < density]
    a = Nfa(n, "".join(chr(97 + g) for g in range(alphabet_size)), trans, {0}, ())
    return a.csr()


def ext_table(alphabet_size, n):
    words = [()]
    for length in range(1, n + 1):
        words += [w + (a,) for w in words if len(w) == length - 1 for a in range(alphabet_size)]
    index = {w: i for i, w in enumerate(words)}
    ext = [-1] * (len(words) * alphabet_size)
    for i, w in enumerate(words):
        if len(w) < n:
            for a in range(alphabet_size):
                ext[i * alphabet_size + a] = index[w + (a,)]
    return len(words), array("i", ext)


def bench_kernels(repeat, states):
    rng = random.Random(0)
    offsets, syms, dsts = random_csr(rng, states, 3, 0.05)
    count, ext = ext_table(3, 5)
    word = [rng.randrange(3) for _ in range(12)]
    start = (1).to_bytes((count + 7) // 8, "little")

    def profile(mod):
        p = start
        for g in word:
            p = mod.profile_extend(p, g, ext, 3)

    cases = {
        "reach_masks": lambda mod: mod.reach_masks(states, offsets, syms, dsts, 0b111),
        "scc": lambda mod: mod.scc(states, offsets, syms, dsts, 0b011),
        "profile_extend x12": profile,
    }
    print(f"{'kernel':<20}{'python ms':>12}{'cython ms':>12}{'speedup':>10}")
    for name, fn in cases.items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=20, repeat=repeat)) / 20 * 1000
        if _ckernels is None:
            print(f"{name:<20}{py:>12.3f}{'n/a':>12}{'':>10}")
            continue
        cy = min(timeit.repeat(lambda: fn(_ckernels), number=20, repeat=repeat)) / 20 * 1000
        print(f"{name:<20}{py:>12.3f}{cy:>12.3f}{py / cy:>9.1f}x")


def bench_end_to_end():
    results = {}
    for backend, env in (("cython", {}), ("python", {"SEPREG_PURE_PYTHON": "1"})):
        if backend == "cython" and _ckernels is None:
            continue
        proc = subprocess.run([sys.executable, "-c", WORKLOAD], env={**os.environ, **env},
                              capture_output=True, text=True, check=True)
        results[backend] = float(proc.stdout.strip())
    print()
    for backend, seconds in results.items():
        print(f"end-to-end ({backend}): {seconds:.2f} s")
    if len(results) == 2:
        print(f"end-to-end speedup: {results['python'] / results['cython']:.2f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--states", type=int, default=60)
    args = parser.parse_args()
    bench_kernels(args.repeat, args.states)
    bench_end_to_end()


if __name__ == "__main__":
    main()
