"""Compare the numba and numpy kernel sets.

Two parts:

* micro: each kernel on realistic inputs, both flavours in this process,
  best of ``--repeat`` runs (numba compile time excluded by a warm-up call);
* end-to-end: character tables of a few groups computed in a fresh
  subprocess per backend (``ACDLAB_BACKEND``), which is what users see.

    python benchmarks/bench_kernels.py [--repeat 5] [--skip-e2e]
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from acdlab import _kernels
from acdlab.classes import conjugacy_classes
from acdlab.corpus import build_family
from acdlab.group import enumerate_from_generators


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def micro_inputs():
    rng = np.random.default_rng(12345)
    S6 = build_family("symmetric", [6])
    perms = S6.perms
    # BFS data for fill_table, recomputed the way enumeration does it
    n = S6.order
    rgen = np.asarray(S6._rgen, dtype=np.int32)
    parent = np.zeros(n, dtype=np.int64)
    gen_of = np.zeros(n, dtype=np.int64)
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = [0]
    for x in queue:
        for s in range(rgen.shape[1]):
            y = int(rgen[x, s])
            if not seen[y]:
                seen[y] = True
                parent[y], gen_of[y] = x, s
                queue.append(y)
    cd = conjugacy_classes(S6)
    cls = cd.class_of[rng.integers(0, n, size=(20000, cd.count))]
    p = 1_000_003
    sq = rng.integers(0, p, size=(60, 60)).astype(np.int64)
    a = rng.integers(0, p, size=(200, 120)).astype(np.int64)
    b = rng.integers(0, p, size=(120, 150)).astype(np.int64)
    coeffs = np.append(rng.integers(0, 2003, size=6), 1).astype(np.int64)
    return {
        "fill_table (S6, 720x720)": ("fill_table", lambda k: k(np.empty((n, n), dtype=np.int32), rgen, parent, gen_of)),
        "orbit_labels (S6 conj maps)": ("orbit_labels", lambda k: k(S6.conj_maps.astype(np.int64))),
        "count_classes (20000x11)": ("count_classes", lambda k: k(cls, cd.count)),
        "rref_mod (60x60)": ("rref_mod", lambda k: k(sq, p)),
        "charpoly_mod (60x60)": ("charpoly_mod", lambda k: k(sq, p)),
        "poly_roots_mod (deg 6, p=2003)": ("poly_roots_mod", lambda k: k(coeffs, 2003)),
        "matmul_mod (200x120x150)": ("matmul_mod", lambda k: k(a, b, p)),
    }, perms


def run_micro(repeat: int) -> None:
    numba_k = _kernels.load_numba_kernels()
    if numba_k is None:
        print("numba not importable; micro benchmark skipped")
        return
    cases, _ = micro_inputs()
    print(f"{'kernel':34s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for label, (name, call) in cases.items():
        call(numba_k[name])  # compile
        t_np = best_of(lambda: call(_kernels.NUMPY_KERNELS[name]), repeat)
        t_nb = best_of(lambda: call(numba_k[name]), repeat)
        print(f"{label:34s} {t_np * 1e3:10.2f} {t_nb * 1e3:10.2f} {t_np / t_nb:8.1f}x")


E2E_SNIPPET = """
import time, sys
from acdlab.corpus import build_family
from acdlab.chartab import character_table
from acdlab import _kernels
specs = [("symmetric", [6]), ("extraspecial_2", [3, "plus"]), ("frobenius", [31, 30]), ("sl25", [])]
character_table(build_family("symmetric", [4]))  # warm-up: numba cache load
for fam, params in specs:
    G = build_family(fam, params)
    t = time.perf_counter()
    character_table(G)
    print(f"{fam} {params}|{G.order}|{time.perf_counter() - t:.4f}")
print(f"backend|{_kernels.BACKEND}")
"""


def run_e2e() -> None:
    results = {}
    for backend in ("numpy", "numba"):
        env = dict(os.environ, ACDLAB_BACKEND=backend)
        out = subprocess.run([sys.executable, "-c", E2E_SNIPPET], env=env, check=True,
                             capture_output=True, text=True).stdout
        for line in out.strip().splitlines():
            key, *rest = line.split("|")
            results.setdefault(key, {})[backend] = rest
    print(f"\n{'character table':28s} {'order':>6s} {'numpy s':>9s} {'numba s':>9s}")
    for key, by in results.items():
        if key == "backend":
            continue
        order = by["numpy"][0]
        t_np, t_nb = float(by["numpy"][1]), float(by["numba"][1])
        print(f"{key:28s} {order:>6s} {t_np:9.3f} {t_nb:9.3f}")


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--skip-e2e", action="store_true")
    args = ap.parse_args()
    run_micro(args.repeat)
    if not args.skip_e2e:
        run_e2e()


if __name__ == "__main__":
    main()
