"""Benchmark: compiled mask kernel vs the pure-Python fallback.

Sweeps the pairwise-transition rule over all ordered distinct triples of
face masks for n factors and reports the wall time of each kernel plus
the speedup.  The two histograms must agree exactly.
"""

import argparse
import time

from cornercalc import _rel, _slowrel


def run(n: int, repeats: int) -> None:
    masks = list(range(1, 2 ** n))
    print(f"n={n}: {len(masks)} masks, "
          f"{len(masks) * (len(masks) - 1) * (len(masks) - 2)} triples, "
          f"compiled kernel available: {_rel.USING_COMPILED}")

    def time_it(fn):
        best = float("inf")
        result = None
        for _ in range(repeats):
            t0 = time.perf_counter()
            result = fn(masks)
            best = min(best, time.perf_counter() - t0)
        return best, result

    t_py, h_py = time_it(_rel.sweep_triples_python)
    print(f"pure python : {t_py:8.4f} s   histogram {h_py}")
    if _rel.USING_COMPILED:
        t_c, h_c = time_it(_rel.kernel.sweep_triples)
        print(f"compiled    : {t_c:8.4f} s   histogram {h_c}")
        assert list(h_c) == list(h_py), "kernels disagree!"
        print(f"speedup     : {t_py / t_c:.1f}x")
    else:
        print("compiled kernel not built; nothing to compare")
    # sanity: the slow module standalone matches the dispatcher
    assert list(_slowrel.transition_code(1, 2, 3) for _ in range(1)) == [
        _rel.transition_code(1, 2, 3)
    ]


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()
    run(args.n, args.repeats)
