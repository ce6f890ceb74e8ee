"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import timeit

from cyclord import kernels
from cyclord.mv_core import lukasiewicz, make_gamma
from cyclord.pco import make_cyclic_group


def cases():
    for u in [(7,), (3, 3), (63,), (3, 3, 3)]:
        A = make_gamma(u)
        yield f"mv_axiom_scan gamma{u} |A|={A.size}", "mv_axiom_scan", (A.oplus, A.neg, A.zero)
    for n in (16, 40, 80):
        C = make_cyclic_group(n)
        yield f"pco_axiom_scan Z/{n}", "pco_axiom_scan", (C.add_table, C.rel_table)
    L = lukasiewicz(6)
    xs = [6] * 20 + [3]
    ys = [6] * 15 + [5]
    yield "good_add L6 len 21 + 16", "good_add", (L.oplus, L.odot, xs, ys, L.zero, L.one)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    found = kernels.backends()
    names = list(found)
    print(f"{'case':40s}" + "".join(f"{n:>14s}" for n in names) + ("    speedup" if len(names) > 1 else ""))
    for title, fn, fargs in cases():
        times = {}
        for name in names:
            f = getattr(found[name], fn)
            number, _ = timeit.Timer(lambda: f(*fargs)).autorange()
            best = min(timeit.repeat(lambda: f(*fargs), number=number, repeat=args.repeat))
            times[name] = best / number
        row = f"{title:40s}" + "".join(f"{times[n] * 1e3:12.3f}ms" for n in names)
        if "cython" in times:
            row += f"  {times['python'] / times['cython']:8.1f}x"
        print(row)


if __name__ == "__main__":
    main()
