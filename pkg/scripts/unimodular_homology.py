"""Reduced homology of the bounded partial-basis complexes of Z^n."""
import argparse
import time

from raagkit import homology
from raagkit.complexes import build_unimodular_complex


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, nargs="+", default=[2, 3])
    p.add_argument("--q-max", type=int, default=2)
    args = p.parse_args()
    for n in args.n:
        for q in range(1, args.q_max + 1):
            t0 = time.perf_counter()
            c = build_unimodular_complex(n, q)
            rep = homology(c)
            groups = ", ".join(f"H{i}={rep.group(i)}" for i in range(rep.max_dim + 1))
            print(f"n={n} q={q}  f={c.f_vector()}  {groups}  ({time.perf_counter() - t0:.1f}s)", flush=True)


if __name__ == "__main__":
    main()
