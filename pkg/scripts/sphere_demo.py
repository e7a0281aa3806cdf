"""Sampled I_n(A, X) complexes are complete joins over the simplex, hence spheres."""
import argparse

from raagkit import homology, verify_complete_join
from raagkit.cli import parse_group
from raagkit.complexes import build_In_sample


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", default="e")
    p.add_argument("--x", default="F2")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--per-color", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    a, x = parse_group(args.a, prefix="a"), parse_group(args.x)
    for n in range(1, args.max_n + 1):
        s = build_In_sample(a, x, n, vertices_per_color=args.per_color, seed=args.seed)
        join = verify_complete_join(s.complex, s.base, s.projection)
        rep = homology(s.complex)
        groups = ", ".join(f"H{i}={rep.group(i)}" for i in range(rep.max_dim + 1))
        print(f"n={n}  f={s.complex.f_vector()}  complete_join={join.ok}  {groups}")


if __name__ == "__main__":
    main()
