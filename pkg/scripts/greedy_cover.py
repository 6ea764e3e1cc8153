"""Greedily cover V(Lambda_n) by automorphic translates of the 72-vertex eigenvector."""

import argparse
from dataclasses import dataclass

from atcover.eigen import greedy_lower_bound, greedy_orbit_basis, s1_vertices
from atcover.localaction import build_gamma
from atcover.perm import PermGroup


@dataclass(frozen=True)
class Config:
    n: int = 3
    show_words: bool = False


def run(cfg: Config):
    ctx = build_gamma(cfg.n)
    lam = ctx.lam
    aut = PermGroup([b.cover_perm for b in ctx.b_lifts], lam.n_vertices)
    res = greedy_orbit_basis(lam, s1_vertices(cfg.n).indicator(lam.n_vertices), aut)
    return ctx, res


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--show-words", action="store_true", help="print the generator word used at each step")
    args = p.parse_args()
    cfg = Config(args.n, args.show_words)
    ctx, res = run(cfg)
    bound = greedy_lower_bound(ctx.lam.n_vertices)
    print(f"n={cfg.n}: {res.size} independent translates (|V|/72 = {float(bound):.2f}, dim E1 = {ctx.e1_dim})")
    if cfg.show_words:
        for v, word in res.witnesses:
            print(f"  cover {ctx.lam.labels[v]} via generators {list(word)}")


if __name__ == "__main__":
    main()
