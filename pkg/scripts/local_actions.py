"""Local actions and vertex-stabiliser orders of G1, G2, G3 across n and base vertices."""

import argparse
from dataclasses import dataclass, field

from atcover.localaction import CONSTRUCTIONS, build_gamma, vertex_stabiliser_local_action


@dataclass(frozen=True)
class Config:
    n_max: int = 3
    words: tuple[str, ...] = field(default=("a", "id", "bcz", "abc"))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--words", nargs="+", default=list(Config.words))
    args = p.parse_args()
    cfg = Config(args.n_max, tuple(args.words))
    print(f"{'n':>2} {'group':>5} {'vertex':>14} {'local':>6} {'|L|':>4} {'kernel':>6} {'log2(|S|/3)':>11} {'bound':>6}")
    for n in range(1, cfg.n_max + 1):
        ctx = build_gamma(n)
        for c in CONSTRUCTIONS:
            for w in cfg.words:
                rep = vertex_stabiliser_local_action(c, n, ctx.vertex(w))
                bound = str(rep.bound_log2) if rep.bound_applies else "-"
                print(
                    f"{n:>2} {c:>5} {rep.vertex_label:>14} {rep.identified_as:>6} {rep.local_order:>4} "
                    f"{rep.kernel_order:>6} {rep.stabiliser_log2_times3:>11} {bound:>6}"
                )


if __name__ == "__main__":
    main()
