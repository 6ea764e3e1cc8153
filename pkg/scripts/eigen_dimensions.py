"""Tabulate dim ker(A + I) over GF(2) for the covers against the conjectured formula."""

import argparse
import time
from dataclasses import dataclass

from atcover.cover import lambda_graph
from atcover.eigen import conjectured_dimension, greedy_lower_bound, one_eigenspace


@dataclass(frozen=True)
class Config:
    n_min: int = 1
    n_max: int = 4


def run(cfg: Config) -> list[dict]:
    rows = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        t0 = time.perf_counter()
        rep = one_eigenspace(lambda_graph(n), n)
        rows.append(
            {
                "n": n,
                "vertices": rep.vertex_count,
                "dim": rep.dim,
                "formula": conjectured_dimension(n),
                "lower_bound": greedy_lower_bound(rep.vertex_count),
                "seconds": time.perf_counter() - t0,
            }
        )
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=1)
    p.add_argument("--n-max", type=int, default=4)
    args = p.parse_args()
    print(f"{'n':>3} {'|V|':>7} {'dim':>6} {'formula':>8} {'|V|/72':>8} {'secs':>6}")
    for r in run(Config(args.n_min, args.n_max)):
        flag = "" if r["dim"] == r["formula"] else "  <- differs"
        print(
            f"{r['n']:>3} {r['vertices']:>7} {r['dim']:>6} {r['formula']:>8} "
            f"{float(r['lower_bound']):>8.2f} {r['seconds']:>6.2f}{flag}"
        )


if __name__ == "__main__":
    main()
