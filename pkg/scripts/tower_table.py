"""Tabulate exponents and variety dimensions along iterated wreath towers."""
import argparse
from dataclasses import dataclass

from wreathcoh.arith import nu_p_che, tower


@dataclass
class Config:
    p: int = 3
    steps: int = 4
    base: str = "C"
    rank: int = 1


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=int, default=Config.p)
    ap.add_argument("--steps", type=int, default=Config.steps)
    ap.add_argument("--base", choices=("C", "E"), default=Config.base,
                    help="C: cyclic of order p^rank, E: elementary abelian of rank `rank`")
    ap.add_argument("--rank", type=int, default=Config.rank)
    cfg = Config(**vars(ap.parse_args()))

    head = f"C:{cfg.p}^{cfg.rank}" if cfg.base == "C" else f"E:{cfg.p}^{cfg.rank}"
    text = head + f" wr C_{cfg.p}" * cfg.steps
    rep = tower(text)
    print(f"{'step':>4}  {'e':>8}  {'ee':>8}  {'nu_p(che)':>9}  dims")
    for k, (ex, dims) in enumerate(rep.stages):
        flag = "  (e ambiguous)" if ex.p2_caveat else ""
        print(f"{k:>4}  {ex.e:>8}  {ex.ee:>8}  {nu_p_che(dims):>9}  {list(dims.dims)}{flag}")


if __name__ == "__main__":
    main()
