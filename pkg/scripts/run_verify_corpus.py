"""Sweep the brute-force engine against the closed form over the standard corpus.

    python3 scripts/run_verify_corpus.py --primes 2 3 5 --degrees 1 2 3 --threads 4
"""
import argparse
import json
import time
from dataclasses import asdict, dataclass, field

from wreathcoh.verify import corpus, run_corpus


@dataclass
class Config:
    primes: list = field(default_factory=lambda: [2, 3, 5])
    degrees: list = field(default_factory=lambda: [1, 2, 3])
    threads: int = 1
    out: str = ""


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=Config().primes)
    ap.add_argument("--degrees", type=int, nargs="+", default=Config().degrees)
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--out", default="", help="write the full JSON report here")
    cfg = Config(**vars(ap.parse_args()))

    t = time.time()
    report = run_corpus(corpus(tuple(cfg.primes), tuple(cfg.degrees)), cfg.threads)
    for e in report.entries:
        p = e.parameters
        print(f"{e.status:<12} p={p['p']} n={p['n']:<3} d={p['d']} window {e.window[0]}:{e.window[1]}")
    c = report.counts()
    print(f"{c['match']} match, {c['mismatch']} mismatch, {c['inconclusive']} inconclusive "
          f"in {time.time() - t:.1f}s")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), **report.to_dict()}, fh, indent=2, sort_keys=True)
    raise SystemExit(0 if report.ok else 1)


if __name__ == "__main__":
    main()
