"""Print the type-II E_2 page for D(n, 0) at a prime p, from the table and from the engine.

With the defaults (p = 7, n = 7) this is the eight-row page with the
Z/7n corner and the two Z/7 rows.
"""
import argparse
from dataclasses import dataclass

from wreathcoh.complexes import build_cyclic_complex
from wreathcoh.equivariant import cyclic_power, hom_double_complex
from wreathcoh.formulas import predict_typeII_E2
from wreathcoh.graded import format_orders
from wreathcoh.spectral import SpectralSequence, required_columns
from wreathcoh.verify import compare_entries, engine_entries


@dataclass
class Config:
    p: int = 7
    n: int = 7
    columns: int = 8
    page: int = 2


def render(entries, p, columns):
    width = 18
    lines = ["j\\i  " + "".join(f"{i:^{width}}" for i in range(columns + 1))]
    for j in range(0, -p - 1, -1):
        cells = [format_orders(list(entries.get((i, j), ()))) if (i, j) in entries else "-"
                 for i in range(columns + 1)]
        lines.append(f"{j:>4} " + "".join(f"{c:^{width}}" for c in cells))
    return "\n".join(lines)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for k, v in vars(Config()).items():
        ap.add_argument(f"--{k}", type=int, default=v)
    cfg = Config(**vars(ap.parse_args()))

    cols = (0, cfg.columns)
    table = predict_typeII_E2(cfg.p, cfg.n).entries(cols, (-cfg.p, 0))
    E = cyclic_power(build_cyclic_complex(cfg.n, 0), cfg.p)
    D = hom_double_complex(E, required_columns(-cfg.p, 0, cfg.columns))
    engine = engine_entries(SpectralSequence(D, "II").page(cfg.page, cols, with_differentials=False))

    print(f"table, E_2 for p={cfg.p} n={cfg.n}")
    print(render(table, cfg.p, cfg.columns))
    print(f"\nengine, E_{cfg.page}")
    print(render(engine, cfg.p, cfg.columns))
    if cfg.page == 2:
        diff = compare_entries(table, engine)
        print("\nagree" if not diff else f"\n{len(diff)} differing cells: {diff}")


if __name__ == "__main__":
    main()
