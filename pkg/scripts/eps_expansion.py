"""Compare Z_D modulo eps^2 with the first-order expansion built from Delta, rho10 and rho11.

    python3 scripts/eps_expansion.py --order 6 --knots 3_1 4_1 5_1 5_2
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from kinv.alexander import alexander_poly
from kinv.diagrams import load_table
from kinv.mmr import algebra_first_order_residual, colored_jones_function, default_span, extract_rho10, required_order


@dataclass
class Config:
    order: int = 6
    knots: tuple[str, ...] = ("3_1", "4_1", "5_1", "5_2")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--order", type=int, default=Config.order)
    ap.add_argument("--knots", nargs="+", default=list(Config.knots))
    a = ap.parse_args()
    cfg = Config(a.order, tuple(a.knots))
    table = load_table()
    for name in cfg.knots:
        b = table[name][0]
        t0 = time.perf_counter()
        span = default_span(b)
        delta = alexander_poly(b)
        rho10, _ = extract_rho10(colored_jones_function(b, -1, required_order(span)), delta, span)
        res = algebra_first_order_residual(b, rho10, cfg.order)
        status = "zero" if res.is_zero() else f"nonzero from h^{res.valuation()}"
        print(f"{name}: rho10={rho10}  residual through h^{cfg.order}: {status}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
