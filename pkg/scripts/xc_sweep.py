"""XC axioms, twisting and the Cartan twist identity as the truncation order grows.

    python3 scripts/xc_sweep.py --max-order 5
"""

from __future__ import annotations

import argparse
import time
from dataclasses import asdict, dataclass, field

from kinv import algebra as alg
from kinv.diagrams import BraidWord
from kinv.engine import braid_conjugation_check


@dataclass
class Config:
    max_order: int = 4
    twists: tuple[str, ...] = ("kappa", "A", "B")
    braids: tuple[tuple[int, ...], ...] = field(default=((1,), (1, 2), (1, 1, 2), (1, -2, 1)))


def twisting_elements(sp: alg.Space) -> dict:
    return {"kappa": sp.kappa(), "A": sp.A(), "B": sp.B(), "T": sp.T()}


def sweep(cfg: Config):
    for order in range(1, cfg.max_order + 1):
        sp = alg.algebra(order)
        phis = twisting_elements(sp)
        r, rinv = alg.r_matrix(order), alg.r_matrix_inverse(order)
        t0 = time.perf_counter()
        row = {"R": alg.verify_xc(r, sp.kappa(), rinv).ok}
        for name in cfg.twists:
            phi = phis[name]
            rt, rti = alg.twist(r, phi), alg.twist_inverse(rinv, phi)
            row[f"R[{name}]"] = alg.verify_xc(rt, sp.kappa(), rti).ok
            row[f"braids[{name}]"] = all(
                braid_conjugation_check(BraidWord(max(abs(g) for g in w) + 1, w), phi, order) for w in cfg.braids
            )
        row["cartan"] = alg.verify_cartan_twist_identity(order)
        yield order, row, time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=Config.max_order)
    cfg = Config(max_order=ap.parse_args().max_order)
    print(f"config: {asdict(cfg)}")
    for order, row, dt in sweep(cfg):
        cells = "  ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in row.items())
        print(f"h^{order}: {cells}  ({dt:.2f}s)")


if __name__ == "__main__":
    main()
