"""Time Groebner dimensions of on-locus and off-locus points for each finite triangle.

    python3 scripts/sweep_timings.py [--draws 5] [--types 233,234] [--all-edges]

Off-locus points rescale one root of the all-ones point.  By default the
(2,3,5) triangle only perturbs its order-5 edge; --all-edges lifts that
(expect a few minutes per point).
"""
import argparse
import time
from dataclasses import dataclass

from coxflat import coxeter as cx
from coxflat.deform import ParameterPoint, dim_A_plus
from coxflat.flatness import lemma_components, lemma_matrix, off_locus_point, sample_point


@dataclass
class Config:
    draws: int = 5
    types: tuple = ((2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 3, 3), (2, 3, 4), (2, 3, 5))
    all_edges: bool = False
    height: int = 3


def _timed(M, u):
    t0 = time.perf_counter()
    return dim_A_plus(M, u), time.perf_counter() - t0


def run(cfg: Config):
    for orders in cfg.types:
        t = cx.classify_orders(*orders)
        M = lemma_matrix(t)
        n = t.order // 2
        for comp in lemma_components(t):
            res = [_timed(M, sample_point(comp, s)) for s in range(cfg.draws)]
            print(f"{t.tag} {comp.kind:>5}: dims {[d for d, _ in res]} / {n}, "
                  f"max {max(x for _, x in res):.2f}s")
        edges = None
        if orders == (2, 3, 5) and not cfg.all_edges:
            edges = [e for e in M.edges(finite_only=True) if M.m(*e) == 5]
        res = [_timed(M, off_locus_point(M, s, near=ParameterPoint.ones(M), height=cfg.height, edges=edges))
               for s in range(cfg.draws)]
        print(f"{t.tag}   off: dims {[d for d, _ in res]} / {n}, max {max(x for _, x in res):.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=Config.draws)
    ap.add_argument("--types", help="comma separated tags, e.g. 223,234")
    ap.add_argument("--all-edges", action="store_true")
    a = ap.parse_args()
    cfg = Config(draws=a.draws, all_edges=a.all_edges)
    if a.types:
        cfg.types = tuple(tuple(int(c) for c in tag) for tag in a.types.split(","))
    run(cfg)
