"""Check every lemma torus against the tilde equations, symbolically and by sampling.

    python3 scripts/containment_report.py [--samples 3] [--dim]
"""
import argparse
import time
from dataclasses import dataclass

from coxflat import coxeter as cx
from coxflat.deform import dim_A_plus
from coxflat.flatness import check_tilde_membership, lemma_components, lemma_matrix, sample_point, symbolic_containment

TYPES = [(2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 2, 6), (2, 3, 3), (2, 3, 4), (2, 3, 5)]


@dataclass
class Config:
    samples: int = 3
    dim: bool = False


def run(cfg: Config):
    for orders in TYPES:
        t = cx.classify_orders(*orders)
        M = lemma_matrix(t)
        for comp in lemma_components(t):
            t0 = time.perf_counter()
            res = symbolic_containment(comp)
            bad = [k for k, v in res.items() if not v]
            line = f"{comp.name:>12}: {len(res)} identities, {'all hold' if not bad else 'FAIL ' + ','.join(bad)}"
            members = sum(check_tilde_membership(M, (1, 2, 3), sample_point(comp, s)).member
                          for s in range(cfg.samples))
            line += f"; samples {members}/{cfg.samples}"
            if cfg.dim:
                dims = [dim_A_plus(M, sample_point(comp, s)) for s in range(cfg.samples)]
                line += f"; dims {dims} (|W+| = {t.order // 2})"
            print(line + f" [{time.perf_counter() - t0:.1f}s]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--dim", action="store_true")
    a = ap.parse_args()
    run(Config(a.samples, a.dim))
