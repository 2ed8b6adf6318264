"""Print Hilbert functions of the additive algebra next to h(z)/(1+z).

    python3 scripts/hilbert_tables.py [--N 8]
"""
import argparse
from dataclasses import dataclass

from coxflat import coxeter as cx
from coxflat.additive import expected_hilbert, full_degree, hilbert_A0plus


@dataclass
class Config:
    finite: tuple = ("A2", "A3", "B3", "H3", "A4", "I2(5)xA1")
    infinite: tuple = ("A~2", "237", "334")
    N: int = 8


def _matrix(name):
    if name.isdigit():
        return cx.triangle_matrix(*(int(c) for c in name))
    return cx.named_matrix(name)


def run(cfg: Config):
    for name in cfg.finite:
        M = _matrix(name)
        got = hilbert_A0plus(M)
        ok = got == expected_hilbert(M, full_degree(M))
        print(f"{name:>9}: {got} {'ok' if ok else 'MISMATCH'}")
    for name in cfg.infinite:
        M = _matrix(name)
        got = hilbert_A0plus(M, cfg.N)
        ok = got == expected_hilbert(M, cfg.N)
        print(f"{name:>9}: {got} ... {'ok' if ok else 'MISMATCH'} (to degree {cfg.N})")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=Config.N)
    run(Config(N=ap.parse_args().N))
