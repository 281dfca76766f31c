"""Write a synthetic (N, strength) CSV for the fit-mu command.

strength = (1 + mu * N) * (1 + noise * eps) with eps standard normal; noise = 0
gives data that fit-mu must recover exactly.
"""
import argparse

import numpy as np
import pandas as pd


def generate_points(mu: float, n_min: float, n_max: float, count: int, noise: float, seed: int) -> pd.DataFrame:
    """Evenly spaced atom counts with multiplicative Gaussian scatter on the strength"""
    rng = np.random.default_rng(seed)
    atom_counts = np.linspace(n_min, n_max, count)
    strength = 1.0 + mu * atom_counts
    if noise > 0:
        strength = strength * (1.0 + noise * rng.standard_normal(count))
    return pd.DataFrame({"N": atom_counts, "strength": strength})


def main():
    parser = argparse.ArgumentParser(description="Generate synthetic fit-mu input")
    parser.add_argument("--mu", type=float, default=1.15e-6)
    parser.add_argument("--n-min", type=float, default=2e7)
    parser.add_argument("--n-max", type=float, default=2.2e8)
    parser.add_argument("--count", type=int, default=9)
    parser.add_argument("--noise", type=float, default=0.0, help="Relative strength scatter, e.g. 0.05")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--out", default="synthetic_strength.csv")
    args = parser.parse_args()

    frame = generate_points(args.mu, args.n_min, args.n_max, args.count, args.noise, args.seed)
    frame.to_csv(args.out, index=False, lineterminator="\n")
    print(f"Wrote {len(frame)} points (mu={args.mu:g}, noise={args.noise:g}) to {args.out}")


if __name__ == "__main__":
    main()
