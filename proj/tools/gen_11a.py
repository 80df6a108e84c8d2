#!/usr/bin/env python3
"""Writes the q-expansion of the weight-2 newform of level 11,
q prod (1 - q^n)^2 (1 - q^{11n})^2, as a CSV with header m,a_m."""

import argparse

import numpy as np


def euler_product(N, step):
    """Coefficients of prod_{n>=1} (1 - q^{step n}) up to q^N by the pentagonal number theorem."""
    out = np.zeros(N + 1, dtype=np.int64)
    k = 0
    while True:
        placed = False
        for j in {k, -k}:
            e = j * (3 * j - 1) // 2 * step
            if e <= N:
                out[e] += -1 if j % 2 else 1
                placed = True
        if not placed:
            break
        k += 1
    return out


def sparse_mul(a, b, N):
    out = np.zeros(N + 1, dtype=np.int64)
    for i in np.nonzero(b)[0]:
        out[i:] += b[i] * a[: N + 1 - i]
    return out


def square(a):
    n = len(a)
    size = 1 << (2 * n - 1).bit_length()
    fa = np.fft.rfft(a.astype(np.float64), size)
    sq = np.fft.irfft(fa * fa, size)[:n]
    out = np.rint(sq).astype(np.int64)
    if np.max(np.abs(sq - out)) > 0.1:
        raise RuntimeError("rounding error too large; use fewer terms")
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--terms", type=int, default=120000)
    ap.add_argument("--out", default="11a.csv")
    args = ap.parse_args()
    N = args.terms - 1  # exponent bound of the eta part
    eta = sparse_mul(euler_product(N, 1), euler_product(N, 11), N)
    f = square(eta)  # coefficient of q^{m-1} is a(m)
    with open(args.out, "w") as fh:
        fh.write("m,a_m\n")
        for m in range(1, args.terms + 1):
            fh.write(f"{m},{int(f[m - 1])}\n")


if __name__ == "__main__":
    main()
