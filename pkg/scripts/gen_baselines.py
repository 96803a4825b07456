#!/usr/bin/env python3
"""Record regression baselines for the scan statistics.

Each statistic is computed twice: once through the package scan and once
through an independent inline oracle (plain trial stripping, isqrt
enclosures). The two must agree before anything is written; the frozen JSON
files under tests/baselines/ then anchor the acceptance suite.
"""

import json
import math
import os
import sys
from math import isqrt

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from diolab.algebraic import QuadraticReal
from diolab.cfrac import simultaneous_scan, vb_series
from diolab.convergents import convergent_spart_scan
from diolab.exactarith import PrimeSet
from diolab.padic import hensel_root, mult_exponent_scan
from diolab.sequences import poly_value_scan, power_sum_grid, spart_exponent_series

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "tests", "baselines")


def strip(n, primes):
    sp = 1
    for p in primes:
        while n % p == 0:
            n //= p
            sp *= p
    return sp


def write(name, kind, statistics):
    os.makedirs(OUT_DIR, exist_ok=True)
    path = os.path.join(OUT_DIR, name)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"version": 1, "kind": kind,
                   "statistics": statistics}, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"wrote {path}: {statistics}")


def convergent_baseline():
    scan = convergent_spart_scan(QuadraticReal.sqrt_of(2), PrimeSet.of(2, 3, 5), 200)
    got = scan.series.tail_max
    # oracle: Pell recurrence, trial stripping, same tail rule (entries n=1..200,
    # tail = last half of the included entries)
    ps, qs = [1, 3], [1, 2]
    for _ in range(2, 201):
        ps.append(2 * ps[-1] + ps[-2])
        qs.append(2 * qs[-1] + qs[-2])
    exps = []
    for i in range(1, 201):
        pq = ps[i] * qs[i]
        exps.append(math.log(strip(pq, (2, 3, 5))) / math.log(pq))
    oracle = max(exps[len(exps) // 2:])
    assert abs(got - oracle) < 1e-9, (got, oracle)
    write("convergent_spart_sqrt2_s235.json", "scan-convergents",
          {"tail_max": got})


def powersum_baseline():
    primes = PrimeSet.of(5, 7, 11)
    cells = power_sum_grid(2, 6, 40, 40)
    series = spart_exponent_series("x", (((c.m, c.n), c.value) for c in cells),
                                   primes)
    got = series.tail_max
    cells_o = sorted(((m + n, m, n) for m in range(1, 41) for n in range(1, 41)))
    exps = []
    for _, m, n in cells_o:
        v = 2**m + 6**n + 1
        exps.append(math.log(strip(v, (5, 7, 11))) / math.log(v))
    oracle = max(exps[len(exps) // 2:])
    assert abs(got - oracle) < 1e-9, (got, oracle)
    write("power_sum_2_6_s5_7_11.json", "scan-powersum", {"tail_max": got})


def poly_baseline():
    got = poly_value_scan((0, 1, 1), 1, 10**4, PrimeSet.of(2, 3)).tail_max
    exps = []
    for n in range(1, 10**4 + 1):
        v = n * (n + 1)
        exps.append(math.log(strip(v, (2, 3))) / math.log(v))
    oracle = max(exps[len(exps) // 2:])
    assert abs(got - oracle) < 1e-9, (got, oracle)
    write("poly_x_xplus1_s23.json", "scan-poly", {"tail_max": got})


def vb_baseline():
    xi = QuadraticReal.sqrt_of(2**20 + 1)
    series = vb_series(xi, 2, 200)
    window = [e.value for e in series.entries if 100 <= e.key <= 200]
    got = max(window)
    # oracle: ||2^n sqrt(D)|| via integer square roots at 300 guard bits
    D = 2**20 + 1
    bits = 300
    vals = []
    for n in range(100, 201):
        shifted = (D << (2 * n)) << (2 * bits)
        s = isqrt(shifted)
        m = (s + (1 << (bits - 1))) >> bits
        lo = abs(s - (m << bits))
        hi = abs(s + 1 - (m << bits))
        dist_lo = min(lo, hi) / 2**bits
        vals.append(-math.log(dist_lo) / (n * math.log(2)))
    oracle = max(vals)
    assert abs(got - oracle) < 1e-6, (got, oracle)
    write("vb_sqrt_2e20_plus1_window100_200.json", "exponents-vb",
          {"window_100_200_max": got})


def simultaneous_baseline():
    scan = simultaneous_scan(QuadraticReal.sqrt_of(2), QuadraticReal.sqrt_of(3),
                             10**5)
    witnesses = scan.witnesses(1.4)
    stats = {
        "witness_count": float(len(witnesses)),
        "largest_witness_q": float(witnesses[-1].q),
        "tail_max": scan.series.tail_max,
    }
    # oracle for the witness set: direct isqrt scan in the rational normalization
    count = 0
    largest = None
    for q in range(2, 10**5 + 1):
        worst = 0.0
        for d in (2, 3):
            s = isqrt(d * q * q << 200)
            m = (s + (1 << 99)) >> 100
            dist = max(abs(s - (m << 100)), abs(s + 1 - (m << 100))) / 2**100
            worst = max(worst, dist)
        if worst / q < q ** -1.4:
            count += 1
            largest = q
    assert count == len(witnesses) and largest == witnesses[-1].q, \
        (count, len(witnesses), largest)
    write("simultaneous_sqrt2_sqrt3_1e5.json", "exponents-simul", stats)


def pmult_baseline():
    alpha = hensel_root(0, -2, 7, 32, branch=1)   # the root congruent to 3 mod 7
    scan = mult_exponent_scan(alpha, 10**4)
    stats = {"tail_max": scan.tail_max,
             "best_exponent": scan.best.exponent}
    # oracle: independent lift loop and direct valuation scan
    pk = 7**40
    x, mod = 3, 7
    while mod < pk:
        mod = min(mod * mod, pk)
        x = (x + 2 * pow(x, -1, mod)) * pow(2, -1, mod) % mod
    assert (x * x - 2) % pk == 0
    tail_best = 0.0
    best = 0.0
    for b in range(1, 10**4 + 1):
        for a_abs in range(1, 10**4 // b + 1):
            for a in (a_abs, -a_abs):
                ab = a_abs * b
                if ab < 2:
                    continue
                r = (b * x - a) % pk
                v = 0
                while r and r % 7 == 0:
                    r //= 7
                    v += 1
                if v == 0:
                    continue
                mu = v * math.log(7) / math.log(ab)
                best = max(best, mu)
                if ab >= 100:
                    tail_best = max(tail_best, mu)
    assert abs(stats["tail_max"] - tail_best) < 1e-9, (stats, tail_best)
    assert abs(stats["best_exponent"] - best) < 1e-9
    write("pmult_sqrt2_q7_1e4.json", "exponents-pmult", stats)


if __name__ == "__main__":
    convergent_baseline()
    powersum_baseline()
    poly_baseline()
    vb_baseline()
    simultaneous_baseline()
    pmult_baseline()
    print("all baselines verified and written")
