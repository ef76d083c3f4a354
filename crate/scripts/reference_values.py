#!/usr/bin/env python3
"""Reference principal values for the built-in benchmark battery.

Each value is computed twice at 40 significant digits with mpmath:

  A: f(t) log((1-t)/(1+t)) + int_{-1}^{t} g + int_{t}^{1} g,  g(x) = (f(x)-f(t))/(x-t)
  B: one-sided integral of f(x)/(x-t) + int_0^d (f(t+x)-f(t-x))/x dx,  d = min(1+t, 1-t)

The singular location t is taken as the exact decimal literal. The two paths
must agree to 1e-20 relative; the printed values are frozen into
crates/core/src/bench/reference.rs.
"""
import sys
import mpmath as mp

mp.mp.dps = 40


def kinks_cos44():
    zs = []
    k = -20
    while True:
        z = (mp.pi / 2 + k * mp.pi) / 44
        if z > 1:
            break
        if z > -1:
            zs.append(z)
        k += 1
    return zs


def exp_osc_zeros():
    # zeros of sin(exp(-10 x)) in (-1, 1)
    zs = []
    k = 1
    lo, hi = mp.exp(-10), mp.exp(10)
    while k * mp.pi < hi:
        if k * mp.pi > lo:
            zs.append(-mp.log(k * mp.pi) / 10)
        k += 1
    return sorted(zs)


CASES = [
    ("exp", lambda x: mp.exp(x), "0.5", []),
    ("sin550", lambda x: mp.sin(550 * x), "0.8", [mp.mpf(k) / 550 * mp.pi for k in range(-176, 176)]),
    ("sqrt_2_cos200", lambda x: mp.sqrt(2 + mp.cos(200 * x)), "0.7", [mp.mpf(k) / 200 * mp.pi for k in range(-64, 64)]),
    ("log2_near_endpoint", lambda x: mp.log(mp.mpf("1.0001") - x) ** 2, "0.99", [mp.mpf("0.999"), mp.mpf("0.9999")]),
    ("abs_cos44_pow", lambda x: mp.sqrt(abs(mp.cos(44 * x)) ** 3), "-0.6", kinks_cos44()),
    ("sqrt_1mx2_cos100_t05", lambda x: mp.sqrt(1 - x * x) * mp.cos(100 * x), "0.5", [mp.mpf(k) / 100 * mp.pi for k in range(-32, 32)]),
    ("sqrt_1mx2_cos100_t09", lambda x: mp.sqrt(1 - x * x) * mp.cos(100 * x), "0.9", [mp.mpf(k) / 100 * mp.pi for k in range(-32, 32)]),
    ("exp_near_endpoint", lambda x: mp.exp(x), "0.9999999", []),
    ("gauss_sin_exp", lambda x: mp.exp(-100 * (x + mp.mpf("0.4")) ** 2) * mp.sin(mp.exp(-10 * x)), "-0.41", None),
]


def pts(lo, hi, extra):
    inner = sorted(p for p in extra if lo < p < hi)
    return [lo] + inner + [hi]


def integrate(fn, lo, hi, extra):
    if lo == hi:
        return mp.mpf(0)
    nodes = pts(lo, hi, extra)
    return mp.fsum(mp.quad(fn, [a, b]) for a, b in zip(nodes[:-1], nodes[1:]))


def path_a(f, t, extra):
    ft = f(t)
    dft = mp.diff(f, t)
    g = lambda x: dft if x == t else (f(x) - ft) / (x - t)
    return ft * mp.log((1 - t) / (1 + t)) + integrate(g, mp.mpf(-1), t, extra) + integrate(g, t, mp.mpf(1), extra)


def path_b(f, t, extra):
    d = min(1 + t, 1 - t)
    side = lambda x: f(x) / (x - t)
    if d == 1 + t:
        one_sided = integrate(side, t + d, mp.mpf(1), extra)
    else:
        one_sided = integrate(side, mp.mpf(-1), t - d, extra)
    h = lambda x: 2 * mp.diff(f, t) if x == 0 else (f(t + x) - f(t - x)) / x
    hx = [p - t for p in extra] + [t - p for p in extra]
    return one_sided + integrate(h, mp.mpf(0), d, hx)


def main():
    worst = mp.mpf(0)
    for name, f, tau, extra in CASES:
        t = mp.mpf(tau)
        if extra is None:
            extra = exp_osc_zeros()
        a = path_a(f, t, extra)
        b = path_b(f, t, extra)
        rel = abs(a - b) / max(abs(a), mp.mpf(1))
        worst = max(worst, rel)
        print(f"{name:24s} tau={tau:>10s} A={mp.nstr(a, 25)} B={mp.nstr(b, 25)} rel={mp.nstr(rel, 3)}", flush=True)
    print("worst relative disagreement", mp.nstr(worst, 3))
    return 0 if worst < mp.mpf("1e-20") else 1


if __name__ == "__main__":
    sys.exit(main())
