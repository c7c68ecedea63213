#!/usr/bin/env python3
"""Regenerates the frozen constants in tests/oracle_values.hpp.

Independent mpmath reference for the values the C++ tests assert against:
nearest-integer continued fractions, Brjuno-type partial sums, exponent
products for iterated-exponential quotient growth, and the lab's standard
parameters. Run and paste:  python3 tests/oracles/gen_expected.py
"""
from mpmath import mp, mpf, mpc, sqrt, log, exp, log1p, pi, nint, fabs, ceil

mp.dps = 70
INF = mpf('inf')


def nicf(x, depth):
    a0 = int(nint(x))
    al = fabs(x - a0)
    a, eps, alphas = [a0], [1 if x - a0 >= 0 else -1], [al]
    for _ in range(depth):
        if al < mpf(2) ** -200:
            break
        y = 1 / al
        an = int(nint(y))
        eps.append(1 if y - an >= 0 else -1)
        al = fabs(y - an)
        a.append(an)
        alphas.append(al)
    return a, eps, alphas


def classify_real(x, kprod=30, npart=25):
    a, _, als = nicf(x, 64)
    q = [mpf(1), mpf(a[1])]
    for i in range(2, len(a)):
        q.append(a[i] * q[-1] + q[-2])
    part = sum(log(q[j + 1]) / q[j] for j in range(npart + 1))
    logP, beta = mpf(0), mpf(1)
    for j in range(1, kprod + 1):
        logP += beta * log(als[j])
        beta *= als[j]
    return part, logP


def synthetic(prefix, g, kprod=30, npart=25, SAT=120):
    """Ledger for a_{j+1} = ceil(exp(g*q_j)) tails; saturated ratio recurrences."""
    N = max(kprod + 3, npart + 3)
    LL = [log(mpf(ai)) for ai in prefix]
    logqs = [mpf(0), log(mpf(prefix[0]))]
    for i in range(1, len(prefix)):
        logqs.append(LL[i] + logqs[i] + log1p(exp(logqs[i - 1] - LL[i] - logqs[i])))
    while len(LL) < N:
        j = len(LL)
        if logqs[j] >= SAT:
            LL.append(INF)
            logqs.append(INF)
            continue
        la = g * exp(logqs[j])
        if la < 40:
            la = log(ceil(exp(la)))
        LL.append(la)
        logqs.append(la + logqs[j] + log1p(exp(logqs[j - 1] - la - logqs[j])))
    part = mpf(0)
    for j in range(npart + 1):
        if logqs[j + 1] == INF:
            part += (g + logqs[j] * exp(-logqs[j])) if logqs[j] < SAT else g
        else:
            part += logqs[j + 1] * exp(-logqs[j])
    logal = []
    for j in range(1, kprod + 2):
        la1, la2 = LL[j], LL[j + 1] if j + 1 < len(LL) else INF
        if la1 == INF:
            logal.append(-INF)
        else:
            logal.append(-la1 - log1p(exp(-la2 - la1) if la2 != INF else mpf(0)))
    logP, logbeta, m, frozen, out6 = mpf(0), mpf(0), mpf(0), False, None
    for j in range(1, kprod + 1):
        laj = logal[j - 1]
        if not frozen and laj != -INF and logqs[j] != INF:
            t = exp(logbeta) * laj
            m = exp(logbeta + logqs[j])
            logbeta += laj
            if logal[j] == -INF or logqs[j + 1] == INF:
                frozen = True
        else:
            t = -g * m
        logP += t
        if j == 6:
            out6 = logP
    return part, logP, out6


def main():
    print("kPellBrjunoN1 =", mp.nstr(log(2) + log(5) / 2, 60))
    r2 = sqrt(2) - 1
    print("kPellProductLimit =", mp.nstr(r2 ** (1 / (2 - sqrt(2))), 60))
    for name, x in [("Const2", r2), ("Pi3", pi - 3)]:
        p, lp = classify_real(x)
        print(f"k{name}Partial25 = {mp.nstr(p, 12)}   k{name}LogProd30 = {mp.nstr(lp, 12)}")
    for name, pre, g in [("Exp1", [3], 1), ("Exp5", [149], 5), ("Mixed", [2, 2, 2, 2], 5)]:
        p, lp, lp6 = synthetic(pre, mpf(g))
        print(f"k{name}Partial25 = {mp.nstr(p, 12)}   k{name}LogProd30 = {mp.nstr(lp, 12)}"
              f"   logProd6 = {mp.nstr(lp6, 12)}")
    for label, alpha in [("0208", mpf('0.208')), ("024", mpf('0.24'))]:
        y = 1 / alpha
        print(f"kChild{label} =", mp.nstr(fabs(y - nint(y)), 20))
    g = (sqrt(5) - 1) / 2
    print("kGateAlphaA =", mp.nstr(1 / (3 + g), 30))
    print("kGateAlphaB =", mp.nstr(1 / (3 + 1 / (50 + g)), 30))
    print("kGateAlphaC =", mp.nstr(1 / (3 + 1 / (50 + 1 / (100000 + g))), 30))
    print("kOuterRadius =", mp.nstr(mpf(4) / 27 * exp(4 * pi), 25))
    print("kInnerRadius =", mp.nstr(mpf(4) / 27 * exp(-4 * pi), 25))
    # fixed-point and covering spot values used in test_maps / test_fatou
    for alpha in [mpf('0.05'), mpf('0.2')]:
        lam = exp(2 * pi * mpc(0, 1) * alpha)
        sigma_c = exp(-pi * mpc(0, 1) * alpha) - 1
        u0_c = lam * (1 + exp(-pi * mpc(0, 1) * alpha))
        print(f"alpha={alpha}: sigma_cubic={mp.nstr(sigma_c, 30)} u0_cubic={mp.nstr(u0_c, 30)}")


if __name__ == "__main__":
    main()
