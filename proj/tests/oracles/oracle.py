"""Independent high-precision reference values for the C++ tests.

Everything here is recomputed from the formulas with mpmath and brute-force
enumeration; nothing is imported from the library. Run it and compare with
the constants frozen in tests/support/oracle_values.hpp.
"""

import mpmath as mp

mp.mp.dps = 40


def H(ps):
    return -mp.fsum(p * mp.log(p) for p in ps if p > 0)


def KL(p, q):
    return mp.fsum(a * mp.log(a / b) for a, b in zip(p, q) if a > 0)


def normalize(w):
    s = mp.fsum(w)
    return [v / s for v in w]


def linspace(lo, hi, n):
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    return [(lo * (n - 1 - i) + hi * i) / (n - 1) for i in range(n)]


def normal_grid(mu, sd, grid):
    return normalize([mp.exp(-((x - mu) ** 2) / (2 * sd * sd)) for x in grid])


def irt(x, t):
    return mp.mpf("0.2") + mp.mpf("0.8") / (1 + mp.exp(-mp.mpf("2.72") * (t - x)))


GRID = linspace(-3, 3, 31)


def irt_rows(x):
    return [[1 - irt(x, t), irt(x, t)] for t in GRID]


def predictive(prior, rows):
    ny = len(rows[0])
    return [mp.fsum(prior[k] * rows[k][y] for k in range(len(prior))) for y in range(ny)]


def mi(prior, rows):
    pred = predictive(prior, rows)
    return H(pred) - mp.fsum(prior[k] * H(rows[k]) for k in range(len(prior)))


def efd(spec, pop, rows):
    p0 = predictive(pop, rows)
    p1 = predictive(spec, rows)
    total = 0
    rv = H(p0)
    s = KL(p0, p1)
    hind = 0
    for y in range(len(p0)):
        if p0[y] == 0:
            continue
        post = normalize([spec[k] * rows[k][y] for k in range(len(spec))])
        total += p0[y] * KL(post, spec)
        hind += p0[y] * mp.fsum(post[k] * mp.log(rows[k][y]) for k in range(len(spec)) if post[k] > 0)
    return total, rv, s, hind


def show(name, v):
    print(f"{name:48s} {mp.nstr(v, 17)}")


def main():
    show("entropy Bern(0.6)", H([mp.mpf("0.6"), mp.mpf("0.4")]))
    show("KL Bern(0.5)||Bern(0.25)", KL([mp.mpf("0.5")] * 2, [mp.mpf("0.25"), mp.mpf("0.75")]))
    show("cross entropy Bern(0.5),Bern(0.25)",
         H([mp.mpf("0.5")] * 2) + KL([mp.mpf("0.5")] * 2, [mp.mpf("0.25"), mp.mpf("0.75")]))
    show("irt theta=0 x=1", irt(1, 0))
    show("pow a=.8 b=.5 x=3", mp.mpf("0.8") * mp.power(4, -mp.mpf("0.5")))
    show("exp a=1 b=.6931 x=1", mp.exp(-mp.mpf("0.6931")))
    show("MI Bern(.9)/Bern(.1)", mp.log(2) - H([mp.mpf("0.9"), mp.mpf("0.1")]))

    d = normal_grid(2, 1, GRID)
    print("normal(2,1) grid mode", mp.nstr(GRID[max(range(31), key=lambda i: d[i])], 5))
    show("beta(2,1) n=2 first mass", normalize([mp.mpf("0.25"), mp.mpf("0.75")])[0])

    bins = list(range(-40, 41))
    for sd, name in ((10, "A"), (11, "B")):
        w = normalize([mp.exp(-(mp.mpf(b) ** 2) / (2 * sd * sd)) for b in bins])
        show(f"gauss-{name} mass |y|>15", mp.fsum(w[i] for i, b in enumerate(bins) if abs(b) > 15))

    prior = normal_grid(0, 1, GRID)
    show("irt N(0,1) predictive p(y=1|x=0)", predictive(prior, irt_rows(0))[1])

    # Pow focal predictive: a on 2-cell uniform {.25,.75}, b degenerate, x=0.
    show("pow focal predictive p(y=1|x=0)", (mp.mpf("0.25") + mp.mpf("0.75")) / 2)

    surface = [mi(prior, irt_rows(x)) for x in GRID]
    best = max(range(31), key=lambda i: surface[i])
    print("irt N(0,1) ADO stimulus", mp.nstr(GRID[best], 5), "index", best)
    show("irt N(0,1) U(x*)", surface[best])
    x = GRID[best]
    for mu in (-2, 2):
        total, rv, s, hind = efd(prior, normal_grid(mu, 1, GRID), irt_rows(x))
        show(f"EFD pop N({mu},1) at x*", total)
        show(f"  response variability pop N({mu},1)", rv)
        show(f"  surprisal pop N({mu},1)", s)
        show(f"  hindsight pop N({mu},1)", hind)

    lo = [predictive(normal_grid(-2, 1, GRID), irt_rows(x))[1] for x in GRID]
    hi = [predictive(normal_grid(2, 1, GRID), irt_rows(x))[1] for x in GRID]
    print("low-theta p0(y=1) below high-theta at every x:", all(a < b for a, b in zip(lo, hi)))

    # Gaussian toy: expected single-observation log BF(A:B) under a Model-A
    # population. Specified mu_A ~ N(0,2), mu_B ~ N(0,2); population mu_A ~ N(0,6).
    mus = linspace(-30, 30, 61)

    def gauss_rows(sd):
        return [normalize([mp.exp(-((b - m) ** 2) / (2 * sd * sd)) for b in bins]) for m in mus]

    ra, rb = gauss_rows(10), gauss_rows(11)
    pa = predictive(normal_grid(0, 2, mus), ra)
    pb = predictive(normal_grid(0, 2, mus), rb)
    p0 = predictive(normal_grid(0, 6, mus), ra)
    show("gauss toy E[log BF(A:B)] under pop", mp.fsum(p0[i] * mp.log(pa[i] / pb[i]) for i in range(len(bins))))


if __name__ == "__main__":
    main()
