"""Independent reference values frozen into the C++ tests.

Run with: python3 tests/oracles/oracle.py
Uses mpmath at 50 digits; nothing here shares code with the library.
"""
from math import factorial, comb
import itertools
import mpmath as mp

mp.mp.dps = 50


def lam_n(x, n):
    def expn(y):
        for _ in range(n):
            y = mp.e ** y
        return y
    return mp.findroot(lambda y: y * expn(y) - x, (mp.mpf(0), mp.mpf(5)), solver="bisect")


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 20)}")


# Renyi
show("ln(8/3)", mp.log(mp.mpf(8) / 3))
show("ln 6", mp.log(6))

# Lambert family
show("W(ln 6)", mp.lambertw(mp.log(6)))
show("Z_fac(uniform 6)", mp.e ** mp.lambertw(mp.log(6)) - 1)
show("Z_fac top(5040)", mp.e ** mp.lambertw(mp.log(5040)) - 1)
show("L2(10)", lam_n(10, 2))
show("L3(10)", lam_n(10, 3))
show("W(0.5)", mp.lambertw(0.5))
show("W(10)", mp.lambertw(10))
show("Z_sub c=1/2 uniform 12", mp.e ** mp.lambertw(2 * mp.log(12)) - 1)
show("Z_subn n=2 uniform 6", mp.e ** (mp.e ** lam_n(mp.log(6), 2)) - mp.e)
show("Z_exp c=ln2 of R=ln 6", mp.log(6) / mp.log(2))

# Composability for the factorial class: chi(t) = g(t + 1), g(t) = t ln t.
p = [mp.mpf(1) / 2, mp.mpf(1) / 3, mp.mpf(1) / 6]
q = [mp.mpf(3) / 4, mp.mpf(1) / 4]
R = lambda d: -sum(x * mp.log(x) for x in d)
Z = lambda r: mp.e ** mp.lambertw(r) - 1
pq = [a * b for a in p for b in q]
show("Z_fac(p x q) alpha=1", Z(R(pq)))

# fGn autocovariance
show("gamma_0.75(1)", (2 ** mp.mpf(1.5) - 2) / 2)

# Logistic orbit from 0.2002
x = [mp.mpf("0.2002")]
for _ in range(2):
    x.append(4 * x[-1] * (1 - x[-1]))
show("logistic x1", x[1])
show("logistic x2", x[2])


# X_p closed form
def xp(p, L):
    nu, mu = divmod(L, p)
    n1 = (p - mu) * factorial(nu + 1) ** mu * factorial(nu) ** (p - mu - 1)
    n2 = mu * factorial(nu + 1) ** (mu - 1) * factorial(nu) ** (p - mu) if mu else 0
    return n1, n2


print("xp(2,5)", xp(2, 5), "xp(3,4)", xp(3, 4), "xp(2,14)", xp(2, 14))

# Class constant fit through the origin on L ln L, p = 2, L = 2,4,..,14
pts = [(L, mp.log(sum(xp(2, L)))) for L in range(2, 15, 2)]
num = sum(mp.mpf(L) * mp.log(L) * a for L, a in pts)
den = sum((mp.mpf(L) * mp.log(L)) ** 2 for L, a in pts)
show("c-hat p=2, L=2..14 even", num / den)

# Asymptotic ratio ln A / ((p-1)/p L ln L) at L = 60
for p in (2, 3, 4, 5, 6):
    L = 60
    a = sum(xp(p, L))
    show(f"ratio p={p} L=60", mp.log(a) / (mp.mpf(p - 1) / p * L * mp.log(L)))

# Extensivity of Z_fac,0 over L! patterns
for L in (4, 7, 20):
    show(f"Z_fac,0(L!)/L L={L}", (mp.e ** mp.lambertw(mp.log(factorial(L))) - 1) / L)
