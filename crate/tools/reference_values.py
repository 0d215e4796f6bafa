"""High-precision reference values frozen into the Rust test suites.

Run with `python3 tools/reference_values.py`; requires mpmath.
"""
import mpmath as mp

mp.mp.dps = 40


def show(label, v):
    if isinstance(v, mp.mpc):
        print(f"{label}: ({mp.nstr(v.real, 17)}, {mp.nstr(v.imag, 17)})")
    else:
        print(f"{label}: {mp.nstr(v, 17)}")


print("# Airy Ai, Ai' on the real axis")
for x in [-20, -15, -12.5, -9.5, -8, -7, -6, -5.5, -4, -3, -1, -0.5, 0.5, 1, 2, 3, 3.7, 4.5, 5]:
    show(f"Ai({x})", mp.airyai(x))
    show(f"Ai'({x})", mp.airyai(x, 1))
print("# Airy on complex arguments")
for z in [mp.mpc(1, 1), mp.mpc(-3, 2), mp.mpc(4, -3), mp.mpc(-10, 1), mp.mpc(2, 7), mp.mpc(0.3, -0.2)]:
    show(f"Ai({z})", mp.airyai(z))
    show(f"Ai'({z})", mp.airyai(z, 1))
print("# zeros")
for i in [1, 2, 3, 4, 5, 10, 50, 100]:
    q = mp.airyaizero(i)
    show(f"q_{i}", q)
    show(f"Ai'(q_{i})", mp.airyai(q, 1))
for i in [1, 2, 3]:
    show(f"a'_{i}", mp.airyaizero(i, 1))
print("# spherical Bessel")
for l, x in [(0, 1), (1, 1), (10, 7), (100, 50), (5, 100), (200, 10), (60, 60), (3, 0.01), (40, 1000)]:
    j = mp.sqrt(mp.pi / (2 * x)) * mp.besselj(l + 0.5, x)
    y = mp.sqrt(mp.pi / (2 * x)) * mp.bessely(l + 0.5, x)
    show(f"j_{l}({x})", j)
    show(f"y_{l}({x})", y)
print("# Legendre P_nu(x), complex degree")
for nu, x in [(mp.mpc(0.5, 3), 0.2), (mp.mpc(49.5, 2), 0), (mp.mpc(39.5, 5.5), -0.5),
              (mp.mpc(39.5, 5.5), 0.9), (mp.mpc(39.5, 5.5), -0.99), (mp.mpc(199.5, 3), 0.95),
              (mp.mpc(199.5, 3), -0.99), (mp.mpc(-0.3, 0.7), 0.4), (mp.mpc(7.25, -1.5), -0.6)]:
    show(f"P[{nu}]({x})", mp.legenp(nu, 0, x, type=2))
print("# backward amplitude series at kR=10, theta=pi (sound-soft sphere)")
for kr in [1, 10]:
    k = mp.mpf(kr)
    total = mp.mpc(0)
    for l in range(0, int(kr + 10 * kr ** (1 / 3) + 30)):
        j = mp.besselj(l + 0.5, k)
        y = mp.bessely(l + 0.5, k)
        d = mp.atan(j / y)
        total += (2 * l + 1) * mp.exp(1j * d) * mp.sin(d) * (-1) ** l
    show(f"f(k={kr},R=1,pi)", total / k)
