"""Regenerates tests/oracle_values.hpp from closed forms evaluated in mpmath.

Nothing here calls the C++ library; the values are independent references.
Run: python3 tests/oracles/generate.py > tests/oracle_values.hpp
"""

import mpmath as mp
import numpy as np
from scipy import integrate, linalg, stats

mp.mp.dps = 40
out = []


def emit(name, value, note):
    out.append(f"// {note}\ninline constexpr double {name} = {mp.nstr(mp.mpf(value), 17, min_fixed=-1, max_fixed=-1)};")


def tkl_1d(sx, sy):
    return mp.log(sy / sx) + sx / sy - 1


def tjs_1d(sx, sy):
    return -mp.log(sx * sy / ((sx + sy) / 2) ** 2) / 2


# Standard normal quantiles.
for u, tag in [("0.975", "q975"), ("0.001", "q001"), ("1e-12", "q1em12"), ("0.3", "q03")]:
    emit(f"kNormalQuantile_{tag}", mp.sqrt(2) * mp.erfinv(2 * mp.mpf(u) - 1), f"Phi^-1({u})")
emit("kSqrtTwoPi", mp.sqrt(2 * mp.pi), "1 / phi(0)")

# One-dimensional Gaussian closed forms.
emit("kTkl_2_1", tkl_1d(mp.mpf(2), mp.mpf(1)), "TKL for standard deviations 2 vs 1")
emit("kTjs_2_1", tjs_1d(mp.mpf(2), mp.mpf(1)), "TJS for standard deviations 2 vs 1")
emit("kKl_2_1", mp.log(mp.mpf(1) / 2) + mp.mpf(4) / 2 - mp.mpf(1) / 2, "classical KL, sd 2 vs 1")
emit("kTkl_05_3", tkl_1d(mp.mpf("0.5"), mp.mpf(3)), "TKL for standard deviations 0.5 vs 3")
emit("kTjs_05_3", tjs_1d(mp.mpf("0.5"), mp.mpf(3)), "TJS for standard deviations 0.5 vs 3")
emit("kQuadraticEntropyGauss_2_1", 1 / (8 * mp.sqrt(mp.pi)),
     "quadratic entropy divergence N(0,4) vs N(0,1): (1/4) int phi^2")
emit("kLogKernel_2_1", 1 - mp.log(2), "log interaction kernel N(0,4) vs N(0,1)")
emit("kGaussEntropy", mp.log(2 * mp.pi * mp.e) / 2, "differential entropy of N(0,1)")
emit("kConvexityHand", mp.mpf("0.25") - mp.log(mp.mpf("1.25")), "TKL(N(0,1.5625) || N(0,1))")
emit("kSeparabilityHand", (2 - mp.log(3)) + (mp.log(2) - mp.mpf("0.5")), "diag(9,1) vs diag(1,4)")

# Taylor: uniform q, Phi'(x) = x^2, eps = 0.01, so T' = 1 + 2 eps x.
eps = mp.mpf("0.01")
emit("kTaylorUniformSquareTkl",
     mp.quad(lambda u: (1 + 2 * eps * u) - mp.log(1 + 2 * eps * u) - 1, [0, 1]),
     "TKL of (id + 0.01 grad(x^3/3))_# U(0,1) against U(0,1)")
for e in ["0.04", "0.02", "0.01"]:
    ee = mp.mpf(e)
    emit(f"kTaylorGaussRatio_{e.replace('0.', '')}", 2 * (ee - mp.log(1 + ee)) / ee**2,
         f"Taylor ratio for N(0,1), Phi'(x) = x, eps = {e}")

# Classical JS between N(0,4) and N(0,1) by adaptive quadrature.
p = stats.norm(0, 2).pdf
q = stats.norm(0, 1).pdf
def js_integrand(x):
    m = 0.5 * (p(x) + q(x))
    return 0.5 * p(x) * np.log(p(x) / m) + 0.5 * q(x) * np.log(q(x) / m)
js, _ = integrate.quad(js_integrand, -30, 30, epsabs=1e-14, epsrel=1e-13, limit=500)
emit("kClassicalJs_2_1", js, "classical JS between N(0,4) and N(0,1), scipy quad")

# A non-commuting 2D pair, evaluated with scipy matrix functions in float64.
sx = np.array([[2.0, 1.0], [1.0, 2.0]])
sy = np.array([[1.0, 0.5], [0.5, 3.0]])
mx = np.array([1.0, -1.0])
my = np.array([0.0, 2.0])
r = linalg.sqrtm(sx).real
t = r @ linalg.inv(linalg.sqrtm(r @ sy @ r).real) @ r
d = 2
def tkl_mat(a, b):
    ra = linalg.sqrtm(a).real
    tt = ra @ linalg.inv(linalg.sqrtm(ra @ b @ ra).real) @ ra
    return 0.5 * np.log(np.linalg.det(b) / np.linalg.det(a)) + np.trace(tt) - d
sz = 0.25 * (np.eye(2) + t) @ sy @ (np.eye(2) + t)
emit("kMat_T00", t[0, 0], "map matrix entry (0,0), pair A")
emit("kMat_T01", t[0, 1], "map matrix entry (0,1), pair A")
emit("kMat_T11", t[1, 1], "map matrix entry (1,1), pair A")
emit("kMatTkl", tkl_mat(sx, sy), "TKL, pair A")
emit("kMatTjs", 0.5 * tkl_mat(sx, sz) + 0.5 * tkl_mat(sy, sz), "TJS via the midpoint, pair A")
emit("kMatW2", np.sum((mx - my) ** 2) + np.trace(sx) + np.trace(sy)
     - 2 * np.trace(linalg.sqrtm(r @ sy @ r).real), "Bures W2 with means, pair A")
dm = my - mx
emit("kMatKl", 0.5 * (np.log(np.linalg.det(sy) / np.linalg.det(sx)) + np.trace(np.linalg.solve(sy, sx))
                      + dm @ np.linalg.solve(sy, dm) - d), "classical KL with means, pair A")

print("#pragma once\n")
print("// Reference values generated by tests/oracles/generate.py from closed forms")
print("// and independent quadrature. Do not edit by hand.\n")
print("namespace oracle {\n")
print("\n\n".join(out))
print("\n}  // namespace oracle")
