#pragma once

// Closed-form moments of axis-aligned Gaussians, used as the reference for
// every quadrature check.

#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

inline double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// E[x^n] for x ~ N(mu, var).
inline double moment_1d(int n, double mu = 0.0, double var = 1.0) {
  double s = 0.0;
  for (int k = 0; 2 * k <= n; ++k)
    s += binomial(n, 2 * k) * std::pow(mu, n - 2 * k) * std::pow(var, k) * double_factorial(2 * k - 1);
  return s;
}

// A monomial c v1^a v2^b v3^d.
struct Term {
  double c;
  int a, b, d;
};
using Poly = std::vector<Term>;

inline Poly operator*(const Poly& p, const Poly& q) {
  Poly r;
  for (const auto& s : p)
    for (const auto& t : q) r.push_back({s.c * t.c, s.a + t.a, s.b + t.b, s.d + t.d});
  return r;
}

inline const Poly kOne{{1, 0, 0, 0}};
inline const Poly kV1{{1, 1, 0, 0}};
inline const Poly kV2{{1, 0, 1, 0}};
inline const Poly kV3{{1, 0, 0, 1}};
inline const Poly kSpeed2{{1, 2, 0, 0}, {1, 0, 2, 0}, {1, 0, 0, 2}};

inline Poly shift(Poly p, double c) {
  p.push_back({c, 0, 0, 0});
  return p;
}

// rho * int p(v) N(U, T I)(v) dv.
inline double maxwellian_moment(const Poly& p, double rho = 1.0, const double* U = nullptr, double T = 1.0) {
  double s = 0.0;
  for (const auto& t : p) {
    const double u0 = U ? U[0] : 0.0, u1 = U ? U[1] : 0.0, u2 = U ? U[2] : 0.0;
    s += t.c * moment_1d(t.a, u0, T) * moment_1d(t.b, u1, T) * moment_1d(t.d, u2, T);
  }
  return rho * s;
}

// int |v|^4 exp(-|v|^2) dv over R^3.
inline double quartic_gaussian() { return 15.0 * std::pow(std::numbers::pi, 1.5) / 4.0; }

// int m ln m dv for the normalized global Maxwellian.
inline double entropy_global() { return -1.5 * std::log(2.0 * std::numbers::pi) - 1.5; }

}  // namespace oracle
