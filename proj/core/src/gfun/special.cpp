#include "epiq/gfun/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "epiq/common/error.hpp"

namespace epiq::gfun {
namespace {

// B_2, B_4, ..., B_20.
constexpr std::array<double, 10> kBernoulliEven = {
    1.0 / 6.0,       -1.0 / 30.0,    1.0 / 42.0,         -1.0 / 30.0,    5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0,      -3617.0 / 510.0,    43867.0 / 798.0, -174611.0 / 330.0};

// Euler-Maclaurin with N = 32 explicit terms; valid for every real s > 0, s != 1.
double zeta_euler_maclaurin(double s) {
  constexpr int kTerms = 32;
  const double N = kTerms;
  double sum = 0.0;
  for (int k = kTerms - 1; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  sum += std::pow(N, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(N, -s);

  // Correction terms B_2j / (2j)! * s (s+1) ... (s+2j-2) * N^(-s-2j+1).
  double rising = s;                   // s (s+1) ... (s+2j-2)
  double factorial = 2.0;              // (2j)!
  double power = std::pow(N, -s - 1);  // N^(-s-2j+1)
  for (std::size_t j = 1; j <= kBernoulliEven.size(); ++j) {
    const double term = kBernoulliEven[j - 1] / factorial * rising * power;
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    const double a = 2.0 * static_cast<double>(j);
    rising *= (s + a - 1.0) * (s + a);
    factorial *= (a + 1.0) * (a + 2.0);
    power /= N * N;
  }
  return sum;
}

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

double polylog_series(double s, double z) {
  double sum = 0.0;
  double zk = 1.0;
  // For negative s the terms grow before they decay; do not stop before the peak.
  const double peak = s < 0 ? -s / -std::log(z) : 0.0;
  for (long k = 1; k < 10'000'000; ++k) {
    zk *= z;
    const double term = zk * std::pow(static_cast<double>(k), -s);
    sum += term;
    if (static_cast<double>(k) > peak && term < 1e-17 * (1.0 + std::abs(sum))) break;
  }
  return sum;
}

// Li_n(e^mu) for positive integer n and -2 pi < mu < 0:
//   mu^(n-1)/(n-1)! [H_(n-1) - ln(-mu)] + sum_{k != n-1} zeta(n-k) mu^k / k!
double polylog_integer_near_one(int n, double mu) {
  double sum = 0.0;
  double mu_pow = 1.0;  // mu^k / k!
  for (int k = 0; k < 80; ++k) {
    double term;
    if (k == n - 1) {
      term = mu_pow * (harmonic(n - 1) - std::log(-mu));
    } else {
      term = detail::zeta_any(static_cast<double>(n - k)) * mu_pow;
    }
    sum += term;
    // Terms at the trivial zeros of zeta are exactly 0 and say nothing about convergence.
    if (k > n + 2 && term != 0.0 && std::abs(term) < 1e-18) break;
    mu_pow *= mu / (k + 1);
  }
  return sum;
}

// Li_s(e^mu) for non-integer s: Gamma(1-s) (-mu)^(s-1) + sum_k zeta(s-k) mu^k / k!
double polylog_real_near_one(double s, double mu) {
  double sum = std::tgamma(1.0 - s) * std::pow(-mu, s - 1.0);
  double mu_pow = 1.0;
  for (int k = 0; k < 80; ++k) {
    const double term = detail::zeta_any(s - k) * mu_pow;
    sum += term;
    if (k > 3 && static_cast<double>(k) > s && std::abs(term) < 1e-18) break;
    mu_pow *= mu / (k + 1);
  }
  return sum;
}

}  // namespace

namespace detail {

double zeta_any(double s) {
  if (s == 1.0) throw DomainError("zeta has a pole at s = 1");
  if (s > 0.0) return zeta_euler_maclaurin(s);
  if (s == 0.0) return -0.5;
  const double r = std::round(s);
  if (r == s && std::fmod(-r, 2.0) == 0.0) return 0.0;  // trivial zeros
  using std::numbers::pi;
  return std::pow(2.0, s) * std::pow(pi, s - 1.0) * std::sin(pi * s / 2.0) * std::tgamma(1.0 - s) *
         zeta_euler_maclaurin(1.0 - s);
}

double polylog_unchecked(double s, double z) {
  if (z == 0.0) return 0.0;
  if (s == 1.0) return -std::log1p(-z);
  if (z <= 0.5) return polylog_series(s, z);
  const double mu = std::log(z);
  const double r = std::round(s);
  if (r == s) {
    if (r >= 1.0) return polylog_integer_near_one(static_cast<int>(r), mu);
    if (r == 0.0) return z / (1.0 - z);
    return polylog_series(s, z);
  }
  // The two halves of the expansion cancel near integer s; sum directly there.
  if (std::abs(s - r) < 1e-4) return polylog_series(s, z);
  return polylog_real_near_one(s, mu);
}

}  // namespace detail

double zeta(double s) {
  if (!(s > 1.0)) throw DomainError("zeta(s) requires s > 1, got " + std::to_string(s));
  return zeta_euler_maclaurin(s);
}

double polylog(double s, double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("polylog requires z in [0, 1], got " + std::to_string(z));
  if (!(s >= 1.0)) throw DomainError("polylog requires s >= 1, got " + std::to_string(s));
  if (z == 1.0) {
    if (s <= 1.0) throw DivergenceError("Li_s(1) diverges for s <= 1");
    return zeta(s);
  }
  return detail::polylog_unchecked(s, z);
}

}  // namespace epiq::gfun
