#include "epiq/gfun/distribution.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "epiq/common/error.hpp"
#include "epiq/gfun/special.hpp"

namespace epiq::gfun {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double falling(std::size_t k, int order) {
  double f = 1.0;
  for (int i = 0; i < order; ++i) f *= static_cast<double>(k) - i;
  return f;
}

double term(double pk, std::size_t k, int order, double z) {
  if (k < static_cast<std::size_t>(order)) return 0.0;
  return falling(k, order) * pk * std::pow(z, static_cast<double>(k) - order);
}

// Direct series for z <= 0.5, where every family converges geometrically.
template <class Pk>
double small_z_series(Pk&& pk, std::size_t kmin, int order, double z) {
  double sum = 0.0;
  for (std::size_t k = kmin; k < kmin + 400; ++k) sum += term(pk(k), k, order, z);
  return sum;
}

// L(z) = -ln(1-z) minus its first `terms` series terms.
double log_tail_poly(std::size_t terms, double z) {
  double p = 0.0;
  double zi = 1.0;
  for (std::size_t i = 1; i <= terms; ++i) {
    zi *= z;
    p += zi / static_cast<double>(i);
  }
  return p;
}

double powerlaw_derivative(double alpha, int order, double z) {
  const double norm = zeta(alpha);
  auto pk = [&](std::size_t k) { return k == 0 ? 0.0 : std::pow(static_cast<double>(k), -alpha) / norm; };
  if (z <= 0.5) return small_z_series(pk, 1, order, z);
  auto li = [&](double s) {
    if (z < 1.0) return detail::polylog_unchecked(s, z);
    if (s <= 1.0) throw DivergenceError("moment of order " + std::to_string(order) +
                                        " diverges for simple powerlaw alpha=" + std::to_string(alpha));
    return zeta(s);
  };
  switch (order) {
    case 0:
      return li(alpha) / norm;
    case 1:
      return li(alpha - 1.0) / norm / z;
    default:
      return (li(alpha - 2.0) - li(alpha - 1.0)) / norm / (z * z);
  }
}

// Partial fractions reduce every moment series of the BA law to
// S_j(z) = sum_{k>=m} z^k/(k+j) = z^-j (L(z) - P_j(z)),  P_j = first m+j-1 terms of L.
double ba_derivative(int m, int order, double z) {
  const double c = static_cast<double>(m) * (m + 1);
  auto pk = [&](std::size_t k) {
    if (k < static_cast<std::size_t>(m)) return 0.0;
    const double x = static_cast<double>(k);
    return 2.0 * c / (x * (x + 1.0) * (x + 2.0));
  };
  if (z <= 0.5) return small_z_series(pk, static_cast<std::size_t>(m), order, z);
  if (z == 1.0) {
    if (order == 0) return 1.0;
    if (order == 1) return 2.0 * m;
    throw DivergenceError("second moment diverges for the Barabasi-Albert law");
  }
  const double L = -std::log1p(-z);
  const double z2 = z * z;
  const double P0 = log_tail_poly(static_cast<std::size_t>(m - 1), z);
  const double P1 = log_tail_poly(static_cast<std::size_t>(m), z);
  const double P2 = log_tail_poly(static_cast<std::size_t>(m + 1), z);
  switch (order) {
    case 0: {
      const double a = (1.0 - z) * (1.0 - z) / z2;
      return c * (L * a - (P0 - 2.0 * P1 / z + P2 / z2));
    }
    case 1: {
      const double f1 = 2.0 * c * (-L * (1.0 - z) / z2 - (P1 / z - P2 / z2));
      return f1 / z;
    }
    default: {
      const double f2 = 2.0 * c * (L * (3.0 - 2.0 * z) / z2 + 2.0 * P1 / z - 3.0 * P2 / z2);
      return f2 / z2;
    }
  }
}

double poisson_pk(double lambda, std::size_t k) {
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double x = static_cast<double>(k);
  return std::exp(x * std::log(lambda) - lambda - std::lgamma(x + 1.0));
}

}  // namespace

DegreeDistribution DegreeDistribution::simple_powerlaw(double alpha) {
  if (!(alpha > 1.0)) throw ParameterError("simple powerlaw requires alpha > 1");
  return DegreeDistribution(SimplePowerlaw{alpha});
}

DegreeDistribution DegreeDistribution::ba_analytic(int m) {
  if (m < 1) throw ParameterError("Barabasi-Albert law requires m >= 1");
  return DegreeDistribution(BAAnalytic{m});
}

DegreeDistribution DegreeDistribution::poisson(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ParameterError("Poisson requires lambda >= 0");
  return DegreeDistribution(Poisson{lambda});
}

DegreeDistribution DegreeDistribution::d_regular(int d) {
  if (d < 0) throw ParameterError("d-regular requires d >= 0");
  return DegreeDistribution(DRegular{d});
}

DegreeDistribution DegreeDistribution::empirical(std::vector<double> p) {
  if (p.empty()) throw ParameterError("empirical distribution is empty");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ParameterError("empirical distribution has a negative entry");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ParameterError("empirical distribution is not normalized (sum = " + std::to_string(total) + ")");
  }
  return DegreeDistribution(Empirical{std::move(p)});
}

DegreeDistribution DegreeDistribution::from_counts(const std::vector<double>& counts) {
  const double total = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (!(total > 0.0)) throw ParameterError("degree counts sum to zero");
  std::vector<double> p(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) p[k] = counts[k] / total;
  return empirical(std::move(p));
}

double DegreeDistribution::pk(std::size_t k) const {
  return std::visit(overloaded{
                        [&](const SimplePowerlaw& d) {
                          return k == 0 ? 0.0 : std::pow(static_cast<double>(k), -d.alpha) / zeta(d.alpha);
                        },
                        [&](const BAAnalytic& d) {
                          if (k < static_cast<std::size_t>(d.m)) return 0.0;
                          const double x = static_cast<double>(k);
                          return 2.0 * d.m * (d.m + 1.0) / (x * (x + 1.0) * (x + 2.0));
                        },
                        [&](const Poisson& d) { return poisson_pk(d.lambda, k); },
                        [&](const DRegular& d) { return k == static_cast<std::size_t>(d.d) ? 1.0 : 0.0; },
                        [&](const Empirical& d) { return k < d.p.size() ? d.p[k] : 0.0; },
                    },
                    form_);
}

std::size_t DegreeDistribution::min_degree() const {
  return std::visit(overloaded{
                        [](const SimplePowerlaw&) -> std::size_t { return 1; },
                        [](const BAAnalytic& d) -> std::size_t { return static_cast<std::size_t>(d.m); },
                        [](const Poisson&) -> std::size_t { return 0; },
                        [](const DRegular& d) -> std::size_t { return static_cast<std::size_t>(d.d); },
                        [](const Empirical& d) -> std::size_t {
                          std::size_t k = 0;
                          while (k < d.p.size() && d.p[k] == 0.0) ++k;
                          return k;
                        },
                    },
                    form_);
}

double DegreeDistribution::derivative(int order, double z) const {
  if (order < 0 || order > 2) throw ParameterError("derivative order must be 0, 1 or 2");
  if (!(z >= 0.0 && z <= 1.0)) throw DomainError("generating functions are evaluated on [0, 1]");
  return std::visit(overloaded{
                        [&](const SimplePowerlaw& d) { return powerlaw_derivative(d.alpha, order, z); },
                        [&](const BAAnalytic& d) { return ba_derivative(d.m, order, z); },
                        [&](const Poisson& d) {
                          const double base = std::exp(d.lambda * (z - 1.0));
                          return std::pow(d.lambda, order) * base;
                        },
                        [&](const DRegular& d) {
                          return term(1.0, static_cast<std::size_t>(d.d), order, z);
                        },
                        [&](const Empirical& d) {
                          double sum = 0.0;
                          for (std::size_t k = 0; k < d.p.size(); ++k) {
                            if (d.p[k] != 0.0) sum += term(d.p[k], k, order, z);
                          }
                          return sum;
                        },
                    },
                    form_);
}

bool DegreeDistribution::mean_finite() const {
  if (const auto* p = std::get_if<SimplePowerlaw>(&form_)) return p->alpha > 2.0;
  return true;
}

bool DegreeDistribution::second_moment_finite() const {
  if (const auto* p = std::get_if<SimplePowerlaw>(&form_)) return p->alpha > 3.0;
  return !std::holds_alternative<BAAnalytic>(form_);
}

DegreeDistribution DegreeDistribution::truncated(double tail_mass) const {
  if (!(tail_mass > 0.0 && tail_mass < 1.0)) throw ParameterError("tail mass must lie in (0, 1)");
  if (is_empirical()) return *this;
  if (const auto* d = std::get_if<DRegular>(&form_)) {
    std::vector<double> p(static_cast<std::size_t>(d->d) + 1, 0.0);
    p.back() = 1.0;
    return empirical(std::move(p));
  }
  constexpr std::size_t kCap = 10'000'000;
  std::vector<double> p;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < kCap; ++k) {
    const double v = pk(k);
    p.push_back(v);
    cumulative += v;
    if (k >= min_degree() && 1.0 - cumulative < tail_mass) break;
  }
  for (double& v : p) v /= cumulative;
  return empirical(std::move(p));
}

std::string DegreeDistribution::describe() const {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const SimplePowerlaw& d) { out << "simple-powerlaw(alpha=" << d.alpha << ")"; },
                 [&](const BAAnalytic& d) { out << "ba-analytic(m=" << d.m << ")"; },
                 [&](const Poisson& d) { out << "poisson(lambda=" << d.lambda << ")"; },
                 [&](const DRegular& d) { out << "d-regular(d=" << d.d << ")"; },
                 [&](const Empirical& d) { out << "empirical(k_max=" << d.p.size() - 1 << ")"; },
             },
             form_);
  return out.str();
}

}  // namespace epiq::gfun
