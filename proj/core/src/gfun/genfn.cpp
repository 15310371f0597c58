#include "epiq/gfun/genfn.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "epiq/common/error.hpp"

namespace epiq::gfun {
namespace {

void require_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

// Slope of v -> 1 - phi + phi g1(u v)/g1(u) at v = 1; +inf when g0''(u) diverges.
double map_slope_at_one(const DegreeDistribution& dist, double u, double phi, double g0prime_u) {
  try {
    return phi * u * dist.derivative(2, u) / g0prime_u;
  } catch (const DivergenceError&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

double gf_eval(const DegreeDistribution& dist, double z, Which which) {
  switch (which) {
    case Which::G0:
      return dist.derivative(0, z);
    case Which::G0Prime:
      return dist.derivative(1, z);
    case Which::G0Second:
      return dist.derivative(2, z);
    case Which::G1: {
      const double mean = dist.mean();
      if (mean == 0.0) throw DegenerateError("g1 is undefined when every node has degree 0");
      return dist.derivative(1, z) / mean;
    }
  }
  return 0.0;
}

double reproductive_number(const DegreeDistribution& dist) {
  const double mean = dist.mean();
  if (mean == 0.0) return 0.0;
  // E[k^2] - E[k] = g0''(1)
  return dist.derivative(2, 1.0) / mean;
}

std::vector<double> quarantine_operator(std::span<const double> counts, double u) {
  require_unit(u, "u");
  std::vector<double> out(counts.size());
  double power = 1.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out[k] = counts[k] * power;
    power *= u;
  }
  return out;
}

double herd_condition(const DegreeDistribution& dist, double u) {
  require_unit(u, "u");
  return u * u * dist.derivative(2, u) - u * dist.derivative(1, u);
}

HerdThreshold herd_threshold(const DegreeDistribution& dist) {
  constexpr double kLow = 1e-6;
  constexpr double kHigh = 1.0 - 1e-6;
  std::vector<double> grid{kLow};
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  grid.push_back(kHigh);

  std::vector<double> values(grid.size());
  bool any_positive = false;
  bool all_positive = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = herd_condition(dist, grid[i]);
    any_positive |= values[i] > 0.0;
    all_positive &= values[i] > 0.0;
  }
  if (!any_positive || values.back() <= 0.0) return {HerdThreshold::Kind::NotNeeded, 1.0};
  if (all_positive) return {HerdThreshold::Kind::NotExists, 0.0};

  std::size_t i = grid.size() - 1;
  while (values[i - 1] > 0.0) --i;
  double lo = grid[i - 1];
  double hi = grid[i];
  while (hi - lo > 1e-7) {
    const double mid = 0.5 * (lo + hi);
    (herd_condition(dist, mid) <= 0.0 ? lo : hi) = mid;
  }
  return {HerdThreshold::Kind::Found, lo};
}

double removed_after_quarantine(const DegreeDistribution& dist, double u) {
  require_unit(u, "u");
  return 1.0 - dist.derivative(0, u);
}

PostQuarantineGenFn::PostQuarantineGenFn(const DegreeDistribution& dist, double u) : dist_(&dist), u_(u) {
  require_unit(u, "u");
  if (u == 0.0) throw DegenerateError("post-quarantine generating functions are undefined at u = 0");
  g0_at_u_ = dist.derivative(0, u);
  g0prime_at_u_ = dist.derivative(1, u);
  if (g0_at_u_ == 0.0) throw DegenerateError("no susceptible nodes remain at this u");
}

double PostQuarantineGenFn::g0(double z) const {
  require_unit(z, "z");
  return dist_->derivative(0, u_ * z) / g0_at_u_;
}

double PostQuarantineGenFn::g1(double z) const {
  require_unit(z, "z");
  if (g0prime_at_u_ == 0.0) throw DegenerateError("residual graph has no edges; g1 is undefined");
  return dist_->derivative(1, u_ * z) / g0prime_at_u_;
}

PostQuarantineGenFn post_quarantine_gfuns(const DegreeDistribution& dist, double u) {
  return PostQuarantineGenFn(dist, u);
}

double transmissibility(double beta, double gamma) {
  if (!(gamma > 0.0)) throw DomainError("recovery rate gamma must be positive");
  if (!(beta >= 0.0)) throw DomainError("infection rate beta must be non-negative");
  if (std::isinf(beta)) return 1.0;
  return beta / (beta + gamma);
}

FixedPoint solve_outbreak_fixed_point(const DegreeDistribution& dist, double u, double phi) {
  require_unit(phi, "phi");
  require_unit(u, "u");
  if (u == 0.0) throw DegenerateError("u = 0 leaves no susceptible nodes");

  const double g0prime_u = dist.derivative(1, u);
  if (g0prime_u == 0.0) return {1.0, 0, false};
  if (map_slope_at_one(dist, u, phi, g0prime_u) <= 1.0 + 1e-12) return {1.0, 0, false};

  auto map = [&](double v) { return 1.0 - phi + phi * dist.derivative(1, u * v) / g0prime_u; };

  constexpr double kOmega = 0.5;
  constexpr int kCap = 100'000;
  double v = 0.0;
  for (int it = 1; it <= kCap; ++it) {
    const double next = (1.0 - kOmega) * v + kOmega * map(v);
    if (std::abs(next - v) < 1e-14) return {next, it, false};
    v = next;
  }

  // Below the smallest root the residual v - map(v) is negative; it turns
  // positive between that root and 1.
  auto residual = [&](double x) { return x - map(x); };
  double lo = v;
  double hi = -1.0;
  for (int j = 1; j <= 50; ++j) {
    const double b = 1.0 - std::ldexp(1.0, -j);
    if (b > lo && residual(b) > 0.0) {
      hi = b;
      break;
    }
  }
  // No sign change below 1 - 2^-50: the smallest root is 1 to double
  // precision. Happens at criticality, where iteration converges only
  // algebraically.
  if (hi < 0.0) return {1.0, kCap, true};
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) < 0.0 ? lo : hi) = mid;
  }
  return {0.5 * (lo + hi), kCap, true};
}

double final_size(const DegreeDistribution& dist, double phi) {
  const FixedPoint fp = solve_outbreak_fixed_point(dist, 1.0, phi);
  return 1.0 - dist.derivative(0, fp.v);
}

double total_removed(const DegreeDistribution& dist, double u, double phi) {
  const FixedPoint fp = solve_outbreak_fixed_point(dist, u, phi);
  return 1.0 - dist.derivative(0, u * fp.v);
}

}  // namespace epiq::gfun
