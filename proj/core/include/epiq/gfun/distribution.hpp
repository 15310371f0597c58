#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace epiq::gfun {

/// p_k = k^-alpha / zeta(alpha), k >= 1.
struct SimplePowerlaw {
  double alpha;
};

/// Barabasi-Albert limit law p_k = 2m(m+1) / (k(k+1)(k+2)), k >= m.
struct BAAnalytic {
  int m;
};

/// p_k = lambda^k e^-lambda / k!, k >= 0.
struct Poisson {
  double lambda;
};

/// p_d = 1.
struct DRegular {
  int d;
};

/// Finite table p_0, p_1, ..., normalized.
struct Empirical {
  std::vector<double> p;
};

/// Degree distribution {p_k}, analytic or tabulated.
///
/// Everything the generating-function layer needs reduces to the three
/// derivatives of g0(z) = sum_k p_k z^k, which each family provides in
/// closed form where one exists:
///
///   derivative(0, z) = g0(z)
///   derivative(1, z) = g0'(z)   = sum_k k p_k z^(k-1)
///   derivative(2, z) = g0''(z)  = sum_k k(k-1) p_k z^(k-2)
class DegreeDistribution {
 public:
  using Form = std::variant<SimplePowerlaw, BAAnalytic, Poisson, DRegular, Empirical>;

  static DegreeDistribution simple_powerlaw(double alpha);
  static DegreeDistribution ba_analytic(int m);
  static DegreeDistribution poisson(double lambda);
  static DegreeDistribution d_regular(int d);
  /// Throws ParameterError unless entries are non-negative and sum to 1
  /// within 1e-9.
  static DegreeDistribution empirical(std::vector<double> p);
  /// Normalizes counts P_k into p_k.
  static DegreeDistribution from_counts(const std::vector<double>& counts);

  const Form& form() const noexcept { return form_; }
  bool is_empirical() const noexcept { return std::holds_alternative<Empirical>(form_); }

  double pk(std::size_t k) const;
  std::size_t min_degree() const;

  /// i-th derivative of g0 at z in [0, 1], i in {0, 1, 2}. Throws
  /// DivergenceError when the value at z = 1 is infinite.
  double derivative(int order, double z) const;

  /// E[k] and E[k^2]; DivergenceError if infinite.
  double mean() const { return derivative(1, 1.0); }
  double second_moment() const { return derivative(2, 1.0) + mean(); }
  bool mean_finite() const;
  bool second_moment_finite() const;

  /// Tabulates the distribution up to the smallest k_max whose tail mass is
  /// below `tail_mass`, then renormalizes. Empirical tables are returned as-is.
  DegreeDistribution truncated(double tail_mass) const;

  std::string describe() const;

 private:
  explicit DegreeDistribution(Form form) : form_(std::move(form)) {}
  Form form_;
};

}  // namespace epiq::gfun
