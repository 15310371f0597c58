#pragma once

#include <span>
#include <vector>

#include "epiq/gfun/distribution.hpp"

namespace epiq::gfun {

enum class Which { G0, G0Prime, G0Second, G1 };

/// g0, g0', g0'' or the excess-degree function g1(z) = g0'(z) / g0'(1).
double gf_eval(const DegreeDistribution& dist, double z, Which which);

/// R = (E[k^2] - E[k]) / E[k]; an outbreak is possible iff R > 1.
/// Zero when E[k] = 0. Throws DivergenceError if E[k^2] is infinite.
double reproductive_number(const DegreeDistribution& dist);

/// Expected susceptible counts after spreading until degree-1 nodes are
/// susceptible with probability u, then quarantining: P_k u^k.
std::vector<double> quarantine_operator(std::span<const double> counts, double u);

/// u^2 g0''(u) - u g0'(u) = sum_k p_k u^k k (k - 2). Herd immunity after a
/// quarantine at u holds iff this is <= 0.
double herd_condition(const DegreeDistribution& dist, double u);

struct HerdThreshold {
  enum class Kind {
    Found,     ///< u holds the largest root in (0, 1)
    NotNeeded, ///< condition never positive: already herd-immune
    NotExists, ///< condition positive on all of (0, 1)
  };
  Kind kind;
  double u = 0.0;

  bool found() const noexcept { return kind == Kind::Found; }
};

/// Largest u* in (0, 1) where herd_condition changes sign, to 1e-7.
HerdThreshold herd_threshold(const DegreeDistribution& dist);

/// R_Q = 1 - g0(u): fraction removed by the first wave when the quarantine
/// fires at u.
double removed_after_quarantine(const DegreeDistribution& dist, double u);

/// Generating functions of the residual susceptible graph after a
/// quarantine at u: g0Q(z) = g0(uz)/g0(u), g1Q(z) = g1(uz)/g1(u).
class PostQuarantineGenFn {
 public:
  PostQuarantineGenFn(const DegreeDistribution& dist, double u);

  double g0(double z) const;
  double g1(double z) const;
  double u() const noexcept { return u_; }

 private:
  const DegreeDistribution* dist_;
  double u_;
  double g0_at_u_;
  double g0prime_at_u_;
};

PostQuarantineGenFn post_quarantine_gfuns(const DegreeDistribution& dist, double u);

/// phi = beta / (beta + gamma): probability a transmission along one edge
/// beats the recovery of the infected endpoint.
double transmissibility(double beta, double gamma);

struct FixedPoint {
  double v;
  int iterations;
  bool used_bisection;
};

/// Smallest root in [0, 1] of v = 1 - phi + phi * g1(u v) / g1(u).
/// u = 1 is the unquarantined equation. Damped iteration from v = 0 with
/// bisection fallback; v = 1 when the map is subcritical.
FixedPoint solve_outbreak_fixed_point(const DegreeDistribution& dist, double u, double phi);

/// Expected final outbreak size S = 1 - g0(v), v = 1 - phi + phi g1(v).
double final_size(const DegreeDistribution& dist, double phi);

/// Expected total removed fraction R(u) = 1 - g0(u v) with one quarantine
/// at u followed by a restarted outbreak.
double total_removed(const DegreeDistribution& dist, double u, double phi);

}  // namespace epiq::gfun
