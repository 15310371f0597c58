#pragma once

namespace epiq::gfun {

/// Riemann zeta for real s > 1, absolute error below 1e-12.
/// Throws DomainError for s <= 1.
double zeta(double s);

/// Polylogarithm Li_s(z) = sum_{k>=1} z^k / k^s for real s >= 1 and
/// z in [0, 1]; absolute error below 1e-10. At z = 1 this is zeta(s) and
/// requires s > 1 (DivergenceError otherwise).
double polylog(double s, double z);

namespace detail {

/// zeta continued to every real s != 1 (Euler-Maclaurin for s > 0, the
/// reflection formula below). Needed by the polylog expansion near z = 1.
double zeta_any(double s);

/// Li_s(z) for any real s when z in [0, 1); no range checks.
double polylog_unchecked(double s, double z);

}  // namespace detail
}  // namespace epiq::gfun
