#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mch/errors.hpp"
#include "mch/phase_geometry.hpp"
#include "mch/quadrature.hpp"
#include "mch/reflection.hpp"

namespace mch {

// Scalar Cauchy-integral objects of the asymptotic analysis:
//
//   delta(mu, xi) = exp{ (1/2 pi i) int_{Sigma_b} ln(1-|r(s)|^2) / (s - mu) ds },
//
// its value at mu = i (which drives the x <-> y coordinate shift), the
// vanishing first-order coefficient of its expansion there, and the
// regularized on-contour phases chi at the stationary points.
//
// Every improper integral over an unbounded Sigma_b component is
// compactified by s -> 1/s, which is exact because |r(s)| = |r(1/s)|:
// no truncation error enters anywhere.

namespace cauchy_detail {

/// Interior points where ln(1-|r|^2) is log-singular (|r| = 1), for the
/// graded-mesh splits. Only +-1 qualify, and only in the unit-amplitude
/// regime.
inline std::vector<double> log_singular_points(const ReflectionCoefficient& rc) {
    if (rc.unit_amplitude()) return {-1.0, 1.0};
    return {};
}

} // namespace cauchy_detail

/// delta(mu, xi) for mu off the closure of Sigma_b(xi).
inline std::complex<double> delta_eval(const ReflectionCoefficient& rc, double xi,
                                       std::complex<double> mu,
                                       const QuadratureSpec& spec = {}) {
    const SectorClass sector = classify_sector(xi);
    if (sector == SectorClass::Boundary)
        throw SectorError("delta_eval: xi on a sector boundary");
    if (rc.is_zero()) return 1.0;
    if (sector == SectorClass::FastDecayRight) return 1.0; // Sigma_b empty

    StationaryData stat{};
    if (sector != SectorClass::FastDecayLeft) stat = stationary_points(xi);
    const IntervalUnion support = sigma_b(xi, stat);
    // mu = 0 is admissible even when 0 lies inside Sigma_b: the density
    // ln(1-|r(s)|^2)/(s - 0) stays regular because |r(s)| -> 0 rapidly
    // as s -> 0 (it equals |r(1/s)| with 1/s -> infinity).
    const bool at_origin = mu == std::complex<double>(0.0);
    if (!at_origin && support.distance(mu) < 1e-12 * (1.0 + std::abs(mu)))
        throw ContractError("delta_eval: mu on (or too close to) the contour");

    const auto singular = cauchy_detail::log_singular_points(rc);
    auto g = [&](double s) { return rc.log_one_minus_abs2(s); };
    auto density = [&](double s) -> std::complex<double> { return g(s) / (s - mu); };
    // Image of an unbounded tail under s -> 1/s: the integrand becomes
    // g(w) / (w (1 - mu w)) on the compact image.
    auto tail_density = [&](double w) -> std::complex<double> {
        return g(w) / (w * (1.0 - mu * w));
    };

    std::complex<double> total = 0.0;
    auto add_compact = [&](double a, double b) {
        total += integrate_with_log_points(density, a, b, singular, spec);
    };
    switch (sector) {
        case SectorClass::Oscillatory1:
            add_compact(-stat.mu0, -1.0 / stat.mu0);
            add_compact(1.0 / stat.mu0, stat.mu0);
            break;
        case SectorClass::Oscillatory2: {
            const double m1 = *stat.mu1;
            add_compact(-stat.mu0, -1.0 / stat.mu0);
            // split at 0 so no quadrature node lands on s = 0
            add_compact(-1.0 / m1, 0.0);
            add_compact(0.0, 1.0 / m1);
            add_compact(1.0 / stat.mu0, stat.mu0);
            total += integrate(tail_density, -1.0 / m1, 0.0, spec); // (-inf, -mu1)
            total += integrate(tail_density, 0.0, 1.0 / m1, spec);  // (mu1, +inf)
            break;
        }
        case SectorClass::FastDecayLeft:
            add_compact(-1.0, 0.0);
            add_compact(0.0, 1.0);
            total += integrate_with_log_points(tail_density, -1.0, 0.0, singular, spec);
            total += integrate_with_log_points(tail_density, 0.0, 1.0, singular, spec);
            break;
        default:
            break;
    }
    const std::complex<double> two_pi_i(0.0, 2.0 * std::numbers::pi);
    return std::exp(total / two_pi_i);
}

/// ln delta(i, xi), real. Oscillatory sectors only.
///
/// Range 0 < xi < 2:
///   (1/pi) int_{1/mu0}^{mu0} ln(1-|r|^2) / (s^2+1) ds.
/// Range -1/4 < xi < 0: the three-interval version; the (mu1, inf) tail
/// maps onto (0, 1/mu1) with an identical integrand, so that piece is
/// counted twice.
inline double ln_delta_i(const ReflectionCoefficient& rc, double xi,
                         const QuadratureSpec& spec = {}) {
    const SectorClass sector = classify_sector(xi);
    if (sector != SectorClass::Oscillatory1 && sector != SectorClass::Oscillatory2)
        throw SectorError("ln_delta_i: sector must be oscillatory");
    if (rc.is_zero()) return 0.0;
    const StationaryData stat = stationary_points(xi);
    const auto singular = cauchy_detail::log_singular_points(rc);
    auto f = [&](double s) { return rc.log_one_minus_abs2(s) / (s * s + 1.0); };
    double total = integrate_with_log_points(f, 1.0 / stat.mu0, stat.mu0, singular, spec);
    if (sector == SectorClass::Oscillatory2)
        total += 2.0 * integrate(f, 0.0, 1.0 / *stat.mu1, spec);
    return total / std::numbers::pi;
}

inline double delta_at_i(const ReflectionCoefficient& rc, double xi,
                         const QuadratureSpec& spec = {}) {
    return std::exp(ln_delta_i(rc, xi, spec));
}

/// Coordinate shift x - y at leading order: y0(xi) = 2 ln delta(i, xi).
inline double y_shift(const ReflectionCoefficient& rc, double xi,
                      const QuadratureSpec& spec = {}) {
    return 2.0 * ln_delta_i(rc, xi, spec);
}

/// First-order coefficient of delta at mu = i, up to the factor 1/i:
/// returns (1/pi) int ln(1-|r|^2) (s^2-1)/(s^2+1)^2 ds over the positive
/// part of Sigma_b (tails mapped compact). Vanishes identically by the
/// inversion symmetry of |r|; computing it checks the quadrature chain.
inline double delta_i_linear_coeff(const ReflectionCoefficient& rc, double xi,
                                   const QuadratureSpec& spec = {}) {
    const SectorClass sector = classify_sector(xi);
    if (sector != SectorClass::Oscillatory1 && sector != SectorClass::Oscillatory2)
        throw SectorError("delta_i_linear_coeff: sector must be oscillatory");
    if (rc.is_zero()) return 0.0;
    const StationaryData stat = stationary_points(xi);
    const auto singular = cauchy_detail::log_singular_points(rc);
    auto q = [&](double s) {
        const double d = s * s + 1.0;
        return rc.log_one_minus_abs2(s) * (s * s - 1.0) / (d * d);
    };
    double total = integrate_with_log_points(q, 1.0 / stat.mu0, stat.mu0, singular, spec);
    if (sector == SectorClass::Oscillatory2) {
        const double m1i = 1.0 / *stat.mu1;
        total += integrate(q, 0.0, m1i, spec);
        // (mu1, inf) tail under s -> 1/s: integrand picks up a sign flip
        auto q_tail = [&](double w) {
            const double d = 1.0 + w * w;
            return rc.log_one_minus_abs2(w) * (1.0 - w * w) / (d * d);
        };
        total += integrate(q_tail, 0.0, m1i, spec);
    }
    return total / std::numbers::pi;
}

/// Regularized on-contour phase chi at a stationary point; purely
/// imaginary by construction (the assembled integrand is real).
///
/// Range 0 < xi < 2 (branch 0 only):
///   chi(mu0) = (1/2 pi i) (int_{-mu0}^{-1/mu0} + int_{1/mu0}^{mu0})
///              ln[ (1-|r(s)|^2) / (1-|r(mu0)|^2) ] ds / (s - mu0).
/// The numerator vanishes at s = mu0, so the right endpoint is a removable
/// point; within |s - mu0| < 1e-4 the difference quotient is replaced by
/// the midpoint derivative of ln(1-|r|^2).
///
/// Range -1/4 < xi < 0 (branches 0 and 1, evaluation points mu0 and -mu1):
/// adds the (-1/mu1, 1/mu1) interval regularized by ln(1-|r(mu1)|^2) and
/// the two integrated-by-parts tails
///   - int_{-inf}^{-mu1} ln(mu - s) d ln(1-|r(s)|^2)
///   - int_{mu1}^{+inf}  ln(s - mu) d ln(1-|r(s)|^2),
/// compactified by s -> 1/s. All logarithms have positive arguments on
/// these domains (principal branch throughout).
inline std::complex<double> chi_at(const ReflectionCoefficient& rc, double xi,
                                   int branch, const QuadratureSpec& spec = {}) {
    const SectorClass sector = classify_sector(xi);
    if (sector != SectorClass::Oscillatory1 && sector != SectorClass::Oscillatory2)
        throw SectorError("chi_at: sector must be oscillatory");
    if (branch != 0 && branch != 1)
        throw std::invalid_argument("chi_at: branch must be 0 or 1");
    if (branch == 1 && sector != SectorClass::Oscillatory2)
        throw SectorError("chi_at: branch 1 exists only for -1/4 < xi < 0");
    if (rc.is_zero()) return 0.0;

    const StationaryData stat = stationary_points(xi);
    const double mu0 = stat.mu0;
    const double point = branch == 0 ? mu0 : -*stat.mu1;
    const auto singular = cauchy_detail::log_singular_points(rc);

    auto g = [&](double s) { return rc.log_one_minus_abs2(s); };
    // (g(s) - g_ref) / (s - point) with the removable-singularity guard
    auto make_reg = [&](double g_ref, double ref_point) {
        return [&rc, g_ref, ref_point, point](double s) {
            if (std::fabs(s - ref_point) < 1e-4 && ref_point == point)
                return rc.dlog_one_minus_abs2(0.5 * (s + ref_point));
            return (rc.log_one_minus_abs2(s) - g_ref) / (s - point);
        };
    };

    const double g0 = g(mu0);
    double total = 0.0;
    auto reg0 = make_reg(g0, mu0);
    total += integrate_with_log_points(reg0, -mu0, -1.0 / mu0, singular, spec);
    total += integrate_with_log_points(reg0, 1.0 / mu0, mu0, singular, spec);

    if (sector == SectorClass::Oscillatory2) {
        const double mu1 = *stat.mu1;
        const double g1 = g(mu1);
        auto reg1 = make_reg(g1, -mu1);
        // split at 0 so no quadrature node lands on s = 0
        total += integrate(reg1, -1.0 / mu1, 0.0, spec);
        total += integrate(reg1, 0.0, 1.0 / mu1, spec);

        // Left tail (-inf, -mu1) -> w in (-1/mu1, 0):
        //   + int ln((mu w - 1)/w) G'(w) dw
        auto left_tail = [&](double w) {
            const double arg = (point * w - 1.0) / w;
            return std::log(arg) * rc.dlog_one_minus_abs2(w);
        };
        // Right tail (mu1, +inf) -> w in (0, 1/mu1):
        //   + int ln((1 - mu w)/w) G'(w) dw
        auto right_tail = [&](double w) {
            const double arg = (1.0 - point * w) / w;
            return std::log(arg) * rc.dlog_one_minus_abs2(w);
        };
        if (branch == 1) {
            // evaluation point sits at the tail endpoint: integrable
            // log singularity at w = -1/mu1
            total += integrate_graded(left_tail, -1.0 / mu1, 0.0, true, false, spec);
        } else {
            total += integrate(left_tail, -1.0 / mu1, 0.0, spec);
        }
        total += integrate(right_tail, 0.0, 1.0 / mu1, spec);
    }
    // (1/2 pi i) * real total
    return std::complex<double>(0.0, -total / (2.0 * std::numbers::pi));
}

} // namespace mch
