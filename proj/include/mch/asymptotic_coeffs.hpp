#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "mch/cauchy_engine.hpp"
#include "mch/errors.hpp"
#include "mch/phase_geometry.hpp"
#include "mch/quadrature.hpp"
#include "mch/reflection.hpp"
#include "mch/special_functions.hpp"

namespace mch {

// Closed-form leading asymptotics. In the oscillatory sectors the solution
// deviates from the background by modulated t^{-1/2} oscillations
//
//     C1(z)/sqrt(t) * cos{ C2(z) t + C3(z) ln t + C4 },
//
// one term per real stationary-point branch. The local-model data
// (beta_j, delta_{mu_j}, B_j) below is what the matrix chain in
// rh_algebra.hpp consumes; the C-quadruples are the ray-resolved
// coefficients of the final formulas.

/// Amplitude cutoff below which the oscillatory term is short-circuited
/// to zero (arg Gamma(i h) is singular at h = 0 while the amplitude
/// sqrt(h) vanishes there).
inline constexpr double kNegligibleH = 1e-8;

/// Local stationary-point factors at ray xi, time t, branch j.
///   beta  = sqrt(h) exp{i (pi/4 - arg(-conj r(s_j mu_j)) + arg Gamma(i h))},
///           s_j = +1 (j = 0), -1 (j = 1);
///   phi_delta = arg delta_{mu_j}^2(xi, t)   (delta itself is unimodular:
///           chi is purely imaginary and the power base 128|f_j|kappa_j^2 t
///           is positive real);
///   B     = i delta_{mu_j}^2 beta / ((1 + mu_j^{-2}) sqrt(2 |f_j|)).
/// In the two-branch sector delta_{mu_j} carries the cross factor
/// ((kappa1+kappa0)/(kappa1-kappa0))^{i h_{1-j}}, so B picks it up squared.
struct LocalFactors {
    int branch = 0;
    double h = 0.0;
    std::complex<double> beta{};
    double phi_beta = 0.0;
    double phi_delta = 0.0;
    std::complex<double> B{};
};

inline LocalFactors local_factors(const ReflectionCoefficient& rc, double xi,
                                  double t, int branch,
                                  const QuadratureSpec& spec = {}) {
    if (!(t > 0.0)) throw std::domain_error("local_factors: t must be positive");
    const SectorClass sector = classify_sector(xi);
    if (sector != SectorClass::Oscillatory1 && sector != SectorClass::Oscillatory2)
        throw SectorError("local_factors: sector must be oscillatory");
    if (branch == 1 && sector != SectorClass::Oscillatory2)
        throw SectorError("local_factors: branch 1 exists only for -1/4 < xi < 0");
    if (branch != 0 && branch != 1)
        throw std::invalid_argument("local_factors: branch must be 0 or 1");

    const StationaryData stat = stationary_points(xi);
    const double kappa = branch == 0 ? stat.kappa0 : *stat.kappa1;
    const double mu = branch == 0 ? stat.mu0 : *stat.mu1;
    const double f = branch == 0 ? stat.f0 : *stat.f1;
    const double th = branch == 0 ? stat.theta_hat0 : *stat.theta_hat1;

    LocalFactors out;
    out.branch = branch;
    out.h = rc.is_zero() ? 0.0 : rc.h_at(mu);
    if (out.h < kNegligibleH) return out; // B = 0, oscillatory term absent

    const double eval_point = branch == 0 ? mu : -mu;
    const std::complex<double> r_val = rc.eval(eval_point);
    out.phi_beta = std::numbers::pi / 4.0 - std::arg(-std::conj(r_val)) +
                   arg_gamma_ih(out.h);
    out.beta = std::sqrt(out.h) *
               std::complex<double>(std::cos(out.phi_beta), std::sin(out.phi_beta));

    const std::complex<double> chi = chi_at(rc, xi, branch, spec);
    // arg delta_{mu_j}: -t theta_hat for j=0, +t theta_hat(kappa1) for j=1
    double arg_delta = (branch == 0 ? -t * th : t * th) + chi.imag() -
                       0.5 * out.h * std::log(128.0 * std::fabs(f) * kappa * kappa * t);
    if (sector == SectorClass::Oscillatory2) {
        const double k0 = stat.kappa0, k1 = *stat.kappa1;
        const double h_other = rc.h_at(branch == 0 ? *stat.mu1 : stat.mu0);
        arg_delta += h_other * std::log((k1 + k0) / (k1 - k0));
    }
    out.phi_delta = 2.0 * arg_delta;
    const std::complex<double> rot(std::cos(out.phi_delta), std::sin(out.phi_delta));
    out.B = std::complex<double>(0.0, 1.0) * rot * out.beta /
            ((1.0 + 1.0 / (mu * mu)) * std::sqrt(2.0 * std::fabs(f)));
    return out;
}

/// One stationary-point branch of the leading-term coefficients.
/// C4 is the phase constant in the (y, t) ray variables; C4_tilde the one
/// transported to the (x, t) rays (reported mod 2 pi).
struct AsymptoticCoefficients {
    int branch = 0;
    double C1 = 0.0;
    double C2 = 0.0;
    double C3 = 0.0;
    double C4 = 0.0;
    double C4_tilde = 0.0;
};

namespace coeff_detail {

inline double wrap_to_pi(double phase) {
    const double two_pi = 2.0 * std::numbers::pi;
    double w = std::remainder(phase, two_pi);
    if (w <= -std::numbers::pi) w += two_pi;
    return w;
}

inline AsymptoticCoefficients one_branch(const ReflectionCoefficient& rc, double zeta,
                                         const StationaryData& stat, int branch,
                                         const QuadratureSpec& spec) {
    const SectorClass sector = classify_sector(zeta);
    const double kappa = branch == 0 ? stat.kappa0 : *stat.kappa1;
    const double mu = branch == 0 ? stat.mu0 : *stat.mu1;
    const double sgn = branch == 0 ? 1.0 : -1.0;

    AsymptoticCoefficients c;
    c.branch = branch;
    const double d = 1.0 + 4.0 * kappa * kappa;
    c.C2 = sgn * 32.0 * kappa * kappa * kappa / (d * d);

    const double h = rc.is_zero() ? 0.0 : rc.h_at(mu);
    c.C3 = h == 0.0 ? 0.0 : -h;
    if (h < kNegligibleH) return c; // C1 = 0, phase constants immaterial

    const double abs_factor = std::fabs(3.0 - 4.0 * kappa * kappa);
    c.C1 = -std::sqrt(8.0 * h * kappa / abs_factor);

    const std::complex<double> chi = chi_at(rc, zeta, branch, spec);
    const std::complex<double> r_val = rc.eval(sgn * mu);
    double c4 = 0.75 * std::numbers::pi + 2.0 * chi.imag() -
                h * std::log(128.0 * kappa * kappa * kappa * abs_factor / (d * d * d)) -
                std::arg(-std::conj(r_val)) + arg_gamma_ih(h);
    if (sector == SectorClass::Oscillatory2) {
        const double k0 = stat.kappa0, k1 = *stat.kappa1;
        const double h_other = rc.h_at(branch == 0 ? *stat.mu1 : stat.mu0);
        c4 += 2.0 * h_other * std::log((k1 + k0) / (k1 - k0));
    }
    c.C4 = c4;
    c.C4_tilde = wrap_to_pi(c4 + sgn * 4.0 * kappa * ln_delta_i(rc, zeta, spec));
    return c;
}

} // namespace coeff_detail

/// Coefficients of the single-branch sector 0 < zeta < 2 (shifted frame).
inline AsymptoticCoefficients coeffs_region1(const ReflectionCoefficient& rc,
                                             double zeta,
                                             const QuadratureSpec& spec = {}) {
    if (classify_sector(zeta) != SectorClass::Oscillatory1)
        throw SectorError("coeffs_region1: requires 0 < zeta < 2");
    return coeff_detail::one_branch(rc, zeta, stationary_points(zeta), 0, spec);
}

/// Both branches of the sector -1/4 < zeta < 0 (shifted frame).
inline std::array<AsymptoticCoefficients, 2> coeffs_region2(
    const ReflectionCoefficient& rc, double zeta, const QuadratureSpec& spec = {}) {
    if (classify_sector(zeta) != SectorClass::Oscillatory2)
        throw SectorError("coeffs_region2: requires -1/4 < zeta < 0");
    const StationaryData stat = stationary_points(zeta);
    return {coeff_detail::one_branch(rc, zeta, stat, 0, spec),
            coeff_detail::one_branch(rc, zeta, stat, 1, spec)};
}

enum class Frame { U, UTilde };

struct LeadingValue {
    double value = 0.0;
    SectorClass sector = SectorClass::Boundary;
    bool valid = false;
};

/// Pointwise leading term of the solution at (x, t).
///
/// The frame shift u(x,t) = u_tilde(x - t, t) + 1 lives here and only
/// here: in the original frame the ray parameter is zeta = x/t and the
/// shifted-frame ray is zeta - 1, mapping the oscillatory sectors
/// 0 < z < 2 and -1/4 < z < 0 onto 1 < zeta < 3 and 3/4 < zeta < 1.
/// Rays within `boundary_margin` of a sector boundary report
/// SectorClass::Boundary and no value.
inline LeadingValue u_leading(const ReflectionCoefficient& rc, double x, double t,
                              Frame frame, const QuadratureSpec& spec = {},
                              double boundary_margin = 1e-6) {
    if (!(t > 0.0)) throw std::domain_error("u_leading: t must be positive");
    const double z = frame == Frame::U ? x / t - 1.0 : x / t;
    const double base = frame == Frame::U ? 1.0 : 0.0;

    for (const double b : {2.0, 0.0, -0.25})
        if (std::fabs(z - b) < boundary_margin)
            return {0.0, SectorClass::Boundary, false};

    LeadingValue out;
    out.valid = true;
    out.sector = classify_sector(z);
    switch (out.sector) {
        case SectorClass::Oscillatory1: {
            const auto c = coeffs_region1(rc, z, spec);
            out.value = base + c.C1 / std::sqrt(t) *
                                   std::cos(c.C2 * t + c.C3 * std::log(t) + c.C4_tilde);
            break;
        }
        case SectorClass::Oscillatory2: {
            const auto cs = coeffs_region2(rc, z, spec);
            double sum = 0.0;
            for (const auto& c : cs)
                sum += c.C1 / std::sqrt(t) *
                       std::cos(c.C2 * t + c.C3 * std::log(t) + c.C4_tilde);
            out.value = base + sum;
            break;
        }
        default:
            out.value = base; // rapid decay to the background
            break;
    }
    return out;
}

} // namespace mch
