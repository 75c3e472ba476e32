#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "mch/errors.hpp"

namespace mch {

/// Spectral-plane geometry of the phase
///     theta(mu, xi) = theta_hat(k(mu), xi),
///     k(mu) = (mu - 1/mu)/4,
///     theta_hat(k, xi) = k xi - 2k / (1 + 4 k^2),
/// with xi = y/t the ray slope in the shifted (zero-background) frame.
///
/// The real stationary points of theta_hat partition the xi axis into four
/// ranges with qualitatively different large-time behavior; the
/// sign-structure support sets Sigma_a / Sigma_b on the mu axis are built
/// from their mu images.

enum class SectorClass {
    FastDecayRight, // xi > 2
    Oscillatory1,   // 0 < xi < 2
    Oscillatory2,   // -1/4 < xi < 0
    FastDecayLeft,  // xi < -1/4
    Boundary,       // xi in {-1/4, 0, 2}
};

inline const char* to_string(SectorClass s) {
    switch (s) {
        case SectorClass::FastDecayRight: return "FastDecayRight";
        case SectorClass::Oscillatory1: return "Oscillatory1";
        case SectorClass::Oscillatory2: return "Oscillatory2";
        case SectorClass::FastDecayLeft: return "FastDecayLeft";
        case SectorClass::Boundary: return "Boundary";
    }
    return "?";
}

inline double k_of_mu(double mu) {
    if (mu == 0.0) throw std::domain_error("k_of_mu: mu = 0");
    return 0.25 * (mu - 1.0 / mu);
}

inline std::complex<double> k_of_mu(std::complex<double> mu) {
    if (mu == std::complex<double>(0.0))
        throw std::domain_error("k_of_mu: mu = 0");
    return 0.25 * (mu - 1.0 / mu);
}

inline double theta_hat(double k, double xi) {
    return k * xi - 2.0 * k / (1.0 + 4.0 * k * k);
}

inline std::complex<double> theta_hat(std::complex<double> k, double xi) {
    const std::complex<double> denom = 1.0 + 4.0 * k * k;
    if (std::abs(denom) < 1e-14)
        throw std::domain_error("theta_hat: pole at k = +-i/2 (mu = +-i)");
    return k * xi - 2.0 * k / denom;
}

inline double theta(double mu, double xi) { return theta_hat(k_of_mu(mu), xi); }

inline std::complex<double> theta(std::complex<double> mu, double xi) {
    return theta_hat(k_of_mu(mu), xi);
}

/// xi of a stationary point kappa: inverse of the branch maps below.
inline double xi_of_kappa(double kappa) {
    const double d = 1.0 + 4.0 * kappa * kappa;
    return (2.0 - 8.0 * kappa * kappa) / (d * d);
}

/// Root > 1 of mu^2 - 4 kappa mu - 1 = 0 (the mu image of kappa >= 0).
inline double mu_of_kappa(double kappa) {
    return 2.0 * kappa + std::sqrt(4.0 * kappa * kappa + 1.0);
}

/// Half the second phase derivative in the k chart at a stationary point.
inline double f_of_kappa(double kappa) {
    const double d = 1.0 + 4.0 * kappa * kappa;
    return kappa * (3.0 - 4.0 * kappa * kappa) / (d * d * d);
}

inline double theta_hat_of_kappa(double kappa) {
    const double d = 1.0 + 4.0 * kappa * kappa;
    return -16.0 * kappa * kappa * kappa / (d * d);
}

inline SectorClass classify_sector(double xi) {
    if (xi == 2.0 || xi == 0.0 || xi == -0.25) return SectorClass::Boundary;
    if (xi > 2.0) return SectorClass::FastDecayRight;
    if (xi > 0.0) return SectorClass::Oscillatory1;
    if (xi > -0.25) return SectorClass::Oscillatory2;
    return SectorClass::FastDecayLeft;
}

/// The xi-dependent stationary-point data. kappa1/mu1/f1 exist only when
/// the second branch is real, i.e. -1/4 <= xi < 0.
struct StationaryData {
    double kappa0;
    double mu0;
    double f0;
    double theta_hat0;
    std::optional<double> kappa1;
    std::optional<double> mu1;
    std::optional<double> f1;
    std::optional<double> theta_hat1;

    bool has_branch1() const { return kappa1.has_value(); }
};

/// Stationary points for -1/4 <= xi <= 2.
///
/// kappa0^2 = (sqrt(1+4xi) - 1 - xi) / (4 xi) is evaluated via the
/// cancellation-free equivalent (2 - xi) / (4 (sqrt(1+4xi) + 1 + xi)),
/// which also realizes the continuous extension kappa0(0) = 1/2.
inline StationaryData stationary_points(double xi) {
    if (!(xi >= -0.25 && xi <= 2.0))
        throw SectorError("stationary_points: xi outside [-1/4, 2]");
    const double root = std::sqrt(1.0 + 4.0 * xi);
    StationaryData out{};
    const double k0sq = (2.0 - xi) / (4.0 * (root + 1.0 + xi));
    out.kappa0 = std::sqrt(k0sq);
    out.mu0 = mu_of_kappa(out.kappa0);
    out.f0 = f_of_kappa(out.kappa0);
    out.theta_hat0 = theta_hat_of_kappa(out.kappa0);
    if (xi < 0.0) {
        const double k1sq = -(root + 1.0 + xi) / (4.0 * xi);
        const double k1 = std::sqrt(k1sq);
        out.kappa1 = k1;
        out.mu1 = mu_of_kappa(k1);
        out.f1 = f_of_kappa(k1);
        out.theta_hat1 = theta_hat_of_kappa(k1);
    }
    return out;
}

/// Ordered union of disjoint open intervals on the real line; endpoints
/// may be +-infinity.
struct IntervalUnion {
    std::vector<std::pair<double, double>> parts;

    bool empty() const { return parts.empty(); }

    bool contains(double s) const {
        for (const auto& [a, b] : parts)
            if (s > a && s < b) return true;
        return false;
    }

    /// Distance from a complex point to the closure of the union.
    double distance(std::complex<double> z) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [a, b] : parts) {
            double dre = 0.0;
            if (z.real() < a) dre = a - z.real();
            else if (z.real() > b) dre = z.real() - b;
            best = std::min(best, std::hypot(dre, z.imag()));
        }
        return best;
    }
};

/// Support of the lower-factorization intervals:
///   xi > 2        : empty
///   0 < xi < 2    : (-mu0, -1/mu0) u (1/mu0, mu0)
///   -1/4 < xi < 0 : (-inf, -mu1) u (-mu0, -1/mu0) u (-1/mu1, 1/mu1)
///                   u (1/mu0, mu0) u (mu1, +inf)
///   xi < -1/4     : (-inf, +inf)
/// Complement convention: Sigma_a = R \ closure(Sigma_b).
inline IntervalUnion sigma_b(double xi, const StationaryData& stat) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    IntervalUnion u;
    switch (classify_sector(xi)) {
        case SectorClass::FastDecayRight:
            break;
        case SectorClass::Oscillatory1:
            u.parts = {{-stat.mu0, -1.0 / stat.mu0}, {1.0 / stat.mu0, stat.mu0}};
            break;
        case SectorClass::Oscillatory2: {
            const double m1 = *stat.mu1;
            u.parts = {{-inf, -m1},
                       {-stat.mu0, -1.0 / stat.mu0},
                       {-1.0 / m1, 1.0 / m1},
                       {1.0 / stat.mu0, stat.mu0},
                       {m1, inf}};
            break;
        }
        case SectorClass::FastDecayLeft:
            u.parts = {{-inf, inf}};
            break;
        case SectorClass::Boundary:
            throw SectorError("sigma_b: xi on a sector boundary");
    }
    return u;
}

inline IntervalUnion sigma_b(double xi) {
    if (classify_sector(xi) == SectorClass::Boundary)
        throw SectorError("sigma_b: xi on a sector boundary");
    if (xi > 2.0 || xi < -0.25) {
        StationaryData dummy{};
        return sigma_b(xi, dummy);
    }
    return sigma_b(xi, stationary_points(xi));
}

} // namespace mch
