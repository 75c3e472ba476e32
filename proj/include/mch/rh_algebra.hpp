#pragma once

#include <cmath>
#include <concepts>
#include <complex>
#include <optional>
#include <vector>

#include "mch/asymptotic_coeffs.hpp"
#include "mch/cauchy_engine.hpp"
#include "mch/errors.hpp"
#include "mch/matrix2.hpp"
#include "mch/phase_geometry.hpp"

namespace mch {

// Exact matrix algebra of the RH formalism: the two-step regularization
// (removal of the mu = +-1 singularity, then the Delta-dressing of the
// mu = 0 pole), the symmetrized small-circle contributions of the local
// models, the expansion at mu = i and the parametric reconstruction
// {u_hat, x}. assemble_leading() runs the whole chain and must reproduce
// the closed-form coefficients of asymptotic_coeffs.hpp — the two paths
// share no algebra beyond the scalar Cauchy integrals.

/// M_tilde(mu) = (I - sigma_1 / mu) M(mu). If det M = 1 then
/// det M_tilde = 1 - 1/mu^2, vanishing at mu = +-1.
inline Matrix2C remove_pm1_singularity(const Matrix2C& m_at_mu, Complex mu) {
    if (mu == Complex(0.0)) throw std::domain_error("remove_pm1_singularity: mu = 0");
    const Complex inv_mu = 1.0 / mu;
    const Matrix2C factor{1.0, -inv_mu, -inv_mu, 1.0};
    return factor * m_at_mu;
}

template <typename F>
    requires std::invocable<F&, Complex>
Matrix2C remove_pm1_singularity(F&& m, Complex mu) {
    return remove_pm1_singularity(m(mu), mu);
}

/// Delta(y,t) = sigma_1 [M^R(y,t,0)]^{-1}. The symmetry structure forces
///   M^R(0) = ((alpha, i beta), (-i beta, alpha)),  alpha, beta real,
///   alpha^2 - beta^2 = 1,
/// and then Delta = ((i beta, alpha), (alpha, -i beta)) with Delta^2 = I.
/// Violations of the structure are contract errors, checked to `tol`.
inline Matrix2C delta_from_MR0(const Matrix2C& mr0, double tol = 1e-10) {
    const double scale = std::max(1.0, mr0.max_abs());
    const double alpha = mr0.a11.real();
    const double beta = mr0.a12.imag();
    const bool structure_ok =
        std::abs(mr0.a11.imag()) <= tol * scale &&
        std::abs(mr0.a12.real()) <= tol * scale &&
        distance(mr0, Matrix2C{Complex(alpha, 0.0), Complex(0.0, beta),
                               Complex(0.0, -beta), Complex(alpha, 0.0)}) <= tol * scale;
    if (!structure_ok)
        throw ContractError("delta_from_MR0: M^R(0) lacks the ((a, ib), (-ib, a)) structure");
    if (std::abs(alpha * alpha - beta * beta - 1.0) > tol * scale * scale)
        throw ContractError("delta_from_MR0: alpha^2 - beta^2 != 1");
    return {Complex(0.0, beta), Complex(alpha, 0.0), Complex(alpha, 0.0),
            Complex(0.0, -beta)};
}

/// M(mu) = (I - sigma_1/mu)^{-1} (I - Delta/mu) M^R(mu), mu not in {0,+-1}.
/// The inverse is (I + sigma_1/mu) / (1 - 1/mu^2).
inline Matrix2C dress_regular(const Matrix2C& mr_at_mu, const Matrix2C& delta,
                              Complex mu) {
    if (mu == Complex(0.0)) throw std::domain_error("dress_regular: mu = 0");
    if (std::abs(mu - 1.0) < 1e-14 || std::abs(mu + 1.0) < 1e-14)
        throw std::domain_error("dress_regular: pole at mu = +-1");
    const Complex inv_mu = 1.0 / mu;
    const Complex scale = 1.0 / (1.0 - inv_mu * inv_mu);
    const Matrix2C left = scale * Matrix2C{1.0, inv_mu, inv_mu, 1.0};
    const Matrix2C mid = Matrix2C::identity() - inv_mu * delta;
    return left * mid * mr_at_mu;
}

template <typename F>
    requires std::invocable<F&, Complex>
Matrix2C dress_regular(F&& mr, const Matrix2C& delta, Complex mu) {
    return dress_regular(mr(mu), delta, mu);
}

/// Diagonal/off-diagonal expansion data of M at mu = i:
/// M = diag(a1, 1/a1) + ((0, a2), (a3, 0)) (mu - i) + O((mu - i)^2).
struct ExpansionAtI {
    double a1 = 1.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

/// Leading-order expansion coefficients:
///   a1 = (1 - eta) delta(i),  a2 = (beta1 + eta) / delta(i),
///   a3 = (beta2 - eta) delta(i),
/// with eta the symmetrized imaginary part of the small-circle sums.
inline ExpansionAtI expand_at_i(double eta, double beta1, double beta2,
                                double delta_i) {
    if (!(delta_i > 0.0)) throw std::domain_error("expand_at_i: delta(i) must be positive");
    if (!(std::fabs(eta) < 1.0)) throw std::domain_error("expand_at_i: |eta| must be < 1");
    return {(1.0 - eta) * delta_i, (beta1 + eta) / delta_i, (beta2 - eta) * delta_i};
}

/// Parametric reconstruction from the expansion at mu = i:
///   u_hat = -a2 a1 - a3 / a1,   x = y + 2 ln a1.
struct Reconstruction {
    double u_hat;
    double x;
};

inline Reconstruction reconstruct(const ExpansionAtI& a, double y) {
    if (!(a.a1 > 0.0)) throw std::domain_error("reconstruct: a1 must be positive");
    return {-a.a2 * a.a1 - a.a3 / a.a1, y + 2.0 * std::log(a.a1)};
}

enum class ContributionTarget { At0, AtI, LinI };

namespace rh_detail {

struct PoleTerm {
    double position;
    Matrix2C residue;
};

/// The full symmetrized pole/residue list of the small-circle expansion
///   m_hat(mu) = I + (1/sqrt t) sum_p R_p / (p - mu) + o(t^{-1/2}).
/// A primary pole p with residue R spawns images under mu -> -mu and
/// mu -> 1/mu with residues conj(R) at -p and -conj(R)/p^2 at 1/p.
inline std::vector<PoleTerm> symmetrized_poles(Complex B0, double mu0,
                                               std::optional<Complex> B1,
                                               std::optional<double> mu1) {
    if (B1.has_value() != mu1.has_value())
        throw ContractError("local_contribution_sum: B1 and mu1 must come together");
    std::vector<PoleTerm> poles;
    auto expand = [&poles](Complex b, double p) {
        const Matrix2C R = Matrix2C::off_diag(b);
        const Matrix2C Rc = R.conj();
        const double p2 = p * p;
        poles.push_back({p, R});
        poles.push_back({-p, Rc});
        poles.push_back({1.0 / p, (-1.0 / p2) * Rc});
        poles.push_back({-1.0 / p, (-1.0 / p2) * R});
    };
    expand(B0, mu0);
    if (B1) expand(*B1, -*mu1); // the branch-1 primary circle sits at -mu1
    return poles;
}

} // namespace rh_detail

/// Symmetrized small-circle contribution sums. Targets:
///   At0  : I + (1/sqrt t) sum R_p / p              (= m_hat(0))
///   AtI  : I + (1/sqrt t) sum R_p / (p - i)        (= m_hat(i))
///   LinI : (1/sqrt t) sum R_p / (p - i)^2          (linear coeff at i)
inline Matrix2C local_contribution_sum(Complex B0, double mu0,
                                       std::optional<Complex> B1,
                                       std::optional<double> mu1,
                                       ContributionTarget target, double t) {
    if (!(t > 0.0)) throw std::domain_error("local_contribution_sum: t must be positive");
    const auto poles = rh_detail::symmetrized_poles(B0, mu0, B1, mu1);
    const Complex i_unit(0.0, 1.0);
    Matrix2C sum{};
    for (const auto& [p, R] : poles) {
        Complex w;
        switch (target) {
            case ContributionTarget::At0: w = 1.0 / Complex(p); break;
            case ContributionTarget::AtI: w = 1.0 / (p - i_unit); break;
            case ContributionTarget::LinI: {
                const Complex d = p - i_unit;
                w = 1.0 / (d * d);
                break;
            }
        }
        sum = sum + w * R;
    }
    sum = (1.0 / std::sqrt(t)) * sum;
    if (target != ContributionTarget::LinI)
        sum = Matrix2C::identity() + sum;
    return sum;
}

/// Output of the full matrix-chain assembly at a ray xi = y/t.
struct LeadingAssembly {
    double u_hat;     // leading term of u_hat(y, t)
    double x_minus_y; // leading coordinate shift x(y,t) - y
    double eta;
    double beta1;
    double beta2;
};

/// Independent assembly of the leading asymptotics: local factors ->
/// symmetrized residue sums -> expansion data at mu = i -> reconstruction.
/// Keeps exactly the t^{-1/2} terms (the orders the derivation keeps):
/// u_hat = -(beta1 + beta2), x - y = 2 ln delta(i).
inline LeadingAssembly assemble_leading(const ReflectionCoefficient& rc, double xi,
                                        double t, const QuadratureSpec& spec = {}) {
    const SectorClass sector = classify_sector(xi);
    if (sector != SectorClass::Oscillatory1 && sector != SectorClass::Oscillatory2)
        throw SectorError("assemble_leading: sector must be oscillatory");
    if (rc.is_zero()) return {0.0, 0.0, 0.0, 0.0, 0.0};

    const StationaryData stat = stationary_points(xi);
    const LocalFactors lf0 = local_factors(rc, xi, t, 0, spec);
    std::optional<Complex> B1;
    std::optional<double> mu1;
    if (sector == SectorClass::Oscillatory2) {
        const LocalFactors lf1 = local_factors(rc, xi, t, 1, spec);
        B1 = lf1.B;
        mu1 = *stat.mu1;
    }

    const Matrix2C at0 =
        local_contribution_sum(lf0.B, stat.mu0, B1, mu1, ContributionTarget::At0, t);
    const Matrix2C lin =
        local_contribution_sum(lf0.B, stat.mu0, B1, mu1, ContributionTarget::LinI, t);

    // m_hat(0) = I + 2 i eta ((0,1),(-1,0)); the linear coefficient at i is
    // real and off-diagonal up to roundoff.
    const double eta = 0.5 * at0.a12.imag();
    const double beta1 = lin.a12.real();
    const double beta2 = lin.a21.real();

    const double ln_di = ln_delta_i(rc, xi, spec);
    return {-(beta1 + beta2), 2.0 * ln_di, eta, beta1, beta2};
}

} // namespace mch
