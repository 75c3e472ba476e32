#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "mch/errors.hpp"

namespace mch {

/// Reflection coefficient r(mu) on the real line, carrying the two exact
/// symmetries
///     r(mu) = -conj(r(-mu)) = conj(r(1/mu)),   mu != 0.
///
/// Two backends:
///  * a synthetic three-parameter family, defined on mu >= 1 by
///        r(mu) = -A exp(-a (mu - 1/mu)^2) exp(i b (mu - 1/mu))
///    and extended to (0,1) by r(mu) := conj(r(1/mu)) and to mu < 0 by
///    r(mu) := -conj(r(-mu)). Both extensions collapse to the closed form
///        r(mu) = -sign(mu) A exp(-a g^2 + i b g),  g = mu - 1/mu,
///    so the symmetries hold to machine precision by construction;
///  * a sampled table on mu >= 1 (linear interpolation, zero beyond the
///    last sample), extended by the same symmetries.
///
/// Note r must depend on mu itself, not on k(mu) alone: the two symmetries
/// force any pure-k family to vanish identically.
class ReflectionCoefficient {
public:
    static ReflectionCoefficient model(double amplitude, double width, double chirp) {
        if (!(amplitude >= 0.0 && amplitude <= 1.0))
            throw std::invalid_argument("ReflectionCoefficient: amplitude must lie in [0, 1]");
        if (!(width > 0.0))
            throw std::invalid_argument("ReflectionCoefficient: width must be positive");
        ReflectionCoefficient rc;
        rc.kind_ = amplitude == 0.0 ? Kind::Zero : Kind::Model;
        rc.amp_ = amplitude;
        rc.width_ = width;
        rc.chirp_ = chirp;
        return rc;
    }

    static ReflectionCoefficient zero() { return model(0.0, 1.0, 0.0); }

    /// Table on mu >= 1, strictly increasing grid starting at mu = 1.
    static ReflectionCoefficient from_table(std::vector<double> grid,
                                            std::vector<std::complex<double>> values) {
        if (grid.size() != values.size() || grid.size() < 2)
            throw std::invalid_argument("ReflectionCoefficient: bad table size");
        if (grid.front() < 1.0)
            throw std::invalid_argument("ReflectionCoefficient: table grid must start at mu >= 1");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (grid[i] <= grid[i - 1])
                throw std::invalid_argument("ReflectionCoefficient: table grid must increase");
        ReflectionCoefficient rc;
        rc.kind_ = Kind::Table;
        rc.grid_ = std::move(grid);
        rc.values_ = std::move(values);
        double m = 0.0;
        for (const auto& v : rc.values_) m = std::max(m, std::abs(v));
        rc.amp_ = m;
        return rc;
    }

    bool is_zero() const { return kind_ == Kind::Zero; }
    double amplitude() const { return amp_; }
    double width() const { return width_; }
    double chirp() const { return chirp_; }
    bool is_model() const { return kind_ != Kind::Table; }
    /// sup |r| touches 1 (at mu = +-1); the log integrands then carry an
    /// integrable singularity there and quadratures switch to graded meshes.
    bool unit_amplitude() const { return amp_ >= 1.0; }

    std::complex<double> eval(double mu) const {
        if (mu == 0.0) throw std::domain_error("r(mu): mu = 0");
        switch (kind_) {
            case Kind::Zero:
                return 0.0;
            case Kind::Model: {
                const double g = mu - 1.0 / mu;
                const double mag = amp_ * std::exp(-width_ * g * g);
                const double sgn = mu > 0.0 ? -1.0 : 1.0;
                return sgn * mag * std::complex<double>(std::cos(chirp_ * g), std::sin(chirp_ * g));
            }
            case Kind::Table: {
                if (mu < 0.0) return -std::conj(eval(-mu));
                if (mu < 1.0) return std::conj(eval_base(1.0 / mu));
                return eval_base(mu);
            }
        }
        return 0.0;
    }

    double abs2(double mu) const {
        if (mu == 0.0) throw std::domain_error("r(mu): mu = 0");
        if (kind_ == Kind::Zero) return 0.0;
        if (kind_ == Kind::Model) {
            const double g = mu - 1.0 / mu;
            const double m = amp_ * std::exp(-width_ * g * g);
            return m * m;
        }
        const std::complex<double> v = eval(mu);
        return std::norm(v);
    }

    /// ln(1 - |r(mu)|^2), the density driving every Cauchy integral.
    /// Floored to avoid -inf when |r| = 1 exactly.
    double log_one_minus_abs2(double mu) const {
        const double one_minus = std::max(1.0 - abs2(mu), 1e-300);
        return std::log(one_minus);
    }

    /// d/dmu ln(1 - |r(mu)|^2). Closed form for the model family,
    /// central difference for tables.
    double dlog_one_minus_abs2(double mu) const {
        if (kind_ == Kind::Zero) return 0.0;
        if (kind_ == Kind::Model) {
            const double g = mu - 1.0 / mu;
            const double q = 2.0 * width_ * g * g;
            const double R = amp_ * amp_ * std::exp(-q);
            if (R < 1e-280) return 0.0; // R decays far faster than dq grows
            const double dq = 4.0 * width_ * g * (1.0 + 1.0 / (mu * mu));
            return R * dq / std::max(1.0 - R, 1e-300);
        }
        const double h = 1e-6 * std::max(1.0, std::fabs(mu));
        return (log_one_minus_abs2(mu + h) - log_one_minus_abs2(mu - h)) / (2.0 * h);
    }

    /// h = -ln(1 - |r(mu_j)|^2) / (2 pi) >= 0.
    double h_at(double mu_j) const {
        const double r2 = abs2(mu_j);
        if (r2 >= 1.0)
            throw SingularDataError("h_at: |r| >= 1 at the stationary point");
        return -std::log1p(-r2) / (2.0 * std::numbers::pi);
    }

    struct SymmetryReport {
        double max_defect;
        bool pass;
    };

    /// Max defect of both symmetries over a log-spaced grid (both signs).
    SymmetryReport validate_symmetries(int points = 10000) const {
        double worst = 0.0;
        const int half = points / 2;
        for (int i = 0; i < half; ++i) {
            const double e = -3.0 + 6.0 * static_cast<double>(i) / (half - 1);
            const double mu = std::pow(10.0, e);
            for (const double m : {mu, -mu}) {
                const std::complex<double> v = eval(m);
                worst = std::max(worst, std::abs(v + std::conj(eval(-m))));
                worst = std::max(worst, std::abs(v - std::conj(eval(1.0 / m))));
            }
        }
        return {worst, worst < 1e-14};
    }

private:
    enum class Kind { Zero, Model, Table };

    std::complex<double> eval_base(double mu) const {
        // mu >= 1; zero beyond the sampled range
        if (mu > grid_.back()) return 0.0;
        if (mu <= grid_.front()) return values_.front();
        const auto it = std::upper_bound(grid_.begin(), grid_.end(), mu);
        const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
        const double w = (mu - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
        return (1.0 - w) * values_[i - 1] + w * values_[i];
    }

    Kind kind_ = Kind::Zero;
    double amp_ = 0.0;
    double width_ = 1.0;
    double chirp_ = 0.0;
    std::vector<double> grid_;
    std::vector<std::complex<double>> values_;
};

} // namespace mch
