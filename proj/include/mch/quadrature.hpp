#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <type_traits>
#include <vector>

#include "mch/errors.hpp"

namespace mch {

/// Tolerances and mesh controls for the adaptive Cauchy-integral
/// quadratures. grading_exponent steers the u^p endpoint substitution used
/// where an integrand has an integrable logarithmic singularity.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_subdivisions = 5000;
    int grading_exponent = 3;
};

namespace detail {

// Gauss 7 / Kronrod 15 abscissae and weights on [-1, 1].
inline constexpr double gk_nodes[8] = {
    0.000000000000000000000000000000000,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
inline constexpr double k15_weights[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
inline constexpr double g7_weights[8] = {
    0.417959183673469387755102040816327, 0.0,
    0.381830050505118944950369775488975, 0.0,
    0.279705391489276667901467771423780, 0.0,
    0.129484966168869693270611432679082, 0.0,
};

template <typename T>
double norm_of(const T& v) {
    if constexpr (std::is_same_v<T, std::complex<double>>)
        return std::abs(v);
    else
        return std::fabs(v);
}

template <typename F>
auto gk15(F&& f, double a, double b, double& err)
    -> std::invoke_result_t<F, double> {
    using R = std::invoke_result_t<F, double>;
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    R g7 = R{};
    R k15 = R{};
    const R f0 = f(c);
    g7 += g7_weights[0] * f0;
    k15 += k15_weights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk_nodes[i];
        const R fi = f(c + dx) + f(c - dx);
        k15 += k15_weights[i] * fi;
        if ((i & 1) == 0) g7 += g7_weights[i] * fi;
    }
    g7 = g7 * half;
    k15 = k15 * half;
    const double diff = norm_of<R>(k15 - g7);
    err = 200.0 * diff * std::sqrt(200.0 * diff);
    return k15;
}

template <typename R>
struct Segment {
    double a, b, err;
    R value;
    bool operator<(const Segment& o) const { return err < o.err; }
};

} // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b]. The worst segment
/// is split until the accumulated error estimate meets the spec, or
/// max_subdivisions is exhausted (AccuracyError). Works for double- and
/// complex-valued integrands.
template <typename F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {})
    -> std::invoke_result_t<F, double> {
    using R = std::invoke_result_t<F, double>;
    if (a == b) return R{};
    double err0 = 0.0;
    std::priority_queue<detail::Segment<R>> heap;
    R total = detail::gk15(f, a, b, err0);
    double total_err = err0;
    heap.push({a, b, err0, total});
    int splits = 0;
    while (total_err > std::max(spec.abs_tol,
                                spec.rel_tol * detail::norm_of<R>(total))) {
        if (splits++ >= spec.max_subdivisions)
            throw AccuracyError("integrate: subdivision limit reached");
        const auto seg = heap.top();
        heap.pop();
        const double mid = 0.5 * (seg.a + seg.b);
        if (mid <= seg.a || mid >= seg.b)
            throw AccuracyError("integrate: interval collapsed below machine precision");
        double el = 0.0, er = 0.0;
        const R left = detail::gk15(f, seg.a, mid, el);
        const R right = detail::gk15(f, mid, seg.b, er);
        total = total - seg.value + left + right;
        total_err += el + er - seg.err;
        heap.push({seg.a, mid, el, left});
        heap.push({mid, seg.b, er, right});
    }
    return total;
}

/// Same as integrate(), but with a graded u^p substitution toward one or
/// both endpoints. Used where ln(1-|r|^2) has an integrable log blow-up
/// (the |r(1)| = 1 regime): the substitution makes the transformed
/// integrand vanish at the singular end.
template <typename F>
auto integrate_graded(F&& f, double a, double b, bool grade_left,
                      bool grade_right, const QuadratureSpec& spec = {})
    -> std::invoke_result_t<F, double> {
    using R = std::invoke_result_t<F, double>;
    if (a == b) return R{};
    const double p = std::max(1, spec.grading_exponent);
    if (grade_left && grade_right) {
        const double mid = 0.5 * (a + b);
        return integrate_graded(f, a, mid, true, false, spec) +
               integrate_graded(f, mid, b, false, true, spec);
    }
    if (grade_left) {
        const double len = b - a;
        auto g = [&](double u) -> R {
            const double s = a + len * std::pow(u, p);
            return f(s) * (p * len * std::pow(u, p - 1.0));
        };
        return integrate(g, 0.0, 1.0, spec);
    }
    if (grade_right) {
        const double len = b - a;
        auto g = [&](double u) -> R {
            const double s = b - len * std::pow(u, p);
            return f(s) * (p * len * std::pow(u, p - 1.0));
        };
        return integrate(g, 0.0, 1.0, spec);
    }
    return integrate(f, a, b, spec);
}

/// Integrate over (a, b) treating every point of `log_points` that lies
/// in [a, b] (endpoints included) as a log-singular location: the interval
/// is split there and graded toward it.
template <typename F>
auto integrate_with_log_points(F&& f, double a, double b,
                               const std::vector<double>& log_points,
                               const QuadratureSpec& spec = {})
    -> std::invoke_result_t<F, double> {
    using R = std::invoke_result_t<F, double>;
    std::vector<double> cuts;
    for (double p : log_points)
        if (p >= a && p <= b) cuts.push_back(p);
    if (cuts.empty()) return integrate(f, a, b, spec);
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> nodes{a};
    for (double c : cuts)
        if (c > nodes.back()) nodes.push_back(c);
    if (b > nodes.back()) nodes.push_back(b);
    R sum{};
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const bool gl = std::find(cuts.begin(), cuts.end(), nodes[i]) != cuts.end();
        const bool gr = std::find(cuts.begin(), cuts.end(), nodes[i + 1]) != cuts.end();
        sum += integrate_graded(f, nodes[i], nodes[i + 1], gl, gr, spec);
    }
    return sum;
}

} // namespace mch
