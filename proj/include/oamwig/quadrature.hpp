#pragma once

// Gaussian quadrature rules. Nodes are eigenvalues of the Jacobi matrix
// (Golub-Welsch), then polished by Newton steps on the three-term recurrence;
// weights are Christoffel numbers evaluated at the polished nodes.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "oamwig/errors.hpp"

namespace oamwig {

enum class QuadratureKind { GaussHermite, GaussLegendreMapped };

struct QuadratureRule {
    QuadratureKind kind{QuadratureKind::GaussHermite};
    int order{0};
    std::vector<double> nodes;
    std::vector<double> weights;
    /// Integration interval for mapped Legendre rules.
    std::optional<std::pair<double, double>> map_params;

    /// Highest polynomial degree integrated exactly against the rule's weight.
    int exactness_degree() const noexcept { return 2 * order - 1; }
};

inline constexpr int kMaxHermiteRuleOrder = 200;
inline constexpr int kMaxLegendreRuleOrder = 4000;

namespace detail {

inline std::vector<double> jacobi_eigenvalues(const std::vector<double>& off_diagonal, int order) {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int k = 0; k + 1 < order; ++k) sub[k] = off_diagonal[static_cast<std::size_t>(k)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("Jacobi matrix eigensolver did not converge");
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

/// Makes nodes/weights exactly antisymmetric/symmetric about zero.
inline void symmetrize(std::vector<double>& nodes, std::vector<double>& weights) {
    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const std::size_t j = n - 1 - i;
        const double x = 0.5 * (nodes[j] - nodes[i]);
        const double w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = weights[j] = w;
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

// Orthonormal Hermite polynomials h_k for weight exp(-t^2); returns
// (h_n, h_{n-1}, sum_{k<n} h_k^2).
struct HermiteEval {
    double hn, hn1, christoffel_sum;
};

inline HermiteEval hermite_orthonormal(int n, double t) {
    double prev = 0.0;
    double cur = 1.0 / std::pow(std::numbers::pi, 0.25);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        sum += cur * cur;
        const double next = std::sqrt(2.0 / (k + 1.0)) * t * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return {cur, prev, sum};
}

struct LegendreEval {
    double pn, dpn;
};

inline LegendreEval legendre(int n, double x) {
    double prev = 1.0, cur = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0) * x * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return {cur, n * (x * cur - prev) / (x * x - 1.0)};
}

}  // namespace detail

/// Gauss-Hermite rule for weight exp(-t^2) on the real line.
inline QuadratureRule gauss_hermite(int order) {
    if (order < 1 || order > kMaxHermiteRuleOrder)
        throw PreconditionError("gauss_hermite: order must be in [1, " + std::to_string(kMaxHermiteRuleOrder) + "]");

    std::vector<double> beta(static_cast<std::size_t>(order));
    for (int k = 1; k < order; ++k) beta[k - 1] = std::sqrt(k / 2.0);
    std::vector<double> nodes = detail::jacobi_eigenvalues(beta, order);
    std::vector<double> weights(nodes.size());

    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double t = nodes[i];
        for (int it = 0; it < 4; ++it) {
            const auto h = detail::hermite_orthonormal(order, t);
            const double step = h.hn / (std::sqrt(2.0 * order) * h.hn1);
            t -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(t))) break;
        }
        nodes[i] = t;
        weights[i] = 1.0 / detail::hermite_orthonormal(order, t).christoffel_sum;
    }
    detail::symmetrize(nodes, weights);
    return {QuadratureKind::GaussHermite, order, std::move(nodes), std::move(weights), std::nullopt};
}

/// Gauss-Legendre rule affinely mapped onto [a, b].
inline QuadratureRule gauss_legendre(int order, double a, double b) {
    if (order < 1 || order > kMaxLegendreRuleOrder)
        throw PreconditionError("gauss_legendre: order must be in [1, " + std::to_string(kMaxLegendreRuleOrder) + "]");
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw PreconditionError("gauss_legendre: need finite a < b");

    std::vector<double> beta(static_cast<std::size_t>(order));
    for (int k = 1; k < order; ++k) beta[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    std::vector<double> nodes = detail::jacobi_eigenvalues(beta, order);
    std::vector<double> weights(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double x = nodes[i];
        for (int it = 0; it < 4 && order > 1; ++it) {
            const auto p = detail::legendre(order, x);
            const double step = p.pn / p.dpn;
            x -= step;
            if (std::abs(step) < 1e-16) break;
        }
        nodes[i] = x;
        const auto p = detail::legendre(order, x);
        weights[i] = order == 1 ? 2.0 : 2.0 / ((1.0 - x * x) * p.dpn * p.dpn);
    }
    detail::symmetrize(nodes, weights);

    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (b + a);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        nodes[i] = mid + half * nodes[i];
        weights[i] *= half;
    }
    return {QuadratureKind::GaussLegendreMapped, order, std::move(nodes), std::move(weights), std::make_pair(a, b)};
}

/// Legendre rule on a radial interval; r = 0 is never part of the domain.
inline QuadratureRule gauss_legendre_mapped(int order, double r_min, double r_max) {
    if (!(r_min > 0.0)) throw PreconditionError("gauss_legendre_mapped: r_min must be > 0 (r = 0 is excluded)");
    if (!(r_min < r_max)) throw PreconditionError("gauss_legendre_mapped: need r_min < r_max");
    return gauss_legendre(order, r_min, r_max);
}

/// Integral over the rule's natural domain of f against its weight function
/// (exp(-t^2) for Hermite, 1 for Legendre).
template <typename F>
auto integrate(const QuadratureRule& rule, F&& f) {
    using R = decltype(f(0.0));
    R acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
    return acc;
}

/// Plain integral of f over the real line. For Hermite rules the Gaussian is
/// divided out of f node by node, so f must decay at least like exp(-t^2).
template <typename F>
auto integrate_real_line(const QuadratureRule& rule, F&& f) {
    using R = decltype(f(0.0));
    R acc{};
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double w = rule.kind == QuadratureKind::GaussHermite ? rule.weights[i] * std::exp(t * t) : rule.weights[i];
        acc += w * f(t);
    }
    return acc;
}

}  // namespace oamwig
