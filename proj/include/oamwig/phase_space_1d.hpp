#pragma once

// Single-oscillator phase space: wavefunctions, displacements, the pure-state
// Wigner function and its marginals.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "oamwig/errors.hpp"
#include "oamwig/quadrature.hpp"
#include "oamwig/special_functions.hpp"
#include "oamwig/wigner_value.hpp"

namespace oamwig {

struct PhasePoint {
    double x{0.0};
    double p{0.0};
};

/// PaperLiteral: (1/4pi) int psi*(x-u) psi(x+u) exp(+2ipu) du, verbatim.
/// MarginalNormalized: (1/pi) int psi*(x-u) psi(x+u) exp(-2ipu) du, whose
/// marginals are |psi(x)|^2 and |psi~(p)|^2 and which moves rigidly with
/// D(x0, p0) = exp[i(p0 x - x0 p)]. PaperLiteral(x, p) = MarginalNormalized(x, -p) / 4.
enum class WignerConvention { PaperLiteral, MarginalNormalized };

namespace detail {

// Normalized Hermite functions without their Gaussian: phi_n(z) = h_n(z) exp(-z^2/2).
inline void hermite_function_polys(cplx z, std::span<cplx> out) {
    if (out.empty()) return;
    out[0] = 1.0 / std::pow(std::numbers::pi, 0.25);
    if (out.size() > 1) out[1] = std::sqrt(2.0) * z * out[0];
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        const double kk = static_cast<double>(k);
        out[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * z * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
    }
}

}  // namespace detail

/// A complex wavefunction of one quadrature. Immutable after construction.
///
/// States built by fock() keep their Fock coefficients; the Wigner integral
/// of such a state is a polynomial times exp(-u^2) and is integrated exactly
/// by Gauss-Hermite after shifting the contour.
class WaveFunction1D {
public:
    using Evaluator = std::function<cplx(double)>;

    WaveFunction1D(Evaluator evaluator, double domain_halfwidth, bool normalized)
        : eval_(std::make_shared<Evaluator>(std::move(evaluator))),
          halfwidth_(domain_halfwidth),
          normalized_(normalized) {
        if (!(domain_halfwidth > 0.0)) throw PreconditionError("WaveFunction1D: domain_halfwidth must be > 0");
        if (normalized_) {
            const double norm = norm_squared();
            if (std::abs(norm - 1.0) > 1e-8)
                throw PreconditionError("WaveFunction1D: state marked normalized has norm^2 = " + std::to_string(norm));
        }
    }

    /// sum_n c_n phi_n(x), renormalized to unit norm.
    static WaveFunction1D fock(std::vector<cplx> coeffs) {
        if (coeffs.empty()) throw PreconditionError("WaveFunction1D::fock: empty coefficient list");
        if (coeffs.size() > static_cast<std::size_t>(kMaxHermiteOrder) + 1)
            throw OrderBoundError("WaveFunction1D::fock: too many Fock levels");
        double norm = 0.0;
        for (const auto& c : coeffs) norm += std::norm(c);
        if (!(norm > 0.0)) throw PreconditionError("WaveFunction1D::fock: zero state");
        for (auto& c : coeffs) c /= std::sqrt(norm);

        auto shared = std::make_shared<const std::vector<cplx>>(std::move(coeffs));
        const double n_max = static_cast<double>(shared->size() - 1);
        Evaluator ev = [shared](double x) { return fock_eval(*shared, cplx(x, 0.0)); };
        WaveFunction1D psi(std::move(ev), std::sqrt(2.0 * n_max + 1.0) + 8.0, true);
        psi.fock_ = shared;
        return psi;
    }

    cplx operator()(double x) const { return (*eval_)(x); }

    double domain_halfwidth() const noexcept { return halfwidth_; }
    bool normalized() const noexcept { return normalized_; }
    bool has_fock_form() const noexcept { return fock_ != nullptr; }

    const std::vector<cplx>& fock_coefficients() const {
        if (!fock_) throw PreconditionError("WaveFunction1D: no Fock form");
        return *fock_;
    }

    /// Polynomial factor P(z) of psi(z) = P(z) exp(-z^2/2), analytically continued.
    /// With conjugate = true the coefficients are conjugated, giving the continuation of psi*.
    cplx fock_polynomial(cplx z, bool conjugate) const {
        const auto& c = fock_coefficients();
        std::vector<cplx> h(c.size());
        detail::hermite_function_polys(z, h);
        cplx acc{};
        for (std::size_t n = 0; n < c.size(); ++n) acc += (conjugate ? std::conj(c[n]) : c[n]) * h[n];
        return acc;
    }

    double norm_squared() const {
        const auto rule = gauss_legendre(400, -halfwidth_, halfwidth_);
        return integrate(rule, [this](double x) { return std::norm((*this)(x)); });
    }

private:
    static cplx fock_eval(const std::vector<cplx>& c, cplx z) {
        std::vector<cplx> h(c.size());
        detail::hermite_function_polys(z, h);
        cplx acc{};
        for (std::size_t n = 0; n < c.size(); ++n) acc += c[n] * h[n];
        return acc * std::exp(-0.5 * z * z);
    }

    std::shared_ptr<const Evaluator> eval_;
    double halfwidth_;
    bool normalized_;
    std::shared_ptr<const std::vector<cplx>> fock_;
};

/// psi'(x) = exp[i p0 (x - x0/2)] psi(x - x0), the action of D(x0, p0) = exp[i(p0 x - x0 p)].
/// D(a, b) D(x0, p0) = exp[i (b x0 - a p0) / 2] D(x0 + a, p0 + b).
inline WaveFunction1D displace(const WaveFunction1D& psi, double x0, double p0) {
    if (x0 == 0.0 && p0 == 0.0) return psi;
    auto ev = [psi, x0, p0](double x) { return std::exp(cplx(0.0, p0 * (x - 0.5 * x0))) * psi(x - x0); };
    return WaveFunction1D(ev, psi.domain_halfwidth() + std::abs(x0), psi.normalized());
}

/// Wigner function with its quadrature residue. Throws NumericalError when the
/// residue exceeds kImagResidueLimit.
inline WignerValue wigner_1d_detailed(const WaveFunction1D& psi, PhasePoint at, const QuadratureRule& rule,
                                      WignerConvention convention = WignerConvention::MarginalNormalized) {
    if (rule.order < 32) throw PreconditionError("wigner_1d: quadrature order must be >= 32");
    if (!psi.normalized()) throw PreconditionError("wigner_1d: state must be normalized");

    // Everything below computes I(x, q) = int psi*(x-u) psi(x+u) exp(-2iqu) du.
    const double x = at.x;
    const double q = convention == WignerConvention::MarginalNormalized ? at.p : -at.p;
    const double prefactor =
        convention == WignerConvention::MarginalNormalized ? 1.0 / std::numbers::pi : 0.25 / std::numbers::pi;

    cplx integral{};
    if (rule.kind == QuadratureKind::GaussHermite && psi.has_fock_form()) {
        const int degree = static_cast<int>(psi.fock_coefficients().size()) - 1;
        if (2 * degree > rule.exactness_degree())
            throw PreconditionError("wigner_1d: Gauss-Hermite order too low for the Fock content of the state");
        // u = t - iq removes the oscillation; the integrand becomes P*(x-u) P(x+u) exp(-t^2).
        integral = integrate(rule, [&](double t) {
            return psi.fock_polynomial(cplx(x - t, q), true) * psi.fock_polynomial(cplx(x + t, -q), false);
        });
        integral *= std::exp(-x * x - q * q);
    } else {
        integral = integrate_real_line(rule, [&](double u) {
            return std::conj(psi(x - u)) * psi(x + u) * std::exp(cplx(0.0, -2.0 * q * u));
        });
    }
    integral *= prefactor;
    const WignerValue out{integral.real(), std::abs(integral.imag())};
    if (out.imag_residue > kImagResidueLimit)
        throw NumericalError("wigner_1d: imaginary quadrature residue " + std::to_string(out.imag_residue) +
                             " exceeds limit; increase the rule order");
    return out;
}

inline double wigner_1d(const WaveFunction1D& psi, PhasePoint at, const QuadratureRule& rule,
                        WignerConvention convention = WignerConvention::MarginalNormalized) {
    return wigner_1d_detailed(psi, at, rule, convention).value;
}

enum class Axis { X, P };

namespace detail {

inline QuadratureRule inner_rule_for(const WaveFunction1D& psi) {
    if (psi.has_fock_form())
        return gauss_hermite(std::max<int>(48, static_cast<int>(psi.fock_coefficients().size()) + 8));
    return gauss_legendre(256, -psi.domain_halfwidth(), psi.domain_halfwidth());
}

inline void check_edge_decay(double edge_value, const char* what) {
    if (std::abs(edge_value) > 1e-12)
        throw NumericalError(std::string(what) + ": integrand has not decayed below 1e-12 at the domain edge");
}

}  // namespace detail

/// Integral of the (marginal-normalized) Wigner function over the axis
/// complementary to `axis`, at `value` on `axis`.
inline double marginal_1d(const WaveFunction1D& psi, Axis axis, double value) {
    const double L = psi.domain_halfwidth();
    const auto inner = detail::inner_rule_for(psi);
    const auto outer = gauss_legendre(192, -L, L);
    auto w = [&](double other) {
        const PhasePoint pt = axis == Axis::X ? PhasePoint{value, other} : PhasePoint{other, value};
        return wigner_1d(psi, pt, inner);
    };
    detail::check_edge_decay(w(-L), "marginal_1d");
    detail::check_edge_decay(w(L), "marginal_1d");
    return integrate(outer, w);
}

struct TracialityPair {
    double lhs{0.0};  ///< |<psi1|psi2>|^2
    double rhs{0.0};  ///< 2 pi * int int W1 W2 dx dp
};

inline constexpr double kTracialityConstant = 2.0 * std::numbers::pi;

inline TracialityPair overlap_traciality(const WaveFunction1D& psi1, const WaveFunction1D& psi2) {
    const double L = std::max(psi1.domain_halfwidth(), psi2.domain_halfwidth());
    const auto line = gauss_legendre(400, -L, L);
    const cplx overlap = integrate(line, [&](double x) { return std::conj(psi1(x)) * psi2(x); });

    const auto inner1 = detail::inner_rule_for(psi1);
    const auto inner2 = detail::inner_rule_for(psi2);
    auto product = [&](double x, double p) {
        return wigner_1d(psi1, {x, p}, inner1) * wigner_1d(psi2, {x, p}, inner2);
    };
    detail::check_edge_decay(product(L, 0.0), "overlap_traciality");
    detail::check_edge_decay(product(0.0, L), "overlap_traciality");

    // W1 W2 is a Gaussian times a polynomial of degree 2 (d1 + d2) per axis;
    // the rule grows with that degree and with the width of [-L, L].
    auto degree = [](const WaveFunction1D& psi) {
        return psi.has_fock_form() ? static_cast<int>(psi.fock_coefficients().size()) - 1 : 16;
    };
    const double wanted = 96.0 + 4.0 * (degree(psi1) + degree(psi2)) + 4.0 * L;
    const auto plane = gauss_legendre(64 * static_cast<int>(std::ceil(wanted / 64.0)), -L, L);
    double acc = 0.0;
    for (std::size_t i = 0; i < plane.nodes.size(); ++i)
        for (std::size_t j = 0; j < plane.nodes.size(); ++j)
            acc += plane.weights[i] * plane.weights[j] * product(plane.nodes[i], plane.nodes[j]);
    return {std::norm(overlap), kTracialityConstant * acc};
}

}  // namespace oamwig
