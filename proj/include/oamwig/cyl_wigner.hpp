#pragma once

// Cylindrical Wigner function W(r, phi, l) of a two-mode state,
//
//   W(r, phi, l) = 4 int Psi*(r - i r', phi) Psi(r + i r', phi) exp(2 i l r' / r) dr',
//
// with Psi the entangled-representation wavefunction, and its marginals.
//
// Every truncated Fock state has Psi = exp(-|xi|^2/2) x polynomial, so the
// integrand is exp(-r^2 - r'^2 + 2 i a r') Q(r') with a = l/r and Q a
// polynomial of degree <= 2D (D = largest n_+ + n_-). Shifting r' = t + i a
// leaves exp(-r^2 - a^2) int exp(-t^2) Q(t + i a) dt, which Gauss-Hermite with
// D + 1 or more nodes integrates exactly. Symmetric nodes +-t give complex
// conjugate terms, so the sum is real up to rounding.
//
// For large |a| relative to the Fock content the shifted terms grow like
// a^{2D} exp(-a^2) while W stays O(1), and the sum cancels. Those points are
// evaluated on the real line instead (see wigner_cyl_real_line).

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "oamwig/entangled_rep.hpp"
#include "oamwig/errors.hpp"
#include "oamwig/parallel.hpp"
#include "oamwig/quadrature.hpp"
#include "oamwig/two_mode.hpp"
#include "oamwig/wigner_value.hpp"

namespace oamwig {

/// Grids never contain r = 0, where l / r is singular.
inline constexpr double kDefaultRMin = 1e-3;
/// Lower cutoff of the radial integral in marginal_angle_oam.
inline constexpr double kRadialCutoff = 1e-9;
/// Theoretical ratio between wigner_cyl and the p_r-integrated Cartesian Wigner
/// function (4 pi^2). Tests and the CLI measure it rather than assume it.
inline constexpr double kOracleScale = 4.0 * std::numbers::pi * std::numbers::pi;

struct CylPoint {
    double r;
    double phi;
    int ell;

    CylPoint(double r_, double phi_, int ell_) : r(r_), phi(wrap_angle(phi_)), ell(ell_) {
        if (!(r_ > 0.0) || !std::isfinite(r_)) throw PreconditionError("CylPoint: r must be > 0 (r = 0 is excluded)");
    }
};

struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string message) { warnings.push_back(std::move(message)); }
};

/// Gauss-Hermite rule with max_total_quanta + 4 nodes, exact for wigner_cyl.
inline QuadratureRule default_cyl_rule(const TwoModeFock& s) { return gauss_hermite(s.max_total_quanta() + 4); }

namespace detail {

inline void check_cyl_rule(const QuadratureRule& rule, int degree) {
    if (rule.kind != QuadratureKind::GaussHermite)
        throw PreconditionError("wigner_cyl: a Gauss-Hermite rule is required");
    if (2 * degree > rule.exactness_degree())
        throw PreconditionError("wigner_cyl: polynomial degree " + std::to_string(2 * degree) +
                                " exceeds the exactness bound " + std::to_string(rule.exactness_degree()) +
                                " of a " + std::to_string(rule.order) + "-node Gauss-Hermite rule");
}

// Upper bound for log|W|; below about -800 the value is an exact zero in double.
inline double log_magnitude_bound(const TwoModeFock& s, double r, double a, double t_max, int degree) {
    double coeff_sum = 0.0;
    for (const auto& e : s.support()) coeff_sum += std::abs(e.c);
    const double R = std::abs(r) + std::abs(a) + t_max + 1.0;
    return std::log(4.0 * std::sqrt(std::numbers::pi)) - r * r - a * a +
           2.0 * (std::log(std::max(coeff_sum, 1e-300)) + degree * std::log(R) + std::lgamma(degree + 1.0));
}

// Gauss-Legendre rules on [-1, 1], cached by order.
inline const QuadratureRule& unit_legendre(int order) {
    static std::mutex mutex;
    static std::map<int, QuadratureRule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order, -1.0, 1.0)).first;
    return it->second;
}

// Largest tolerated ratio between the summed term magnitudes and max(1, |W|)
// in the shifted evaluation; beyond it rounding exceeds ~1e-13.
inline constexpr double kShiftCancellationLimit = 1e3;

inline WignerValue checked(cplx acc, const char* path) {
    const WignerValue out{acc.real(), std::abs(acc.imag())};
    if (out.imag_residue > kImagResidueLimit * std::max(1.0, std::abs(out.value)))
        throw NumericalError(std::string("wigner_cyl: imaginary residue ") + std::to_string(out.imag_residue) +
                             " exceeds the symmetric-pairing limit (" + path + ")");
    return out;
}

// Unshifted integral over real r' with u = r + i r', v = r - i r'. The
// integrand is bounded by |Psi|^2 so nothing cancels, but exp(2 i a r')
// oscillates and the rule grows with |a|.
inline WignerValue wigner_cyl_real_line(const EntangledPolynomial& poly, double r, double a) {
    const double T = std::sqrt(2.0 * poly.degree() + 1.0) + 8.0;
    const double wanted = 96.0 + 4.0 * poly.degree() + 4.0 * std::abs(a) * T;
    if (wanted > kMaxLegendreRuleOrder)
        throw NumericalError("wigner_cyl: |l|/r = " + std::to_string(a) + " too large for the real-line fallback");
    const int order = 64 * static_cast<int>(std::ceil(wanted / 64.0));
    const auto& rule = unit_legendre(order);
    cplx acc{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double rp = T * rule.nodes[k];
        const double half_envelope = std::exp(-0.5 * (r * r + rp * rp));
        const auto pq = poly(cplx(r, rp), cplx(r, -rp));
        acc += rule.weights[k] * std::polar(1.0, 2.0 * a * rp) * ((half_envelope * pq.conjugate) * (half_envelope * pq.value));
    }
    return checked(4.0 * T * acc, "real-line");
}

inline WignerValue wigner_cyl_with(const TwoModeFock& s, const EntangledPolynomial& poly, double r, int ell,
                                   const QuadratureRule& rule) {
    const double a = ell / r;
    const double t_max = rule.nodes.empty() ? 0.0 : std::abs(rule.nodes.front());
    if (log_magnitude_bound(s, r, a, t_max, poly.degree()) < -800.0) return {0.0, 0.0};

    // exp(-(r^2 + a^2)) is split evenly over the two polynomial factors.
    const double half_envelope = std::exp(-0.5 * (r * r + a * a));
    cplx acc{};
    double magnitude = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double t = rule.nodes[k];
        const auto pq = poly(cplx(r - a, t), cplx(r + a, -t));
        const cplx term = rule.weights[k] * ((half_envelope * pq.conjugate) * (half_envelope * pq.value));
        acc += term;
        magnitude += std::abs(term);
    }
    acc *= 4.0;
    magnitude *= 4.0;
    if (magnitude > kShiftCancellationLimit * std::max(1.0, std::abs(acc.real())))
        return wigner_cyl_real_line(poly, r, a);
    return checked(acc, "shifted");
}

}  // namespace detail

inline WignerValue wigner_cyl_detailed(const TwoModeFock& s, const CylPoint& at, const QuadratureRule& rule) {
    detail::require_normalized(s, "wigner_cyl");
    const EntangledPolynomial poly(s, at.phi);
    detail::check_cyl_rule(rule, poly.degree());
    return detail::wigner_cyl_with(s, poly, at.r, at.ell, rule);
}

inline double wigner_cyl(const TwoModeFock& s, const CylPoint& at, const QuadratureRule& rule) {
    return wigner_cyl_detailed(s, at, rule).value;
}

inline double wigner_cyl(const TwoModeFock& s, const CylPoint& at) {
    return wigner_cyl(s, at, default_cyl_rule(s));
}

/// Values of W on the tensor grid r x phi x l.
struct CylGrid {
    std::vector<double> r_nodes;
    std::vector<double> phi_nodes;
    std::vector<int> ell_values;
    std::vector<double> values;  ///< index ((i_r * n_phi) + i_phi) * n_ell + i_ell

    std::size_t index(std::size_t ir, std::size_t iphi, std::size_t iell) const noexcept {
        return (ir * phi_nodes.size() + iphi) * ell_values.size() + iell;
    }
    double at(std::size_t ir, std::size_t iphi, std::size_t iell) const { return values.at(index(ir, iphi, iell)); }
};

/// n uniformly spaced radii from r_min to r_max inclusive (just r_min when n == 1).
inline std::vector<double> radial_nodes(double r_min, double r_max, int n) {
    if (n < 1) throw PreconditionError("radial_nodes: need at least one node");
    if (!(r_min > 0.0)) throw PreconditionError("radial_nodes: r_min must be > 0 (r = 0 is excluded)");
    if (n > 1 && !(r_max > r_min)) throw PreconditionError("radial_nodes: need r_max > r_min");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? r_min : r_min + (r_max - r_min) * i / (n - 1);
    return out;
}

/// k * 2 pi / n for k = 0 .. n-1.
inline std::vector<double> angular_nodes(int n) {
    if (n < 1) throw PreconditionError("angular_nodes: need at least one node");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) out[k] = 2.0 * std::numbers::pi * k / n;
    return out;
}

inline CylGrid wigner_cyl_grid(const TwoModeFock& s, std::vector<double> r_nodes, std::vector<double> phi_nodes,
                               std::vector<int> ell_values, const QuadratureRule& rule,
                               unsigned threads = default_thread_count()) {
    detail::require_normalized(s, "wigner_cyl_grid");
    if (r_nodes.empty() || phi_nodes.empty() || ell_values.empty())
        throw PreconditionError("wigner_cyl_grid: r, phi and ell axes must be non-empty");
    for (std::size_t i = 0; i < r_nodes.size(); ++i) {
        if (!(r_nodes[i] > 0.0)) throw PreconditionError("wigner_cyl_grid: all r must be > 0 (r = 0 is excluded)");
        if (i > 0 && !(r_nodes[i] > r_nodes[i - 1]))
            throw PreconditionError("wigner_cyl_grid: r nodes must be ascending");
    }
    for (auto& phi : phi_nodes) phi = wrap_angle(phi);

    std::vector<EntangledPolynomial> polys;
    polys.reserve(phi_nodes.size());
    for (double phi : phi_nodes) polys.emplace_back(s, phi);
    detail::check_cyl_rule(rule, polys.front().degree());

    CylGrid grid{std::move(r_nodes), std::move(phi_nodes), std::move(ell_values), {}};
    grid.values.resize(grid.r_nodes.size() * grid.phi_nodes.size() * grid.ell_values.size());
    const std::size_t per_r = grid.phi_nodes.size() * grid.ell_values.size();
    parallel_for(
        grid.values.size(),
        [&](std::size_t idx) {
            const std::size_t ir = idx / per_r;
            const std::size_t iphi = (idx % per_r) / grid.ell_values.size();
            const std::size_t iell = idx % grid.ell_values.size();
            grid.values[idx] = detail::wigner_cyl_with(s, polys[iphi], grid.r_nodes[ir], grid.ell_values[iell], rule).value;
        },
        threads);
    return grid;
}

/// Default radial rule for marginal_angle_oam: 192-node Legendre on
/// [kRadialCutoff, sqrt(2D + 1) + 7].
inline QuadratureRule default_radial_rule(const TwoModeFock& s) {
    return gauss_legendre_mapped(192, kRadialCutoff, std::sqrt(2.0 * s.max_total_quanta() + 1.0) + 7.0);
}

/// int_0^inf W(r, phi, l) dr over the radial rule's interval (plain dr).
/// A tail value above 1e-12 at the outer end is reported in `diag`.
inline double marginal_angle_oam(const TwoModeFock& s, double phi, int ell, const QuadratureRule& radial_rule,
                                 Diagnostics* diag = nullptr) {
    detail::require_normalized(s, "marginal_angle_oam");
    if (radial_rule.kind != QuadratureKind::GaussLegendreMapped || !radial_rule.map_params)
        throw PreconditionError("marginal_angle_oam: a mapped Gauss-Legendre radial rule is required");
    const auto [r_lo, r_hi] = *radial_rule.map_params;
    if (!(r_lo > 0.0)) throw PreconditionError("marginal_angle_oam: radial rule must exclude r = 0");

    const EntangledPolynomial poly(s, wrap_angle(phi));
    const auto rule = default_cyl_rule(s);
    auto w = [&](double r) { return detail::wigner_cyl_with(s, poly, r, ell, rule).value; };

    const double tail = std::abs(w(r_hi));
    if (tail > 1e-12 && diag)
        diag->warn("marginal_angle_oam: integrand " + std::to_string(tail) + " at r_max = " + std::to_string(r_hi) +
                   " exceeds 1e-12 (tail truncated)");
    return integrate(radial_rule, w);
}

inline double marginal_angle_oam(const TwoModeFock& s, double phi, int ell, Diagnostics* diag = nullptr) {
    return marginal_angle_oam(s, phi, ell, default_radial_rule(s), diag);
}

/// sum_{|l| <= ell_max} int_0^{2 pi} W(r, phi, l) dphi. W is a trigonometric
/// polynomial of degree <= 2D in phi, so a uniform rule with 4D + 8 points is exact.
/// Throws when the |l| = ell_max terms still contribute 1e-10 or more relative.
inline double marginal_radial(const TwoModeFock& s, double r, int ell_max) {
    detail::require_normalized(s, "marginal_radial");
    if (!(r > 0.0)) throw PreconditionError("marginal_radial: r must be > 0");
    if (ell_max < 0) throw PreconditionError("marginal_radial: ell_max must be >= 0");

    const auto rule = default_cyl_rule(s);
    const int n_phi = 4 * s.max_total_quanta() + 8;
    const auto phis = angular_nodes(n_phi);
    std::vector<EntangledPolynomial> polys;
    polys.reserve(phis.size());
    for (double phi : phis) polys.emplace_back(s, phi);

    auto ring = [&](int ell) {
        double acc = 0.0;
        for (const auto& poly : polys) acc += detail::wigner_cyl_with(s, poly, r, ell, rule).value;
        return acc * 2.0 * std::numbers::pi / n_phi;
    };
    double total = 0.0;
    for (int ell = -ell_max; ell <= ell_max; ++ell) total += ring(ell);
    const double edge = ell_max == 0 ? ring(0) : ring(ell_max) + ring(-ell_max);
    if (ell_max == 0 || std::abs(edge) >= 1e-10 * std::abs(total))
        throw NumericalError("marginal_radial: ell_max = " + std::to_string(ell_max) +
                             " too small, the outermost ring contributes " + std::to_string(edge));
    return total;
}

/// int W4(x, p_x, y, p_y) dp_r along the line x = r cos phi, y = r sin phi,
/// p_x = p_r cos phi - (l/r) sin phi, p_y = p_r sin phi + (l/r) cos phi.
/// Independent of the entangled representation: uses the displaced-parity
/// Cartesian Wigner function only.
inline double oracle_cyl_from_cartesian(const TwoModeFock& s, const CylPoint& at, const QuadratureRule& pr_rule,
                                        Diagnostics* diag = nullptr) {
    detail::require_normalized(s, "oracle_cyl_from_cartesian");
    const double c = std::cos(at.phi), sn = std::sin(at.phi);
    const double lr = at.ell / at.r;
    auto w4 = [&](double pr) {
        return wigner_4d(s, {at.r * c, pr * c - lr * sn, at.r * sn, pr * sn + lr * c});
    };
    if (pr_rule.kind == QuadratureKind::GaussLegendreMapped && pr_rule.map_params) {
        const auto [lo, hi] = *pr_rule.map_params;
        const double tail = std::max(std::abs(w4(lo)), std::abs(w4(hi)));
        if (tail > 1e-12 && diag) diag->warn("oracle_cyl_from_cartesian: p_r tail " + std::to_string(tail) + " > 1e-12");
    } else if (pr_rule.kind == QuadratureKind::GaussHermite && pr_rule.order < s.max_total_quanta() + 1 && diag) {
        diag->warn("oracle_cyl_from_cartesian: Gauss-Hermite order below max_total_quanta + 1, not exact");
    }
    return integrate_real_line(pr_rule, w4);
}

inline double oracle_cyl_from_cartesian(const TwoModeFock& s, const CylPoint& at, Diagnostics* diag = nullptr) {
    return oracle_cyl_from_cartesian(s, at, gauss_hermite(s.max_total_quanta() + 8), diag);
}

}  // namespace oamwig
