#pragma once

// Entangled-state representation of two-mode states.
//
// |xi> = exp(-|xi|^2/2 + xi a_+^dag + xi* a_-^dag - a_+^dag a_-^dag)|0,0>
//      = exp(-|xi|^2/2) sum H_{n+,n-}(xi, xi*) / sqrt(n+! n-!) |n+, n->,
// a joint eigenstate of a_+ + a_-^dag (eigenvalue xi). Wavefunctions are
// Psi(xi, phi) = <xi e^{-i phi}|Psi> = <xi| e^{i phi L} |Psi>, normalized as
// (1/pi) int |Psi|^2 d^2 xi = <Psi|Psi>.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "oamwig/errors.hpp"
#include "oamwig/special_functions.hpp"
#include "oamwig/two_mode.hpp"

namespace oamwig {

/// Reduces an angle to [0, 2 pi).
inline double wrap_angle(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(phi, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

struct EntangledArg {
    cplx xi;
    double phi;

    EntangledArg(cplx xi_, double phi_) : xi(xi_), phi(wrap_angle(phi_)) {
        if (!std::isfinite(xi.real()) || !std::isfinite(xi.imag()))
            throw PreconditionError("EntangledArg: xi must be finite");
    }
};

/// <xi | n_+, n_-> = exp(-|xi|^2/2) H_{n-,n+}(xi, xi*) / sqrt(n+! n-!).
/// The bra conjugates the ket coefficient H_{n+,n-}; conj(H_{m,n}) = H_{n,m}.
inline cplx xi_fock_overlap(cplx xi, int n_plus, int n_minus) {
    if (n_plus < 0 || n_minus < 0) throw PreconditionError("xi_fock_overlap: negative Fock index");
    return std::exp(-0.5 * std::norm(xi)) * hermite2(n_minus, n_plus, xi) * inv_sqrt_factorial(n_plus) *
           inv_sqrt_factorial(n_minus);
}

/// The polynomial part of Psi(xi, phi) = exp(-|xi|^2/2) A(xi, xi*) continued to
/// independent arguments (u, v), together with the continuation of Psi*:
///   A(u, v)    = sum c     H_{n-,n+}(u e^{-i phi}, v e^{+i phi}) / sqrt(n+! n-!)
///   Abar(u, v) = sum c*    H_{n-,n+}(u e^{+i phi}, v e^{-i phi}) / sqrt(n+! n-!)
/// so that conj(A(u, v)) = Abar(conj u, conj v).
class EntangledPolynomial {
public:
    struct Pair {
        cplx value;      ///< A(u, v)
        cplx conjugate;  ///< Abar(u, v)
    };

    EntangledPolynomial(const TwoModeFock& s, double phi) : support_(s.support()), phi_(phi) {
        for (const auto& e : support_) {
            max_plus_ = std::max(max_plus_, e.n1);
            max_minus_ = std::max(max_minus_, e.n2);
            degree_ = std::max(degree_, e.n1 + e.n2);
        }
    }

    /// Total degree in (u, v).
    int degree() const noexcept { return degree_; }

    Pair operator()(cplx u, cplx v) const {
        const cplx rot = std::polar(1.0, -phi_);
        const NormalizedHermite2Table direct(u * rot, v * std::conj(rot), max_minus_, max_plus_);
        const NormalizedHermite2Table conjugated(u * std::conj(rot), v * rot, max_minus_, max_plus_);
        cplx a{}, abar{};
        for (const auto& e : support_) {
            a += e.c * direct(e.n2, e.n1);
            abar += std::conj(e.c) * conjugated(e.n2, e.n1);
        }
        return {a, abar};
    }

private:
    std::vector<TwoModeFock::Entry> support_;
    double phi_;
    int max_plus_{0};
    int max_minus_{0};
    int degree_{0};
};

/// Psi(xi, phi) = <xi e^{-i phi} | s> = sum c <xi e^{-i phi} | n+, n->.
inline cplx psi_entangled(const TwoModeFock& s, const EntangledArg& at) {
    detail::require_normalized(s, "psi_entangled");
    const EntangledPolynomial poly(s, at.phi);
    return std::exp(-0.5 * std::norm(at.xi)) * poly(at.xi, std::conj(at.xi)).value;
}

/// Laguerre-Gauss form of the |N, l0> wavefunction with unit constant:
///   exp(-|xi|^2/2) |xi|^{|l0|} L^{|l0|}_{(N-|l0|)/2}(|xi|^2) e^{-i l0 (arg xi - phi)}.
/// Equals psi_entangled(|N, l0>) up to one constant per (N, l0). The azimuthal
/// phase carries e^{+i l0 phi}, as the definition Psi = <xi| e^{i phi L} |Psi>
/// dictates for an L eigenstate.
inline cplx laguerre_gauss_wavefunction(int N, int l0, cplx xi, double phi) {
    const int al = std::abs(l0);
    if (al > N || (N - al) % 2 != 0) throw PreconditionError("laguerre_gauss_wavefunction: invalid (N, l0)");
    const double rho2 = std::norm(xi);
    const cplx lambda = xi * std::polar(1.0, -phi);
    const cplx angular = l0 >= 0 ? std::pow(std::conj(lambda), al) : std::pow(lambda, al);
    return std::exp(-0.5 * rho2) * angular * laguerre((N - al) / 2, al, rho2);
}

}  // namespace oamwig
