#pragma once

// Two-mode Fock states. Storage is the chirality basis
//   a_+ = (a_x - i a_y)/sqrt2,  a_- = (a_x + i a_y)/sqrt2,
// where N = n_+ + n_- and L = n_+ - n_- are diagonal.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "oamwig/errors.hpp"
#include "oamwig/special_functions.hpp"

namespace oamwig {

struct ChiralBasis {};
struct CartesianBasis {};

/// Truncated two-mode coefficient table c(n1, n2), 0 <= n1, n2 <= cutoff,
/// tagged with the mode basis it is written in.
template <typename Basis>
class FockTable {
public:
    struct Entry {
        int n1;
        int n2;
        cplx c;
    };

    FockTable() : FockTable(0) {}

    explicit FockTable(int cutoff) : cutoff_(cutoff) {
        if (cutoff < 0) throw PreconditionError("FockTable: negative cutoff");
        if (cutoff > kMaxHermiteOrder) throw OrderBoundError("FockTable: cutoff exceeds supported order");
        coeffs_.assign(static_cast<std::size_t>(cutoff + 1) * static_cast<std::size_t>(cutoff + 1), cplx{});
    }

    static FockTable from_entries(int cutoff, const std::vector<Entry>& entries) {
        FockTable t(cutoff);
        for (const auto& e : entries) {
            if (e.n1 < 0 || e.n2 < 0 || e.n1 > cutoff || e.n2 > cutoff)
                throw PreconditionError("FockTable: entry (" + std::to_string(e.n1) + "," + std::to_string(e.n2) +
                                        ") outside cutoff " + std::to_string(cutoff));
            t.coeffs_[t.index(e.n1, e.n2)] += e.c;
        }
        return t;
    }

    int cutoff() const noexcept { return cutoff_; }

    /// Coefficient, zero outside the table.
    cplx operator()(int n1, int n2) const noexcept {
        if (n1 < 0 || n2 < 0 || n1 > cutoff_ || n2 > cutoff_) return {};
        return coeffs_[index(n1, n2)];
    }

    /// Non-zero entries in (n1, n2) lexicographic order.
    std::vector<Entry> support() const {
        std::vector<Entry> out;
        for (int a = 0; a <= cutoff_; ++a)
            for (int b = 0; b <= cutoff_; ++b)
                if (const cplx c = coeffs_[index(a, b)]; c != cplx{}) out.push_back({a, b, c});
        return out;
    }

    double norm_squared() const noexcept {
        double acc = 0.0;
        for (const auto& c : coeffs_) acc += std::norm(c);
        return acc;
    }

    bool is_normalized(double tol = 1e-10) const noexcept { return std::abs(norm_squared() - 1.0) <= tol; }

    /// Largest n1 + n2 carrying a non-zero coefficient (0 for the zero state).
    int max_total_quanta() const noexcept {
        int best = 0;
        for (int a = 0; a <= cutoff_; ++a)
            for (int b = 0; b <= cutoff_; ++b)
                if (coeffs_[index(a, b)] != cplx{}) best = std::max(best, a + b);
        return best;
    }

    FockTable normalized() const {
        const double n = norm_squared();
        if (!(n > 0.0)) throw PreconditionError("FockTable: cannot normalize the zero state");
        return scaled(1.0 / std::sqrt(n));
    }

    FockTable scaled(cplx factor) const {
        FockTable out = *this;
        for (auto& c : out.coeffs_) c *= factor;
        return out;
    }

    /// Coefficient-wise transform f(n1, n2, c) -> c'.
    template <typename F>
    FockTable transformed(F&& f) const {
        FockTable out = *this;
        for (int a = 0; a <= cutoff_; ++a)
            for (int b = 0; b <= cutoff_; ++b) out.coeffs_[index(a, b)] = f(a, b, coeffs_[index(a, b)]);
        return out;
    }

    /// Sum of two tables; the result has the larger cutoff.
    friend FockTable operator+(const FockTable& lhs, const FockTable& rhs) {
        FockTable out(std::max(lhs.cutoff_, rhs.cutoff_));
        for (int a = 0; a <= out.cutoff_; ++a)
            for (int b = 0; b <= out.cutoff_; ++b) out.coeffs_[out.index(a, b)] = lhs(a, b) + rhs(a, b);
        return out;
    }

    friend bool operator==(const FockTable& lhs, const FockTable& rhs) {
        const int c = std::max(lhs.cutoff_, rhs.cutoff_);
        for (int a = 0; a <= c; ++a)
            for (int b = 0; b <= c; ++b)
                if (lhs(a, b) != rhs(a, b)) return false;
        return true;
    }

private:
    std::size_t index(int n1, int n2) const noexcept {
        return static_cast<std::size_t>(n1) * static_cast<std::size_t>(cutoff_ + 1) + static_cast<std::size_t>(n2);
    }

    int cutoff_;
    std::vector<cplx> coeffs_;
};

/// c(n_+, n_-) in the chirality basis.
using TwoModeFock = FockTable<ChiralBasis>;
/// c(n_x, n_y) in the Cartesian mode basis.
using CartesianFock = FockTable<CartesianBasis>;

template <typename Basis>
cplx inner_product(const FockTable<Basis>& bra, const FockTable<Basis>& ket) {
    cplx acc{};
    for (const auto& e : ket.support()) acc += std::conj(bra(e.n1, e.n2)) * e.c;
    return acc;
}

namespace detail {

inline void require_normalized(const TwoModeFock& s, const char* who) {
    if (!s.is_normalized())
        throw PreconditionError(std::string(who) + ": state is not normalized (norm^2 = " +
                                std::to_string(s.norm_squared()) + ")");
}

}  // namespace detail

/// |N, l0>: N quanta in total, OAM l0, i.e. n_+ = (N + l0)/2, n_- = (N - l0)/2.
inline TwoModeFock make_N_l_eigenstate(int N, int l0) {
    if (N < 0) throw PreconditionError("make_N_l_eigenstate: N must be >= 0");
    if (std::abs(l0) > N)
        throw PreconditionError("make_N_l_eigenstate: range precondition |l0| <= N violated (N=" + std::to_string(N) +
                                ", l0=" + std::to_string(l0) + ")");
    if ((N - std::abs(l0)) % 2 != 0)
        throw PreconditionError("make_N_l_eigenstate: parity precondition N - |l0| even violated (N=" +
                                std::to_string(N) + ", l0=" + std::to_string(l0) + ")");
    return TwoModeFock::from_entries(N, {{(N + l0) / 2, (N - l0) / 2, 1.0}});
}

/// sum_N (N+1)^{-1/2} |N, l0> over N = |l0|, |l0|+2, ..., <= Nmax, renormalized.
inline TwoModeFock make_summed_oam(int l0, int Nmax) {
    if (Nmax < std::abs(l0))
        throw PreconditionError("make_summed_oam: range precondition Nmax >= |l0| violated (l0=" + std::to_string(l0) +
                                ", Nmax=" + std::to_string(Nmax) + ")");
    std::vector<TwoModeFock::Entry> entries;
    for (int N = std::abs(l0); N <= Nmax; N += 2)
        entries.push_back({(N + l0) / 2, (N - l0) / 2, 1.0 / std::sqrt(N + 1.0)});
    return TwoModeFock::from_entries(Nmax, entries).normalized();
}

/// (|l1> + e^{i phi0} |l2>)/sqrt2 built from truncated summed OAM states, renormalized.
inline TwoModeFock make_superposition(int l1, int l2, double phi0, int Nmax) {
    const auto first = make_summed_oam(l1, Nmax);
    const auto second = make_summed_oam(l2, Nmax);
    const auto sum = (first + second.scaled(std::polar(1.0, phi0))).scaled(1.0 / std::sqrt(2.0));
    if (!(sum.norm_squared() > 1e-24)) throw PreconditionError("make_superposition: branches cancel exactly");
    return sum.normalized();
}

/// exp(i phi0 L)|s>: c(n_+, n_-) -> c e^{i phi0 (n_+ - n_-)}.
inline TwoModeFock rotate_state(const TwoModeFock& s, double phi0) {
    return s.transformed([phi0](int np, int nm, cplx c) { return c * std::polar(1.0, phi0 * (np - nm)); });
}

struct NumberOamMoments {
    double meanN{0.0};
    double meanL{0.0};
};

inline NumberOamMoments expectation_N_L(const TwoModeFock& s) {
    detail::require_normalized(s, "expectation_N_L");
    NumberOamMoments m;
    for (const auto& e : s.support()) {
        const double w = std::norm(e.c);
        m.meanN += w * (e.n1 + e.n2);
        m.meanL += w * (e.n1 - e.n2);
    }
    return m;
}

/// Re-expresses a state given over (n_x, n_y) in the chirality basis using
///   a_x^dag = (a_+^dag + a_-^dag)/sqrt2,  a_y^dag = -i (a_+^dag - a_-^dag)/sqrt2.
/// The output cutoff is the largest n_x + n_y present.
inline TwoModeFock mode_rotate_xy_to_pm(const CartesianFock& xy) {
    const auto entries = xy.support();
    int out_cutoff = 0;
    for (const auto& e : entries) out_cutoff = std::max(out_cutoff, e.n1 + e.n2);
    if (out_cutoff > kMaxHermiteOrder)
        throw OrderBoundError("mode_rotate_xy_to_pm: total quanta exceed the supported cutoff");

    // Multiplicative recurrence; exact while the intermediate products fit in 53 bits.
    auto binom = [](int n, int k) {
        double b = 1.0;
        for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
        return b;
    };
    const cplx minus_i{0.0, -1.0};

    std::vector<TwoModeFock::Entry> out;
    for (const auto& e : entries) {
        const int nx = e.n1, ny = e.n2;
        const cplx phase = std::pow(minus_i, ny);
        const double scale = std::pow(std::sqrt(0.5), nx + ny) * inv_sqrt_factorial(nx) * inv_sqrt_factorial(ny);
        for (int j = 0; j <= nx; ++j) {
            for (int k = 0; k <= ny; ++k) {
                const int np = j + k;
                const int nm = nx + ny - np;
                const double sign = ((ny - k) % 2 == 0) ? 1.0 : -1.0;
                const double amp = sign * binom(nx, j) * binom(ny, k) * scale /
                                   (inv_sqrt_factorial(np) * inv_sqrt_factorial(nm));
                out.push_back({np, nm, e.c * phase * amp});
            }
        }
    }
    return TwoModeFock::from_entries(out_cutoff, out);
}

struct CartesianPoint4 {
    double x{0.0};
    double p_x{0.0};
    double y{0.0};
    double p_y{0.0};
};

/// <m| D(gamma) |n> for single-mode Fock states.
inline cplx displaced_fock_element(int m, int n, cplx gamma) {
    const double g2 = std::norm(gamma);
    const double envelope = std::exp(-0.5 * g2);
    if (m >= n) {
        return inv_sqrt_factorial(m) / inv_sqrt_factorial(n) * std::pow(gamma, m - n) * envelope *
               laguerre(n, m - n, g2);
    }
    return inv_sqrt_factorial(n) / inv_sqrt_factorial(m) * std::pow(-std::conj(gamma), n - m) * envelope *
           laguerre(m, n - m, g2);
}

namespace detail {

// M[m][n] = <m| D(beta) P D(beta)^dag |n> = (-1)^n <m| D(2 beta) |n>.
inline std::vector<cplx> displaced_parity_matrix(int cutoff, cplx beta) {
    const auto dim = static_cast<std::size_t>(cutoff + 1);
    std::vector<cplx> M(dim * dim);
    for (int m = 0; m <= cutoff; ++m)
        for (int n = 0; n <= cutoff; ++n)
            M[static_cast<std::size_t>(m) * dim + static_cast<std::size_t>(n)] =
                (n % 2 == 0 ? 1.0 : -1.0) * displaced_fock_element(m, n, 2.0 * beta);
    return M;
}

}  // namespace detail

/// Two-mode Wigner function as a displaced-parity expectation,
///   W = pi^{-2} <s| D_x D_y (-1)^N D_y^dag D_x^dag |s>,
/// normalized so the vacuum gives exp(-(x^2 + p_x^2 + y^2 + p_y^2)) / pi^2.
/// Exact for a truncated state: every matrix element is closed-form.
inline double wigner_4d(const TwoModeFock& s, const CartesianPoint4& at) {
    detail::require_normalized(s, "wigner_4d");
    const cplx alpha_x = cplx(at.x, at.p_x) / std::sqrt(2.0);
    const cplx alpha_y = cplx(at.y, at.p_y) / std::sqrt(2.0);
    const cplx i{0.0, 1.0};
    const cplx beta_plus = (alpha_x - i * alpha_y) / std::sqrt(2.0);
    const cplx beta_minus = (alpha_x + i * alpha_y) / std::sqrt(2.0);

    const int c = s.cutoff();
    const auto dim = static_cast<std::size_t>(c + 1);
    const auto Mp = detail::displaced_parity_matrix(c, beta_plus);
    const auto Mm = detail::displaced_parity_matrix(c, beta_minus);
    const auto supp = s.support();

    cplx acc{};
    for (const auto& a : supp) {
        cplx row{};
        for (const auto& b : supp)
            row += b.c * Mp[static_cast<std::size_t>(a.n1) * dim + static_cast<std::size_t>(b.n1)] *
                   Mm[static_cast<std::size_t>(a.n2) * dim + static_cast<std::size_t>(b.n2)];
        acc += std::conj(a.c) * row;
    }
    return acc.real() / (std::numbers::pi * std::numbers::pi);
}

/// True when the displacement amplitude^2 exceeds cutoff/2, where closed-form
/// Laguerre evaluations start to lose relative accuracy.
inline bool wigner_4d_cutoff_warning(const TwoModeFock& s, const CartesianPoint4& at) {
    const double amp2 = 0.5 * (at.x * at.x + at.p_x * at.p_x + at.y * at.y + at.p_y * at.p_y);
    return amp2 > 0.5 * std::max(s.cutoff(), 1);
}

}  // namespace oamwig
