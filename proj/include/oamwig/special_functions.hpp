#pragma once

// Polynomial special functions behind the entangled-state representation:
// two-variable Hermite polynomials H_{m,n}(lambda, mu) and generalized
// Laguerre polynomials L_p^alpha(x).

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "oamwig/errors.hpp"

namespace oamwig {

using cplx = std::complex<double>;

/// Largest supported m + n for H_{m,n}, and largest Fock index anywhere.
inline constexpr int kMaxHermiteOrder = 100;

namespace detail {

template <typename T>
T pairwise_sum(std::span<const T> xs) {
    if (xs.size() <= 8) {
        T acc{};
        for (const auto& x : xs) acc += x;
        return acc;
    }
    const auto half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

inline const std::array<double, kMaxHermiteOrder + 1>& inv_sqrt_factorial_table() {
    static const auto table = [] {
        std::array<double, kMaxHermiteOrder + 1> t{};
        t[0] = 1.0;
        for (int k = 1; k <= kMaxHermiteOrder; ++k) t[k] = t[k - 1] / std::sqrt(static_cast<double>(k));
        return t;
    }();
    return table;
}

inline void check_hermite_indices(int m, int n) {
    if (m < 0 || n < 0) throw PreconditionError("hermite2: negative index");
    if (m + n > kMaxHermiteOrder)
        throw OrderBoundError("hermite2: m + n = " + std::to_string(m + n) + " exceeds supported order " +
                              std::to_string(kMaxHermiteOrder));
}

}  // namespace detail

/// 1/sqrt(n!) for 0 <= n <= kMaxHermiteOrder.
inline double inv_sqrt_factorial(int n) {
    if (n < 0 || n > kMaxHermiteOrder) throw OrderBoundError("inv_sqrt_factorial: index out of range");
    return detail::inv_sqrt_factorial_table()[static_cast<std::size_t>(n)];
}

/// Powers of (lambda, mu) shared by every H_{m,n}(lambda, mu) with m <= max_m, n <= max_n.
///
/// H_{m,n}(lambda, mu) = sum_k m! n! / (k! (m-k)! (n-k)!) (-1)^k lambda^{m-k} mu^{n-k}.
/// The physical polynomial has mu = conj(lambda); independent arguments give
/// the analytic continuation needed when an integration contour leaves the
/// real axis. Coefficients follow the exact ratio c_{k+1}/c_k = (m-k)(n-k)/(k+1)
/// from c_0 = 1, so no factorial is ever formed.
class Hermite2Table {
public:
    Hermite2Table(cplx lambda, cplx mu, int max_m, int max_n) {
        detail::check_hermite_indices(max_m, max_n);
        lam_pow_.resize(static_cast<std::size_t>(max_m) + 1);
        mu_pow_.resize(static_cast<std::size_t>(max_n) + 1);
        lam_pow_[0] = mu_pow_[0] = 1.0;
        for (std::size_t k = 1; k < lam_pow_.size(); ++k) lam_pow_[k] = lam_pow_[k - 1] * lambda;
        for (std::size_t k = 1; k < mu_pow_.size(); ++k) mu_pow_[k] = mu_pow_[k - 1] * mu;
    }

    cplx operator()(int m, int n) const {
        if (m < 0 || n < 0 || static_cast<std::size_t>(m) >= lam_pow_.size() ||
            static_cast<std::size_t>(n) >= mu_pow_.size())
            throw PreconditionError("Hermite2Table: index outside the tabulated range");
        const int kmax = std::min(m, n);
        std::array<cplx, kMaxHermiteOrder / 2 + 1> terms;
        double coef = 1.0;
        for (int k = 0; k <= kmax; ++k) {
            const double signed_coef = (k % 2 == 0) ? coef : -coef;
            terms[static_cast<std::size_t>(k)] = signed_coef * lam_pow_[static_cast<std::size_t>(m - k)] *
                                                 mu_pow_[static_cast<std::size_t>(n - k)];
            coef *= static_cast<double>(m - k) * static_cast<double>(n - k) / static_cast<double>(k + 1);
        }
        return detail::pairwise_sum<cplx>(std::span<const cplx>(terms.data(), static_cast<std::size_t>(kmax) + 1));
    }

private:
    std::vector<cplx> lam_pow_;
    std::vector<cplx> mu_pow_;
};

/// h_{m,n} = H_{m,n}(lambda, mu) / sqrt(m! n!) for all m <= max_m, n <= max_n,
/// filled by the recurrence
///   h_{0,n} = mu^n / sqrt(n!),  h_{m+1,n} = (lambda h_{m,n} - sqrt(n) h_{m,n-1}) / sqrt(m+1).
/// Unlike the alternating finite sum it keeps full relative accuracy when
/// |lambda mu| is large and the degree is high, which is where wavefunction
/// evaluation for many-quanta states lives.
class NormalizedHermite2Table {
public:
    NormalizedHermite2Table(cplx lambda, cplx mu, int max_m, int max_n) : cols_(static_cast<std::size_t>(max_n) + 1) {
        detail::check_hermite_indices(max_m, max_n);
        h_.resize((static_cast<std::size_t>(max_m) + 1) * cols_);
        h_[0] = 1.0;
        for (std::size_t n = 1; n < cols_; ++n) h_[n] = h_[n - 1] * mu / std::sqrt(static_cast<double>(n));
        for (std::size_t m = 0; m < static_cast<std::size_t>(max_m); ++m) {
            const double inv = 1.0 / std::sqrt(static_cast<double>(m + 1));
            const cplx* row = &h_[m * cols_];
            cplx* next = &h_[(m + 1) * cols_];
            next[0] = lambda * row[0] * inv;
            for (std::size_t n = 1; n < cols_; ++n)
                next[n] = (lambda * row[n] - std::sqrt(static_cast<double>(n)) * row[n - 1]) * inv;
        }
    }

    cplx operator()(int m, int n) const {
        if (m < 0 || n < 0 || static_cast<std::size_t>(n) >= cols_ ||
            static_cast<std::size_t>(m) * cols_ + static_cast<std::size_t>(n) >= h_.size())
            throw PreconditionError("NormalizedHermite2Table: index outside the tabulated range");
        return h_[static_cast<std::size_t>(m) * cols_ + static_cast<std::size_t>(n)];
    }

private:
    std::size_t cols_;
    std::vector<cplx> h_;
};

/// H_{m,n}(lambda, mu) with independent arguments.
inline cplx hermite2(int m, int n, cplx lambda, cplx mu) {
    return Hermite2Table(lambda, mu, m, n)(m, n);
}

/// H_{m,n}(lambda, lambda*). Satisfies H_{m,n} = conj(H_{n,m}) bit-for-bit.
inline cplx hermite2(int m, int n, cplx lambda) {
    return hermite2(m, n, lambda, std::conj(lambda));
}

/// Generalized Laguerre polynomial L_p^alpha(x) by the three-term recurrence
///   (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}.
inline double laguerre(int p, int alpha, double x) {
    if (p < 0 || alpha < 0) throw PreconditionError("laguerre: negative degree or superscript");
    if (p > kMaxHermiteOrder) throw OrderBoundError("laguerre: degree exceeds supported order");
    double prev = 1.0;
    if (p == 0) return prev;
    double cur = 1.0 + alpha - x;
    for (int k = 1; k < p; ++k) {
        const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace oamwig
