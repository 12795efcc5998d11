#pragma once

// Truncated Taylor series over the complex numbers. A degree-N series stands
// in for an element of H^2 (or a Schur-class function) by its first N+1
// Taylor coefficients; the H^2 inner product is the coefficient l2 pairing.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "hm/errors.hpp"

namespace hm {

using cplx = std::complex<double>;

inline constexpr double kEpsZero = 1e-12;       // "coefficient is zero"
inline constexpr std::size_t kMaxDegree = 1024;  // desk-scale truncation cap

class TruncatedSeries {
public:
    TruncatedSeries() : coeffs_(1, cplx{}) {}

    explicit TruncatedSeries(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) throw InvalidArgumentError("series needs at least one coefficient");
        for (const auto& c : coeffs_)
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
                throw InvalidArgumentError("series coefficient is not finite");
    }

    TruncatedSeries(std::initializer_list<cplx> coeffs)
        : TruncatedSeries(std::vector<cplx>(coeffs)) {}

    static TruncatedSeries zero(std::size_t degree) {
        return TruncatedSeries(std::vector<cplx>(degree + 1, cplx{}));
    }
    static TruncatedSeries constant(cplx value, std::size_t degree = 0) {
        std::vector<cplx> c(degree + 1, cplx{});
        c[0] = value;
        return TruncatedSeries(std::move(c));
    }
    static TruncatedSeries monomial(std::size_t power, std::size_t degree, cplx scale = 1.0) {
        std::vector<cplx> c(std::max(degree, power) + 1, cplx{});
        c[power] = scale;
        c.resize(degree + 1);
        return TruncatedSeries(std::move(c));
    }
    /// Geometric series sum_k ratio^k z^k, i.e. 1/(1 - ratio z).
    static TruncatedSeries geometric(cplx ratio, std::size_t degree) {
        std::vector<cplx> c(degree + 1);
        cplx p = 1.0;
        for (auto& x : c) {
            x = p;
            p *= ratio;
        }
        return TruncatedSeries(std::move(c));
    }

    std::size_t degree() const { return coeffs_.size() - 1; }
    std::span<const cplx> coeffs() const { return coeffs_; }
    const std::vector<cplx>& vec() const { return coeffs_; }
    cplx operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }

    /// Zero-padded or cut to the given degree.
    TruncatedSeries truncated(std::size_t degree) const {
        std::vector<cplx> c(coeffs_.begin(),
                            coeffs_.begin() + std::min(coeffs_.size(), degree + 1));
        c.resize(degree + 1, cplx{});
        return TruncatedSeries(std::move(c));
    }

    cplx evaluate(cplx z) const {
        cplx acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }
    cplx operator()(cplx z) const { return evaluate(z); }

    double h2_norm_squared() const {
        double s = 0.0;
        for (const auto& c : coeffs_) s += std::norm(c);
        return s;
    }
    double h2_norm() const { return std::sqrt(h2_norm_squared()); }

    /// Index of the last coefficient with modulus above `eps`, or 0.
    std::size_t effective_degree(double eps = kEpsZero) const {
        for (std::size_t k = coeffs_.size(); k-- > 0;)
            if (std::abs(coeffs_[k]) > eps) return k;
        return 0;
    }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<cplx> coeffs_;
};

/// H^2 inner product <f, g> = sum f_k conj(g_k).
inline cplx inner(const TruncatedSeries& f, const TruncatedSeries& g) {
    cplx s{};
    const std::size_t n = std::min(f.degree(), g.degree()) + 1;
    for (std::size_t k = 0; k < n; ++k) s += f[k] * std::conj(g[k]);
    return s;
}

inline TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
    std::vector<cplx> c(std::max(f.degree(), g.degree()) + 1);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = f[k] + g[k];
    return TruncatedSeries(std::move(c));
}

inline TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) {
    std::vector<cplx> c(std::max(f.degree(), g.degree()) + 1);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = f[k] - g[k];
    return TruncatedSeries(std::move(c));
}

inline TruncatedSeries scale(const TruncatedSeries& f, cplx s) {
    std::vector<cplx> c(f.vec());
    for (auto& x : c) x *= s;
    return TruncatedSeries(std::move(c));
}

inline TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) { return sub(f, g); }
inline TruncatedSeries operator*(cplx s, const TruncatedSeries& f) { return scale(f, s); }

/// Cauchy product truncated at min(deg f + deg g, cap).
inline TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g,
                           std::size_t cap = kMaxDegree) {
    const std::size_t n = std::min(f.degree() + g.degree(), cap);
    std::vector<cplx> c(n + 1, cplx{});
    const auto fc = f.coeffs();
    const auto gc = g.coeffs();
    for (std::size_t i = 0; i < fc.size() && i <= n; ++i) {
        if (fc[i] == cplx{}) continue;
        const std::size_t jmax = std::min(gc.size() - 1, n - i);
        for (std::size_t j = 0; j <= jmax; ++j) c[i + j] += fc[i] * gc[j];
    }
    return TruncatedSeries(std::move(c));
}

inline TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return mul(f, g); }

/// Taylor coefficients of f o g through `degree` by Horner accumulation
/// of truncated products. Requires |g(0)| < 1.
inline TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g,
                               std::size_t degree) {
    if (!(std::abs(g[0]) < 1.0))
        throw CompositionDomainError("compose: inner series has |g(0)| >= 1");
    const auto g_cut = g.truncated(degree);
    std::vector<cplx> acc(degree + 1, cplx{});
    std::vector<cplx> next(degree + 1);
    const auto gc = g_cut.coeffs();
    for (std::size_t k = f.degree() + 1; k-- > 0;) {
        // acc <- acc * g + f_k, truncated at `degree`
        std::fill(next.begin(), next.end(), cplx{});
        for (std::size_t i = 0; i <= degree; ++i) {
            if (acc[i] == cplx{}) continue;
            for (std::size_t j = 0; i + j <= degree; ++j) next[i + j] += acc[i] * gc[j];
        }
        next[0] += f[k];
        acc.swap(next);
    }
    return TruncatedSeries(std::move(acc));
}

inline TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
    return compose(f, g, std::max(f.degree(), g.degree()));
}

/// 1/f through `degree` by power-series long division.
inline TruncatedSeries reciprocal(const TruncatedSeries& f, std::size_t degree) {
    const cplx c0 = f[0];
    if (!(std::abs(c0) > kEpsZero))
        throw ZeroConstantTermError("reciprocal: constant term is zero");
    std::vector<cplx> g(degree + 1, cplx{});
    g[0] = 1.0 / c0;
    for (std::size_t k = 1; k <= degree; ++k) {
        cplx s{};
        const std::size_t jmax = std::min(k, f.degree());
        for (std::size_t j = 1; j <= jmax; ++j) s += f[j] * g[k - j];
        g[k] = -s / c0;
    }
    return TruncatedSeries(std::move(g));
}

inline TruncatedSeries reciprocal(const TruncatedSeries& f) { return reciprocal(f, f.degree()); }

inline TruncatedSeries divide_by_z(const TruncatedSeries& f) {
    if (std::abs(f[0]) > kEpsZero)
        throw NonvanishingAtZeroError("divide_by_z: f(0) is not zero");
    if (f.degree() == 0) return TruncatedSeries::zero(0);
    return TruncatedSeries(std::vector<cplx>(f.vec().begin() + 1, f.vec().end()));
}

inline TruncatedSeries multiply_by_z(const TruncatedSeries& f) {
    std::vector<cplx> c(f.degree() + 2, cplx{});
    std::copy(f.vec().begin(), f.vec().end(), c.begin() + 1);
    return TruncatedSeries(std::move(c));
}

/// Derivative; the result has degree max(N-1, 0).
inline TruncatedSeries derivative(const TruncatedSeries& f) {
    if (f.degree() == 0) return TruncatedSeries::zero(0);
    std::vector<cplx> c(f.degree());
    for (std::size_t k = 1; k <= f.degree(); ++k) c[k - 1] = static_cast<double>(k) * f[k];
    return TruncatedSeries(std::move(c));
}

/// Synthetic division by (z - root), run from the top coefficient down so it
/// stays stable for |root| < 1. Returns the quotient (degree N-1) and the
/// remainder f(root).
struct Deflation {
    TruncatedSeries quotient;
    cplx remainder;
};

inline Deflation deflate(const TruncatedSeries& f, cplx root) {
    const std::size_t n = f.degree();
    if (n == 0) return {TruncatedSeries::zero(0), f[0]};
    std::vector<cplx> q(n);
    q[n - 1] = f[n];
    for (std::size_t k = n - 1; k >= 1; --k) q[k - 1] = f[k] + root * q[k];
    const cplx rem = f[0] + root * q[0];
    return {TruncatedSeries(std::move(q)), rem};
}

/// Default sampling radius 1 - 1/N for a degree-N series.
inline double default_sup_radius(std::size_t degree) {
    return degree == 0 ? 1.0 : 1.0 - 1.0 / static_cast<double>(degree);
}

/// max |f(r e^{2 pi i k/M})| over k = 0..M-1. A lower bound for the sup norm.
inline double boundary_sup_estimate(const TruncatedSeries& f, std::size_t samples, double radius) {
    if (samples < 64) throw InvalidArgumentError("boundary_sup_estimate: need at least 64 samples");
    if (!(radius > 0.0 && radius <= 1.0))
        throw InvalidArgumentError("boundary_sup_estimate: radius must lie in (0, 1]");
    double best = 0.0;
    for (std::size_t k = 0; k < samples; ++k) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(samples);
        best = std::max(best, std::abs(f.evaluate(std::polar(radius, t))));
    }
    return best;
}

inline double boundary_sup_estimate(const TruncatedSeries& f, std::size_t samples = 512) {
    return boundary_sup_estimate(f, samples, default_sup_radius(f.degree()));
}

}  // namespace hm
