#pragma once

// Linear fractional transformations z -> (az + b)/(cz + d).

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hm/errors.hpp"
#include "hm/series.hpp"

namespace hm {

inline constexpr double kDeterminantFloor = 1e-14;
inline constexpr double kNormalizedTol = 1e-12;
inline constexpr double kTangentialTol = 1e-12;

class MoebiusMap {
public:
    MoebiusMap(cplx a, cplx b, cplx c, cplx d) : a_(a), b_(b), c_(c), d_(d) {
        for (const auto& x : {a, b, c, d})
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
                throw InvalidArgumentError("moebius coefficient is not finite");
        if (std::abs(determinant()) <= kDeterminantFloor)
            throw DegenerateMapError("moebius map has ad - bc = 0");
    }

    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static MoebiusMap affine(cplx slope, cplx offset) { return {slope, offset, 0.0, 1.0}; }

    cplx a() const { return a_; }
    cplx b() const { return b_; }
    cplx c() const { return c_; }
    cplx d() const { return d_; }
    std::array<cplx, 4> coeffs() const { return {a_, b_, c_, d_}; }
    cplx determinant() const { return a_ * d_ - b_ * c_; }
    bool normalized() const { return std::abs(determinant() - 1.0) <= kNormalizedTol; }

    cplx operator()(cplx z) const {
        const cplx den = c_ * z + d_;
        if (std::abs(den) <= kDeterminantFloor) throw PoleError("moebius: evaluation at the pole");
        return (a_ * z + b_) / den;
    }

    /// Derivative det/(cz + d)^2.
    cplx derivative(cplx z) const {
        const cplx den = c_ * z + d_;
        return determinant() / (den * den);
    }

    MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }

    /// Taylor series at 0; needs d != 0 (always true for self-maps of the disk).
    TruncatedSeries to_series(std::size_t degree) const {
        if (std::abs(d_) <= kDeterminantFloor)
            throw PoleError("moebius: pole at the origin, no Taylor series");
        return mul(TruncatedSeries{b_, a_}, reciprocal(TruncatedSeries{d_, c_}, degree), degree);
    }

    friend bool operator==(const MoebiusMap&, const MoebiusMap&) = default;

private:
    cplx a_, b_, c_, d_;
};

namespace detail {
inline bool in_canonical_half_plane(cplx x) {
    return x.real() > 0.0 || (x.real() == 0.0 && x.imag() > 0.0);
}
}  // namespace detail

/// Divides by a square root of the determinant, then flips the overall sign so
/// the first entry (in a, b, c, d order) above 1e-14 has argument in (-pi/2, pi/2].
/// Maps whose determinant is already 1 within 1e-12 are not rescaled, which
/// makes the operation exactly idempotent.
inline MoebiusMap normalize(const MoebiusMap& m) {
    auto k = m.coeffs();
    const cplx det = m.determinant();
    if (std::abs(det - 1.0) > kNormalizedTol) {
        const cplx root = std::sqrt(det);
        for (auto& x : k) x /= root;
    }
    for (const auto& x : k) {
        if (std::abs(x) <= kDeterminantFloor) continue;
        if (!detail::in_canonical_half_plane(x))
            for (auto& y : k) y = -y;
        break;
    }
    return {k[0], k[1], k[2], k[3]};
}

struct SelfMapTest {
    bool is_self_map = false;
    bool tangential = false;
    double slack = 0.0;  // (|d|^2 - |c|^2) - (|b conj(d) - a conj(c)| + |ad - bc|)
};

/// The LFT maps the disk into itself iff
/// |b conj(d) - a conj(c)| + |ad - bc| <= |d|^2 - |c|^2.
/// The slack is homogeneous of degree two, so it is evaluated on the
/// normalized coefficients. |slack| <= 1e-12 counts as tangential.
inline SelfMapTest is_self_map(const MoebiusMap& raw) {
    const MoebiusMap m = normalize(raw);
    const cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
    const double lhs = std::abs(b * std::conj(d) - a * std::conj(c)) + std::abs(m.determinant());
    const double rhs = std::norm(d) - std::norm(c);
    SelfMapTest t;
    t.slack = rhs - lhs;
    t.is_self_map = t.slack >= -kTangentialTol;
    t.tangential = std::abs(t.slack) <= kTangentialTol;
    return t;
}

/// m1 o m2 as a renormalized coefficient-matrix product.
inline MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
    return normalize(MoebiusMap(m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
                                m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()));
}

/// True when both maps induce the same transformation (coefficients agree up
/// to a common scalar) within `tol` after normalization.
inline bool same_map(const MoebiusMap& m1, const MoebiusMap& m2, double tol = 1e-12) {
    const auto p = normalize(m1).coeffs();
    const auto q = normalize(m2).coeffs();
    double plus = 0.0, minus = 0.0;
    for (int i = 0; i < 4; ++i) {
        plus = std::max(plus, std::abs(p[i] - q[i]));
        minus = std::max(minus, std::abs(p[i] + q[i]));
    }
    return std::min(plus, minus) <= tol;
}

inline bool is_identity(const MoebiusMap& m, double tol = 1e-12) {
    return same_map(m, MoebiusMap::identity(), tol);
}

struct FixedPoint {
    cplx point;
    int multiplicity = 1;
};

struct FixedPoints {
    std::vector<FixedPoint> finite;
    int infinity_multiplicity = 0;  // 0, 1 or 2
};

/// Roots of c z^2 + (d - a) z - b = 0, plus the point at infinity when c = 0.
inline FixedPoints fixed_points(const MoebiusMap& raw) {
    if (is_identity(raw)) throw IdentityMapError("fixed_points: identity fixes every point");
    const MoebiusMap m = normalize(raw);
    const cplx a = m.a(), b = m.b(), c = m.c(), d = m.d();
    FixedPoints out;
    if (std::abs(c) <= kDeterminantFloor) {
        if (std::abs(d - a) <= kDeterminantFloor) {
            out.infinity_multiplicity = 2;  // translation z + b/d
        } else {
            out.finite.push_back({b / (d - a), 1});
            out.infinity_multiplicity = 1;
        }
        return out;
    }
    const cplx B = d - a;
    const cplx disc = B * B + 4.0 * c * b;
    const cplx root = std::sqrt(disc);
    // (a + d)^2 - 4 = disc for normalized maps; parabolic when it vanishes.
    if (std::abs(disc) <= 1e-14 * std::max(1.0, std::norm(B))) {
        out.finite.push_back({-B / (2.0 * c), 2});
        return out;
    }
    // Stable quadratic: q = -(B + s sqrt(disc))/2 with s chosen to avoid cancellation.
    const cplx q = (std::real(std::conj(B) * root) >= 0.0) ? -0.5 * (B + root) : -0.5 * (B - root);
    const cplx z1 = q / c;
    const cplx z2 = (std::abs(q) > 0.0) ? -b / q : -B / c - z1;
    out.finite.push_back({z1, 1});
    out.finite.push_back({z2, 1});
    return out;
}

/// Companion self-map sigma(z) = (conj(a) z - conj(c))/(-conj(b) z + conj(d)) of
/// the adjoint factorization, computed on normalized coefficients.
inline MoebiusMap cowen_sigma(const MoebiusMap& raw) {
    if (!is_self_map(raw).is_self_map) throw NotSelfMapError("cowen_sigma: not a self-map of the disk");
    const MoebiusMap m = normalize(raw);
    const MoebiusMap sigma = normalize(MoebiusMap(std::conj(m.a()), -std::conj(m.c()),
                                                  -std::conj(m.b()), std::conj(m.d())));
    if (!is_self_map(sigma).is_self_map)
        throw std::logic_error("cowen_sigma: companion map left the disk");
    return sigma;
}

struct CowenFactors {
    TruncatedSeries g;  // 1/(-conj(b) z + conj(d))
    TruncatedSeries h;  // c z + d
};

inline CowenFactors cowen_g_h(const MoebiusMap& raw, std::size_t degree) {
    if (!is_self_map(raw).is_self_map) throw NotSelfMapError("cowen_g_h: not a self-map of the disk");
    const MoebiusMap m = normalize(raw);
    return {reciprocal(TruncatedSeries{std::conj(m.d()), -std::conj(m.b())}, degree),
            TruncatedSeries{m.d(), m.c()}};
}

enum class MoebiusKind { constant_like, affine, automorphism, proper };

inline const char* to_string(MoebiusKind k) {
    switch (k) {
        case MoebiusKind::constant_like: return "constant-like";
        case MoebiusKind::affine: return "affine";
        case MoebiusKind::automorphism: return "disk automorphism";
        case MoebiusKind::proper: return "proper LFT";
    }
    return "?";
}

/// Dispatch class. Affine takes precedence (so rotations report as affine).
/// A MoebiusMap is never degenerate by construction; constant-like is kept
/// for symmetry with the constant-symbol wrapper.
inline MoebiusKind classify(const MoebiusMap& raw) {
    const MoebiusMap m = normalize(raw);
    if (std::abs(m.determinant()) <= kDeterminantFloor) return MoebiusKind::constant_like;
    if (std::abs(m.c()) <= kDeterminantFloor) return MoebiusKind::affine;
    const auto t = is_self_map(m);
    if (t.is_self_map && t.tangential && is_self_map(m.inverse()).is_self_map)
        return MoebiusKind::automorphism;
    return MoebiusKind::proper;
}

/// Disk automorphism (z - alpha)/(1 - conj(alpha) z).
inline MoebiusMap blaschke_factor_map(cplx alpha) {
    if (!(std::abs(alpha) < 1.0)) throw NotInDiskError("blaschke factor zero must lie in the open disk");
    return normalize(MoebiusMap(1.0, -alpha, -std::conj(alpha), 1.0));
}

/// Involutive automorphism (alpha - z)/(1 - conj(alpha) z); swaps alpha and 0.
inline MoebiusMap involution_map(cplx alpha) {
    if (!(std::abs(alpha) < 1.0)) throw NotInDiskError("involution point must lie in the open disk");
    return normalize(MoebiusMap(-1.0, alpha, -std::conj(alpha), 1.0));
}

/// phi_alpha(z) = ((2 - alpha) z + alpha)/(-alpha z + (2 + alpha)).
inline MoebiusMap phi_alpha_preset(cplx alpha) {
    return MoebiusMap(2.0 - alpha, alpha, -alpha, 2.0 + alpha);
}

}  // namespace hm
