#pragma once

// Finite-dimensional model spaces Q_theta = H^2 (-) theta H^2 for finite
// Blaschke theta, spanned by c_alpha^(t) = z^t / (1 - conj(alpha) z)^(t+1),
// 0 <= t < n, over the zeros alpha of multiplicity n.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "hm/beurling.hpp"
#include "hm/blaschke.hpp"
#include "hm/operators.hpp"
#include "hm/report.hpp"
#include "hm/series.hpp"
#include "hm/symbol.hpp"

namespace hm {

/// k(z, w) = 1/(1 - z conj(w)), coefficients conj(w)^k.
inline TruncatedSeries szego_kernel(cplx w, std::size_t N) {
    if (!(std::abs(w) < 1.0)) throw NotInDiskError("szego_kernel: |w| must be < 1");
    return TruncatedSeries::geometric(std::conj(w), N);
}

/// z^t / (1 - conj(alpha) z)^(t+1) through degree N.
inline TruncatedSeries cauchy_kernel_power(cplx alpha, int t, std::size_t N) {
    const TruncatedSeries k = szego_kernel(alpha, N);
    TruncatedSeries s = k;
    for (int i = 0; i < t; ++i) s = mul(s, k, N);
    for (int i = 0; i < t; ++i) s = multiply_by_z(s).truncated(N);
    return s;
}

struct ModelSpaceBasis {
    BlaschkeProduct theta;
    std::size_t dim = 0;
    std::vector<TruncatedSeries> raw;
    std::vector<TruncatedSeries> ortho;
    std::size_t trunc_degree = 0;
    double tail_factor = 0.0;  // max |alpha|^N; the raw vectors' tails decay like this
};

namespace detail {

/// Modified Gram-Schmidt, run twice.
inline std::vector<TruncatedSeries> orthonormalize(const std::vector<TruncatedSeries>& vs) {
    std::vector<std::vector<cplx>> q;
    for (const auto& v : vs) {
        std::vector<cplx> x = v.vec();
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& e : q) {
                cplx dot{};
                for (std::size_t k = 0; k < x.size(); ++k) dot += x[k] * std::conj(e[k]);
                for (std::size_t k = 0; k < x.size(); ++k) x[k] -= dot * e[k];
            }
        }
        double nrm = 0.0;
        for (const auto& c : x) nrm += std::norm(c);
        nrm = std::sqrt(nrm);
        if (nrm <= 1e-13 * std::max(1.0, v.h2_norm()))
            throw DegreeTooSmallError("build_basis: basis vectors numerically dependent; raise N");
        for (auto& c : x) c /= nrm;
        q.push_back(std::move(x));
    }
    std::vector<TruncatedSeries> out;
    for (auto& x : q) out.emplace_back(std::move(x));
    return out;
}

}  // namespace detail

inline ModelSpaceBasis build_basis(const BlaschkeProduct& theta, std::size_t N) {
    const auto n = static_cast<std::size_t>(theta.degree());
    if (N < 4 * n) throw DegreeTooSmallError("build_basis: need N >= 4 * degree(theta)");
    ModelSpaceBasis b;
    b.theta = theta;
    b.dim = n;
    b.trunc_degree = N;
    b.tail_factor = std::pow(theta.max_zero_modulus(), static_cast<double>(N));
    for (const auto& e : theta.zeros())
        for (int t = 0; t < e.multiplicity; ++t) b.raw.push_back(cauchy_kernel_power(e.alpha, t, N));
    b.ortho = detail::orthonormalize(b.raw);
    return b;
}

struct Projection {
    TruncatedSeries inside;
    double residual_norm = 0.0;
};

inline Projection project(const ModelSpaceBasis& basis, const TruncatedSeries& f) {
    const TruncatedSeries g = f.truncated(basis.trunc_degree);
    TruncatedSeries inside = TruncatedSeries::zero(basis.trunc_degree);
    for (const auto& v : basis.ortho) inside = inside + scale(v, inner(g, v));
    return {inside, (g - inside).h2_norm()};
}

/// Default truncation max(128, 16 degree), capped at 1024.
inline std::size_t default_truncation(const BlaschkeProduct& theta) {
    return std::min<std::size_t>(kMaxDegree, std::max<std::size_t>(128, 16 * static_cast<std::size_t>(theta.degree())));
}

/// max over orthonormal basis vectors v of the relative mass of v o phi
/// outside Q_theta, at a single truncation degree.
inline double model_residual_at(const BlaschkeProduct& theta, const Symbol& phi, std::size_t N) {
    const auto basis = build_basis(theta, N);
    if (basis.dim == 0) return 0.0;
    const auto C = composition_section(phi, N);
    double worst = 0.0;
    for (const auto& v : basis.ortho) {
        const TruncatedSeries u = C.apply(v);
        const double nu = u.h2_norm();
        if (nu <= 1e-300) continue;  // v o phi == 0 lies in every subspace
        worst = std::max(worst, project(basis, scale(u, 1.0 / nu)).residual_norm);
    }
    return worst;
}

/// max over k of the relative mass of C_phi(theta z^k) inside Q_theta; zero
/// exactly when theta H^2 is C_phi-invariant (k = 0 already decides it).
inline double beurling_residual_at(const BlaschkeProduct& theta, const Symbol& phi, std::size_t N,
                                   std::size_t probes = 4) {
    const auto basis = build_basis(theta, N);
    if (basis.dim == 0) return 0.0;
    const auto C = composition_section(phi, N);
    const TruncatedSeries ts = theta.to_series(N);
    double worst = 0.0;
    TruncatedSeries g = ts;
    for (std::size_t k = 0; k < probes; ++k) {
        const TruncatedSeries u = C.apply(g);
        const double nu = u.h2_norm();
        if (nu > 1e-300) {
            const auto p = project(basis, scale(u, 1.0 / nu));
            worst = std::max(worst, p.inside.h2_norm());
        }
        g = multiply_by_z(g).truncated(N);
    }
    return worst;
}

struct ResidualOptions {
    std::size_t degree = 0;  // 0 picks default_truncation(theta)
    Thresholds thresholds{};
    bool refine = true;      // one doubling on an indeterminate verdict
};

namespace detail {

template <typename ResidualFn>
InvarianceReport two_level_report(const BlaschkeProduct& theta, const Symbol& phi, const ResidualOptions& opt,
                                  ResidualFn residual_at) {
    require_self_map(phi);
    std::size_t N = opt.degree ? opt.degree : default_truncation(theta);
    if (2 * N > kMaxDegree) N = kMaxDegree / 2;
    InvarianceReport r;
    r.theta = serialize(theta);
    r.phi = describe(phi);
    r.criterion = "projection";
    double r1 = residual_at(theta, phi, N);
    double r2 = residual_at(theta, phi, 2 * N);
    r.levels = {N, 2 * N};
    r.residuals = {r1, r2};
    r.verdict = classify_residuals(r1, r2, opt.thresholds);
    if (r.verdict == Verdict::indeterminate && opt.refine && 4 * N <= kMaxDegree) {
        r1 = r2;
        r2 = residual_at(theta, phi, 4 * N);
        r.levels = {2 * N, 4 * N};
        r.residuals = {r1, r2};
        r.verdict = classify_residuals(r1, r2, opt.thresholds);
        r.details["refined"] = true;
    }
    if (theta.max_zero_modulus() > 0.9) r.details["warning"] = "zero modulus above 0.9; truncation tails decay slowly";
    return r;
}

}  // namespace detail

/// Q_theta in Lat C_phi by projection residuals at N and 2N.
inline InvarianceReport invariance_residual(const BlaschkeProduct& theta, const Symbol& phi,
                                            const ResidualOptions& opt = {}) {
    return detail::two_level_report(theta, phi, opt, [](const auto& t, const auto& p, std::size_t n) {
        return model_residual_at(t, p, n);
    });
}

/// theta H^2 in Lat C_phi by projection residuals at N and 2N; the
/// independent route to the multiplicity criterion.
inline InvarianceReport beurling_projection_residual(const BlaschkeProduct& theta, const Symbol& phi,
                                                     const ResidualOptions& opt = {}) {
    return detail::two_level_report(theta, phi, opt, [](const auto& t, const auto& p, std::size_t n) {
        return beurling_residual_at(t, p, n);
    });
}

/// Beurling-type invariance for any symbol. Constants are decided directly:
/// C_c (theta f) = theta(c) f(c), which lies in theta H^2 iff theta(c) = 0
/// (or theta is a unimodular constant).
inline InvarianceReport beurling_invariance_any(const BlaschkeProduct& theta, const Symbol& phi,
                                                const BeurlingOptions& opt = {}) {
    if (!is_constant(phi)) return beurling_invariance(theta, phi, opt);
    const cplx c = symbol_value(phi, 0.0);
    if (!(std::abs(c) < 1.0)) throw NotSelfMapError("constant symbol outside the open disk");
    InvarianceReport r;
    r.theta = serialize(theta);
    r.phi = describe(phi);
    r.criterion = "multiplicity";
    const double v = std::abs(theta(c));
    r.levels = {0};
    r.residuals = {theta.degree() == 0 ? 0.0 : v};
    r.verdict = (theta.degree() == 0 || v <= kZeroMatchTol) ? Verdict::invariant : Verdict::not_invariant;
    r.details["constant_symbol"] = true;
    return r;
}

struct ReducingReport {
    InvarianceReport model;
    InvarianceReport beurling;
    bool reduces() const { return model.invariant() && beurling.invariant(); }
    Verdict verdict() const {
        if (reduces()) return Verdict::invariant;
        if (model.verdict == Verdict::indeterminate || beurling.verdict == Verdict::indeterminate)
            return Verdict::indeterminate;
        return Verdict::not_invariant;
    }
};

inline ReducingReport reducing_residual(const BlaschkeProduct& theta, const Symbol& phi,
                                        const ResidualOptions& opt = {}) {
    return {invariance_residual(theta, phi, opt), beurling_invariance_any(theta, phi)};
}

inline nlohmann::ordered_json to_json(const ReducingReport& r) {
    nlohmann::ordered_json j;
    j["model"] = to_json(r.model);
    j["beurling"] = to_json(r.beurling);
    j["reduces"] = r.reduces();
    j["verdict"] = r.reduces() ? "reduces" : (r.verdict() == Verdict::indeterminate ? "indeterminate" : "does_not_reduce");
    return j;
}

}  // namespace hm
