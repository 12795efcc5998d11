#pragma once

// Finite sections of operators on H^2 in the monomial basis: entry (i, j) is
// the coefficient of z^i in T z^j, for 0 <= i, j <= N.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "hm/blaschke.hpp"
#include "hm/moebius.hpp"
#include "hm/series.hpp"
#include "hm/symbol.hpp"

namespace hm {

using MatrixC = Eigen::MatrixXcd;
using VectorC = Eigen::VectorXcd;

enum class SectionRole { composition, multiplication, backward_shift, adjoint, derived };

inline const char* to_string(SectionRole r) {
    switch (r) {
        case SectionRole::composition: return "composition";
        case SectionRole::multiplication: return "multiplication";
        case SectionRole::backward_shift: return "backward_shift";
        case SectionRole::adjoint: return "adjoint";
        case SectionRole::derived: return "derived";
    }
    return "?";
}

struct OperatorSection {
    MatrixC entries;
    SectionRole role = SectionRole::derived;

    std::size_t degree() const { return static_cast<std::size_t>(entries.rows()) - 1; }

    /// Top-left (n+1) x (n+1) block.
    OperatorSection block(std::size_t n) const {
        const auto m = static_cast<Eigen::Index>(n + 1);
        return {entries.topLeftCorner(m, m), role};
    }

    /// Applies the section to a series (zero-padded or cut to the section size).
    TruncatedSeries apply(const TruncatedSeries& f) const {
        const auto v = to_vector(f.truncated(degree()));
        const VectorC out = entries * v;
        return TruncatedSeries(std::vector<cplx>(out.data(), out.data() + out.size()));
    }

    static VectorC to_vector(const TruncatedSeries& f) {
        VectorC v(static_cast<Eigen::Index>(f.degree() + 1));
        for (std::size_t k = 0; k <= f.degree(); ++k) v(static_cast<Eigen::Index>(k)) = f[k];
        return v;
    }
};

inline OperatorSection operator*(const OperatorSection& A, const OperatorSection& B) {
    return {A.entries * B.entries, SectionRole::derived};
}

/// Column j holds the coefficients of phi^j truncated at N (column 0 = e_0).
/// Requires |phi(0)| < 1 and a boundary sup estimate <= 1 + 1e-6.
inline OperatorSection composition_section(const TruncatedSeries& phi, std::size_t N) {
    if (!(std::abs(phi[0]) < 1.0)) throw NotSelfMapError("composition_section: |phi(0)| >= 1");
    const auto p = phi.truncated(N);
    if (boundary_sup_estimate(p, 512, default_sup_radius(std::max<std::size_t>(N, 64))) > 1.0 + 1e-6)
        throw NotSelfMapError("composition_section: phi exceeds modulus 1 on the sampled circle");
    const auto n = static_cast<Eigen::Index>(N + 1);
    MatrixC m = MatrixC::Zero(n, n);
    TruncatedSeries power = TruncatedSeries::constant(1.0, N);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) m(i, j) = power[static_cast<std::size_t>(i)];
        if (j + 1 < n) power = mul(power, p, N);
    }
    return {std::move(m), SectionRole::composition};
}

inline OperatorSection composition_section(const Symbol& phi, std::size_t N) {
    if (const auto* m = std::get_if<MoebiusMap>(&phi))
        if (!is_self_map(*m).is_self_map) throw NotSelfMapError("composition_section: not a self-map");
    return composition_section(symbol_series(phi, N), N);
}

/// Lower-triangular Toeplitz section of f -> h f.
inline OperatorSection multiplication_section(const TruncatedSeries& h, std::size_t N) {
    const auto n = static_cast<Eigen::Index>(N + 1);
    MatrixC m = MatrixC::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j <= i; ++j) m(i, j) = h[static_cast<std::size_t>(i - j)];
    return {std::move(m), SectionRole::multiplication};
}

/// M_z^* f = (f - f(0))/z: ones on the superdiagonal.
inline OperatorSection backward_shift_section(std::size_t N) {
    const auto n = static_cast<Eigen::Index>(N + 1);
    MatrixC m = MatrixC::Zero(n, n);
    for (Eigen::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
    return {std::move(m), SectionRole::backward_shift};
}

/// Conjugate transpose. P_N T^* P_N = (P_N T P_N)^* holds exactly.
inline OperatorSection adjoint_section(const OperatorSection& A) {
    return {A.entries.adjoint(), SectionRole::adjoint};
}

/// Largest singular value by power iteration on A^* A.
template <typename Derived>
double operator_norm(const Eigen::MatrixBase<Derived>& A, int max_iterations = 200, double rel_tol = 1e-10) {
    if (A.size() == 0) return 0.0;
    const MatrixC M = A;
    if (M.norm() == 0.0) return 0.0;
    VectorC v(M.cols());
    // Deterministic start with no special structure.
    for (Eigen::Index k = 0; k < v.size(); ++k)
        v(k) = cplx(1.0 / static_cast<double>(k + 1), 0.5 / static_cast<double>(k + 2));
    v.normalize();
    double lambda = 0.0;
    for (int it = 0; it < max_iterations; ++it) {
        VectorC w = M.adjoint() * (M * v);
        const double next = w.norm();
        if (next == 0.0) return 0.0;
        v = w / next;
        const bool done = std::abs(next - lambda) <= rel_tol * next;
        lambda = next;
        if (done) break;
    }
    return std::sqrt(lambda);
}

inline double operator_norm(const OperatorSection& A) { return operator_norm(A.entries); }

inline constexpr std::size_t kWorkingDegreeFactor = 4;

struct CowenSections {
    OperatorSection lhs;  // (C_phi)^* block
    OperatorSection rhs;  // M_g C_sigma M_h^* block
    double discrepancy = 0.0;
};

/// Builds C_phi^* and M_g C_sigma M_h^* at working degree 4N and compares
/// their top-left (N+1) x (N+1) blocks in operator norm.
inline CowenSections cowen_adjoint_sections(const MoebiusMap& phi, std::size_t N) {
    if (!is_self_map(phi).is_self_map) throw NotSelfMapError("cowen_adjoint_check: not a self-map");
    const std::size_t W = kWorkingDegreeFactor * N;
    const MoebiusMap m = normalize(phi);
    const MoebiusMap sigma = cowen_sigma(m);
    const auto gh = cowen_g_h(m, W);

    const auto lhs = adjoint_section(composition_section(m.to_series(W), W)).block(N);
    const auto Mg = multiplication_section(gh.g, W);
    const auto Cs = composition_section(sigma.to_series(W), W);
    const auto MhStar = adjoint_section(multiplication_section(gh.h, W));
    const auto rhs = (Mg * Cs * MhStar).block(N);
    CowenSections out{lhs, rhs, operator_norm((lhs.entries - rhs.entries).eval())};
    out.rhs.role = SectionRole::derived;
    return out;
}

inline double cowen_adjoint_check(const MoebiusMap& phi, std::size_t N) {
    return cowen_adjoint_sections(phi, N).discrepancy;
}

/// C_phi^* f = z sigma'(z) f(sigma(z))/sigma(z) for f(0) = 0, where sigma is
/// the companion of phi. f(sigma)/sigma is evaluated as (f/z) o sigma, which
/// is the same function without the removable singularity at a zero of sigma.
inline TruncatedSeries shapiro_adjoint_apply(const TruncatedSeries& f, const MoebiusMap& sigma_raw, std::size_t N) {
    if (std::abs(f[0]) > kEpsZero) throw NonvanishingAtZeroError("shapiro_adjoint_apply: f(0) != 0");
    const MoebiusMap sigma = normalize(sigma_raw);
    const TruncatedSeries den{sigma.d(), sigma.c()};
    const TruncatedSeries dsigma = scale(reciprocal(mul(den, den, N), N), sigma.determinant());
    const TruncatedSeries quotient = compose(divide_by_z(f.truncated(std::max<std::size_t>(f.degree(), 1))),
                                             sigma.to_series(N), N);
    return multiply_by_z(mul(dsigma, quotient, N)).truncated(N);
}

/// C_phi^* f through degree N from the conjugate-transposed composition
/// section; exact for polynomial f of degree <= N.
inline TruncatedSeries adjoint_section_apply(const MoebiusMap& phi, const TruncatedSeries& f, std::size_t N) {
    const std::size_t W = std::max(N, f.degree());
    const auto adj = adjoint_section(composition_section(phi.to_series(W), W));
    return adj.apply(f.truncated(W)).truncated(N);
}

/// Largest coefficient gap between the two routes to C_phi^* f.
inline double shapiro_discrepancy(const MoebiusMap& phi, const TruncatedSeries& f, std::size_t N) {
    const auto via_formula = shapiro_adjoint_apply(f, cowen_sigma(phi), N);
    const auto via_section = adjoint_section_apply(phi, f, N);
    double worst = 0.0;
    for (std::size_t k = 0; k <= N; ++k) worst = std::max(worst, std::abs(via_formula[k] - via_section[k]));
    return worst;
}

// ---------------------------------------------------------------------------
// X = (1/theta) C_phi^* M_theta as a boundedness diagnostic

struct XSection {
    std::size_t degree = 0;
    bool divisible = false;
    double norm = 0.0;                    // operator norm of X_N when divisible
    double principal_part_energy = 0.0;   // sum of squared division remainders
    double max_relative_remainder = 0.0;
};

inline nlohmann::ordered_json to_json(const XSection& x) {
    nlohmann::ordered_json j;
    j["N"] = x.degree;
    j["divisible"] = x.divisible;
    if (x.divisible) j["norm"] = x.norm;
    else j["principal_part_energy"] = x.principal_part_energy;
    j["max_relative_remainder"] = x.max_relative_remainder;
    return j;
}

inline constexpr double kDivisibilityTol = 1e-8;

/// For each N: column j of X_N is C_phi^*(theta z^j) / theta, cut to degree N.
/// C_phi^* is applied through rows 0..2N of the adjoint composition section of
/// length 3N, so the top-down division sees 2N coefficients.
inline XSection lemma_x_section(const BlaschkeProduct& theta, const Symbol& phi, std::size_t N) {
    require_self_map(phi);
    const std::size_t M = 2 * N;
    const std::size_t W = 3 * N + static_cast<std::size_t>(theta.degree());
    const TruncatedSeries p = symbol_series(phi, W);
    const auto rows = static_cast<Eigen::Index>(W + 1);
    const auto cols = static_cast<Eigen::Index>(M + 1);
    MatrixC powers(rows, cols);  // column k = phi^k
    TruncatedSeries power = TruncatedSeries::constant(1.0, W);
    for (Eigen::Index k = 0; k < cols; ++k) {
        for (Eigen::Index i = 0; i < rows; ++i) powers(i, k) = power[static_cast<std::size_t>(i)];
        if (k + 1 < cols) power = mul(power, p, W);
    }
    const TruncatedSeries theta_series = theta.to_series(W);
    const auto n1 = static_cast<Eigen::Index>(N + 1);
    MatrixC X = MatrixC::Zero(n1, n1);
    XSection out;
    out.degree = N;
    for (Eigen::Index j = 0; j < n1; ++j) {
        VectorC g = VectorC::Zero(rows);
        for (Eigen::Index i = j; i < rows; ++i) g(i) = theta_series[static_cast<std::size_t>(i - j)];
        const VectorC v = powers.adjoint() * g;  // C_phi^*(theta z^j) through degree 2N
        const TruncatedSeries vs(std::vector<cplx>(v.data(), v.data() + v.size()));
        const auto div = divide_by_blaschke(vs, theta);
        const double scale_ref = std::max(vs.h2_norm(), 1e-300);
        out.principal_part_energy += div.remainder_energy();
        out.max_relative_remainder =
            std::max(out.max_relative_remainder, std::sqrt(div.remainder_energy()) / scale_ref);
        for (Eigen::Index i = 0; i < n1; ++i) X(i, j) = div.quotient[static_cast<std::size_t>(i)];
    }
    out.divisible = out.max_relative_remainder <= kDivisibilityTol;
    if (out.divisible) out.norm = operator_norm(X);
    return out;
}

inline std::vector<XSection> lemma_xf_sections(const BlaschkeProduct& theta, const Symbol& phi,
                                               const std::vector<std::size_t>& degrees = {64, 128, 256, 512}) {
    std::vector<XSection> out;
    out.reserve(degrees.size());
    for (auto N : degrees) out.push_back(lemma_x_section(theta, phi, N));
    return out;
}

inline nlohmann::ordered_json to_json(const OperatorSection& s) {
    nlohmann::ordered_json j;
    j["role"] = to_string(s.role);
    j["N"] = s.degree();
    auto re = nlohmann::ordered_json::array();
    auto im = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < s.entries.rows(); ++i) {
        std::vector<double> r, q;
        for (Eigen::Index k = 0; k < s.entries.cols(); ++k) {
            r.push_back(s.entries(i, k).real());
            q.push_back(s.entries(i, k).imag());
        }
        re.push_back(r);
        im.push_back(q);
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

}  // namespace hm
