#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/SVD>
#include <gtest/gtest.h>

#include "hm/operators.hpp"
#include "hm/sampling.hpp"

using hm::BlaschkeProduct;
using hm::cplx;
using hm::MatrixC;
using hm::MoebiusMap;
using hm::TruncatedSeries;

namespace {

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double largest_singular_value(const MatrixC& A) {
    Eigen::JacobiSVD<MatrixC> svd(A);
    return svd.singularValues()(0);
}

}  // namespace

TEST(Operators, CompositionSectionExamples) {
    const auto id = hm::composition_section(TruncatedSeries{0.0, 1.0}, 6);
    EXPECT_TRUE(id.entries.isApprox(MatrixC::Identity(7, 7)));

    const auto sq = hm::composition_section(TruncatedSeries{0.0, 0.0, 1.0}, 4);
    MatrixC expected = MatrixC::Zero(5, 5);
    expected(0, 0) = expected(2, 1) = expected(4, 2) = 1.0;
    EXPECT_EQ(sq.entries, expected);

    // column j of C_{a+bz} is the binomial expansion of (a + bz)^j
    const cplx a(0.2, 0.1), b(0.5, -0.2);
    const auto aff = hm::composition_section(TruncatedSeries{a, b}, 12);
    for (int j = 0; j <= 12; ++j)
        for (int i = 0; i <= 12; ++i) {
            const cplx want = i <= j ? binom(j, i) * std::pow(a, j - i) * std::pow(b, i) : cplx{};
            EXPECT_NEAR(std::abs(aff.entries(i, j) - want), 0.0, 1e-14);
        }
    EXPECT_THROW(hm::composition_section(TruncatedSeries{1.0, 0.5}, 4), hm::NotSelfMapError);
}

TEST(Operators, MultiplicationSectionExamples) {
    EXPECT_TRUE(hm::multiplication_section(TruncatedSeries{1.0}, 5).entries.isApprox(MatrixC::Identity(6, 6)));
    const auto down = hm::multiplication_section(TruncatedSeries{0.0, 1.0}, 5);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) EXPECT_EQ(down.entries(i, j), cplx(i == j + 1 ? 1.0 : 0.0));
    const auto bi = hm::multiplication_section(TruncatedSeries{1.0, -0.5}, 4);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const double want = i == j ? 1.0 : (i == j + 1 ? -0.5 : 0.0);
            EXPECT_EQ(bi.entries(i, j), cplx(want));
        }
}

TEST(Operators, AdjointSectionExamples) {
    const auto down = hm::multiplication_section(TruncatedSeries{0.0, 1.0}, 7);
    EXPECT_EQ(hm::adjoint_section(down).entries, hm::backward_shift_section(7).entries);

    const auto c = hm::composition_section(TruncatedSeries{0.1, cplx(0.3, 0.4), 0.2}, 9);
    EXPECT_EQ(hm::adjoint_section(hm::adjoint_section(c)).entries, c.entries);

    const auto half = hm::adjoint_section(hm::composition_section(TruncatedSeries{0.0, 0.5}, 8));
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 8; ++j) EXPECT_EQ(half.entries(i, j), cplx(i == j ? std::pow(0.5, i) : 0.0));
}

TEST(Operators, OperatorNormMatchesSvd) {
    MatrixC d = MatrixC::Zero(4, 4);
    d.diagonal() << 0.5, 3.0, cplx(0, -2), 1.0;
    EXPECT_NEAR(hm::operator_norm(d), 3.0, 1e-9);
    EXPECT_EQ(hm::operator_norm(MatrixC::Zero(3, 3)), 0.0);

    hm::Rng rng(2);
    for (int t = 0; t < 10; ++t) {
        MatrixC A(12, 12);
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) A(i, j) = hm::random_disk_point(rng);
        EXPECT_NEAR(hm::operator_norm(A), largest_singular_value(A), 1e-6 * largest_singular_value(A));
    }
}

TEST(Operators, CowenAdjointExamples) {
    EXPECT_LE(hm::cowen_adjoint_check(MoebiusMap(1, 0, 0, 2), 32), 1e-12);
    EXPECT_LE(hm::cowen_adjoint_check(MoebiusMap(1, 0, -1, 2), 64), 1e-8);
    EXPECT_EQ(hm::cowen_adjoint_check(MoebiusMap::identity(), 16), 0.0);
    EXPECT_THROW(hm::cowen_adjoint_check(MoebiusMap(2, 0, 0, 1), 8), hm::NotSelfMapError);
}

TEST(Operators, ShapiroExamples) {
    // f = z, sigma = z/2 -> z/2; phi = z/2 is its own companion
    const auto r1 = hm::shapiro_adjoint_apply(TruncatedSeries{0.0, 1.0}, MoebiusMap(1, 0, 0, 2), 10);
    EXPECT_NEAR(std::abs(r1[1] - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(r1.h2_norm(), 0.5, 1e-15);
    const auto col = hm::adjoint_section_apply(MoebiusMap(1, 0, 0, 2), TruncatedSeries{0.0, 1.0}, 10);
    for (std::size_t k = 0; k <= 10; ++k) EXPECT_NEAR(std::abs(col[k] - r1[k]), 0.0, 1e-15);

    // f = z: result is z sigma'
    const MoebiusMap sigma(2, 1, 0, 4);
    const auto r2 = hm::shapiro_adjoint_apply(TruncatedSeries{0.0, 1.0}, sigma, 10);
    EXPECT_NEAR(std::abs(r2[1] - 0.5), 0.0, 1e-15);
    for (std::size_t k = 2; k <= 10; ++k) EXPECT_NEAR(std::abs(r2[k]), 0.0, 1e-15);

    // f = z^2, sigma = (z+1)/2 -> z(z+1)/4, the adjoint of C_{z/(2-z)} on e_2
    const auto r3 = hm::shapiro_adjoint_apply(TruncatedSeries{0.0, 0.0, 1.0}, MoebiusMap(1, 1, 0, 2), 10);
    const auto via = hm::adjoint_section_apply(MoebiusMap(1, 0, -1, 2), TruncatedSeries{0.0, 0.0, 1.0}, 10);
    for (std::size_t k = 0; k <= 10; ++k) {
        const double want = (k == 1 || k == 2) ? 0.25 : 0.0;
        EXPECT_NEAR(std::abs(r3[k] - want), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(via[k] - want), 0.0, 1e-15);
    }
    EXPECT_THROW(hm::shapiro_adjoint_apply(TruncatedSeries{1.0, 1.0}, sigma, 4), hm::NonvanishingAtZeroError);
}

TEST(Operators, AdjointSendsKernelsToKernels) {
    // C_phi^* k_w = k_{phi(w)}; the section sees this up to the tail |w|^N.
    const MoebiusMap phi(1, 0, -1, 2);
    const std::size_t N = 80;
    for (cplx w : {cplx(0.3, 0.1), cplx(-0.4, 0.2), cplx(0.0, 0.5)}) {
        const auto got = hm::adjoint_section_apply(phi, TruncatedSeries::geometric(std::conj(w), N), N);
        const cplx pw = phi(w);
        for (std::size_t k = 0; k <= N / 2; ++k)
            EXPECT_NEAR(std::abs(got[k] - std::pow(std::conj(pw), static_cast<double>(k))), 0.0, 1e-12);
    }
}

TEST(Operators, QuotientOperatorExamples) {
    // theta = z, phi = z/2: X = diag(1/2, 1/4, ...), norm 1/2
    const auto x = hm::lemma_x_section(hm::blaschke_factor(0.0), MoebiusMap(1, 0, 0, 2), 32);
    EXPECT_TRUE(x.divisible);
    EXPECT_NEAR(x.norm, 0.5, 1e-9);

    // theta = z^2, phi affine: Q_theta = span{1, z} is preserved, so C_phi^* z^2 H^2 lies in z^2 H^2
    const auto x2 = hm::lemma_x_section(BlaschkeProduct::power(0.0, 2), MoebiusMap::affine(0.4, 0.3), 32);
    EXPECT_TRUE(x2.divisible);

    // theta = b_{0.5}, phi = z/2 sends k_{0.5} to k_{0.25}, outside Q_theta
    const auto x3 = hm::lemma_x_section(hm::blaschke_factor(0.5), MoebiusMap(1, 0, 0, 2), 32);
    EXPECT_FALSE(x3.divisible);
    EXPECT_GT(x3.principal_part_energy, 1e-3);

    // theta = z b_{0.5}, phi = 2z/(4 - z): an invariant case, norms stay bounded
    const BlaschkeProduct theta({{0.0, 1}, {0.5, 1}});
    const auto seq = hm::lemma_xf_sections(theta, MoebiusMap(2, 0, -1, 4), {32, 64, 128});
    ASSERT_EQ(seq.size(), 3u);
    for (const auto& s : seq) {
        EXPECT_TRUE(s.divisible);
        EXPECT_LT(s.norm, 2.0);
    }
    EXPECT_NEAR(seq[1].norm, seq[2].norm, 1e-3);
}

// ---- properties -----------------------------------------------------------

TEST(OperatorsProperty, SectionActionMatchesCompose) {
    hm::Rng rng(40);
    const std::size_t N = 40;
    for (int t = 0; t < 10; ++t) {
        const auto phi = hm::random_nonaffine_polynomial(rng, 3, 0.9);
        std::vector<cplx> fc(N / 2 + 1);
        for (auto& c : fc) c = hm::random_disk_point(rng);
        const TruncatedSeries f(fc);
        const auto via_section = hm::composition_section(phi, N).apply(f);
        const auto via_compose = hm::compose(f, phi, N);
        for (std::size_t k = 0; k <= N; ++k) EXPECT_NEAR(std::abs(via_section[k] - via_compose[k]), 0.0, 1e-12);
    }
}

TEST(OperatorsProperty, CowenIdentityOnRandomMaps) {
    hm::Rng rng(41);
    for (int t = 0; t < 8; ++t) EXPECT_LE(hm::cowen_adjoint_check(hm::random_self_map_lft(rng), 24), 1e-8);
}

TEST(OperatorsProperty, ShapiroAgreesWithSection) {
    hm::Rng rng(42);
    const std::size_t N = 48;
    for (int t = 0; t < 10; ++t) {
        const auto phi = hm::random_self_map_lft(rng);
        std::vector<cplx> fc(6);
        for (std::size_t k = 1; k < fc.size(); ++k) fc[k] = hm::random_disk_point(rng);
        EXPECT_LE(hm::shapiro_discrepancy(phi, TruncatedSeries(fc), N / 2), 1e-8);
    }
}

TEST(OperatorsProperty, MultiplicationCommutesWithShift) {
    hm::Rng rng(43);
    for (int t = 0; t < 10; ++t) {
        const auto B = hm::random_blaschke(rng, 1 + t % 3, 0.8);
        const auto M = hm::multiplication_section(B.to_series(30), 30);
        const auto S = hm::multiplication_section(TruncatedSeries{0.0, 1.0}, 30);
        EXPECT_EQ((M * S).entries, (S * M).entries);
    }
}

TEST(OperatorsProperty, SectionNormRespectsLittlewoodBound) {
    hm::Rng rng(44);
    for (int t = 0; t < 10; ++t) {
        const auto phi = hm::random_self_map_lft(rng);
        const double p0 = std::abs(phi(0.0));
        const double bound = std::sqrt((1 + p0) / (1 - p0));
        EXPECT_LE(hm::operator_norm(hm::composition_section(phi.to_series(40), 40)), bound + 1e-8);
    }
}
