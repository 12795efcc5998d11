#pragma once

// Seeded generators for symbols and inner functions. All draws go through
// std::mt19937_64 so identical seeds give identical sequences.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "hm/blaschke.hpp"
#include "hm/moebius.hpp"
#include "hm/series.hpp"

namespace hm {

using Rng = std::mt19937_64;

/// Uniform point in the disk of the given radius.
inline cplx random_disk_point(Rng& rng, double radius = 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    const double t = 2.0 * std::numbers::pi * u(rng);
    return std::polar(r, t);
}

/// Normalized LFT self-map with slack >= min_slack, by rejection on
/// (a z + b)/(c z + 1) with a, b, c uniform in the unit disk.
inline MoebiusMap random_self_map_lft(Rng& rng, double min_slack = 0.05) {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        const cplx a = random_disk_point(rng), b = random_disk_point(rng), c = random_disk_point(rng);
        if (std::abs(a - b * c) <= 1e-3) continue;
        const MoebiusMap m = normalize(MoebiusMap(a, b, c, 1.0));
        if (is_self_map(m).slack >= min_slack) return m;
    }
    throw std::runtime_error("random_self_map_lft: rejection sampling did not converge");
}

/// (a, b) with |a| + |b| <= bound, |b| >= min_slope.
inline std::pair<cplx, cplx> random_affine_pair(Rng& rng, double bound, double min_slope = 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (;;) {
        const double total = bound * u(rng);
        const double share = u(rng);
        const double mb = total * share;
        if (mb < min_slope) continue;
        const cplx a = std::polar(total - mb, 2.0 * std::numbers::pi * u(rng));
        const cplx b = std::polar(mb, 2.0 * std::numbers::pi * u(rng));
        return {a, b};
    }
}

/// Finite Blaschke product with `degree` zeros (multiplicities folded in when
/// zeros repeat) of modulus <= max_modulus.
inline BlaschkeProduct random_blaschke(Rng& rng, int degree, double max_modulus, bool zero_at_origin = false) {
    std::vector<BlaschkeZero> zs;
    int remaining = degree;
    if (zero_at_origin && remaining > 0) {
        zs.push_back({0.0, 1});
        --remaining;
    }
    std::uniform_int_distribution<int> repeat(0, 3);
    while (remaining > 0) {
        const cplx alpha = random_disk_point(rng, max_modulus);
        const int m = (repeat(rng) == 0 && remaining >= 2) ? 2 : 1;
        zs.push_back({alpha, m});
        remaining -= m;
    }
    return BlaschkeProduct(std::move(zs));
}

/// Polynomial self-map with a definitely nonzero coefficient of degree >= 2:
/// coefficients scaled so sum |c_k| <= bound.
inline TruncatedSeries random_nonaffine_polynomial(Rng& rng, std::size_t degree, double bound = 0.95) {
    std::vector<cplx> c(degree + 1);
    for (auto& x : c) x = random_disk_point(rng);
    c[degree] = std::polar(0.5 + 0.5 * std::abs(c[degree]), std::arg(c[degree]));
    double s = 0.0;
    for (auto& x : c) s += std::abs(x);
    for (auto& x : c) x *= bound / s;
    return TruncatedSeries(c);
}

}  // namespace hm
