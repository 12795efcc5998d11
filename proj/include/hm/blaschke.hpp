#pragma once

// Finite Blaschke products gamma * prod_i b_{alpha_i}^{n_i}, the inner
// functions with finite zero data.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "hm/errors.hpp"
#include "hm/moebius.hpp"
#include "hm/series.hpp"

namespace hm {

inline constexpr double kZeroMatchTol = 1e-10;

struct BlaschkeZero {
    cplx alpha;
    int multiplicity = 1;
    friend bool operator==(const BlaschkeZero&, const BlaschkeZero&) = default;
};

class BlaschkeProduct {
public:
    BlaschkeProduct() = default;  // the constant 1

    explicit BlaschkeProduct(std::vector<BlaschkeZero> zeros, cplx gamma = 1.0) : gamma_(gamma) {
        if (std::abs(std::abs(gamma) - 1.0) > 1e-12)
            throw InvalidArgumentError("blaschke: gamma must be unimodular");
        for (const auto& z : zeros) {
            if (!(std::abs(z.alpha) < 1.0)) throw NotInDiskError("blaschke: zero outside the open disk");
            if (z.multiplicity < 1) throw InvalidArgumentError("blaschke: multiplicity must be positive");
        }
        std::sort(zeros.begin(), zeros.end(), [](const auto& p, const auto& q) {
            return p.alpha.real() != q.alpha.real() ? p.alpha.real() < q.alpha.real()
                                                    : p.alpha.imag() < q.alpha.imag();
        });
        for (const auto& z : zeros) {
            auto hit = std::find_if(zeros_.begin(), zeros_.end(), [&](const auto& e) {
                return std::abs(e.alpha - z.alpha) <= kZeroMatchTol;
            });
            if (hit != zeros_.end())
                hit->multiplicity += z.multiplicity;
            else
                zeros_.push_back(z);
        }
    }

    static BlaschkeProduct factor(cplx alpha) {
        if (!(std::abs(alpha) < 1.0)) throw NotInDiskError("blaschke_factor: |alpha| must be < 1");
        return BlaschkeProduct({{alpha, 1}});
    }
    /// b_alpha^n
    static BlaschkeProduct power(cplx alpha, int n) { return BlaschkeProduct({{alpha, n}}); }
    static BlaschkeProduct unimodular(cplx gamma) { return BlaschkeProduct({}, gamma); }

    cplx gamma() const { return gamma_; }
    const std::vector<BlaschkeZero>& zeros() const { return zeros_; }
    int degree() const {
        int n = 0;
        for (const auto& z : zeros_) n += z.multiplicity;
        return n;
    }
    double max_zero_modulus() const {
        double r = 0.0;
        for (const auto& z : zeros_) r = std::max(r, std::abs(z.alpha));
        return r;
    }

    cplx operator()(cplx z) const { return evaluate(z); }

    cplx evaluate(cplx z) const {
        cplx v = gamma_;
        for (const auto& e : zeros_) {
            const cplx den = 1.0 - std::conj(e.alpha) * z;
            if (std::abs(den) <= kDeterminantFloor) throw PoleError("blaschke: evaluation at a pole");
            const cplx f = (z - e.alpha) / den;
            for (int k = 0; k < e.multiplicity; ++k) v *= f;
        }
        return v;
    }

    /// Taylor coefficients through `degree`, built as products of the factor
    /// expansions (z - alpha) * sum conj(alpha)^k z^k.
    TruncatedSeries to_series(std::size_t degree) const {
        TruncatedSeries s = TruncatedSeries::constant(gamma_, degree);
        for (const auto& e : zeros_) {
            const TruncatedSeries f =
                mul(TruncatedSeries{-e.alpha, 1.0}, TruncatedSeries::geometric(std::conj(e.alpha), degree), degree);
            for (int k = 0; k < e.multiplicity; ++k) s = mul(s, f, degree);
        }
        return s;
    }

    /// Bound on the l2 mass of the coefficients beyond `degree`, from the
    /// coefficientwise majorant (1 + z)^n / (1 - r z)^n with r the largest zero
    /// modulus and n the degree.
    double tail_bound(std::size_t degree) const {
        const double r = max_zero_modulus();
        const int n = this->degree();
        if (n == 0 || r == 0.0) return 0.0;
        // |c_k| <= 2^n binom(k + n - 1, n - 1) r^(k - n)
        double total = 0.0;
        for (std::size_t k = degree + 1; k < degree + 4096; ++k) {
            double binom = 1.0;
            for (int j = 1; j < n; ++j) binom *= static_cast<double>(k + j) / j;
            const double term = std::pow(2.0, n) * binom * std::pow(r, static_cast<double>(k) - n);
            total += term * term;
            if (term * term < 1e-40 * (total + 1e-300) || term == 0.0) break;
        }
        return std::sqrt(total);
    }

    /// Removes one zero at the origin (theta/z). Requires theta(0) = 0.
    BlaschkeProduct divided_by_z() const {
        std::vector<BlaschkeZero> rest;
        bool found = false;
        for (const auto& e : zeros_) {
            if (!found && std::abs(e.alpha) <= kZeroMatchTol) {
                found = true;
                if (e.multiplicity > 1) rest.push_back({e.alpha, e.multiplicity - 1});
                continue;
            }
            rest.push_back(e);
        }
        if (!found) throw NonvanishingAtZeroError("theta/z: theta does not vanish at 0");
        return BlaschkeProduct(std::move(rest), gamma_);
    }

    BlaschkeProduct times(const BlaschkeProduct& other) const {
        auto all = zeros_;
        all.insert(all.end(), other.zeros_.begin(), other.zeros_.end());
        return BlaschkeProduct(std::move(all), gamma_ * other.gamma_ / std::abs(gamma_ * other.gamma_));
    }

    friend bool operator==(const BlaschkeProduct&, const BlaschkeProduct&) = default;

private:
    cplx gamma_ = 1.0;
    std::vector<BlaschkeZero> zeros_;
};

inline BlaschkeProduct blaschke_factor(cplx alpha) { return BlaschkeProduct::factor(alpha); }

inline int multiplicity_at(const BlaschkeProduct& B, cplx w) {
    if (!(std::abs(w) < 1.0)) throw NotInDiskError("multiplicity_at: w must lie in the open disk");
    for (const auto& e : B.zeros())
        if (std::abs(e.alpha - w) <= kZeroMatchTol) return e.multiplicity;
    return 0;
}

/// Quotient (S / B) for a series S that vanishes at every zero of B to at
/// least the zero's multiplicity: multiply by prod (1 - conj(alpha) z)^n, then
/// deflate by each root. The remainders collected along the way are the
/// principal-part data; they vanish (up to rounding) iff B divides S.
struct BlaschkeDivision {
    TruncatedSeries quotient;
    std::vector<cplx> remainders;
    double remainder_energy() const {
        double s = 0.0;
        for (const auto& r : remainders) s += std::norm(r);
        return s;
    }
};

inline BlaschkeDivision divide_by_blaschke(const TruncatedSeries& s, const BlaschkeProduct& B) {
    const std::size_t n = s.degree();
    TruncatedSeries acc = s;
    for (const auto& e : B.zeros())
        for (int k = 0; k < e.multiplicity; ++k)
            acc = mul(acc, TruncatedSeries{1.0, -std::conj(e.alpha)}, n);
    BlaschkeDivision out{acc, {}};
    for (const auto& e : B.zeros()) {
        for (int k = 0; k < e.multiplicity; ++k) {
            auto d = deflate(out.quotient, e.alpha);
            out.remainders.push_back(d.remainder);
            out.quotient = std::move(d.quotient);
        }
    }
    out.quotient = scale(out.quotient, 1.0 / B.gamma());
    return out;
}

}  // namespace hm
