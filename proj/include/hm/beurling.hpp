#pragma once

// Invariance of theta H^2 under C_phi for finite Blaschke theta, decided by
// comparing zero multiplicities of B and B o phi at the zeros of B.

#include <variant>

#include "hm/blaschke.hpp"
#include "hm/report.hpp"
#include "hm/symbol.hpp"

namespace hm {

/// Order of vanishing at w of a series (Taylor shift by repeated synthetic
/// division at w); coefficients below `tol` count as zero.
inline int vanishing_order(const TruncatedSeries& f, cplx w, double tol = kZeroMatchTol) {
    TruncatedSeries q = f;
    for (int k = 0; k <= static_cast<int>(f.degree()); ++k) {
        auto d = deflate(q, w);
        if (std::abs(d.remainder) > tol) return k;
        q = std::move(d.quotient);
    }
    return static_cast<int>(f.degree()) + 1;
}

/// Order of vanishing of B o phi at w:
/// sum over zeros alpha_i of n_i * ord_w(phi - alpha_i).
inline int composition_zero_multiplicity(const BlaschkeProduct& B, const Symbol& phi, cplx w) {
    if (!(std::abs(w) < 1.0)) throw NotInDiskError("composition_zero_multiplicity: |w| must be < 1");
    if (is_constant(phi)) throw ConstantSymbolError("composition_zero_multiplicity: constant symbol");
    int total = 0;
    if (const auto* m = std::get_if<MoebiusMap>(&phi)) {
        // phi - alpha has a linear numerator, so the order is 0 or 1.
        const cplx v = (*m)(w);
        for (const auto& e : B.zeros())
            if (std::abs(v - e.alpha) <= kZeroMatchTol) total += e.multiplicity;
        return total;
    }
    const auto& s = std::get<TruncatedSeries>(phi);
    for (const auto& e : B.zeros()) {
        const TruncatedSeries shifted = sub(s, TruncatedSeries::constant(e.alpha));
        total += e.multiplicity * vanishing_order(shifted, w);
    }
    return total;
}

struct BeurlingOptions {
    std::size_t degree = 128;  // truncation for the quotient sanity channel
    std::size_t samples = 512;
};

/// theta H^2 in Lat C_phi iff mult_w B <= mult_w (B o phi) at every zero w of B.
/// When invariant, the sup of the quotient series (B o phi)/B on the circle of
/// radius 1 - 1/N is attached as a sanity channel (expected <= 1 + 1e-6).
inline InvarianceReport beurling_invariance(const BlaschkeProduct& B, const Symbol& phi,
                                            const BeurlingOptions& opt = {}) {
    if (is_constant(phi)) throw ConstantSymbolError("beurling_invariance: constant symbol");
    require_self_map(phi, opt.samples);

    InvarianceReport r;
    r.theta = serialize(B);
    r.phi = describe(phi);
    r.criterion = "multiplicity";
    auto& zeros = r.details["zeros"] = nlohmann::ordered_json::array();
    bool ok = true;
    for (const auto& e : B.zeros()) {
        const int composed = composition_zero_multiplicity(B, phi, e.alpha);
        ok = ok && e.multiplicity <= composed;
        zeros.push_back({{"w", format_complex(e.alpha)},
                         {"multiplicity", e.multiplicity},
                         {"composed_multiplicity", composed}});
    }
    r.verdict = ok ? Verdict::invariant : Verdict::not_invariant;

    const std::size_t n = opt.degree;
    const TruncatedSeries composed = compose(B.to_series(n), symbol_series(phi, n), n);
    const auto q = divide_by_blaschke(composed, B);
    r.levels = {n};
    r.residuals = {std::sqrt(q.remainder_energy())};
    if (ok) {
        const double sup = boundary_sup_estimate(q.quotient, std::max<std::size_t>(opt.samples, 64),
                                                 default_sup_radius(n));
        r.details["quotient_sup"] = sup;
        r.details["quotient_sup_ok"] = sup <= 1.0 + 1e-6;
    }
    return r;
}

}  // namespace hm
