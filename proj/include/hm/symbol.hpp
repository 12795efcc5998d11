#pragma once

// Self-map symbols phi of the disk in the three representable shapes.

#include <string>
#include <type_traits>
#include <variant>

#include "hm/format.hpp"
#include "hm/moebius.hpp"
#include "hm/series.hpp"

namespace hm {

/// phi == value on the whole disk. Kept apart from MoebiusMap, which is never
/// degenerate.
struct ConstantSymbol {
    cplx value;
    friend bool operator==(const ConstantSymbol&, const ConstantSymbol&) = default;
};

using Symbol = std::variant<MoebiusMap, TruncatedSeries, ConstantSymbol>;

inline bool is_constant(const Symbol& phi) {
    if (std::holds_alternative<ConstantSymbol>(phi)) return true;
    if (const auto* s = std::get_if<TruncatedSeries>(&phi)) {
        for (std::size_t k = 1; k <= s->degree(); ++k)
            if (std::abs((*s)[k]) > kEpsZero) return false;
        return true;
    }
    return false;
}

inline TruncatedSeries symbol_series(const Symbol& phi, std::size_t degree) {
    return std::visit(
        [degree](const auto& p) -> TruncatedSeries {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, MoebiusMap>) return p.to_series(degree);
            else if constexpr (std::is_same_v<T, TruncatedSeries>) return p.truncated(degree);
            else return TruncatedSeries::constant(p.value, degree);
        },
        phi);
}

inline cplx symbol_value(const Symbol& phi, cplx z) {
    return std::visit(
        [z](const auto& p) -> cplx {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, ConstantSymbol>) return p.value;
            else return p(z);
        },
        phi);
}

/// Throws NotSelfMapError unless phi maps the disk into itself: the exact LFT
/// inequality for Moebius maps, |c| < 1 for constants, and for series |phi(0)| < 1
/// with boundary sup estimate <= 1 + 1e-6.
inline void require_self_map(const Symbol& phi, std::size_t samples = 512) {
    if (const auto* m = std::get_if<MoebiusMap>(&phi)) {
        if (!is_self_map(*m).is_self_map) throw NotSelfMapError("symbol is not a self-map of the disk");
    } else if (const auto* c = std::get_if<ConstantSymbol>(&phi)) {
        if (!(std::abs(c->value) < 1.0)) throw NotSelfMapError("constant symbol outside the open disk");
    } else {
        const auto& s = std::get<TruncatedSeries>(phi);
        if (!(std::abs(s[0]) < 1.0)) throw NotSelfMapError("series symbol has |phi(0)| >= 1");
        if (boundary_sup_estimate(s, std::max<std::size_t>(samples, 64), default_sup_radius(std::max<std::size_t>(s.degree(), 64))) > 1.0 + 1e-6)
            throw NotSelfMapError("series symbol exceeds modulus 1 on the sampled circle");
    }
}

/// Serialized form used as a label in reports.
inline std::string describe(const Symbol& phi) {
    return std::visit(
        [](const auto& p) -> std::string {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, MoebiusMap>) {
                const auto k = p.coeffs();
                return "lft:" + join_complex({k[0], k[1], k[2], k[3]});
            } else if constexpr (std::is_same_v<T, TruncatedSeries>) {
                const std::size_t n = p.effective_degree();
                return "poly:" + join_complex(std::vector<cplx>(p.vec().begin(), p.vec().begin() + n + 1));
            } else {
                return "const:" + format_complex(p.value);
            }
        },
        phi);
}

/// Turns a parsed spec into a symbol. Blaschke symbols of degree one become
/// exact Moebius maps; higher degrees become series at `degree`.
inline Symbol resolve(const SymbolSpec& p, std::size_t degree) {
    switch (p.kind) {
        case SymbolKind::lft: return MoebiusMap(p.coeffs[0], p.coeffs[1], p.coeffs[2], p.coeffs[3]);
        case SymbolKind::affine:
            if (std::abs(p.coeffs[1]) <= kEpsZero) return ConstantSymbol{p.coeffs[0]};
            return MoebiusMap::affine(p.coeffs[1], p.coeffs[0]);
        case SymbolKind::polynomial: {
            TruncatedSeries s(p.coeffs);
            if (is_constant(s)) return ConstantSymbol{s[0]};
            return s;
        }
        case SymbolKind::constant: return ConstantSymbol{p.coeffs[0]};
        case SymbolKind::blaschke_symbol: {
            const auto B = p.blaschke.resolve();
            if (B.degree() == 0) throw NotSelfMapError("blaschke symbol of degree 0 is a unimodular constant");
            if (B.degree() == 1) {
                const cplx alpha = B.zeros()[0].alpha;
                const cplx g = B.gamma();
                return MoebiusMap(g, -g * alpha, -std::conj(alpha), 1.0);
            }
            return B.to_series(degree);
        }
        case SymbolKind::preset:
            if (p.preset == "identity") return MoebiusMap::identity();
            return phi_alpha_preset(p.coeffs.at(0));
    }
    throw InvalidArgumentError("unknown symbol kind");
}

}  // namespace hm
