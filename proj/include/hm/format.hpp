#pragma once

// Textual forms of numbers, maps and inner functions.
//
//   complex      x | (re,im)                 shortest round-trip decimals
//   theta        zeros:[(re,im,m),...][;arg:t]   gamma = exp(i t)
//   symbol       lft:a,b,c,d | affine:a,b (a + b z) | poly:c0,c1,...
//                | const:c | blaschke:zeros:[...][;arg:t]
//                | preset:identity | preset:phi_alpha(x)

#include <charconv>
#include <cmath>
#include <complex>
#include <cstring>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "hm/blaschke.hpp"
#include "hm/errors.hpp"
#include "hm/moebius.hpp"
#include "hm/series.hpp"

namespace hm {

inline std::string format_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string format_complex(cplx z) {
    if (z.imag() == 0.0 && !std::signbit(z.imag())) return format_double(z.real());
    return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")";
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline double parse_double(std::string_view s, const std::string& field) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty())
        throw SpecParseError(field, "expected a decimal number, got '" + std::string(s) + "'");
    if (!std::isfinite(v)) throw SpecParseError(field, "number is not finite");
    return v;
}

/// Splits on commas that are not nested inside parentheses or brackets.
inline std::vector<std::string_view> split_top(std::string_view s, const std::string& field) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') {
            if (--depth < 0) throw SpecParseError(field, "unbalanced brackets");
        }
        if (c == ',' && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw SpecParseError(field, "unbalanced brackets");
    out.push_back(trim(s.substr(start)));
    return out;
}

inline std::string_view strip_wrapping(std::string_view s, char open, char close, const std::string& field) {
    s = trim(s);
    if (s.size() < 2 || s.front() != open || s.back() != close)
        throw SpecParseError(field, std::string("expected '") + open + "...'" + close + "'");
    return s.substr(1, s.size() - 2);
}

}  // namespace detail

inline cplx parse_complex(std::string_view s, const std::string& field) {
    s = detail::trim(s);
    if (!s.empty() && s.front() == '(') {
        const auto parts = detail::split_top(detail::strip_wrapping(s, '(', ')', field), field);
        if (parts.size() != 2) throw SpecParseError(field, "complex pair needs (re,im)");
        return {detail::parse_double(parts[0], field + ".re"), detail::parse_double(parts[1], field + ".im")};
    }
    return {detail::parse_double(s, field), 0.0};
}

inline std::vector<cplx> parse_complex_list(std::string_view s, const std::string& field) {
    std::vector<cplx> out;
    const auto parts = detail::split_top(s, field);
    for (std::size_t i = 0; i < parts.size(); ++i)
        out.push_back(parse_complex(parts[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

// ---------------------------------------------------------------------------
// theta: finite Blaschke data

struct ThetaSpec {
    std::vector<BlaschkeZero> zeros;
    double gamma_arg = 0.0;

    BlaschkeProduct resolve() const {
        const cplx gamma = gamma_arg == 0.0 ? cplx(1.0) : std::polar(1.0, gamma_arg);
        return BlaschkeProduct(zeros, gamma);
    }
    friend bool operator==(const ThetaSpec&, const ThetaSpec&) = default;
};

inline std::string serialize(const ThetaSpec& t) {
    std::string s = "zeros:[";
    for (std::size_t i = 0; i < t.zeros.size(); ++i) {
        if (i) s += ",";
        s += "(" + format_double(t.zeros[i].alpha.real()) + "," + format_double(t.zeros[i].alpha.imag()) +
             "," + std::to_string(t.zeros[i].multiplicity) + ")";
    }
    s += "]";
    if (t.gamma_arg != 0.0 || std::signbit(t.gamma_arg)) s += ";arg:" + format_double(t.gamma_arg);
    return s;
}

inline ThetaSpec parse_theta(std::string_view text, const std::string& field = "theta") {
    auto s = detail::trim(text);
    ThetaSpec t;
    if (const auto semi = s.find(';'); semi != std::string_view::npos) {
        auto tail = detail::trim(s.substr(semi + 1));
        if (tail.substr(0, 4) != "arg:") throw SpecParseError(field + ".arg", "expected ';arg:<radians>'");
        t.gamma_arg = detail::parse_double(tail.substr(4), field + ".arg");
        s = detail::trim(s.substr(0, semi));
    }
    if (s.substr(0, 6) != "zeros:") throw SpecParseError(field, "expected 'zeros:[(re,im,m),...]'");
    const auto body = detail::trim(detail::strip_wrapping(s.substr(6), '[', ']', field + ".zeros"));
    if (!body.empty()) {
        const auto items = detail::split_top(body, field + ".zeros");
        for (std::size_t i = 0; i < items.size(); ++i) {
            const std::string f = field + ".zeros[" + std::to_string(i) + "]";
            const auto parts = detail::split_top(detail::strip_wrapping(items[i], '(', ')', f), f);
            if (parts.size() != 3) throw SpecParseError(f, "zero needs (re,im,multiplicity)");
            const double re = detail::parse_double(parts[0], f + ".re");
            const double im = detail::parse_double(parts[1], f + ".im");
            int m = 0;
            const auto ms = detail::trim(parts[2]);
            auto res = std::from_chars(ms.data(), ms.data() + ms.size(), m);
            if (res.ec != std::errc{} || res.ptr != ms.data() + ms.size() || m < 1)
                throw SpecParseError(f + ".multiplicity", "expected a positive integer");
            if (!(std::hypot(re, im) < 1.0)) throw SpecParseError(f, "zero must lie in the open unit disk");
            t.zeros.push_back({{re, im}, m});
        }
    }
    return t;
}

inline ThetaSpec to_theta_spec(const BlaschkeProduct& B) {
    ThetaSpec t{B.zeros(), 0.0};
    if (B.gamma() != cplx(1.0)) t.gamma_arg = std::arg(B.gamma());
    return t;
}

inline std::string serialize(const BlaschkeProduct& B) { return serialize(to_theta_spec(B)); }

// ---------------------------------------------------------------------------
// symbols

enum class SymbolKind { lft, affine, polynomial, blaschke_symbol, constant, preset };

struct SymbolSpec {
    SymbolKind kind = SymbolKind::preset;
    std::vector<cplx> coeffs;  // lft: a,b,c,d; affine: a,b; poly: c0..; constant: c; preset phi_alpha: alpha
    ThetaSpec blaschke;        // blaschke_symbol
    std::string preset;        // "identity" | "phi_alpha"
    friend bool operator==(const SymbolSpec&, const SymbolSpec&) = default;
};

inline std::string join_complex(const std::vector<cplx>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_complex(v[i]);
    }
    return s;
}

inline std::string serialize(const SymbolSpec& p) {
    switch (p.kind) {
        case SymbolKind::lft: return "lft:" + join_complex(p.coeffs);
        case SymbolKind::affine: return "affine:" + join_complex(p.coeffs);
        case SymbolKind::polynomial: return "poly:" + join_complex(p.coeffs);
        case SymbolKind::constant: return "const:" + join_complex(p.coeffs);
        case SymbolKind::blaschke_symbol: return "blaschke:" + serialize(p.blaschke);
        case SymbolKind::preset:
            if (p.preset == "phi_alpha") return "preset:phi_alpha(" + format_complex(p.coeffs.at(0)) + ")";
            return "preset:" + p.preset;
    }
    return {};
}

inline SymbolSpec parse_symbol(std::string_view text, const std::string& field = "phi") {
    const auto s = detail::trim(text);
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw SpecParseError(field, "expected '<kind>:<payload>'");
    const auto kind = s.substr(0, colon);
    const auto body = detail::trim(s.substr(colon + 1));
    SymbolSpec p;
    if (kind == "lft") {
        p.kind = SymbolKind::lft;
        p.coeffs = parse_complex_list(body, field + ".lft");
        if (p.coeffs.size() != 4) throw SpecParseError(field + ".lft", "needs exactly four coefficients a,b,c,d");
    } else if (kind == "affine") {
        p.kind = SymbolKind::affine;
        p.coeffs = parse_complex_list(body, field + ".affine");
        if (p.coeffs.size() != 2) throw SpecParseError(field + ".affine", "needs a,b for a + b z");
    } else if (kind == "poly") {
        p.kind = SymbolKind::polynomial;
        p.coeffs = parse_complex_list(body, field + ".poly");
        if (p.coeffs.size() > kMaxDegree + 1) throw SpecParseError(field + ".poly", "degree above 1024");
    } else if (kind == "const") {
        p.kind = SymbolKind::constant;
        p.coeffs = parse_complex_list(body, field + ".const");
        if (p.coeffs.size() != 1) throw SpecParseError(field + ".const", "needs one value");
        if (!(std::abs(p.coeffs[0]) < 1.0)) throw SpecParseError(field + ".const", "constant must lie in the open disk");
    } else if (kind == "blaschke") {
        p.kind = SymbolKind::blaschke_symbol;
        p.blaschke = parse_theta(body, field + ".blaschke");
    } else if (kind == "preset") {
        p.kind = SymbolKind::preset;
        if (body == "identity") {
            p.preset = "identity";
        } else if (body.substr(0, 10) == "phi_alpha(" && body.back() == ')') {
            p.preset = "phi_alpha";
            p.coeffs = {parse_complex(body.substr(10, body.size() - 11), field + ".phi_alpha")};
        } else {
            throw SpecParseError(field + ".preset", "unknown preset '" + std::string(body) + "'");
        }
    } else {
        throw SpecParseError(field, "unknown symbol kind '" + std::string(kind) + "'");
    }
    return p;
}

}  // namespace hm
