#pragma once

// Batch files for `hm check --batch`: a TOML subset.
//
//   # comment
//   [config]                  optional; N, tol_accept, tol_reject, samples, seed
//   N = 128
//
//   [[case]]
//   name = "example"          optional
//   subject = "model"         beurling | model | reducing
//   theta = "zeros:[(0,0,1)]"
//   phi = "lft:2,0,-1,4"
//   expect = "invariant"      optional; invariant | not_invariant
//
// Values are basic strings, integers, floats or booleans; one key per line.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hm/errors.hpp"
#include "hm/format.hpp"

namespace hm {

struct BatchCase {
    std::string name;
    std::string subject;
    std::string theta;
    std::string phi;
    std::string expect;
    std::size_t line = 0;
};

struct BatchFile {
    std::map<std::string, std::string> config;  // raw scalar text
    std::vector<BatchCase> cases;
};

namespace detail {

inline std::string unquote(std::string_view v, const std::string& field) {
    if (v.size() < 2 || v.front() != '"' || v.back() != '"') throw SpecParseError(field, "expected a quoted string");
    std::string out;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        char c = v[i];
        if (c == '\\') {
            if (i + 2 >= v.size()) throw SpecParseError(field, "dangling escape");
            c = v[++i];
            if (c == 'n') c = '\n';
            else if (c == 't') c = '\t';
            else if (c != '"' && c != '\\') throw SpecParseError(field, std::string("unsupported escape \\") + c);
        } else if (c == '"') {
            throw SpecParseError(field, "unescaped quote inside string");
        }
        out += c;
    }
    return out;
}

/// Drops a trailing comment that is not inside a string.
inline std::string_view strip_comment(std::string_view s) {
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && in_string) {
            ++i;
            continue;
        }
        if (s[i] == '"') in_string = !in_string;
        if (s[i] == '#' && !in_string) return s.substr(0, i);
    }
    return s;
}

}  // namespace detail

inline BatchFile parse_batch(std::string_view text, const std::string& source = "batch") {
    BatchFile out;
    enum class Section { top, config, case_ } section = Section::top;
    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno);
        const auto line = detail::trim(detail::strip_comment(raw));
        if (line.empty() || line == "\r") continue;
        if (line == "[[case]]") {
            section = Section::case_;
            out.cases.push_back({});
            out.cases.back().line = lineno;
            continue;
        }
        if (line == "[config]") {
            section = Section::config;
            continue;
        }
        if (line.front() == '[') throw SpecParseError(where, "unknown table '" + std::string(line) + "'");
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw SpecParseError(where, "expected 'key = value'");
        const std::string key(detail::trim(line.substr(0, eq)));
        const auto value = detail::trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw SpecParseError(where, "expected 'key = value'");
        const std::string field = where + "." + key;
        if (section == Section::config) {
            out.config[key] = value.front() == '"' ? detail::unquote(value, field) : std::string(value);
        } else if (section == Section::case_) {
            auto& c = out.cases.back();
            const auto v = detail::unquote(value, field);
            if (key == "name") c.name = v;
            else if (key == "subject") c.subject = v;
            else if (key == "theta") c.theta = v;
            else if (key == "phi") c.phi = v;
            else if (key == "expect") c.expect = v;
            else throw SpecParseError(field, "unknown case key");
        } else {
            throw SpecParseError(field, "key outside [[case]] or [config]");
        }
    }
    for (std::size_t i = 0; i < out.cases.size(); ++i) {
        const auto& c = out.cases[i];
        const std::string f = source + ":" + std::to_string(c.line) + " case[" + std::to_string(i) + "]";
        if (c.subject != "beurling" && c.subject != "model" && c.subject != "reducing")
            throw SpecParseError(f + ".subject", "expected beurling, model or reducing");
        if (c.theta.empty()) throw SpecParseError(f + ".theta", "missing");
        if (c.phi.empty()) throw SpecParseError(f + ".phi", "missing");
        if (!c.expect.empty() && c.expect != "invariant" && c.expect != "not_invariant")
            throw SpecParseError(f + ".expect", "expected invariant or not_invariant");
    }
    return out;
}

inline BatchFile read_batch(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw SpecParseError("batch", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_batch(ss.str(), path);
}

}  // namespace hm
