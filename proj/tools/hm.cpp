// hm: invariance checks, theorem harnesses and adjoint diagnostics from the shell.
//
// Exit status: 0 invariant / reduces / pass, 1 not, 2 indeterminate, 3 input error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hm/batch.hpp"
#include "hm/theorems.hpp"
#include "hm/version.hpp"

namespace {

using hm::cplx;
using json = nlohmann::ordered_json;

constexpr int kInputError = 3;

struct RunConfig {
    std::size_t N = 0;  // 0: per-command default
    double tol_accept = 1e-8;
    double tol_reject = 1e-3;
    std::size_t samples = 512;
    std::uint64_t seed = 1;
    std::string output_dir;

    void validate() const {
        if (!(tol_accept > 0.0 && tol_accept < tol_reject))
            throw hm::SpecParseError("config.tol_accept", "need 0 < tol_accept < tol_reject");
        if (N > hm::kMaxDegree) throw hm::SpecParseError("config.N", "truncation above 1024");
        if (samples < 8) throw hm::SpecParseError("config.samples", "need at least 8 boundary samples");
    }

    std::size_t symbol_degree() const { return N == 0 ? 256 : N; }

    hm::ResidualOptions residual() const {
        hm::ResidualOptions o;
        o.degree = N;
        o.thresholds = {tol_accept, tol_reject};
        return o;
    }

    hm::HarnessOptions harness() const {
        hm::HarnessOptions h;
        h.residual = residual();
        h.beurling.samples = samples;
        if (N != 0) h.beurling.degree = N;
        return h;
    }

    json to_json() const {
        json j;
        j["N"] = N;
        j["tol_accept"] = tol_accept;
        j["tol_reject"] = tol_reject;
        j["samples"] = samples;
        j["seed"] = seed;
        j["output_dir"] = output_dir;
        return j;
    }
};

/// Applies [config] keys from a batch file; command-line flags given explicitly win.
void merge_batch_config(RunConfig& cfg, const std::map<std::string, std::string>& kv, const CLI::App& app) {
    auto number = [](const std::string& key, const std::string& v) {
        return hm::detail::parse_double(v, "config." + key);
    };
    auto count = [&](const std::string& key, const std::string& v) {
        const double x = number(key, v);
        if (x < 0 || x != std::floor(x)) throw hm::SpecParseError("config." + key, "expected a non-negative integer");
        return static_cast<std::uint64_t>(x);
    };
    for (const auto& [key, v] : kv) {
        if (key == "N") {
            if (app.count("--N") == 0) cfg.N = count(key, v);
        } else if (key == "tol_accept") {
            if (app.count("--tol-accept") == 0) cfg.tol_accept = number(key, v);
        } else if (key == "tol_reject") {
            if (app.count("--tol-reject") == 0) cfg.tol_reject = number(key, v);
        } else if (key == "samples") {
            if (app.count("--samples") == 0) cfg.samples = count(key, v);
        } else if (key == "seed") {
            if (app.count("--seed") == 0) cfg.seed = count(key, v);
        } else {
            throw hm::SpecParseError("config." + key, "unknown config key");
        }
    }
}

json envelope(const RunConfig& cfg, const std::string& command) {
    json j;
    j["tool"] = "hm";
    j["version"] = hm::kVersion;
    j["command"] = command;
    j["config"] = cfg.to_json();
    return j;
}

void emit(const json& doc, const RunConfig& cfg, const std::string& stem) {
    const std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (cfg.output_dir.empty()) return;
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = std::filesystem::path(cfg.output_dir) / (stem + ".json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hm::InvalidArgumentError("cannot write " + path.string());
    out << text;
}

hm::Symbol parse_phi(const std::string& text, const RunConfig& cfg, const std::string& field = "phi") {
    const auto phi = hm::resolve(hm::parse_symbol(text, field), cfg.symbol_degree());
    hm::require_self_map(phi, cfg.samples);
    return phi;
}

hm::MoebiusMap parse_lft(const std::string& text, const RunConfig& cfg, const std::string& field = "phi") {
    const auto phi = parse_phi(text, cfg, field);
    const auto* m = std::get_if<hm::MoebiusMap>(&phi);
    if (!m) throw hm::SpecParseError(field, "expected a nonconstant linear fractional map");
    return *m;
}

cplx parse_number(const std::string& text, const std::string& field) { return hm::parse_complex(text, field); }

// ---------------------------------------------------------------------------
// check

struct CheckOutcome {
    json report;
    hm::Verdict verdict;
};

CheckOutcome run_check(const std::string& subject, const std::string& theta_text, const std::string& phi_text,
                       const RunConfig& cfg) {
    const auto theta = hm::parse_theta(theta_text).resolve();
    const auto phi = parse_phi(phi_text, cfg);
    if (subject == "model") {
        const auto r = hm::invariance_residual(theta, phi, cfg.residual());
        return {hm::to_json(r), r.verdict};
    }
    if (subject == "beurling") {
        hm::BeurlingOptions o;
        o.samples = cfg.samples;
        if (cfg.N != 0) o.degree = cfg.N;
        const auto r = hm::beurling_invariance_any(theta, phi, o);
        return {hm::to_json(r), r.verdict};
    }
    const auto r = hm::reducing_residual(theta, phi, cfg.residual());
    return {hm::to_json(r), r.verdict()};
}

int cmd_check(const std::string& subject, const std::string& theta, const std::string& phi, RunConfig cfg) {
    cfg.validate();
    auto doc = envelope(cfg, "check " + subject);
    const auto out = run_check(subject, theta, phi, cfg);
    doc["report"] = out.report;
    emit(doc, cfg, "check-" + subject);
    return hm::exit_code(out.verdict);
}

int cmd_check_batch(const std::string& path, RunConfig cfg, const CLI::App& app) {
    const auto batch = hm::read_batch(path);
    merge_batch_config(cfg, batch.config, app);
    cfg.validate();
    auto doc = envelope(cfg, "check --batch");
    doc["batch"] = path;
    auto cases = json::array();
    int worst = 0;
    for (std::size_t i = 0; i < batch.cases.size(); ++i) {
        const auto& c = batch.cases[i];
        json entry;
        entry["name"] = c.name.empty() ? "case" + std::to_string(i) : c.name;
        entry["subject"] = c.subject;
        const auto out = run_check(c.subject, c.theta, c.phi, cfg);
        int code = hm::exit_code(out.verdict);
        if (!c.expect.empty()) {
            entry["expect"] = c.expect;
            const bool met = hm::to_string(out.verdict) == c.expect;
            entry["met"] = met;
            code = met ? 0 : (out.verdict == hm::Verdict::indeterminate ? 2 : 1);
        }
        entry["report"] = out.report;
        cases.push_back(entry);
        worst = std::max(worst, code);
    }
    doc["cases"] = cases;
    emit(doc, cfg, "check-batch");
    return worst;
}

// ---------------------------------------------------------------------------
// theorem

struct TheoremArgs {
    std::string alpha = "0", beta, c1 = "1", c2 = "0", c = "0", a, b;
    std::string theta, phi = "preset:identity";
    int n = 2;
    int trials = 20;
    int pairs = 50;
    int starts = 256;
    bool suite = false;
};

int cmd_theorem(const std::string& id, const TheoremArgs& t, RunConfig cfg) {
    cfg.validate();
    auto doc = envelope(cfg, "theorem " + id);
    const auto opt = cfg.harness();
    auto need = [](const std::string& v, const std::string& flag) {
        if (v.empty()) throw hm::SpecParseError(flag, "required for this theorem");
        return v;
    };

    if (id == "q1") {
        hm::Question1Options q;
        q.seed = cfg.seed;
        q.starts = t.starts;
        if (cfg.N != 0) q.degree = cfg.N;
        const auto r = hm::explore_question1(parse_number(t.alpha, "alpha"), parse_number(need(t.beta, "beta"), "beta"), q);
        doc["report"] = hm::to_json(r);
        emit(doc, cfg, "theorem-q1");
        return 0;
    }

    hm::TheoremReport r;
    if (id == "affine") {
        r = hm::verify_affine(parse_number(t.alpha, "alpha"), t.n, t.trials, cfg.seed, opt);
    } else if (id == "example35") {
        r = hm::verify_example_mobius(parse_number(t.alpha, "alpha"), parse_number(t.c1, "c1"), parse_number(t.c2, "c2"), opt);
    } else if (id == "flt") {
        if (t.suite) {
            r = hm::verify_flt_affine_suite(t.pairs, cfg.seed, opt);
        } else {
            const auto theta = hm::parse_theta(need(t.theta, "theta")).resolve();
            r = hm::verify_flt_affine(theta, parse_number(need(t.a, "a"), "a"), parse_number(need(t.b, "b"), "b"), opt);
        }
    } else if (id == "modelinv") {
        if (t.suite) {
            r = hm::verify_modelinv_suite(t.pairs, cfg.seed, opt);
        } else {
            const auto theta = hm::parse_theta(need(t.theta, "theta")).resolve();
            r = hm::verify_modelinv_lft(theta, parse_lft(t.phi, cfg), opt);
        }
    } else if (id == "constant") {
        r = hm::verify_constant_symbol(hm::parse_theta(need(t.theta, "theta")).resolve(), parse_number(t.c, "c"), opt);
    } else if (id == "rigidity") {
        hm::RigidityInput in;
        in.phi = parse_phi(t.phi, cfg);
        in.alpha_grid = hm::default_alpha_grid(cfg.seed);
        in.theta_family = hm::default_theta_family();
        if (!t.theta.empty()) in.theta_family.push_back(hm::parse_theta(t.theta).resolve());
        r = hm::verify_rigidity(in, opt);
    } else if (id == "reducing") {
        r = hm::verify_reducing(parse_number(t.alpha, "alpha"), t.n, parse_phi(t.phi, cfg), opt);
    } else {
        throw hm::SpecParseError("theorem", "unknown id '" + id + "'");
    }
    doc["report"] = hm::to_json(r);
    emit(doc, cfg, "theorem-" + id);
    return r.pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// adjoint

int cmd_adjoint(const std::string& phi_text, bool dump, RunConfig cfg) {
    cfg.validate();
    const std::size_t N = cfg.N == 0 ? 64 : cfg.N;
    const auto phi = parse_lft(phi_text, cfg);
    auto doc = envelope(cfg, "adjoint");
    json rep;
    rep["phi"] = hm::describe(phi);
    rep["sigma"] = hm::describe(hm::cowen_sigma(phi));
    rep["N"] = N;
    const auto sections = hm::cowen_adjoint_sections(phi, N);
    rep["cowen_discrepancy"] = sections.discrepancy;
    double shapiro = 0.0;
    auto per_f = json::object();
    for (std::size_t k = 1; k <= 3; ++k) {
        const double d = hm::shapiro_discrepancy(phi, hm::TruncatedSeries::monomial(k, k), N / 2);
        per_f["z^" + std::to_string(k)] = d;
        shapiro = std::max(shapiro, d);
    }
    rep["shapiro_discrepancy"] = shapiro;
    rep["shapiro_by_f"] = per_f;
    const bool pass = sections.discrepancy <= cfg.tol_accept && shapiro <= cfg.tol_accept;
    rep["pass"] = pass;
    if (dump) {
        rep["sections"]["lhs"] = hm::to_json(sections.lhs);
        rep["sections"]["rhs"] = hm::to_json(sections.rhs);
    }
    doc["report"] = rep;
    emit(doc, cfg, "adjoint");
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Model spaces invariant under composition operators on H^2"};
    app.set_version_flag("--version", hm::kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--N", cfg.N, "Truncation degree (0: per-command default)")->capture_default_str();
    app.add_option("--tol-accept", cfg.tol_accept, "Residual below which a verdict is accepted")->capture_default_str();
    app.add_option("--tol-reject", cfg.tol_reject, "Residual above which a verdict is rejected")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Boundary sample count")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Seed for randomized harnesses")->capture_default_str();
    app.add_option("--output-dir", cfg.output_dir, "Also write the JSON report here (HM_OUTPUT_DIR overrides)");

    auto* check = app.add_subcommand("check", "Decide invariance of one (theta, phi) pair or a batch file");
    check->fallthrough();
    std::string subject, theta, phi, batch;
    check->add_option("subject", subject, "beurling | model | reducing")
        ->check(CLI::IsMember({"beurling", "model", "reducing"}));
    check->add_option("--theta", theta, "Blaschke data, e.g. zeros:[(0,0,1),(0.5,0,1)]");
    check->add_option("--phi", phi, "Symbol, e.g. lft:2,0,-1,4");
    check->add_option("--batch", batch, "TOML file of [[case]] entries")->check(CLI::ExistingFile);

    auto* theorem = app.add_subcommand("theorem", "Run a theorem harness");
    theorem->fallthrough();
    std::string id;
    TheoremArgs ta;
    theorem->add_option("id", id, "affine | example35 | flt | modelinv | constant | rigidity | reducing | q1")->required();
    theorem->add_option("--alpha", ta.alpha, "Point alpha in the disk");
    theorem->add_option("--beta", ta.beta, "Second point (q1)");
    theorem->add_option("--n", ta.n, "Power of the Blaschke factor");
    theorem->add_option("--trials", ta.trials, "Random symbols per family (affine)");
    theorem->add_option("--c1", ta.c1, "Family parameter c1 (example35)");
    theorem->add_option("--c2", ta.c2, "Family parameter c2 (example35)");
    theorem->add_option("--c", ta.c, "Constant symbol value (constant)");
    theorem->add_option("--a", ta.a, "Slope of phi = a z + b (flt)");
    theorem->add_option("--b", ta.b, "Offset of phi = a z + b (flt)");
    theorem->add_option("--theta", ta.theta, "Blaschke data");
    theorem->add_option("--phi", ta.phi, "Symbol")->capture_default_str();
    theorem->add_flag("--suite", ta.suite, "Run the seeded random suite (flt, modelinv)");
    theorem->add_option("--pairs", ta.pairs, "Pairs in the random suite")->capture_default_str();
    theorem->add_option("--starts", ta.starts, "Newton starts (q1)")->capture_default_str();

    auto* adjoint = app.add_subcommand("adjoint", "Check the Cowen and Shapiro adjoint formulas for an LFT");
    adjoint->fallthrough();
    std::string adj_phi;
    bool dump = false;
    adjoint->add_option("--phi", adj_phi, "Linear fractional self-map")->required();
    adjoint->add_flag("--dump-sections", dump, "Include the finite sections of both sides");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }
    if (const char* env = std::getenv("HM_OUTPUT_DIR"); env && *env) cfg.output_dir = env;

    try {
        if (*check) {
            if (!batch.empty()) {
                if (!subject.empty() || !theta.empty() || !phi.empty())
                    throw hm::SpecParseError("batch", "--batch takes no subject, --theta or --phi");
                return cmd_check_batch(batch, cfg, app);
            }
            if (subject.empty()) throw hm::SpecParseError("subject", "expected beurling, model or reducing");
            if (theta.empty()) throw hm::SpecParseError("theta", "missing --theta");
            if (phi.empty()) throw hm::SpecParseError("phi", "missing --phi");
            return cmd_check(subject, theta, phi, cfg);
        }
        if (*theorem) return cmd_theorem(id, ta, cfg);
        return cmd_adjoint(adj_phi, dump, cfg);
    } catch (const hm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
