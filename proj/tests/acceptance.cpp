// Acceptance suite: one line per criterion, exit 0 iff every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "hm/sampling.hpp"
#include "hm/theorems.hpp"

using hm::BlaschkeProduct;
using hm::cplx;
using hm::MoebiusMap;
using hm::Symbol;
using hm::TruncatedSeries;
using hm::Verdict;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", x);
    return buf;
}

std::vector<MoebiusMap> seeded_lfts() {
    hm::Rng rng(2024);
    std::vector<MoebiusMap> out;
    for (int t = 0; t < 20; ++t) out.push_back(hm::random_self_map_lft(rng, 0.05));
    return out;
}

constexpr int kSuitePairs = 50;
constexpr std::uint64_t kFltSeed = 101, kModelSeed = 202;

Outcome cowen_identity() {
    double worst = 0.0;
    for (const auto& phi : seeded_lfts()) worst = std::max(worst, hm::cowen_adjoint_check(phi, 64));
    return {worst <= 1e-8, "max discrepancy " + sci(worst) + " over 20 maps at N=64"};
}

Outcome shapiro_consistency() {
    double worst = 0.0;
    for (const auto& phi : seeded_lfts())
        for (std::size_t k = 1; k <= 3; ++k)
            worst = std::max(worst, hm::shapiro_discrepancy(phi, TruncatedSeries::monomial(k, k), 32));
    return {worst <= 1e-8, "max discrepancy " + sci(worst) + " over 60 (phi, f) through degree 32"};
}

Outcome affine_forward() {
    hm::Rng rng(303);
    double worst = 0.0;
    bool levels_ok = true;
    for (int n = 2; n <= 6; ++n)
        for (int t = 0; t < 20; ++t) {
            const auto [a, b] = hm::random_affine_pair(rng, 0.95);
            const Symbol phi = std::abs(b) <= hm::kEpsZero ? Symbol(hm::ConstantSymbol{a}) : Symbol(MoebiusMap::affine(b, a));
            const auto r = hm::invariance_residual(BlaschkeProduct::power(0.0, n), phi);
            levels_ok = levels_ok && r.levels == std::vector<std::size_t>{128, 256};
            for (double x : r.residuals) worst = std::max(worst, x);
        }
    // converse: C_{z^2} sends z^2 in Q_{z^3} to z^4, orthogonal to Q_{z^3}
    const auto z3 = BlaschkeProduct::power(0.0, 3);
    const auto conv = hm::invariance_residual(z3, TruncatedSeries{0.0, 0.0, 1.0});
    const double direction = hm::project(hm::build_basis(z3, 128), TruncatedSeries::monomial(4, 128)).residual_norm;
    const bool pass = worst < 1e-8 && levels_ok && conv.residuals[0] >= 0.5 && conv.residuals[1] >= 0.5 &&
                      std::abs(conv.residuals[0] - direction) <= 1e-12;
    return {pass, "max residual " + sci(worst) + " over 100 pairs at N in {128,256}; (z^3, z^2) residual " +
                      sci(conv.residuals[0]) + ", z^4 off Q_{z^3} " + sci(direction)};
}

Outcome example_member() {
    const BlaschkeProduct theta({{0.0, 1}, {0.5, 1}});
    const auto in = hm::invariance_residual(theta, MoebiusMap(2, 0, -1, 4));
    const auto out = hm::invariance_residual(theta, TruncatedSeries{0.0, 0.0, 1.0});
    const bool levels_ok = in.levels == std::vector<std::size_t>{128, 256};
    const double r_in = std::max(in.residuals[0], in.residuals[1]);
    const double r_out = std::min(out.residuals[0], out.residuals[1]);
    return {levels_ok && r_in < 1e-8 && r_out >= 1e-2,
            "2z/(4-z) residual " + sci(r_in) + "; z^2 witness residual " + sci(r_out)};
}

Outcome equivalences(const hm::TheoremReport& flt, const hm::TheoremReport& model) {
    const auto dis = flt.disagreements() + model.disagreements();
    const auto ind = flt.indeterminates() + model.indeterminates();
    auto invariant = [](const hm::TheoremReport& r) {
        return std::count_if(r.cases.begin(), r.cases.end(), [](const auto& c) { return c.computed == Verdict::invariant; });
    };
    return {dis == 0 && ind == 0 && flt.cases.size() == kSuitePairs && model.cases.size() == kSuitePairs,
            std::to_string(flt.cases.size() + model.cases.size()) + " pairs (" + std::to_string(invariant(flt) + invariant(model)) +
                " invariant), " + std::to_string(dis) + " disagreements, " + std::to_string(ind) + " indeterminate"};
}

Outcome multiplicity_oracle(const hm::TheoremReport& flt, const hm::TheoremReport& model) {
    std::size_t total = 0, agree = 0, invariant = 0;
    auto run = [&](const std::string& theta_text, const std::string& phi_text) {
        const auto theta = hm::parse_theta(theta_text).resolve();
        const auto phi = hm::resolve(hm::parse_symbol(phi_text), 256);
        const auto c = hm::beurling_cross_case(theta, phi);
        ++total;
        agree += c.agrees();
        invariant += c.expected == Verdict::invariant;
    };
    for (const auto* rep : {&flt, &model})
        for (const auto& c : rep->cases) {
            run(c.theta, c.phi);
            run(c.extra["beurling_theta"].get<std::string>(), c.extra["beurling_phi"].get<std::string>());
        }
    return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree (" + std::to_string(invariant) +
                                " invariant by multiplicity)"};
}

Outcome reducing_family() {
    const auto zpsi = hm::verify_reducing(0.0, 1, TruncatedSeries{0.0, 1.0 / 3, 1.0 / 3});
    const auto cz = hm::verify_reducing(0.0, 2, MoebiusMap(0.5, 0, 0, 1));
    const auto id = hm::verify_reducing(0.5, 1, MoebiusMap::identity());
    const auto wit = hm::reducing_residual(BlaschkeProduct::power(0.0, 2), MoebiusMap::affine(0.5, 0.3));
    const auto reduces = [](const hm::TheoremReport& r) { return r.pass && r.cases[0].computed == Verdict::invariant; };
    const std::string w = hm::to_json(wit)["verdict"];
    return {reduces(zpsi) && reduces(cz) && reduces(id) && w == "does_not_reduce",
            std::string("zpsi ") + (reduces(zpsi) ? "reduces" : "fails") + ", 0.5z " + (reduces(cz) ? "reduces" : "fails") +
                ", identity " + (reduces(id) ? "reduces" : "fails") + ", (z^2, 0.3+0.5z) " + w};
}

Outcome qz_always_invariant() {
    hm::Rng rng(404);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        Symbol phi = MoebiusMap::identity();
        switch (t % 5) {
            case 0: phi = hm::random_self_map_lft(rng); break;
            case 1: {
                const auto [a, b] = hm::random_affine_pair(rng, 0.95, 0.05);
                phi = MoebiusMap::affine(b, a);
                break;
            }
            case 2: phi = hm::random_nonaffine_polynomial(rng, 2 + t % 4); break;
            case 3: phi = hm::random_blaschke(rng, 2, 0.8).to_series(256); break;
            default: phi = hm::ConstantSymbol{hm::random_disk_point(rng, 0.9)};
        }
        const auto r = hm::invariance_residual(hm::blaschke_factor(0.0), phi);
        for (double x : r.residuals) worst = std::max(worst, x);
    }
    return {worst < 1e-12, "max residual " + sci(worst) + " over 50 symbols (LFT, affine, polynomial, Blaschke, constant)"};
}

Outcome rigidity() {
    auto run = [](const Symbol& phi) {
        hm::RigidityInput in;
        in.phi = phi;
        in.alpha_grid = hm::default_alpha_grid(505);
        in.theta_family = hm::default_theta_family();
        return hm::verify_rigidity(in);
    };
    const auto half = run(MoebiusMap(1, 0, 0, 2));
    const auto ident = run(MoebiusMap::identity());
    const auto again = run(MoebiusMap(1, 0, 0, 2));
    const auto cst = hm::verify_constant_symbol(hm::blaschke_factor(0.5), 0.0);
    const int broken = half.data["broken_probes"].get<int>();
    const int ident_broken = ident.data["broken_probes"].get<int>();
    const bool deterministic = hm::to_json(half).dump() == hm::to_json(again).dump();
    const bool pass = half.pass && broken >= 1 && ident.pass && ident_broken == 0 && cst.pass &&
                      cst.cases[0].computed == Verdict::not_invariant && deterministic;
    return {pass, "z/2 breaks " + std::to_string(broken) + " probes, identity breaks " + std::to_string(ident_broken) +
                      ", b_0.5 under phi=0 " + hm::to_string(cst.cases[0].computed) +
                      (deterministic ? ", deterministic" : ", NOT deterministic")};
}

Outcome kernel_substrate() {
    const std::size_t N = 128;
    hm::Rng rng(606);
    double reproduce = 0.0;
    for (int t = 0; t < 20; ++t) {
        std::vector<cplx> c(1 + static_cast<std::size_t>(t) * 6);
        for (auto& x : c) x = hm::random_disk_point(rng);
        const TruncatedSeries f(c);
        const cplx w = hm::random_disk_point(rng, 0.95);
        const cplx direct = f(w);
        reproduce = std::max(reproduce, std::abs(hm::inner(f, hm::szego_kernel(w, N)) - direct) / std::max(1.0, std::abs(direct)));
    }
    // tail sum_{k > N} |w|^{2k} against |w|^{2(N+1)}/(1 - |w|^2)
    bool tail_ok = true;
    double worst_ratio = 0.0;
    for (double r : {0.1, 0.25, 0.4, 0.5})
        for (std::size_t n : {8u, 16u, 32u, 128u}) {
            const cplx w = std::polar(r, 0.7);
            const double full = 1.0 / (1.0 - r * r);
            const double norm2 = hm::szego_kernel(w, n).h2_norm_squared();
            double tail = 0.0;
            for (std::size_t k = 4 * n + 64; k > n; --k) tail += std::pow(r, 2.0 * static_cast<double>(k));
            const double bound = std::pow(r, 2.0 * (n + 1)) / (1.0 - r * r);
            // summing n + 1 terms rounds at about n ulps
            const double rounding = static_cast<double>(n + 1) * std::numeric_limits<double>::epsilon() * full;
            tail_ok = tail_ok && tail <= bound * (1.0 + 1e-12) && std::abs(full - norm2 - tail) <= rounding;
            if (bound > 0.0) worst_ratio = std::max(worst_ratio, tail / bound);
        }
    return {reproduce <= 1e-12 && tail_ok,
            "reproducing error " + sci(reproduce) + " at N=128; tail/bound <= " + sci(worst_ratio)};
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    int failures = 0;
    auto report = [&](int id, const char* title, double budget_s, const std::function<Outcome()>& fn) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        const bool in_time = budget_s <= 0.0 || secs <= budget_s;
        const bool ok = o.pass && in_time;
        failures += !ok;
        std::printf("[%s] %2d %s: %s (%.2f s%s)\n", ok ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs,
                    in_time ? "" : ", over budget");
        std::fflush(stdout);
    };

    report(1, "Cowen adjoint identity", 30, cowen_identity);
    report(2, "Shapiro adjoint consistency", 10, shapiro_consistency);
    report(3, "affine symbols on Q_{z^n}", 0, affine_forward);
    report(4, "Q_{z b_0.5} under 2z/(4-z)", 0, example_member);

    hm::TheoremReport flt, model;
    report(5, "companion equivalences", 120, [&] {
        flt = hm::verify_flt_affine_suite(kSuitePairs, kFltSeed);
        model = hm::verify_modelinv_suite(kSuitePairs, kModelSeed);
        return equivalences(flt, model);
    });
    report(6, "multiplicity vs projection on theta H^2", 0, [&] { return multiplicity_oracle(flt, model); });
    report(7, "reducing family", 0, reducing_family);
    report(8, "Q_z invariant for every symbol", 0, qz_always_invariant);
    report(9, "rigidity witnesses", 0, rigidity);
    report(10, "Szego kernel substrate", 0, kernel_substrate);

    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
