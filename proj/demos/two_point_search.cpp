// Searches degree-two rational symbols preserving Q_{b_alpha b_beta} and
// prints what the Newton starts converge to. The output is conjecture data.

#include <cstdio>
#include <cstdlib>

#include "hm/theorems.hpp"

int main(int argc, char** argv) {
    const double alpha = argc > 1 ? std::atof(argv[1]) : 0.3;
    const double beta = argc > 2 ? std::atof(argv[2]) : -0.3;
    const auto rep = hm::explore_question1(alpha, beta);
    const auto& d = rep.data;
    std::printf("alpha = %g, beta = %g: %d starts, %d converged, %d trivial\n", alpha, beta, d["starts"].get<int>(),
                d["converged"].get<int>(), d["trivial_roots"].get<int>());
    for (const auto& s : d["solutions"]) {
        if (!s["self_map"].get<bool>()) continue;
        const auto& h = s["phi_series_head"];
        std::printf("  self-map: phi = %.6f%+.6fi + (%.6f%+.6fi) z + ...  projection %s\n", h[0][0].get<double>(),
                    h[0][1].get<double>(), h[1][0].get<double>(), h[1][1].get<double>(),
                    s.value("projection_verdict", std::string("n/a")).c_str());
    }
    std::printf("%s\n", d["notes"].get<std::string>().c_str());
    return 0;
}
