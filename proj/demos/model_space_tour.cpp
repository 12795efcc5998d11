// Walks Q_theta for theta = z b_{1/2} under a few symbols and prints the
// projection residuals next to the multiplicity verdict of the companion side.

#include <cstdio>

#include "hm/theorems.hpp"

int main() {
    const hm::BlaschkeProduct theta({{0.0, 1}, {0.5, 1}});
    const hm::Symbol symbols[] = {
        hm::MoebiusMap(2, 0, -1, 4),      // 2z/(4 - z), companion fixes 1/2
        hm::MoebiusMap(1, 0, 0, 2),       // z/2
        hm::TruncatedSeries{0.0, 0.0, 1.0},
        hm::ConstantSymbol{0.3},
    };
    std::printf("theta = %s, dim Q_theta = %d\n\n", hm::serialize(theta).c_str(), theta.degree());
    std::printf("%-34s %-14s %-12s %-12s\n", "phi", "verdict", "r(N)", "r(2N)");
    for (const auto& phi : symbols) {
        const auto r = hm::invariance_residual(theta, phi);
        std::printf("%-34s %-14s %-12.3e %-12.3e\n", hm::describe(phi).c_str(), hm::to_string(r.verdict), r.residuals[0],
                    r.residuals[1]);
    }

    const auto eq = hm::verify_modelinv_lft(theta, hm::MoebiusMap(2, 0, -1, 4));
    const auto& c = eq.cases[0];
    std::printf("\ncompanion side: %s under %s -> %s\n", c.extra["beurling_theta"].get<std::string>().c_str(),
                c.extra["beurling_phi"].get<std::string>().c_str(), hm::to_string(c.expected));
    if (c.extra.contains("quotient_sup"))
        std::printf("sup |psi| on the circle = %.6f (2/3 = %.6f)\n", c.extra["quotient_sup"].get<double>(), 2.0 / 3.0);
    return eq.pass ? 0 : 1;
}
