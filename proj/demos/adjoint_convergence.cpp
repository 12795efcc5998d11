// Cowen's factorization C_phi^* = M_g C_sigma M_h^* compared on growing
// finite sections, and the Shapiro formula on f = z^k.

#include <cstdio>

#include "hm/operators.hpp"

int main() {
    const hm::MoebiusMap maps[] = {
        hm::MoebiusMap(1, 0, -1, 2),                          // z/(2 - z)
        hm::MoebiusMap(2, 1, 0, 4),                           // (2z + 1)/4
        hm::MoebiusMap({0.3, 0.2}, {0.1, -0.2}, {0.2, 0.1}, 1.0),
    };
    for (const auto& phi : maps) {
        std::printf("phi = %s, sigma = %s\n", hm::describe(phi).c_str(), hm::describe(hm::cowen_sigma(phi)).c_str());
        for (std::size_t N : {8u, 16u, 32u, 64u})
            std::printf("  N = %-3zu  Cowen %.3e   Shapiro(z^3) %.3e\n", N, hm::cowen_adjoint_check(phi, N),
                        hm::shapiro_discrepancy(phi, hm::TruncatedSeries::monomial(3, 3), N));
    }
    return 0;
}
