// Tour of the library: generators, reduction, verification, topology.

#include <iostream>

#include "nessie/monster_group.hpp"
#include "nessie/surface_topology.hpp"

int main() {
    using namespace nessie;

    // The pairing generators are exact integer matrices.
    std::cout << "f_0 = " << f_generator(0).str() << "\n";
    std::cout << "g_0 = " << g_generator(0).str() << " (corrected)\n";
    std::cout << "g_0 = " << g_generator(0, GVariant::Printed).str() << " (printed)\n\n";

    // Move a point into the fundamental domain.
    const auto res = reduce_to_domain({4.3, 0.02}, 15);
    std::cout << "reduce 4.3 + 0.02i: word " << res.word.str() << ", lands at "
              << res.point.real() << " + " << res.point.imag() << "i\n\n";

    // The printed g family pairs the wrong circles; the verifier shows it.
    for (auto variant : {GVariant::Corrected, GVariant::Printed}) {
        const auto report = verify_side_pairings(3, variant);
        std::cout << "pairings (" << to_string(variant) << "): " << report.match_count() << "/"
                  << report.records.size() << " match\n";
    }
    std::cout << "\n";

    // Each truncation certifies one more handle.
    for (int k = 1; k <= 4; ++k) {
        const auto t = truncation_topology(TruncationSpec::flat(k));
        std::cout << "flat truncation k=" << k << ": genus " << t.genus << ", boundary "
                  << t.boundary_components << ", chi " << t.euler_characteristic << "\n";
    }
    return 0;
}
