// Renders the standard set of figures into ./figures/.

#include <filesystem>
#include <iostream>

#include "nessie/curve.hpp"
#include "nessie/slit_plane.hpp"
#include "nessie/svg.hpp"

int main() {
    namespace fs = std::filesystem;
    fs::create_directories("figures");

    nessie::render_domain_svg(3, "figures/domain.svg");

    const auto stats = nessie::render_tessellation_svg(1, 3, "figures/tessellation.svg");
    std::cout << "tessellation: " << stats.arcs_drawn << " arcs drawn, " << stats.arcs_clipped
              << " clipped\n";

    const auto surf = nessie::SlitSurface::monster(2);
    const auto trace = nessie::trace_geodesic(surf, {3.25, 2.0}, {0.3, -1.0}, 32, 10.0);
    nessie::render_flat_svg(surf, &trace, "figures/slits.svg");

    nessie::render_curve_svg(nessie::curve_points(6000), "figures/curve.svg");

    std::cout << "wrote figures/domain.svg, tessellation.svg, slits.svg, curve.svg\n";
    return 0;
}
