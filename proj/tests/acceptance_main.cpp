// Acceptance suite: runs every criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion.  The nessie CLI binary path
// is argv[1]; criteria 1 and 11 drive the real binary, the rest call
// the library directly.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nessie/curve.hpp"
#include "nessie/mobius.hpp"
#include "nessie/monster_group.hpp"
#include "nessie/slit_plane.hpp"
#include "nessie/surface_topology.hpp"
#include "nessie/svg.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace nessie;

namespace {

std::string g_cli;
fs::path g_tmp;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& cmd) {
    RunResult res;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (pipe == nullptr) return res;
    std::array<char, 8192> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ----------------------------------------------------------- criteria

bool criterion_1_side_pairings(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto good = run(g_cli + " --json hyp verify --window 10 --variant corrected");
    const double elapsed = seconds_since(t0);
    if (good.exit_code != 0) {
        detail = "corrected run exited " + std::to_string(good.exit_code);
        return false;
    }
    const auto j = json::parse(good.out, nullptr, false);
    if (j.is_discarded() || j["total"] != 42 || j["matched"] != 42) {
        detail = "expected 42/42 corrected pairings";
        return false;
    }
    for (const auto& rec : j["pairings"]) {
        if (rec["computed"]["kind"] != "circle" ||
            std::abs(double(rec["computed"]["center"]) - double(rec["claimed_center"])) > 1e-9 ||
            std::abs(double(rec["computed"]["radius"]) - 1.0) > 1e-9) {
            detail = "computed image off target for " + std::string(rec["letter"]);
            return false;
        }
    }
    if (elapsed >= 1.0) {
        detail = "runtime " + std::to_string(elapsed) + "s >= 1s";
        return false;
    }

    const auto bad = run(g_cli + " --json hyp verify --window 10 --variant printed");
    if (bad.exit_code != 1) {
        detail = "printed run should exit 1, got " + std::to_string(bad.exit_code);
        return false;
    }
    const auto jb = json::parse(bad.out, nullptr, false);
    for (const auto& rec : jb["pairings"]) {
        const std::string letter = rec["letter"];
        const bool is_g = letter[0] == 'g';
        if (is_g == bool(rec["match"])) {
            detail = "printed variant row not flagged as expected: " + letter;
            return false;
        }
        if (is_g) {
            // Claimed partner is 16m+12; the printed map lands on 16m+8.
            const double claimed = rec["claimed_center"];
            if (std::abs(double(rec["computed"]["center"]) - (claimed - 4.0)) > 1e-9) {
                detail = "printed g computed center is not 16m+8: " + letter;
                return false;
            }
        }
    }
    detail = "42/42 corrected in " + std::to_string(elapsed).substr(0, 5) +
             "s; printed g-rows all flagged at 16m+8";
    return true;
}

bool criterion_2_region_exchange(std::string& detail) {
    const auto report = verify_region_exchange(5, 64, 1e-9);
    detail = std::to_string(report.checked - report.failures) + "/" +
             std::to_string(report.checked) + " samples conform";
    return report.all_conform() && report.checked == (2 * 5 + 1) * 2 * 64 * 2;
}

bool criterion_3_determinants_traces(std::string& detail) {
    for (long long m = -100; m <= 100; ++m) {
        if (f_generator(m).determinant() != 1 ||
            g_generator(m, GVariant::Corrected).determinant() != 1) {
            detail = "determinant != 1 at m=" + std::to_string(m);
            return false;
        }
        if (abs(f_generator(m).trace()) != 8 ||
            abs(g_generator(m, GVariant::Corrected).trace()) != 8) {
            detail = "|trace| != 8 at m=" + std::to_string(m);
            return false;
        }
    }
    detail = "det = 1 and |trace| = 8 exactly for all |m| <= 100";
    return true;
}

bool criterion_4_reduction(std::string& detail) {
    std::mt19937 rng(20250811);
    std::uniform_real_distribution<double> re(-50.0, 50.0);
    std::uniform_real_distribution<double> im(1e-9, 10.0);
    std::vector<int> steps;
    steps.reserve(10000);
    for (int i = 0; i < 10000; ++i) {
        ReduceResult res;
        try {
            res = reduce_to_domain({re(rng), im(rng)}, 15);
        } catch (const std::exception& e) {
            detail = std::string("reduction failed: ") + e.what();
            return false;
        }
        if (!domain_contains(res.point)) {
            detail = "point " + std::to_string(i) + " not reduced into the domain";
            return false;
        }
        steps.push_back(res.steps);
    }
    std::nth_element(steps.begin(), steps.begin() + steps.size() / 2, steps.end());
    const int median = steps[steps.size() / 2];
    const int max = *std::max_element(steps.begin(), steps.end());
    detail = "10000/10000 reduced; median steps " + std::to_string(median) + ", max " +
             std::to_string(max);
    return median <= 3;
}

bool criterion_5_probe(std::string& detail) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto report = probe_fixed_points(1, 5);
    const double elapsed = seconds_since(t0);
    const std::size_t expected = 12u + 132u + 1452u + 15972u + 175692u;
    if (report.words_checked != expected) {
        detail = "expected " + std::to_string(expected) + " words, saw " +
                 std::to_string(report.words_checked);
        return false;
    }
    if (report.distinct_matrices != expected + 1) {
        detail = "matrices not pairwise distinct: " + std::to_string(report.distinct_matrices);
        return false;
    }
    if (report.elliptic != 0 || report.identity_matrices != 0 ||
        !report.fixed_points_all_real) {
        detail = "found elliptic/identity elements or complex fixed points";
        return false;
    }
    if (elapsed >= 30.0) {
        detail = "runtime " + std::to_string(elapsed) + "s >= 30s";
        return false;
    }
    detail = std::to_string(expected) + " words distinct, none elliptic/identity, fixed "
             "points real, " + std::to_string(elapsed).substr(0, 5) + "s";
    return true;
}

bool criterion_6_word_counts(std::string& detail) {
    std::vector<std::size_t> per_len(5, 0);
    for_each_word(1, 4, [&](const Word& w, const MobiusMap&) { ++per_len[w.size()]; });
    std::size_t expected = 12;  // 12 * 11^(d-1)
    for (int d = 1; d <= 4; ++d) {
        if (per_len[static_cast<std::size_t>(d)] != expected) {
            detail = "length " + std::to_string(d) + ": " +
                     std::to_string(per_len[static_cast<std::size_t>(d)]) + " != " +
                     std::to_string(expected);
            return false;
        }
        expected *= 11;
    }
    detail = "lengths 1..4 count 12, 132, 1452, 15972 exactly";
    return true;
}

bool criterion_7_flat_topology(std::string& detail) {
    for (int k = 1; k <= 8; ++k) {
        const auto t = truncation_topology(TruncationSpec::flat(k));
        if (t.genus != k || t.boundary_components != 1) {
            detail = "flat k=" + std::to_string(k) + " gave genus " + std::to_string(t.genus) +
                     ", boundary " + std::to_string(t.boundary_components);
            return false;
        }
    }
    for (int k = 0; k <= 8; ++k) {
        if (count_ends_plane(k, 3) != 1) {
            detail = "plane k=" + std::to_string(k) + " does not have one end";
            return false;
        }
    }
    if (count_ends_cylinder(4, 3) != 2) {
        detail = "cylinder comparator does not have two ends";
        return false;
    }
    detail = "genus k, one boundary for k=1..8; plane 1 end, cylinder 2";
    return true;
}

bool criterion_8_hyperbolic_piece(std::string& detail) {
    for (long long m = -5; m <= 5; ++m) {
        const auto t = truncation_topology(TruncationSpec::hyperbolic(m));
        if (t.euler_characteristic != -1 || t.genus != 1 || t.boundary_components != 1) {
            detail = "m=" + std::to_string(m) + " is not a one-holed torus";
            return false;
        }
    }
    detail = "strip piece is {chi=-1, g=1, b=1} for every m in [-5, 5]";
    return true;
}

bool criterion_9_cone_angles(std::string& detail) {
    const double pi = std::acos(-1.0);
    std::mt19937 rng(424242);
    for (int k = 1; k <= 5; ++k) {
        const auto surf = SlitSurface::monster(k);
        for (const auto& s : surf.slits()) {
            for (double xe : {s.x0, s.x1}) {
                if (std::abs(cone_angle(surf, {xe, 0.0}) - 4.0 * pi) > 1e-6) {
                    detail = "endpoint (" + std::to_string(xe) + ", 0) is not a 4*pi cone";
                    return false;
                }
            }
        }
        std::uniform_real_distribution<double> px(0.0, 8.0 * k + 4.0);
        std::uniform_real_distribution<double> py(-4.0, 4.0);
        for (int i = 0; i < 100; ++i) {
            const FlatPoint p{px(rng), py(rng)};
            if (std::abs(cone_angle(surf, p) - 2.0 * pi) > 1e-6) {
                detail = "regular point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                         ") is not flat";
                return false;
            }
        }
    }
    detail = "4*pi at all 4k endpoints and 2*pi at 100 random points, k = 1..5";
    return true;
}

bool criterion_10_geodesic_invariants(std::string& detail) {
    const auto surf = SlitSurface::monster(3);
    const double pi = std::acos(-1.0);
    std::mt19937 rng(31337);
    std::uniform_real_distribution<double> px(-2.0, 26.0);
    std::uniform_real_distribution<double> py(0.2, 5.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * pi);

    int done = 0;
    long long crossings = 0;
    while (done < 1000) {
        const double sign = (done % 2 == 0) ? 1.0 : -1.0;
        const FlatPoint start{px(rng), sign * py(rng)};
        const Vec2 dir{std::cos(ang(rng)), std::sin(ang(rng))};
        const auto fwd = trace_geodesic(surf, start, dir, 50, 12.0);
        if (fwd.events.back().kind == TraceEvent::Kind::SingularityHit) continue;
        if (std::abs(fwd.end_point().y) < 1e-6) continue;

        for (const auto& e : fwd.events) {
            if (e.kind != TraceEvent::Kind::Crossing) continue;
            ++crossings;
            const FlatPoint back = identify(surf, e.exit);
            if (back.x != e.entry.x || back.side != e.entry.side) {
                detail = "identification is not an exact involution";
                return false;
            }
        }
        for (const auto& [a, b] : fwd.polyline) {
            if (std::abs((b.x - a.x) * fwd.direction.y - (b.y - a.y) * fwd.direction.x) > 1e-9) {
                detail = "direction changed across a crossing";
                return false;
            }
        }
        const auto rev = trace_geodesic(surf, {fwd.end_point().x, fwd.end_point().y},
                                        {-fwd.direction.x, -fwd.direction.y}, 50,
                                        fwd.total_length);
        std::vector<const TraceEvent*> fc, rc;
        for (const auto& e : fwd.events)
            if (e.kind == TraceEvent::Kind::Crossing) fc.push_back(&e);
        for (const auto& e : rev.events)
            if (e.kind == TraceEvent::Kind::Crossing) rc.push_back(&e);
        if (fc.size() != rc.size()) {
            detail = "reverse trace has a different crossing count";
            return false;
        }
        for (std::size_t i = 0; i < fc.size(); ++i) {
            const TraceEvent& f = *fc[fc.size() - 1 - i];
            const TraceEvent& r = *rc[i];
            if (std::abs(r.entry.x - f.exit.x) > 1e-9 || std::abs(r.exit.x - f.entry.x) > 1e-9) {
                detail = "reverse trace does not retrace the crossings";
                return false;
            }
        }
        ++done;
    }
    detail = "1000 traces: exact involution, constant direction, reversible (" +
             std::to_string(crossings) + " crossings)";
    return true;
}

bool criterion_11_curve(std::string& detail) {
    const auto svg1 = (g_tmp / "curve_a.svg").string();
    const auto svg2 = (g_tmp / "curve_b.svg").string();
    const auto r1 = run(g_cli + " --json curve --n 6000 --out " + svg1);
    const auto r2 = run(g_cli + " --json curve --n 6000 --out " + svg2);
    if (r1.exit_code != 0 || r2.exit_code != 0) {
        detail = "curve command failed";
        return false;
    }
    const auto j = json::parse(r1.out, nullptr, false);
    if (j.is_discarded() || j["points"].size() != 6000) {
        detail = "expected 6000 partial sums";
        return false;
    }
    double px = 0.0, py = 0.0;
    for (const auto& pt : j["points"]) {
        const double dx = double(pt[0]) - px, dy = double(pt[1]) - py;
        if (std::abs(std::hypot(dx, dy) - 1.0) > 1e-12) {
            detail = "a step does not have unit modulus";
            return false;
        }
        px = pt[0];
        py = pt[1];
    }
    const auto a = slurp(svg1), b = slurp(svg2);
    if (a.empty() || a != b) {
        detail = "SVG output is not byte-identical across runs";
        return false;
    }
    detail = "6000 unit-modulus steps; SVG byte-identical across runs";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-nessie-binary>\n";
        return 2;
    }
    g_cli = argv[1];
    g_tmp = fs::temp_directory_path() / "nessie_acceptance";
    fs::create_directories(g_tmp);

    struct Criterion {
        const char* name;
        bool (*fn)(std::string&);
    };
    const Criterion criteria[] = {
        {"side pairings at window 10 (corrected pass, printed flagged)", criterion_1_side_pairings},
        {"region exchange, window 5, 64 samples per side, 1e-9", criterion_2_region_exchange},
        {"determinants and traces exact for |m| <= 100", criterion_3_determinants_traces},
        {"reduction of 10000 random points, window 15, median <= 3", criterion_4_reduction},
        {"freeness and fixed-point probe, window 1, depth 5", criterion_5_probe},
        {"word-count law 12*11^(d-1) for d <= 4", criterion_6_word_counts},
        {"flat truncations: genus k, one boundary; end counts", criterion_7_flat_topology},
        {"hyperbolic strip piece is a one-holed torus for |m| <= 5", criterion_8_hyperbolic_piece},
        {"cone angles: 4*pi at endpoints, 2*pi at regular points", criterion_9_cone_angles},
        {"geodesic invariants on 1000 random traces", criterion_10_geodesic_invariants},
        {"curve with N = 6000: unit steps, deterministic SVG", criterion_11_curve},
    };

    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << index << ". " << c.name;
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << "\n";
        if (!ok) ++failures;
    }

    fs::remove_all(g_tmp);
    std::cout << (failures == 0 ? "acceptance: all criteria pass"
                                : "acceptance: " + std::to_string(failures) + " criteria FAILED")
              << "\n";
    return failures == 0 ? 0 : 1;
}
