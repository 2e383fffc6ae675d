// nessie command-line front end.
//
// Exit codes: 0 = success / all verifications pass, 1 = a verification
// mismatch or computation failure, 2 = usage or I/O error.  Reports go
// to stdout (human-readable, or JSON with --json); errors go to stderr.

#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nessie/curve.hpp"
#include "nessie/mobius.hpp"
#include "nessie/monster_group.hpp"
#include "nessie/slit_plane.hpp"
#include "nessie/surface_topology.hpp"
#include "nessie/svg.hpp"

using json = nlohmann::ordered_json;

namespace {

struct Ctx {
    bool as_json = false;
    double tol = nessie::kGeomTol;
};

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw CLI::ValidationError(std::string(what) + " expects the form X,Y");
    try {
        std::size_t used = 0;
        const double a = std::stod(text.substr(0, comma), &used);
        const double b = std::stod(text.substr(comma + 1));
        return {a, b};
    } catch (const std::exception&) {
        throw CLI::ValidationError(std::string(what) + " expects two numbers X,Y");
    }
}

json circle_json(const nessie::GeneralizedCircle& c) {
    if (c.is_circle()) return {{"kind", "circle"}, {"center", c.center}, {"radius", c.radius}};
    return {{"kind", "line"}, {"x", c.center}};
}

json point_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

const char* side_name(nessie::SlitSide s) {
    switch (s) {
        case nessie::SlitSide::Upper: return "upper";
        case nessie::SlitSide::Lower: return "lower";
        default: return "none";
    }
}

void emit(const Ctx& ctx, const json& report, const std::string& human) {
    if (ctx.as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << human;
}

// ------------------------------------------------------------- handlers

int run_verify(const Ctx& ctx, long long window, const std::string& variant_name) {
    const auto variant =
        variant_name == "printed" ? nessie::GVariant::Printed : nessie::GVariant::Corrected;
    const auto report = nessie::verify_side_pairings(window, variant, ctx.tol);
    const auto exchange = nessie::verify_region_exchange(window, 16, ctx.tol, variant);
    const bool ok = report.all_match() && exchange.all_conform();

    json j{{"command", "hyp verify"},
           {"variant", variant_name},
           {"window", window},
           {"pairings", json::array()},
           {"matched", report.match_count()},
           {"total", static_cast<int>(report.records.size())},
           {"exchange",
            {{"samples_per_side", exchange.samples_per_side},
             {"checked", exchange.checked},
             {"failures", exchange.failures},
             {"conforms", exchange.all_conform()}}},
           {"ok", ok}};
    std::string human = "side pairings (" + variant_name + ", window " +
                        std::to_string(window) + ")\n";
    for (const auto& rec : report.records) {
        j["pairings"].push_back({{"letter", rec.letter.str()},
                                 {"source_center", rec.source.center},
                                 {"claimed_center", rec.claimed_target.center},
                                 {"computed", circle_json(rec.computed_image)},
                                 {"match", rec.match}});
        human += "  " + rec.letter.str() + ": " + to_string(rec.source) + " -> " +
                 to_string(rec.computed_image) + (rec.match ? "  ok" : "  MISMATCH, claimed " +
                                                                           to_string(rec.claimed_target)) +
                 "\n";
    }
    human += "pairings: " + std::to_string(report.match_count()) + "/" +
             std::to_string(report.records.size()) + " match\n";
    human += "region exchange: " + std::to_string(exchange.checked - exchange.failures) + "/" +
             std::to_string(exchange.checked) + " samples conform\n";
    emit(ctx, j, human);
    return ok ? 0 : 1;
}

int run_reduce(const Ctx& ctx, const std::string& point_text, long long window) {
    const auto [re, im] = parse_pair(point_text, "--point");
    if (!(im > 0.0)) throw CLI::ValidationError("--point must lie in the upper half-plane");
    const auto res = nessie::reduce_to_domain({re, im}, window, ctx.tol);
    json j{{"command", "hyp reduce"},
           {"point", point_json({re, im})},
           {"window", window},
           {"word", res.word.str()},
           {"steps", res.steps},
           {"reduced_point", point_json(res.point)},
           {"in_domain", nessie::domain_contains(res.point, ctx.tol)}};
    std::string human = "word: " + res.word.str() + "\n" +
                        "reduced point: " + nessie::format_number(res.point.real()) + " + " +
                        nessie::format_number(res.point.imag()) + "i (" +
                        std::to_string(res.steps) + " steps)\n";
    emit(ctx, j, human);
    return 0;
}

int run_probe(const Ctx& ctx, long long window, int depth) {
    const auto report = nessie::probe_fixed_points(window, depth);
    json j{{"command", "hyp probe"},
           {"window", window},
           {"depth", depth},
           {"words_checked", report.words_checked},
           {"hyperbolic", report.hyperbolic},
           {"parabolic", report.parabolic},
           {"elliptic", report.elliptic},
           {"identity_matrices", report.identity_matrices},
           {"distinct_matrices", report.distinct_matrices},
           {"fixed_points_all_real", report.fixed_points_all_real},
           {"offenders", report.offenders},
           {"clean", report.clean()}};
    std::string human =
        "probe window " + std::to_string(window) + ", depth " + std::to_string(depth) + "\n" +
        "  words checked: " + std::to_string(report.words_checked) + "\n" +
        "  hyperbolic: " + std::to_string(report.hyperbolic) +
        ", parabolic: " + std::to_string(report.parabolic) +
        ", elliptic: " + std::to_string(report.elliptic) +
        ", identity: " + std::to_string(report.identity_matrices) + "\n" +
        "  distinct matrices: " + std::to_string(report.distinct_matrices) + "\n" +
        "  fixed points all real: " + (report.fixed_points_all_real ? "yes" : "no") + "\n" +
        std::string(report.clean() ? "no fixed points found in the upper half-plane\n"
                                   : "FOUND elements with fixed points in the half-plane\n");
    emit(ctx, j, human);
    return report.clean() ? 0 : 1;
}

int run_domain(const Ctx& ctx, long long window, const std::string& out) {
    nessie::render_domain_svg(window, out);
    json j{{"command", "hyp domain"},
           {"window", window},
           {"out", out},
           {"circles", 2 * window + 1}};
    emit(ctx, j,
         "domain figure: " + std::to_string(2 * window + 1) + " circles -> " + out + "\n");
    return 0;
}

int run_tessellate(const Ctx& ctx, long long window, int depth, const std::string& out,
                   double eps) {
    const auto stats = nessie::render_tessellation_svg(window, depth, out, eps);
    json j{{"command", "hyp tessellate"},
           {"window", window},
           {"depth", depth},
           {"out", out},
           {"arcs_total", stats.arcs_total},
           {"arcs_drawn", stats.arcs_drawn},
           {"arcs_clipped", stats.arcs_clipped}};
    emit(ctx, j,
         "tessellation: " + std::to_string(stats.arcs_total) + " arcs (" +
             std::to_string(stats.arcs_drawn) + " drawn, " +
             std::to_string(stats.arcs_clipped) + " clipped) -> " + out + "\n");
    return 0;
}

int run_flat_trace(const Ctx& ctx, int k, const std::optional<std::string>& start_text,
                   const std::optional<std::string>& dir_text, int max_events,
                   double max_length, const std::optional<std::string>& out) {
    const auto surf = nessie::SlitSurface::monster(k);
    if (!start_text.has_value() != !dir_text.has_value())
        throw CLI::ValidationError("--start and --dir must be given together");
    if (!start_text && !out)
        throw CLI::ValidationError("flat trace needs --start/--dir, or --out for the bare figure");

    json j{{"command", "flat trace"}, {"k", k}};
    std::string human;
    std::optional<nessie::GeodesicTrace> trace;
    if (start_text) {
        const auto [sx, sy] = parse_pair(*start_text, "--start");
        const auto [dx, dy] = parse_pair(*dir_text, "--dir");
        trace = nessie::trace_geodesic(surf, {sx, sy}, {dx, dy}, max_events, max_length);
        j["start"] = json::array({sx, sy});
        j["dir"] = json::array({trace->direction.x, trace->direction.y});
        j["length"] = trace->total_length;
        j["events"] = json::array();
        for (const auto& e : trace->events) {
            switch (e.kind) {
                case nessie::TraceEvent::Kind::Crossing:
                    j["events"].push_back({{"kind", "crossing"},
                                           {"slit", e.slit},
                                           {"entry", json::array({e.entry.x, e.entry.y})},
                                           {"entry_side", side_name(e.entry.side)},
                                           {"exit", json::array({e.exit.x, e.exit.y})},
                                           {"exit_side", side_name(e.exit.side)}});
                    human += "crossing: slit " + std::to_string(e.slit + 1) + " at (" +
                             nessie::format_number(e.entry.x) + ", 0) " +
                             side_name(e.entry.side) + " -> (" +
                             nessie::format_number(e.exit.x) + ", 0) " +
                             side_name(e.exit.side) + "\n";
                    break;
                case nessie::TraceEvent::Kind::SingularityHit:
                    j["events"].push_back(
                        {{"kind", "singularity"},
                         {"point", json::array({e.singularity.x, e.singularity.y})}});
                    human += "singularity hit at (" + nessie::format_number(e.singularity.x) +
                             ", 0)\n";
                    break;
                case nessie::TraceEvent::Kind::LimitReached:
                    j["events"].push_back({{"kind", "limit"}});
                    human += "limit reached\n";
                    break;
            }
        }
        human += "length: " + nessie::format_number(trace->total_length) + "\n";
    }
    if (out) {
        nessie::render_flat_svg(surf, trace ? &*trace : nullptr, *out);
        j["out"] = *out;
        human += "figure -> " + *out + "\n";
    }
    emit(ctx, j, human);
    return 0;
}

int run_flat_cone(const Ctx& ctx, int k, const std::string& point_text) {
    const auto surf = nessie::SlitSurface::monster(k);
    const auto [px, py] = parse_pair(point_text, "--point");
    const double angle = nessie::cone_angle(surf, {px, py});
    const double pi = std::acos(-1.0);
    json j{{"command", "flat cone"},
           {"k", k},
           {"point", json::array({px, py})},
           {"angle", angle},
           {"angle_over_pi", angle / pi}};
    emit(ctx, j,
         "cone angle: " + nessie::format_number(angle) + " rad (" +
             nessie::format_number(angle / pi) + " pi)\n");
    return 0;
}

int run_topo_truncation(const Ctx& ctx, const std::string& model, int k, long long m) {
    const auto spec = model == "flat" ? nessie::TruncationSpec::flat(k)
                                      : nessie::TruncationSpec::hyperbolic(m);
    const auto t = nessie::truncation_topology(spec);
    json j{{"command", "topo truncation"}, {"model", model}};
    if (model == "flat")
        j["k"] = k;
    else
        j["m"] = m;
    j["genus"] = t.genus;
    j["boundary"] = t.boundary_components;
    j["chi"] = t.euler_characteristic;
    j["orientable"] = t.orientable;
    emit(ctx, j,
         "genus=" + std::to_string(t.genus) + " boundary=" +
             std::to_string(t.boundary_components) + " chi=" +
             std::to_string(t.euler_characteristic) + "\n");
    return 0;
}

int run_topo_ends(const Ctx& ctx, const std::string& base, int k, int levels,
                  double circumference) {
    const int ends = base == "plane" ? nessie::count_ends_plane(k, levels)
                                     : nessie::count_ends_cylinder(k, levels, circumference);
    json j{{"command", "topo ends"},
           {"base", base},
           {"k", k},
           {"levels", levels},
           {"ends", ends}};
    if (base == "cylinder") j["circumference"] = circumference;
    emit(ctx, j, "ends: " + std::to_string(ends) + "\n");
    return 0;
}

int run_curve(const Ctx& ctx, int n, const std::string& out) {
    const auto sums = nessie::curve_points(n);
    nessie::render_curve_svg(sums, out);
    json j{{"command", "curve"}, {"n", n}, {"out", out}, {"points", json::array()}};
    for (const auto& s : sums) j["points"].push_back(point_json(s));
    emit(ctx, j, "curve: " + std::to_string(sums.size()) + " partial sums -> " + out + "\n");
    return 0;
}

// ------------------------------------------------------ config handling

//! Plain "key = value" files with '#' comments; keys mirror the long
//! flags of the invoked subcommand.  Values from the file are injected
//! before the command-line flags, which therefore win.
std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nessie::IoError("cannot read config file: " + path);
    std::vector<std::string> tokens;
    std::string line;
    const auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw nessie::IoError(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw nessie::IoError(path + ":" + std::to_string(lineno) +
                                  ": expected 'key = value'");
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

//! Pull --config out of the raw arguments and splice the file's tokens
//! in right after the subcommand words.
std::vector<std::string> preprocess_args(std::vector<std::string> args) {
    std::string config_path;
    for (std::size_t i = 0; i < args.size();) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw nessie::IoError("--config needs a file path");
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(9);
            args.erase(args.begin() + static_cast<long>(i));
        } else {
            ++i;
        }
    }
    if (config_path.empty()) return args;

    // Locate the subcommand words (global flags may precede them) and
    // splice the file's tokens right behind, so later explicit flags
    // take precedence under the take-last policy.
    const auto extra = config_tokens(config_path);
    std::size_t insert_at = args.size();
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& tok = args[i];
        if (tok == "curve") {
            insert_at = i + 1;
            break;
        }
        if (tok == "hyp" || tok == "flat" || tok == "topo") {
            insert_at = (i + 1 < args.size() && !args[i + 1].empty() && args[i + 1][0] != '-')
                            ? i + 2
                            : i + 1;
            break;
        }
    }
    args.insert(args.begin() + static_cast<long>(insert_at), extra.begin(), extra.end());
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"the infinite-genus one-ended surface, constructed and verified"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    Ctx ctx;
    app.add_flag("--json", ctx.as_json, "emit a machine-readable JSON report");
    app.add_option("--tol", ctx.tol, "geometric comparison tolerance")->capture_default_str();

    // hyp ------------------------------------------------------------
    auto* hyp = app.add_subcommand("hyp", "hyperbolic model");
    hyp->require_subcommand(1);
    hyp->fallthrough();

    long long verify_window = 2;
    std::string verify_variant = "corrected";
    auto* verify = hyp->add_subcommand("verify", "check the side pairings and region exchange");
    verify->fallthrough();
    verify->add_option("--window", verify_window, "generator index window")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--variant", verify_variant, "g-family variant")
        ->check(CLI::IsMember({"printed", "corrected"}));

    std::string reduce_point;
    long long reduce_window = 15;
    auto* reduce = hyp->add_subcommand("reduce", "move a point into the fundamental domain");
    reduce->fallthrough();
    reduce->add_option("--point", reduce_point, "point RE,IM in the upper half-plane")
        ->required();
    reduce->add_option("--window", reduce_window, "generator index window")
        ->check(CLI::NonNegativeNumber);

    long long tess_window = 1;
    int tess_depth = 2;
    double tess_eps = 1e-3;
    std::string tess_out;
    auto* tess = hyp->add_subcommand("tessellate", "draw circle images under group words");
    tess->fallthrough();
    tess->add_option("--window", tess_window, "generator index window")
        ->check(CLI::NonNegativeNumber);
    tess->add_option("--depth", tess_depth, "maximum word length")->check(CLI::NonNegativeNumber);
    tess->add_option("--eps", tess_eps, "clip image circles shallower than this");
    tess->add_option("--out", tess_out, "output SVG path")->required();

    long long domain_window = 2;
    std::string domain_out;
    auto* domain = hyp->add_subcommand("domain", "draw the fundamental domain");
    domain->fallthrough();
    domain->add_option("--window", domain_window, "circle index window")
        ->check(CLI::NonNegativeNumber);
    domain->add_option("--out", domain_out, "output SVG path")->required();

    long long probe_window = 1;
    int probe_depth = 3;
    auto* probe = hyp->add_subcommand("probe", "search words for half-plane fixed points");
    probe->fallthrough();
    probe->add_option("--window", probe_window, "generator index window")
        ->check(CLI::NonNegativeNumber);
    probe->add_option("--depth", probe_depth, "maximum word length")
        ->check(CLI::NonNegativeNumber);

    // flat -----------------------------------------------------------
    auto* flat = app.add_subcommand("flat", "flat slit model");
    flat->require_subcommand(1);
    flat->fallthrough();

    int trace_k = 1;
    std::optional<std::string> trace_start, trace_dir, trace_out;
    int trace_max_events = 64;
    double trace_max_length = 100.0;
    auto* trace = flat->add_subcommand("trace", "trace a geodesic through the gluings");
    trace->fallthrough();
    trace->add_option("--k", trace_k, "number of glued slit pairs")->check(CLI::PositiveNumber);
    trace->add_option("--start", trace_start, "start point X,Y");
    trace->add_option("--dir", trace_dir, "direction DX,DY");
    trace->add_option("--max-events", trace_max_events, "event cap")->check(CLI::PositiveNumber);
    trace->add_option("--max-length", trace_max_length, "length cap")
        ->check(CLI::PositiveNumber);
    trace->add_option("--out", trace_out, "optional SVG path");

    int cone_k = 1;
    std::string cone_point;
    auto* cone = flat->add_subcommand("cone", "total angle around a point");
    cone->fallthrough();
    cone->add_option("--k", cone_k, "number of glued slit pairs")->check(CLI::PositiveNumber);
    cone->add_option("--point", cone_point, "point X,Y")->required();

    // topo -----------------------------------------------------------
    auto* topo = app.add_subcommand("topo", "topological invariants");
    topo->require_subcommand(1);
    topo->fallthrough();

    std::string trunc_model;
    int trunc_k = 1;
    long long trunc_m = 0;
    auto* trunc = topo->add_subcommand("truncation", "genus and boundary of a truncated piece");
    trunc->fallthrough();
    trunc->add_option("--model", trunc_model, "flat or hyp")
        ->required()
        ->check(CLI::IsMember({"flat", "hyp"}));
    trunc->add_option("--k", trunc_k, "flat model: slit pairs")->check(CLI::PositiveNumber);
    trunc->add_option("--m", trunc_m, "hyperbolic model: strip index");

    std::string ends_base;
    int ends_k = 0;
    int ends_levels = 3;
    double ends_circumference = 40.0;
    auto* ends = topo->add_subcommand("ends", "count ends by nested truncations");
    ends->fallthrough();
    ends->add_option("--base", ends_base, "plane or cylinder")
        ->required()
        ->check(CLI::IsMember({"plane", "cylinder"}));
    ends->add_option("--k", ends_k, "slit pairs (0 = bare base)")->check(CLI::NonNegativeNumber);
    ends->add_option("--levels", ends_levels, "exhaustion levels")->check(CLI::Range(2, 64));
    ends->add_option("--circumference", ends_circumference, "cylinder circumference")
        ->check(CLI::PositiveNumber);

    // curve ----------------------------------------------------------
    int curve_n = 6000;
    std::string curve_out;
    auto* curve = app.add_subcommand("curve", "exponential-sum curve figure");
    curve->fallthrough();
    curve->add_option("--n", curve_n, "number of summed terms")->check(CLI::PositiveNumber);
    curve->add_option("--out", curve_out, "output SVG path")->required();

    // ------------------------------------------------------------ run
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        const auto processed = preprocess_args(std::move(args));
        // CLI11 parses reversed token lists.
        std::vector<std::string> reversed(processed.rbegin(), processed.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const nessie::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return run_verify(ctx, verify_window, verify_variant);
        if (reduce->parsed()) return run_reduce(ctx, reduce_point, reduce_window);
        if (tess->parsed())
            return run_tessellate(ctx, tess_window, tess_depth, tess_out, tess_eps);
        if (domain->parsed()) return run_domain(ctx, domain_window, domain_out);
        if (probe->parsed()) return run_probe(ctx, probe_window, probe_depth);
        if (trace->parsed())
            return run_flat_trace(ctx, trace_k, trace_start, trace_dir, trace_max_events,
                                  trace_max_length, trace_out);
        if (cone->parsed()) return run_flat_cone(ctx, cone_k, cone_point);
        if (trunc->parsed()) return run_topo_truncation(ctx, trunc_model, trunc_k, trunc_m);
        if (ends->parsed())
            return run_topo_ends(ctx, ends_base, ends_k, ends_levels, ends_circumference);
        if (curve->parsed()) return run_curve(ctx, curve_n, curve_out);
        std::cerr << "usage error: no subcommand\n";
        return 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const nessie::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
