#include "pencil/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "pencil/generators.hpp"
#include "pencil/poincare.hpp"

namespace pencil {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::vector<double> parse_params(const std::string& text) {
    std::vector<double> params;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        params.push_back(std::stod(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return params;
}

json config_echo(const PipelineConfig& c, int resolved_sink) {
    json doc;
    doc["space"] = c.space_source;
    doc["source"] = c.source;
    doc["sink"] = resolved_sink;
    doc["scale_exp"] = c.scale_exp;
    doc["c0"] = real(c.c0);
    doc["lambda"] = real(c.lambda);
    doc["lip_radius_multiplier"] = real(c.lip_radius_multiplier);
    doc["good_half_multiplier"] = real(c.good_half_multiplier);
    doc["geodesic_knn"] = c.geodesic_knn;
    doc["seed"] = c.seed;
    doc["num_g"] = c.num_g;
    doc["num_lip_tests"] = c.num_lip_tests;
    doc["num_pi"] = c.num_pi;
    doc["include_timings"] = c.include_timings;
    return doc;
}

json skipped(const std::string& reason) {
    json doc;
    doc["skipped"] = reason;
    return doc;
}

// Random cut through the graph (source side), for the cut identity check.
std::vector<int> random_cut(Rng& rng, const Net& net) {
    std::vector<int> side = {net.source};
    for (int v : net.vertices) {
        if (v == net.source || v == net.sink) continue;
        if (rng.next_u64() & 1) side.push_back(v);
    }
    std::sort(side.begin(), side.end());
    return side;
}

} // namespace

std::vector<double> random_nonneg_g(Rng& rng, int n) {
    std::vector<double> g(static_cast<size_t>(n));
    for (auto& v : g) v = rng.next_double();
    return g;
}

std::vector<double> random_mcshane(Rng& rng, const Space& space) {
    int n = space.size();
    int anchors = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(std::min(8, n))));
    std::map<int, double> assigned;
    while (static_cast<int>(assigned.size()) < anchors) {
        assigned[static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)))] = 0.0;
    }
    for (auto& [p, v] : assigned) v = rng.next_double();
    double lip = 0;
    for (const auto& [y, vy] : assigned) {
        for (const auto& [z, vz] : assigned) {
            if (z <= y) continue;
            lip = std::max(lip, std::abs(vy - vz) / space.dist(y, z));
        }
    }
    return mcshane_extend(space, assigned, lip);
}

Space load_space(const PipelineConfig& config) {
    Space space = [&] {
        const std::string& src = config.space_source;
        if (src.rfind("gen:", 0) == 0) {
            size_t second = src.find(':', 4);
            std::string name = second == std::string::npos ? src.substr(4)
                                                           : src.substr(4, second - 4);
            std::vector<double> params;
            if (second != std::string::npos) params = parse_params(src.substr(second + 1));
            return generate(name, params);
        }
        return load_space_file(src);
    }();
    if (config.geodesic_knn > 0) {
        return space.with_geodesic_metric(config.geodesic_knn);
    }
    return space;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
    return run_pipeline(config, load_space(config));
}

PipelineResult run_pipeline(const PipelineConfig& config, const Space& space) {
    PipelineResult result;
    json& report = result.report;
    json timings;
    json checks;
    bool all_pass = true;
    auto record = [&](const std::string& name, bool pass, json detail = nullptr) {
        json entry;
        entry["pass"] = pass;
        if (!detail.is_null()) entry["detail"] = std::move(detail);
        checks[name] = std::move(entry);
        all_pass = all_pass && pass;
    };

    int s = config.source;
    int t = config.sink < 0 ? space.size() - 1 : config.sink;
    space.check_point(s);
    space.check_point(t);
    if (s == t) throw std::invalid_argument("source and sink must be distinct");
    if (config.scale_exp < 1) {
        throw std::invalid_argument("scale exponent must be >= 1 (net scale below d(s,t))");
    }

    report["config"] = config_echo(config, t);
    const double dist_st = space.dist(s, t);
    const double r_n = std::ldexp(dist_st, -config.scale_exp); // 2^-n d(s,t)
    const double lip_radius = config.lip_radius_multiplier * space.resolution();

    {
        json sec;
        sec["points"] = space.size();
        sec["total_mass"] = real(space.total_mass());
        sec["diameter"] = real(space.diameter());
        sec["resolution"] = real(space.resolution());
        sec["doubling_estimate"] = real(space.doubling_estimate());
        sec["dist_st"] = real(dist_st);
        sec["lip_radius"] = real(lip_radius);
        report["space"] = std::move(sec);
    }

    auto t0 = Clock::now();
    Net net = build_net(space, s, t, r_n, config.c0 * dist_st);
    timings["net"] = ms_since(t0);
    {
        json sec;
        sec["r_n"] = real(net.scale);
        sec["domain_radius"] = real(net.domain_radius);
        sec["vertices"] = static_cast<int>(net.vertices.size());
        report["net"] = std::move(sec);
    }

    t0 = Clock::now();
    NetGraph graph = build_graph(net, space);
    timings["graph"] = ms_since(t0);
    {
        json sec;
        sec["vertices"] = graph.vertex_count();
        sec["edges"] = static_cast<int>(graph.edges.size());
        sec["max_degree"] = graph.max_degree;
        report["graph"] = std::move(sec);
    }

    t0 = Clock::now();
    Flow flow = max_flow(graph);
    Rat norm = flow_norm(flow);
    MinCut cut = min_cut(flow);
    timings["flow"] = ms_since(t0);
    {
        json sec;
        sec["norm"] = rational(norm);
        sec["connected"] = norm != 0;
        report["flow"] = std::move(sec);
        json mc;
        mc["capacity"] = rational(cut.capacity);
        mc["side_size"] = static_cast<int>(cut.side.size());
        mc["side"] = cut.side;
        report["min_cut"] = std::move(mc);
    }

    Rng rng(config.seed);

    if (norm == 0) {
        // No flow at this scale: the graph certifies a vanishing cut, which
        // is the discrete witness against the Poincare inequality.
        result.pi_failure = true;
        report["status"] = "pi_failure_certificate";
        json cert;
        cert["cut_side"] = cut.side;
        cert["cut_capacity"] = rational(cut.capacity);
        cert["reason"] = "no source-sink flow at this scale";
        report["pi_failure_certificate"] = std::move(cert);
        for (const char* name :
             {"boundary", "current", "cycles", "pencil", "pc_inequality", "pi_checks"}) {
            report[name] = skipped("zero flow (source and sink disconnected at this scale)");
        }
        record("flow_axioms", validate_flow(flow).ok);
        record("duality_min_cut", cut.capacity == norm);
        report["verifications"] = checks;
        report["verifications"]["all_pass"] = all_pass;
        result.checks_ok = all_pass;
        if (config.include_timings) report["timings_ms"] = timings;
        return result;
    }

    report["status"] = "ok";

    // Hard invariants of the flow stage.
    auto validation = validate_flow(flow);
    record("flow_axioms", validation.ok, validation.message);
    record("duality_min_cut", cut.capacity == norm,
           "cut " + rat_to_string(cut.capacity) + " vs norm " + rat_to_string(norm));
    {
        bool ok = true;
        for (int i = 0; i < 20 && ok; ++i) {
            ok = flow_across(flow, random_cut(rng, net)) == norm;
        }
        record("cut_identity_random_cuts", ok);
    }

    // Current and boundary. Normalizing by the norm makes (P1) exact.
    t0 = Clock::now();
    DiscreteCurrent raw = build_current(flow, space);
    DiscreteCurrent current = scaled(raw, Rat(1) / norm);
    auto atoms = boundary(current);
    timings["current"] = ms_since(t0);
    {
        bool ok = atoms.size() == 2 && atoms.count(s) && atoms.count(t) &&
                  atoms.at(s) == Rat(-1) && atoms.at(t) == Rat(1);
        record("boundary_identity", ok);
        report["boundary"] = json{{"atoms", boundary_dump(atoms)}};
        result.boundary_doc = boundary_dump(atoms);
        result.current_doc = current_dump(current);
    }
    auto support = support_check(current, space, config.c0);
    auto density = density_check(current, space, config.c0);
    {
        json sec;
        sec["segments"] = static_cast<int>(current.segments.size());
        sec["total_mass"] = real(total_mass(current));
        // measured constant of the mass-vs-domain-diameter bound
        sec["mass_over_domain_diameter"] = real(total_mass(current) / (2 * net.domain_radius));
        sec["support_ok"] = support.ok;
        sec["support_max_excess"] = real(support.max_excess);
        sec["density_max_ratio"] = real(density.max_ratio);
        sec["density_argmax_vertex"] = density.argmax_vertex;
        sec["density_flagged"] = density.flagged;
        report["current"] = std::move(sec);
        record("support", support.ok, real(support.max_excess));
    }

    // Cycle removal and decomposition into curves.
    t0 = Clock::now();
    auto [reduced, cycles] = acyclic_reduce(flow);
    Pencil full = decompose(reduced, space);
    timings["pencil"] = ms_since(t0);
    {
        json sec;
        sec["count"] = static_cast<int>(cycles.cycles.size());
        sec["removed_mass"] = real(cycles.mass(space));
        report["cycles"] = std::move(sec);
    }
    {
        auto sums = edge_sums(graph, full, cycles);
        bool ok = true;
        for (size_t e = 0; e < sums.size(); ++e) ok = ok && sums[e] == flow.value[e];
        record("reconstruction", ok);
        bool arcs = true;
        for (const auto& c : full.curves) {
            arcs = arcs && c.path.front() == s && c.path.back() == t;
            std::vector<int> sorted = c.path;
            std::sort(sorted.begin(), sorted.end());
            arcs = arcs && std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        }
        record("arcs", arcs);
        record("pre_norm_weight_equals_norm", full.total_weight == norm);
    }

    Pencil normalized = normalize(full);
    double mean_length = 0, max_length = 0;
    for (const auto& c : normalized.curves) {
        mean_length += rat_to_double(c.weight) * c.length;
        max_length = std::max(max_length, c.length);
    }
    double threshold = config.good_half_multiplier * mean_length;
    double c0_good = threshold / dist_st;
    json pencil_sec;
    pencil_sec["curves"] = static_cast<int>(full.curves.size());
    pencil_sec["pre_norm_weight"] = rational(full.total_weight);
    pencil_sec["mean_length"] = real(mean_length);
    pencil_sec["max_length"] = real(max_length);

    Pencil good;
    bool have_good = false;
    try {
        good = good_half(full, space, c0_good);
        have_good = true;
        Rat retained = 0;
        for (const auto& c : full.curves) {
            if (c.length <= threshold) retained += c.weight;
        }
        double good_max_length = 0;
        for (const auto& c : good.curves) good_max_length = std::max(good_max_length, c.length);
        json gh;
        gh["threshold"] = real(threshold);
        gh["c0_equivalent"] = real(c0_good);
        gh["curves"] = static_cast<int>(good.curves.size());
        gh["retained_fraction"] = rational(retained / full.total_weight);
        gh["quasiconvexity_constant"] = real(good_max_length / dist_st);
        pencil_sec["good_half"] = std::move(gh);
        record("good_half_retains_half", 2 * retained >= full.total_weight);
    } catch (const GoodHalfError& err) {
        pencil_sec["good_half"] =
            json{{"error", err.what()}, {"minimal_c0", real(err.minimal_c0)}};
        record("good_half_retains_half", false, err.what());
    }
    report["pencil"] = std::move(pencil_sec);
    result.pencil_doc = pencil_dump(have_good ? good : normalized);

    // Pencil-of-curves inequality on the good half, plus the g == 1
    // cross-check against the reduced current's mass on the full family.
    t0 = Clock::now();
    {
        json sec;
        // Interior integration points of the two-pole density integral; with
        // none (a bare two-point space) the inequality is vacuous.
        int interior = 0;
        for (int y = 0; y < space.size(); ++y) {
            if (y != s && y != t && space.dist(s, y) < config.c0 * dist_st) ++interior;
        }
        double max_ratio = 0;
        bool finite = true;
        for (int i = 0; i < config.num_g; ++i) {
            auto g = random_nonneg_g(rng, space.size());
            auto pc = verify_pc_inequality(have_good ? good : normalized, space, g, config.c0);
            finite = finite && std::isfinite(pc.ratio);
            max_ratio = std::max(max_ratio, pc.ratio);
        }
        sec["num_g"] = config.num_g;
        sec["interior_points"] = interior;
        sec["max_ratio"] = std::isfinite(max_ratio) ? json(real(max_ratio)) : json("inf");
        DiscreteCurrent reduced_current = build_current(reduced, space);
        auto ones = std::vector<double>(static_cast<size_t>(space.size()), 1.0);
        auto pc1 = verify_pc_inequality(normalized, space, ones, config.c0);
        double mass_over_norm = total_mass(reduced_current) / rat_to_double(norm);
        sec["mean_length_g1"] = real(pc1.lhs);
        sec["reduced_mass_over_norm"] = real(mass_over_norm);
        report["pc_inequality"] = std::move(sec);
        record("pc_ratios_finite", interior == 0 || finite,
               json{{"interior_points", interior},
                    {"max_ratio", std::isfinite(max_ratio) ? json(real(max_ratio))
                                                           : json("inf")}});
        record("pencil_mean_length_matches_reduced_mass",
               std::abs(pc1.lhs - mass_over_norm) <= 1e-9 * (1 + mass_over_norm));
    }

    timings["pc"] = ms_since(t0);

    // Boundary-mass inequality for random Lipschitz functions.
    t0 = Clock::now();
    {
        int passed = 0;
        double worst_margin = std::numeric_limits<double>::infinity();
        for (int i = 0; i < config.num_lip_tests; ++i) {
            auto u = random_mcshane(rng, space);
            auto res = lip_mass_bound(current, space, u, lip_radius);
            if (res.pass) ++passed;
            worst_margin = std::min(worst_margin, res.rhs * (1 + 1e-9) - res.lhs);
        }
        record("lip_mass_inequality", passed == config.num_lip_tests,
               json{{"passed", passed}, {"total", config.num_lip_tests}});
    }
    timings["lip_mass_inequality"] = ms_since(t0);

    // Poincare summaries and the cut-side contract.
    t0 = Clock::now();
    {
        json sec;
        std::vector<double> u_dist(static_cast<size_t>(space.size()));
        for (int y = 0; y < space.size(); ++y) u_dist[y] = space.dist(s, y) / dist_st;
        auto pw = pointwise_pi_check(space, u_dist, s, t, config.c0, lip_radius);
        sec["pointwise"] = json{{"lhs", real(pw.lhs)},
                                {"rhs", real(pw.rhs)},
                                {"pass_at_c0", pw.pass},
                                {"constant", real(pw.rhs > 0 ? pw.lhs / pw.rhs : 0)}};
        double worst = 0;
        int failures = 0;
        for (int i = 0; i < config.num_pi; ++i) {
            int center = static_cast<int>(rng.next_below(space.size()));
            double frac = rng.next_double();
            double radius = 2 * space.resolution() +
                            frac * std::max(0.0, space.diameter() - 2 * space.resolution());
            std::vector<double> u;
            if (i % 2 == 0) {
                int p = static_cast<int>(rng.next_below(space.size()));
                u.resize(static_cast<size_t>(space.size()));
                for (int y = 0; y < space.size(); ++y) u[y] = space.dist(p, y);
            } else {
                u = random_mcshane(rng, space);
            }
            auto pr = pi_ratio(space, u, center, radius, config.lambda, lip_radius);
            double umax = 0;
            for (double v : u) umax = std::max(umax, std::abs(v));
            if (pr.rhs == 0 && pr.lhs > 1e-12 * (1 + umax)) ++failures;
            else if (pr.rhs > 0) worst = std::max(worst, pr.lhs / pr.rhs);
        }
        sec["balls"] = json{{"num_tests", config.num_pi},
                            {"worst_ratio", real(worst)},
                            {"failure_witnesses", failures}};
        // The Lip-support containment is a vanishing-Lip statement; it is
        // checked at the finest radius the space supports.
        auto bridge = cut_pi_bridge(space, graph, cut.side, space.resolution());
        sec["cut_bridge"] = json{{"cut_capacity", rational(bridge.cut_cap)},
                                 {"localized_integral", real(bridge.localized_integral)},
                                 {"ratio", real(bridge.ratio)},
                                 {"lip_support_contained", bridge.lip_support_contained}};
        report["pi_checks"] = std::move(sec);

        auto cf = cut_function(graph, cut.side, space);
        bool in_range = true;
        for (double v : cf.values) in_range = in_range && v >= 0 && v <= 1;
        // values(s) = 1 and values(t) = 0 are claimed only under the
        // no-short-edge hypothesis: every vertex covering a terminal lies on
        // that terminal's side of the cut.
        bool cond_s = true, cond_t = true;
        for (int x : net.vertices) {
            if (space.dist(s, x) < 2 * net.scale &&
                !std::binary_search(cut.side.begin(), cut.side.end(), x)) {
                cond_s = false;
            }
            if (space.dist(t, x) < 2 * net.scale &&
                std::binary_search(cut.side.begin(), cut.side.end(), x)) {
                cond_t = false;
            }
        }
        bool terminal_values_ok =
            (!cond_s || cf.values[s] == 1.0) && (!cond_t || cf.values[t] == 0.0);
        record("cut_function",
               terminal_values_ok && in_range && bridge.lip_support_contained,
               json{{"value_at_source", cf.values[s]},
                    {"value_at_sink", cf.values[t]},
                    {"no_short_edge_at_source", cond_s},
                    {"no_short_edge_at_sink", cond_t},
                    {"lip_support_contained", bridge.lip_support_contained}});
    }
    timings["verify"] = ms_since(t0);

    report["verifications"] = checks;
    report["verifications"]["all_pass"] = all_pass;
    result.checks_ok = all_pass;
    if (config.include_timings) report["timings_ms"] = timings;
    return result;
}

SweepResult sweep_scales(const PipelineConfig& config, const Space& space,
                         int n_min, int n_max) {
    if (n_min > n_max) throw std::invalid_argument("sweep needs n_min <= n_max");
    SweepResult out;
    json scales = json::array();
    json summary;
    std::vector<double> cuts, density_ratios, pc_ratios;
    double coarsest_cut = 0;
    bool first_connected = true;
    for (int n = n_min; n <= n_max; ++n) {
        PipelineConfig per = config;
        per.scale_exp = n;
        json entry;
        entry["scale_exp"] = n;
        try {
            PipelineResult res = run_pipeline(per, space);
            entry["report"] = res.report;
            out.checks_ok = out.checks_ok && res.checks_ok;
            if (!res.pi_failure) {
                double cutv = rat_to_double(rat_from_string(
                    res.report["min_cut"]["capacity"].get<std::string>()));
                cuts.push_back(cutv);
                if (first_connected) {
                    coarsest_cut = cutv;
                    first_connected = false;
                }
                density_ratios.push_back(res.report["current"]["density_max_ratio"].get<double>());
                const json& pc = res.report["pc_inequality"]["max_ratio"];
                if (pc.is_number()) pc_ratios.push_back(pc.get<double>());
            }
        } catch (const std::exception& err) {
            entry["error"] = err.what();
        }
        scales.push_back(std::move(entry));
    }
    summary["scales_run"] = static_cast<int>(scales.size());
    summary["connected_scales"] = static_cast<int>(cuts.size());
    if (!cuts.empty()) {
        double floor = *std::min_element(cuts.begin(), cuts.end());
        summary["min_cut_per_scale"] = json(cuts);
        summary["min_cut_floor"] = real(floor);
        summary["min_cut_coarsest"] = real(coarsest_cut);
        summary["min_cut_floor_over_coarsest"] = real(coarsest_cut > 0 ? floor / coarsest_cut : 0);
    }
    auto stability = [&](const std::vector<double>& v) -> json {
        if (v.empty()) return nullptr;
        double lo = *std::min_element(v.begin(), v.end());
        double hi = *std::max_element(v.begin(), v.end());
        return json{{"per_scale", json(v)},
                    {"max_over_min", real(lo > 0 ? hi / lo : (hi > 0 ? std::numeric_limits<double>::infinity() : 1.0))}};
    };
    summary["density_max_ratio"] = stability(density_ratios);
    summary["pc_constant"] = stability(pc_ratios);
    out.report["scales"] = std::move(scales);
    out.report["summary"] = std::move(summary);
    return out;
}

bool validate_report(const json& report, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (const char* key : {"config", "space", "net", "graph", "flow", "min_cut", "status",
                            "boundary", "current", "cycles", "pencil", "pc_inequality",
                            "pi_checks", "verifications"}) {
        if (!report.contains(key)) return fail(std::string("missing section: ") + key);
    }
    std::string status = report["status"].get<std::string>();
    if (status != "ok" && status != "pi_failure_certificate") {
        return fail("unknown status " + status);
    }
    if (status == "pi_failure_certificate" && !report.contains("pi_failure_certificate")) {
        return fail("certificate status without certificate section");
    }
    for (const char* key : {"boundary", "current", "cycles", "pencil", "pc_inequality",
                            "pi_checks"}) {
        const json& sec = report[key];
        if (!sec.is_object()) return fail(std::string(key) + " is not an object");
        if (status == "pi_failure_certificate" && !sec.contains("skipped")) {
            return fail(std::string(key) + " must be marked skipped in a certificate report");
        }
    }
    if (!report["verifications"].contains("all_pass")) return fail("missing all_pass");
    return true;
}

} // namespace pencil
