#include <CLI11.hpp>

#include <cmath>
#include <iostream>

#include "pencil/flow.hpp"
#include "pencil/pipeline.hpp"
#include "pencil/poincare.hpp"

using namespace pencil;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFail = 2;

struct CommonOpts {
    PipelineConfig config;
    std::string out;
};

void add_space_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--space", o.config.space_source,
                    "space JSON file or generator spec gen:name:p1,p2,...")
        ->required();
    cmd->add_option("--source", o.config.source, "source point id (default 0)");
    cmd->add_option("--target", o.config.sink, "sink point id (default: last point)");
    cmd->add_option("--c0", o.config.c0, "domain-ball / support constant (default 4)");
    cmd->add_option("--geodesic-knn", o.config.geodesic_knn,
                    "replace the metric by its k-NN shortest-path closure (0 = off)");
    cmd->add_option("--seed", o.config.seed, "RNG seed (default 0)");
}

void add_pipeline_opts(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--lambda", o.config.lambda, "PI dilation factor (default 1)");
    cmd->add_option("--lip-mult", o.config.lip_radius_multiplier,
                    "lip radius as a multiple of the space resolution (default 2)");
    cmd->add_option("--good-half-mult", o.config.good_half_multiplier,
                    "good-half threshold as a multiple of the mean curve length (default 2)");
    cmd->add_option("--num-g", o.config.num_g, "random g count for the pencil inequality");
    cmd->add_option("--num-lip-tests", o.config.num_lip_tests, "random Lipschitz test functions");
    cmd->add_option("--num-pi", o.config.num_pi, "random PI ball instances");
    cmd->add_flag("--timings", o.config.include_timings,
                  "include wall times (makes reports non-reproducible)");
}

int finish(const json& doc, const std::string& out, bool ok) {
    if (!out.empty()) {
        write_json_atomic(doc, out);
    } else {
        std::cout << doc.dump(2) << "\n";
    }
    return ok ? kExitOk : kExitVerifyFail;
}

int cmd_run(const CommonOpts& o, const std::string& dump_pencil,
            const std::string& dump_current) {
    Space space = load_space(o.config);
    PipelineResult res = run_pipeline(o.config, space);
    if (!dump_pencil.empty() && !res.pencil_doc.is_null()) {
        write_json_atomic(res.pencil_doc, dump_pencil);
    }
    if (!dump_current.empty() && !res.current_doc.is_null()) {
        write_json_atomic(res.current_doc, dump_current);
    }
    std::cerr << "status: " << res.report["status"].get<std::string>()
              << ", checks " << (res.checks_ok ? "pass" : "FAIL") << "\n";
    return finish(res.report, o.out, res.checks_ok);
}

int cmd_sweep(const CommonOpts& o, int n_min, int n_max) {
    Space space = load_space(o.config);
    SweepResult res = sweep_scales(o.config, space, n_min, n_max);
    return finish(res.report, o.out, res.checks_ok);
}

int cmd_dump_graph(const CommonOpts& o) {
    Space space = load_space(o.config);
    int s = o.config.source;
    int t = o.config.sink < 0 ? space.size() - 1 : o.config.sink;
    double r_n = std::ldexp(space.dist(s, t), -o.config.scale_exp);
    Net net = build_net(space, s, t, r_n, o.config.c0 * space.dist(s, t));
    NetGraph graph = build_graph(net, space);
    return finish(graph_dump(graph, space), o.out, true);
}

int cmd_verify_pc(const CommonOpts& o, const std::string& pencil_path,
                  const std::string& g_spec) {
    Space space = load_space(o.config);
    Pencil pencil = pencil_from_json(load_json_file(pencil_path), space);
    if (!pencil.normalized) pencil = normalize(pencil);

    std::vector<std::vector<double>> gs;
    if (g_spec.rfind("random:", 0) == 0) {
        int count = std::stoi(g_spec.substr(7));
        Rng rng(o.config.seed);
        for (int i = 0; i < count; ++i) gs.push_back(random_nonneg_g(rng, space.size()));
    } else {
        json doc = load_json_file(g_spec);
        if (!doc.is_array()) throw std::invalid_argument("--g file must hold a JSON array");
        if (!doc.empty() && doc[0].is_array()) {
            for (const auto& row : doc) gs.push_back(row.get<std::vector<double>>());
        } else {
            gs.push_back(doc.get<std::vector<double>>());
        }
    }

    json out;
    json entries = json::array();
    double max_ratio = 0;
    bool ok = true;
    for (size_t i = 0; i < gs.size(); ++i) {
        auto pc = verify_pc_inequality(pencil, space, gs[i], o.config.c0);
        entries.push_back(json{{"g", static_cast<int>(i)},
                               {"lhs", real(pc.lhs)},
                               {"rhs", real(pc.rhs)},
                               {"ratio", std::isfinite(pc.ratio) ? json(real(pc.ratio))
                                                                 : json("inf")}});
        ok = ok && std::isfinite(pc.ratio) && pc.ratio <= o.config.c0;
        max_ratio = std::max(max_ratio, pc.ratio);
        std::cerr << "g[" << i << "]: lhs=" << pc.lhs << " rhs=" << pc.rhs
                  << " ratio=" << pc.ratio << "\n";
    }
    out["checks"] = std::move(entries);
    out["measured_constant"] = real(max_ratio);
    out["c0"] = real(o.config.c0);
    out["pass"] = ok;
    std::cerr << "measured pencil constant: " << max_ratio << " (bound " << o.config.c0
              << ") -> " << (ok ? "pass" : "FAIL") << "\n";
    return finish(out, o.out, ok);
}

int cmd_verify_pi(const CommonOpts& o, int num_tests) {
    Space space = load_space(o.config);
    double lip_radius = o.config.lip_radius_multiplier * space.resolution();
    Rng rng(o.config.seed);
    json records = json::array();
    double worst = 0;
    int witnesses = 0;
    for (int i = 0; i < num_tests; ++i) {
        std::vector<double> u;
        if (i % 2 == 0) {
            int p = static_cast<int>(rng.next_below(space.size()));
            u.resize(static_cast<size_t>(space.size()));
            for (int y = 0; y < space.size(); ++y) u[y] = space.dist(p, y);
        } else {
            u = random_mcshane(rng, space);
        }
        int center = static_cast<int>(rng.next_below(space.size()));
        double frac = rng.next_double();
        double radius = 2 * space.resolution() +
                        frac * std::max(0.0, space.diameter() - 2 * space.resolution());
        auto pr = pi_ratio(space, u, center, radius, o.config.lambda, lip_radius);
        double umax = 0;
        for (double v : u) umax = std::max(umax, std::abs(v));
        double noise = 1e-12 * (1 + umax);
        double ratio = 0;
        bool witness = false;
        if (pr.rhs > 0) ratio = pr.lhs / pr.rhs;
        else if (pr.lhs > noise) witness = true;
        worst = std::max(worst, ratio);
        if (witness) ++witnesses;
        records.push_back(json{{"center", center},
                               {"radius", real(radius)},
                               {"lhs", real(pr.lhs)},
                               {"rhs", real(pr.rhs)},
                               {"ratio", real(ratio)},
                               {"failure_witness", witness}});
    }
    // pointwise two-pole checks over random pairs
    json pointwise = json::array();
    double worst_pw = 0;
    for (int i = 0; i < std::max(1, num_tests / 4); ++i) {
        int s = static_cast<int>(rng.next_below(space.size()));
        int t = static_cast<int>(rng.next_below(space.size()));
        if (s == t) continue;
        std::vector<double> u = i % 2 == 0 ? random_mcshane(rng, space) : [&] {
            std::vector<double> v(static_cast<size_t>(space.size()));
            for (int y = 0; y < space.size(); ++y) v[y] = space.dist(s, y);
            return v;
        }();
        auto pw = pointwise_pi_check(space, u, s, t, o.config.c0, lip_radius);
        double umax = 0;
        for (double v : u) umax = std::max(umax, std::abs(v));
        double c = pw.rhs > 0 ? pw.lhs / pw.rhs
                              : (pw.lhs > 1e-12 * (1 + umax) ? -1 : 0);
        if (c < 0) ++witnesses;
        worst_pw = std::max(worst_pw, c);
        pointwise.push_back(json{{"s", s},
                                 {"t", t},
                                 {"lhs", real(pw.lhs)},
                                 {"rhs", real(pw.rhs)},
                                 {"pass_at_c0", pw.pass}});
    }
    json out;
    out["space"] = o.config.space_source;
    out["lambda"] = real(o.config.lambda);
    out["lip_radius"] = real(lip_radius);
    out["balls"] = std::move(records);
    out["worst_ball_ratio"] = real(worst);
    out["pointwise"] = std::move(pointwise);
    out["worst_pointwise_constant"] = real(worst_pw);
    out["failure_witnesses"] = witnesses;
    bool ok = witnesses == 0;
    std::cerr << "worst ball ratio " << worst << ", worst pointwise constant " << worst_pw
              << ", failure witnesses " << witnesses << "\n";
    return finish(out, o.out, ok);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"capacity-weighted net graphs, max flow, discrete 1-currents, "
                 "and pencils of curves over finite metric measure spaces"};
    app.require_subcommand(1);

    CommonOpts run_opts, sweep_opts, graph_opts, pc_opts, pi_opts;
    std::string dump_pencil, dump_current, pencil_path, g_spec;
    int n_min = 2, n_max = 5, num_tests = 100;

    CLI::App* run = app.add_subcommand("run", "run the full pipeline at one scale");
    add_space_opts(run, run_opts);
    run->add_option("--scale", run_opts.config.scale_exp, "scale exponent n (r_n = 2^-n d(s,t))")
        ->required();
    add_pipeline_opts(run, run_opts);
    run->add_option("--out", run_opts.out, "report path (stdout if omitted)");
    run->add_option("--dump-pencil", dump_pencil, "write the final pencil JSON here");
    run->add_option("--dump-current", dump_current, "write the normalized current JSON here");

    CLI::App* sweep = app.add_subcommand("sweep", "run the pipeline over a scale range");
    add_space_opts(sweep, sweep_opts);
    sweep->add_option("--nmin", n_min, "first scale exponent")->required();
    sweep->add_option("--nmax", n_max, "last scale exponent")->required();
    add_pipeline_opts(sweep, sweep_opts);
    sweep->add_option("--out", sweep_opts.out, "report path (stdout if omitted)");

    CLI::App* dumpg = app.add_subcommand("dump-graph", "emit the capacity graph as JSON");
    add_space_opts(dumpg, graph_opts);
    dumpg->add_option("--scale", graph_opts.config.scale_exp, "scale exponent n")->required();
    dumpg->add_option("--out", graph_opts.out, "output path (stdout if omitted)");

    CLI::App* vpc = app.add_subcommand("verify-pc", "check the pencil inequality for a pencil file");
    add_space_opts(vpc, pc_opts);
    vpc->add_option("--pencil", pencil_path, "pencil JSON produced by run --dump-pencil")
        ->required();
    vpc->add_option("--g", g_spec, "JSON file with g values, or random:K")->required();
    vpc->add_option("--out", pc_opts.out, "output path (stdout if omitted)");

    CLI::App* vpi = app.add_subcommand("verify-pi", "statistical Poincare inequality checks");
    add_space_opts(vpi, pi_opts);
    vpi->add_option("--num-tests", num_tests, "number of ball instances (default 100)");
    vpi->add_option("--lambda", pi_opts.config.lambda, "dilation factor (default 1)");
    vpi->add_option("--lip-mult", pi_opts.config.lip_radius_multiplier,
                    "lip radius multiplier (default 2)");
    vpi->add_option("--out", pi_opts.out, "output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand(run)) return cmd_run(run_opts, dump_pencil, dump_current);
        if (app.got_subcommand(sweep)) return cmd_sweep(sweep_opts, n_min, n_max);
        if (app.got_subcommand(dumpg)) return cmd_dump_graph(graph_opts);
        if (app.got_subcommand(vpc)) return cmd_verify_pc(pc_opts, pencil_path, g_spec);
        if (app.got_subcommand(vpi)) return cmd_verify_pi(pi_opts, num_tests);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
