#include "twave/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "CLI11.hpp"

#include "twave/front_geometry.hpp"
#include "twave/io.hpp"
#include "twave/nbody_reference.hpp"
#include "twave/residual_lab.hpp"

namespace twave {

namespace {

using nlohmann::json;

bool is_admissibility_error(ErrorKind k) {
    return k == ErrorKind::DegenerateWaveSpeed || k == ErrorKind::SignInconsistency ||
           k == ErrorKind::InadmissibleParameters;
}

bool is_default_domain(const WDomain& d) { return d.a == 0.0 && std::isinf(d.b) && d.b > 0; }

// Parameters of the reduced equation the solution satisfies.
WaveParams equation_params(const RunConfig& cfg) {
    return cfg.scenario == Provenance::NcmeCollision ? newtonian_time_params(2) : cfg.wave;
}

// w = t exactly: the companion system is NCME itself.
bool is_newtonian_time(const WaveParams& p) { return p.v_norm_sq() == 0.0 && p.mu() == -1.0 && p.c() == 0.0; }

unsigned thread_count() {
    if (const char* env = std::getenv("WAVE_NUM_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return 1;
}

Lattice auto_lattice(const WDomain& dom, const WaveParams& p, double h_max) {
    const auto v = p.v();
    double abs_v = 0.0;
    for (double x : v) abs_v += std::abs(x);
    const double speed = abs_v + std::abs(p.mu());
    const double scale = std::max(2.0, 20.0 * h_max * (std::sqrt(p.v_norm_sq()) + std::abs(p.mu())));
    double w_target;
    if (dom.a >= 0.0) {
        w_target = std::isfinite(dom.b) ? 0.5 * (dom.a + dom.b) : dom.a + scale;
    } else {
        w_target = std::isfinite(dom.a) ? 0.5 * (dom.a + dom.b) : dom.b - scale;
    }
    const double half = std::min(0.25, 0.25 * std::abs(w_target) / speed);
    const double t_center = (p.c() - w_target) / p.mu();
    Lattice lat;
    lat.r_lo.assign(v.size(), -half);
    lat.r_hi.assign(v.size(), half);
    lat.t_lo = t_center - half;
    lat.t_hi = t_center + half;
    lat.points_per_axis = 3;
    return lat;
}

struct CheckOutcome {
    std::string name;
    bool passed = false;
    bool skipped = false;
    std::string summary;
};

std::string fmt(double x) { return io::format_double(x); }

CheckOutcome run_ode(const RunConfig& cfg, const PowerLawSolution& sol, const std::filesystem::path& out_dir) {
    const auto grid = uniform_grid(cfg.verify.w_lo, cfg.verify.w_hi, cfg.verify.w_points);
    const ResidualReport rep = ode_residual(sol, cfg.body, equation_params(cfg), grid);
    const bool ok = rep.max_rel_residual <= kOdeRelTolerance;
    json j = io::to_json(rep);
    j["check"] = "ode";
    j["criterion"] = "max_rel_residual <= " + fmt(kOdeRelTolerance);
    j["passed"] = ok;
    io::write_json(out_dir / "ode_report.json", j);
    return {"ode", ok, false, "max_rel_residual = " + fmt(rep.max_rel_residual)};
}

CheckOutcome finish_lattice_check(const std::string& name, const ResidualReport& rep,
                                  const std::filesystem::path& out_dir) {
    const bool roundoff = residual_at_roundoff(rep);
    bool ok = false;
    std::string summary;
    if (rep.estimated_order) {
        ok = *rep.estimated_order >= kOrderLo && *rep.estimated_order <= kOrderHi;
        summary = "estimated_order = " + fmt(*rep.estimated_order);
    } else if (roundoff) {
        ok = true;
        summary = "residual at rounding level (" + fmt(rep.max_abs_residual) + "), order not measurable";
    } else {
        summary = "no order estimate (needs two spacings)";
    }
    json j = io::to_json(rep);
    j["check"] = name;
    j["criterion"] = "estimated_order in [" + fmt(kOrderLo) + ", " + fmt(kOrderHi) + "]";
    j["at_roundoff"] = roundoff;
    j["passed"] = ok;
    const std::string stem = name == "pde" ? "pde" : "linear_wave";
    io::write_json(out_dir / (stem + "_report.json"), j);
    io::write_text(out_dir / (stem + "_sweep.csv"), io::sweep_csv(rep));
    return {name, ok, false, summary};
}

CheckOutcome run_rk4(const RunConfig& cfg, const PowerLawSolution& sol, const std::filesystem::path& out_dir) {
    const auto& vo = cfg.verify;
    if (!(vo.rk4_t0 > 0.0)) throw Error(ErrorKind::Config, "verify.rk4_t0 must be positive");
    const bool relative = sol.provenance() == Provenance::Relative2Body;
    const WaveParams params = equation_params(cfg);
    const bool under_test = is_newtonian_time(params);
    const PowerLawSolution ref = under_test ? sol
                                 : relative    ? relative_2body_solution(cfg.body, newtonian_time_params(1), cfg.direction)
                                               : ncme_collision_solution(cfg.body, cfg.direction);

    const StackedVector x0 = evaluate(ref, vo.rk4_t0);
    const StackedVector v0 = d1(ref, vo.rk4_t0);
    PhaseState init;
    init.t = vo.rk4_t0;
    for (std::size_t j = 0; j < ref.q(); ++j) {
        init.positions.push_back(x0.block3(j));
        init.velocities.push_back(v0.block3(j));
    }
    const auto traj = rk4_integrate(init, cfg.body, vo.rk4_t_end, vo.rk4_h);

    double max_dev = 0.0, max_energy = 0.0, max_l = 0.0;
    for (const auto& s : traj) {
        const StackedVector exact = evaluate(ref, s.t);
        for (std::size_t j = 0; j < s.q(); ++j) max_dev = std::max(max_dev, norm(s.positions[j] - exact.block3(j)));
        const PhaseState rel = relative ? s : to_relative(s);
        max_energy = std::max(max_energy, std::abs(relative_energy(rel.positions[0], rel.velocities[0], cfg.body)));
        max_l = std::max(max_l, norm(relative_angular_momentum(rel.positions[0], rel.velocities[0])));
    }
    const bool ok = max_dev <= kRk4Deviation;
    json j = {{"check", "rk4"},
              {"reference", under_test ? "solution under test" : "newtonian reduction (w = t)"},
              {"t0", vo.rk4_t0},
              {"t_end", vo.rk4_t_end},
              {"h", vo.rk4_h},
              {"steps", traj.size() - 1},
              {"max_deviation", max_dev},
              {"max_abs_energy", max_energy},
              {"max_angular_momentum", max_l},
              {"criterion", "max_deviation <= " + fmt(kRk4Deviation)},
              {"passed", ok}};
    io::write_json(out_dir / "rk4_report.json", j);
    io::write_text(out_dir / "rk4_trajectory.csv", io::trajectory_csv(traj));
    return {"rk4", ok, false, "max_deviation = " + fmt(max_dev) + ", max |E| = " + fmt(max_energy)};
}

void print_solution_summary(const RunConfig& cfg, const PowerLawSolution& sol, std::ostream& out) {
    out << "scenario: " << to_string(sol.provenance()) << "\n";
    for (std::size_t j = 0; j < sol.q(); ++j) {
        const auto& b = sol.blocks()[j];
        out << "block " << j + 1 << ": alpha = " << fmt(b.alpha) << ", |S| = " << fmt(norm(b.S))
            << ", |alpha S| = " << fmt(norm(b.coefficient())) << "\n";
    }
    switch (sol.provenance()) {
        case Provenance::Relative2Body: {
            const double k = cfg.wave.wave_speed_factor(0);
            out << "mu^2 - lambda_12^2 |v|^2 = " << fmt(k) << " > 0: admissible\n";
            break;
        }
        case Provenance::TwoBodyPair:
        case Provenance::NcmeCollision: {
            const ThetaPair th = *sol.thetas();
            out << "theta1 = " << fmt(th.theta1) << ", theta2 = " << fmt(th.theta2) << "\n";
            out << "theta1 + theta2 = " << fmt(th.sum()) << " > 0: admissible\n";
            out << "|S1 - S2| = " << fmt(norm(sol.coefficient(0) - sol.coefficient(1))) << "\n";
            if (sol.provenance() == Provenance::NcmeCollision) {
                const Vec3 com = cfg.body.m1 * sol.coefficient(0) + cfg.body.m2 * sol.coefficient(1);
                out << "|m1 S1 + m2 S2| = " << fmt(norm(com)) << "\n";
            }
            break;
        }
    }
}

std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    return cfg.output_dir;
}

}  // namespace

PowerLawSolution build_solution(const RunConfig& cfg) {
    PowerLawSolution sol = [&] {
        switch (cfg.scenario) {
            case Provenance::Relative2Body: return relative_2body_solution(cfg.body, cfg.wave, cfg.direction);
            case Provenance::TwoBodyPair: return two_body_pair_solution(cfg.body, cfg.wave, cfg.direction);
            case Provenance::NcmeCollision: break;
        }
        return ncme_collision_solution(cfg.body, cfg.direction);
    }();
    return is_default_domain(cfg.domain) ? sol : sol.with_domain(cfg.domain);
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const PowerLawSolution sol = build_solution(cfg);
        const auto dir = prepare_out_dir(cfg);
        io::write_json(dir / "solution.json", io::to_json(sol));
        print_solution_summary(cfg, sol, out);
        out << "wrote " << (dir / "solution.json").string() << "\n";
        return kExitOk;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return is_admissibility_error(e.kind()) ? kExitInadmissible : kExitUsage;
    }
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::optional<PowerLawSolution> sol;
    try {
        if (cfg.verify.solution_file) {
            sol = io::solution_from_json(io::read_json(*cfg.verify.solution_file));
            if (sol->provenance() != cfg.scenario) {
                throw Error(ErrorKind::Config, "solution file provenance does not match the configured scenario");
            }
        } else {
            sol = build_solution(cfg);
        }
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return is_admissibility_error(e.kind()) ? kExitInadmissible : kExitUsage;
    }

    std::filesystem::path dir;
    try {
        dir = prepare_out_dir(cfg);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const WaveParams params = equation_params(cfg);
    std::vector<CheckOutcome> outcomes;
    bool singular = false;
    for (CheckKind check : cfg.verify.checks) {
        const std::string name = to_string(check);
        try {
            switch (check) {
                case CheckKind::Ode: outcomes.push_back(run_ode(cfg, *sol, dir)); break;
                case CheckKind::Pde:
                case CheckKind::LinearWave: {
                    const auto& sp = cfg.verify.spacings;
                    if (sp.empty()) throw Error(ErrorKind::Config, "verify.spacings is empty");
                    Lattice lat = cfg.verify.lattice ? *cfg.verify.lattice
                                                     : auto_lattice(sol->domain(), params,
                                                                    *std::max_element(sp.begin(), sp.end()));
                    lat.threads = thread_count();
                    const ResidualReport rep =
                        check == CheckKind::Pde
                            ? companion_pde_residual(*sol, cfg.body, params, lat, sp)
                            : linear_wave_residual(traveling_field(*sol, params), params, lat, sp);
                    outcomes.push_back(finish_lattice_check(name, rep, dir));
                    break;
                }
                case CheckKind::Rk4: outcomes.push_back(run_rk4(cfg, *sol, dir)); break;
            }
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Inapplicable) {
                io::write_json(dir / (name == "linear-wave" ? "linear_wave_report.json" : name + "_report.json"),
                               {{"check", name}, {"status", "inapplicable"}, {"reason", e.what()}});
                outcomes.push_back({name, true, true, e.what()});
                continue;
            }
            if (e.kind() == ErrorKind::SingularLattice) singular = true;
            outcomes.push_back({name, false, false, std::string(to_string(e.kind())) + ": " + e.what()});
        }
    }

    bool all_ok = true;
    for (const auto& o : outcomes) {
        out << (o.skipped ? "SKIP " : (o.passed ? "PASS " : "FAIL ")) << o.name << ": " << o.summary << "\n";
        if (!o.passed) {
            all_ok = false;
            err << "check failed: " << o.name << "\n";
        }
    }
    if (singular) return kExitSingularLattice;
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_front(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.front) {
        err << "error: [front] section with a chart is required\n";
        return kExitUsage;
    }
    const FrontOptions& fo = *cfg.front;
    try {
        const auto dir = prepare_out_dir(cfg);
        const auto directions = fo.chart.kind == ChartKind::Cartesian
                                    ? random_unit_directions(fo.directions, cfg.seed)
                                    : std::vector<Vec3>{};
        for (std::size_t i = 0; i < fo.times.size(); ++i) {
            const double t = fo.times[i];
            const FrontSurface s =
                front_surface_chart(fo.chart, cfg.wave.mu(), t, cfg.wave.v3(), cfg.wave.c(), fo.mesh, directions);
            char stem[32];
            std::snprintf(stem, sizeof stem, "front_%04zu", i);
            const std::string csv_name = std::string(stem) + ".csv";
            io::write_json(dir / (std::string(stem) + ".json"), io::front_header(s, csv_name));
            io::write_text(dir / csv_name, io::vertex_csv(s));
            out << stem << ": " << to_string(s.shape) << " t = " << fmt(t) << " radius = " << fmt(s.radius) << ", "
                << s.samples.size() << " vertices\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return e.kind() == ErrorKind::NotImplemented ? kExitUnsupportedChart : kExitUsage;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form traveling waves of the two-body companion wave equations"};
    app.require_subcommand(1);

    struct Args {
        std::string config;
        std::optional<std::string> out_dir;
        std::optional<std::uint64_t> seed;
        std::optional<std::string> solution;
    } args;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", args.config, "run configuration (INI)")->required();
        sub->add_option("--out", args.out_dir, "output directory (overrides run.output_dir)");
        sub->add_option("--seed", args.seed, "seed (overrides run.seed)");
    };
    auto* solve = app.add_subcommand("solve", "construct the closed-form solution");
    auto* verify = app.add_subcommand("verify", "run residual and integrator checks");
    auto* front = app.add_subcommand("front", "export wave-front surfaces");
    add_common(solve);
    add_common(verify);
    add_common(front);
    verify->add_option("--solution", args.solution, "verify this solution JSON instead of constructing one");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    RunConfig cfg;
    try {
        cfg = load_run_config(args.config);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return kExitUsage;
    }
    if (args.out_dir) cfg.output_dir = *args.out_dir;
    if (args.seed) cfg.seed = *args.seed;
    if (args.solution) cfg.verify.solution_file = *args.solution;

    if (solve->parsed()) return cmd_solve(cfg, out, err);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    return cmd_front(cfg, out, err);
}

}  // namespace twave
