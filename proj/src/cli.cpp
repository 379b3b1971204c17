#include "cleconn/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "cleconn/acceptance.hpp"
#include "cleconn/bessel.hpp"
#include "cleconn/errors.hpp"
#include "cleconn/hookup.hpp"
#include "cleconn/lattice.hpp"
#include "cleconn/sle.hpp"

namespace cleconn {

using nlohmann::json;

json to_json(const RunRecord& rec) {
    json j;
    j["command"] = rec.command;
    j["parameters"] = rec.parameters;
    json results = json::array();
    for (const auto& r : rec.results) {
        json item;
        item["name"] = r.name;
        item["value"] = r.value;
        item["provenance"] = r.provenance;
        if (r.n) item["n"] = *r.n;
        if (r.std_error) item["std_error"] = *r.std_error;
        if (r.seed) item["seed"] = *r.seed;
        results.push_back(item);
    }
    j["results"] = results;
    j["seed"] = rec.seed ? json(*rec.seed) : json(nullptr);
    j["wall_time"] = rec.wall_time ? json(*rec.wall_time) : json(nullptr);
    j["version"] = rec.version;
    return j;
}

RunRecord record_from_json(const json& j) {
    RunRecord rec;
    rec.command = j.at("command").get<std::string>();
    rec.parameters = j.at("parameters");
    for (const auto& item : j.at("results")) {
        ResultValue r;
        r.name = item.at("name").get<std::string>();
        r.value = item.at("value");
        r.provenance = item.at("provenance").get<std::string>();
        if (item.contains("n")) r.n = item["n"].get<std::uint64_t>();
        if (item.contains("std_error")) r.std_error = item["std_error"].get<double>();
        if (item.contains("seed")) r.seed = item["seed"].get<std::uint64_t>();
        rec.results.push_back(r);
    }
    if (!j.at("seed").is_null()) rec.seed = j["seed"].get<std::uint64_t>();
    if (!j.at("wall_time").is_null()) rec.wall_time = j["wall_time"].get<double>();
    rec.version = j.at("version").get<std::string>();
    return rec;
}

std::string serialize(const RunRecord& rec) { return to_json(rec).dump(2) + "\n"; }

namespace {

ResultValue closed_form(const std::string& name, json value) {
    return {name, std::move(value), "closed-form", std::nullopt, std::nullopt, std::nullopt};
}

ResultValue enumerated(const std::string& name, json value) {
    return {name, std::move(value), "enumeration", std::nullopt, std::nullopt, std::nullopt};
}

ResultValue monte_carlo(const std::string& name, const McEstimate& est) {
    return {name, est.mean, "monte-carlo", est.n, est.std_error, est.seed};
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Grid points strictly inside (lo, hi).
std::vector<double> interior_grid(double lo, double hi, int points) {
    std::vector<double> g;
    for (int i = 0; i < points; ++i) g.push_back(lo + (hi - lo) * (i + 1) / (points + 1));
    return g;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hook-up probabilities of conformal loop ensembles: formulas, simulations, lattice checks",
                 "cleconn"};
    app.require_subcommand(1);
    bool timing = false;
    app.add_flag("--timing", timing, "record wall time (output is then not reproducible)");

    double kappa = 6.0;
    std::uint64_t seed = 1, samples = 0;

    auto* hookup = app.add_subcommand("hookup", "hook-up probability H at a cross ratio or aspect ratio");
    double x_opt = 0.5, aspect_opt = 1.0;
    hookup->add_option("--kappa", kappa)->required();
    auto* x_flag = hookup->add_option("--x", x_opt, "cross ratio in (0,1)");
    auto* aspect_flag = hookup->add_option("--aspect", aspect_opt, "rectangle aspect ratio");
    x_flag->excludes(aspect_flag);

    auto* table = app.add_subcommand("hookup-table", "CSV of H on a uniform grid");
    int points = 11;
    std::string by = "cross";
    double lo = 0.0, hi = -1.0;
    table->add_option("--kappa", kappa)->required();
    table->add_option("--points", points)->check(CLI::Range(2, 1000000));
    table->add_option("--by", by)->check(CLI::IsMember({"cross", "aspect"}));
    table->add_option("--lo", lo, "grid range start (exclusive)");
    table->add_option("--hi", hi, "grid range end (exclusive); default 1 for cross, 2 for aspect");

    auto* relate = app.add_subcommand("relate", "loop weight, cluster weight and central charge");
    relate->add_option("--kappa", kappa)->required();

    auto* cardy = app.add_subcommand("cardy", "exact boundary hitting probabilities");
    double eps = 0.4;
    cardy->add_option("--kappa", kappa)->required();
    cardy->add_option("--eps", eps)->required();

    auto* qfun = app.add_subcommand("qfun", "avoidance probability Q for kappa in (8/3,4)");
    double qx = 0.5;
    qfun->add_option("--kappa", kappa)->required();
    qfun->add_option("--x", qx)->required();

    auto* sle = app.add_subcommand("sle", "SLE Monte Carlo");
    sle->require_subcommand(1);
    auto* sle_hit = sle->add_subcommand("hit", "estimate the probability of hitting an interval next to 1");
    double dt = 1e-2, scale = 1.0;
    std::string anchor = "left";
    sle_hit->add_option("--kappa", kappa)->required();
    sle_hit->add_option("--eps", eps)->required();
    sle_hit->add_option("--samples", samples)->required();
    sle_hit->add_option("--dt", dt);
    sle_hit->add_option("--seed", seed);
    sle_hit->add_option("--anchor", anchor, "left: [1-eps,1], right: [1,1+eps]")->check(CLI::IsMember({"left", "right"}));
    sle_hit->add_option("--scale", scale);

    auto* bessel = app.add_subcommand("bessel", "Bessel driving process Monte Carlo");
    bessel->require_subcommand(1);
    auto* localtime = bessel->add_subcommand("localtime", "expected local time at the swallowing time of 1");
    double uplevel = 1e-3, bdt = 1e-8, log_step = 1e-2, resolution = 1e-2;
    localtime->add_option("--kappa", kappa)->required();
    localtime->add_option("--samples", samples)->required();
    localtime->add_option("--uplevel", uplevel);
    localtime->add_option("--dt", bdt, "grid step for the passage check");
    localtime->add_option("--seed", seed);
    localtime->add_option("--log-step", log_step);
    localtime->add_option("--resolution", resolution);
    bool with_passage = false;
    localtime->add_flag("--passage", with_passage, "also estimate the local time at the first passage to 4*uplevel");
    auto* excursion = bessel->add_subcommand("excursion", "chance of reaching y^{3/4} before the swallowing time of y, over y^{(8/k-1)/4}");
    double y = 1e-3;
    excursion->add_option("--kappa", kappa)->required();
    excursion->add_option("--y", y)->required();
    excursion->add_option("--samples", samples)->required();
    excursion->add_option("--seed", seed);
    excursion->add_option("--log-step", log_step);
    excursion->add_option("--resolution", resolution);

    auto* lattice = app.add_subcommand("lattice", "exact enumeration and Monte Carlo on lattices");
    lattice->require_subcommand(1);
    int n = 1;
    double loop_n = 1.0, mu = 1.0, q = 2.0;
    std::optional<double> bond_p;
    bool dilute = false;
    auto* fpl_enum = lattice->add_subcommand("fpl-enum", "O(N) hook-up probability by enumeration");
    fpl_enum->add_option("--n", n)->required();
    fpl_enum->add_option("--N", loop_n)->required();
    fpl_enum->add_option("--mu", mu);
    fpl_enum->add_flag("--dilute", dilute);
    auto* fpl_rot = lattice->add_subcommand("fpl-rotcheck", "quarter-turn bijection check");
    fpl_rot->add_option("--n", n)->required();
    auto* fk_enum = lattice->add_subcommand("fk-enum", "FK crossing probability by enumeration");
    fk_enum->add_option("--n", n)->required();
    fk_enum->add_option("--q", q)->required();
    fk_enum->add_option("--p", bond_p);
    auto* fk_mc = lattice->add_subcommand("fk-mc", "FK crossing probability by heat-bath Monte Carlo");
    FkMcConfig fk_cfg;
    fk_mc->add_option("--n", n)->required();
    fk_mc->add_option("--q", q)->required();
    fk_mc->add_option("--p", bond_p);
    fk_mc->add_option("--sweeps", fk_cfg.sweeps)->required();
    fk_mc->add_option("--burnin", fk_cfg.burn_in)->required();
    fk_mc->add_option("--batches", fk_cfg.batches);
    fk_mc->add_option("--seed", fk_cfg.seed);

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    double verify_scale = 1.0;
    std::vector<std::string> only;
    verify->add_option("--scale", verify_scale, "multiplier on Monte Carlo sample counts")
        ->check(CLI::PositiveNumber);
    verify->add_option("--only", only, "criterion ids to run");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const auto start = std::chrono::steady_clock::now();
    RunRecord rec;
    auto finish = [&] {
        if (timing)
            rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out << serialize(rec);
    };

    try {
        if (*hookup) {
            if (!*x_flag && !*aspect_flag) {
                err << "hookup: one of --x or --aspect is required\n";
                return 2;
            }
            const KappaContext ctx = make_context(kappa);
            rec.command = "hookup";
            rec.parameters["kappa"] = kappa;
            double x = x_opt;
            if (*aspect_flag) {
                rec.parameters["aspect"] = aspect_opt;
                x = aspect_to_cross(aspect_opt);
            } else {
                rec.parameters["x"] = x_opt;
            }
            const HookupEvaluation ev = hookup_probability(ctx, x);
            rec.results = {closed_form("x", ev.x), closed_form("aspect", cross_to_aspect(ev.x)),
                           closed_form("Z_x", ev.z_x), closed_form("Z_mirror", ev.z_mirror),
                           closed_form("theta", ctx.theta), closed_form("h", ev.h)};
            finish();
            return 0;
        }
        if (*table) {
            const KappaContext ctx = make_context(kappa);
            const bool by_cross = by == "cross";
            const double top = hi > lo ? hi : (by_cross ? 1.0 : 2.0);
            std::ostringstream csv;
            csv << "x,aspect,Z_x,Z_mirror,H\n";
            for (double v : interior_grid(lo, top, points)) {
                const double x = by_cross ? v : aspect_to_cross(v);
                const double aspect = by_cross ? cross_to_aspect(v) : v;
                const HookupEvaluation ev = hookup_probability(ctx, x);
                csv << fmt17(x) << ',' << fmt17(aspect) << ',' << fmt17(ev.z_x) << ',' << fmt17(ev.z_mirror) << ','
                    << fmt17(ev.h) << '\n';
            }
            out << csv.str();
            return 0;
        }
        if (*relate) {
            const KappaContext ctx = make_context(kappa);
            const ModelRelation rel = relate_models(ctx);
            rec.command = "relate";
            rec.parameters["kappa"] = kappa;
            rec.results = {closed_form("loop_weight", rel.loop_weight),
                           closed_form("cluster_weight", rel.cluster_weight ? json(*rel.cluster_weight) : json(nullptr)),
                           closed_form("central_charge", rel.central_charge),
                           closed_form("regime", regime_name(ctx.regime))};
            finish();
            return 0;
        }
        if (*cardy) {
            const KappaContext ctx = make_context(kappa);
            if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1)");
            rec.command = "cardy";
            rec.parameters = {{"kappa", kappa}, {"eps", eps}};
            rec.results = {closed_form("hit_right_of_one", cardy_hit_probability(ctx, eps)),
                           closed_form("hit_left_of_one", interval_hit_probability(ctx, 1.0 - eps, 1.0)),
                           closed_form("small_interval_constant", cardy_small_interval_constant(ctx)),
                           closed_form("denominator", cardy_denominator(ctx)),
                           closed_form("denominator_quadrature", cardy_denominator_quadrature(ctx))};
            finish();
            return 0;
        }
        if (*qfun) {
            const KappaContext ctx = make_context(kappa);
            rec.command = "qfun";
            rec.parameters = {{"kappa", kappa}, {"x", qx}};
            const double qv = avoid_probability_Q(ctx, qx);
            rec.results = {closed_form("Q", qv), closed_form("one_minus_Q", qx < 1.0 ? c_event_probability(ctx, 1.0 - qx) : 0.0)};
            finish();
            return 0;
        }
        if (*sle_hit) {
            SleHitConfig cfg;
            cfg.kappa = kappa;
            cfg.eps = eps;
            cfg.dt = dt;
            cfg.seed = seed;
            cfg.n_samples = samples;
            cfg.scale = scale;
            cfg.anchor = anchor == "left" ? IntervalAnchor::LeftOfOne : IntervalAnchor::RightOfOne;
            rec.command = "sle hit";
            rec.parameters = {{"kappa", kappa}, {"eps", eps}, {"samples", samples}, {"dt", dt},
                              {"seed", seed}, {"anchor", anchor}, {"scale", scale}};
            rec.seed = seed;
            const McEstimate est = estimate_hit_probability(cfg);
            rec.results = {monte_carlo("hit_probability", est), closed_form("exact", exact_hit_probability(cfg))};
            finish();
            return 0;
        }
        if (*localtime) {
            const KappaContext ctx = make_context(kappa);
            LocalTimeConfig ltc;
            ltc.up_level = uplevel;
            ltc.dt = bdt;
            ltc.seed = seed;
            ltc.n_samples = samples;
            ltc.log_step = log_step;
            ltc.resolution = resolution;
            rec.command = "bessel localtime";
            rec.parameters = {{"kappa", kappa}, {"samples", samples}, {"uplevel", uplevel}, {"dt", bdt},
                              {"seed", seed}, {"log_step", log_step}, {"resolution", resolution},
                              {"passage", with_passage}};
            rec.seed = seed;
            const LocalTimeRun run = run_localtime_expectation(ctx, ltc);
            rec.results = {monte_carlo("localtime", run.primary), monte_carlo("localtime_half_level", run.halved),
                           monte_carlo("level_halving_difference", run.difference),
                           closed_form("exact", localtime_expectation(ctx))};
            if (with_passage) {
                LocalTimeConfig pc = ltc;
                pc.up_level = 0.25 * uplevel;
                const double level = uplevel;
                rec.results.push_back(monte_carlo("localtime_at_passage", estimate_localtime_at_passage(ctx, pc, level)));
                rec.results.push_back(closed_form("passage_exact", std::pow(level, ctx.boundary_exponent)));
            }
            finish();
            return 0;
        }
        if (*excursion) {
            const KappaContext ctx = make_context(kappa);
            LocalTimeConfig ltc;
            ltc.seed = seed;
            ltc.n_samples = samples;
            ltc.log_step = log_step;
            ltc.resolution = resolution;
            rec.command = "bessel excursion";
            rec.parameters = {{"kappa", kappa}, {"y", y}, {"samples", samples}, {"seed", seed},
                              {"log_step", log_step}, {"resolution", resolution}};
            rec.seed = seed;
            rec.results = {monte_carlo("ratio", estimate_excursion_ratio(ctx, y, ltc)),
                           closed_form("limit", localtime_expectation(ctx))};
            finish();
            return 0;
        }
        if (*fpl_enum) {
            FplInstance inst;
            inst.n = n;
            inst.loop_weight = loop_n;
            inst.mu = mu;
            inst.tileset = dilute ? Tileset::Dilute : Tileset::FullyPacked;
            rec.command = "lattice fpl-enum";
            rec.parameters = {{"n", n}, {"N", loop_n}, {"mu", mu}, {"dilute", dilute}};
            const ExactResult r = fpl_enumerate_hookup(inst);
            rec.results = {enumerated("probability", r.probability),
                           enumerated("numerator_weight", static_cast<double>(r.numerator_weight)),
                           enumerated("denominator_weight", static_cast<double>(r.denominator_weight)),
                           closed_form("expected", 1.0 / (1.0 + loop_n))};
            // stub pairing used, so that runs under another convention can be told apart
            const FplBoundary b = fpl_boundary(n);
            rec.parameters["boundary"] = {{"wired", {b.first_arc, b.second_arc}}, {"free", b.free_pairs}};
            finish();
            return 0;
        }
        if (*fpl_rot) {
            FplInstance inst;
            inst.n = n;
            rec.command = "lattice fpl-rotcheck";
            rec.parameters = {{"n", n}};
            rec.results = {enumerated("bijection", fpl_rotation_check(inst))};
            finish();
            return 0;
        }
        if (*fk_enum || *fk_mc) {
            FkInstance inst;
            inst.n = n;
            inst.q = q;
            inst.p = bond_p;
            rec.parameters = {{"n", n}, {"q", q}, {"p", inst.bond_probability()}};
            if (*fk_enum) {
                rec.command = "lattice fk-enum";
                const ExactResult r = fk_exact_crossing(inst);
                rec.results = {enumerated("probability", r.probability),
                               enumerated("numerator_weight", static_cast<double>(r.numerator_weight)),
                               enumerated("denominator_weight", static_cast<double>(r.denominator_weight))};
            } else {
                rec.command = "lattice fk-mc";
                rec.parameters["sweeps"] = fk_cfg.sweeps;
                rec.parameters["burnin"] = fk_cfg.burn_in;
                rec.parameters["batches"] = fk_cfg.batches;
                rec.parameters["seed"] = fk_cfg.seed;
                rec.seed = fk_cfg.seed;
                rec.results = {monte_carlo("probability", fk_mc_crossing(inst, fk_cfg))};
            }
            if (!bond_p) rec.results.push_back(closed_form("self_dual_value", 1.0 / (1.0 + std::sqrt(q))));
            finish();
            return 0;
        }
        if (*verify) {
            AcceptanceOptions opts;
            opts.sample_scale = verify_scale;
            opts.only = only;
            rec.command = "verify";
            rec.parameters = {{"scale", verify_scale}, {"only", only}};
            bool all = true;
            for (const auto& item : run_acceptance(opts)) {
                all = all && item.passed;
                rec.results.push_back({item.id,
                                       json{{"passed", item.passed}, {"title", item.title}, {"detail", item.detail}},
                                       "verification", std::nullopt, std::nullopt, std::nullopt});
            }
            finish();
            return all ? 0 : 1;
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigurationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace cleconn
