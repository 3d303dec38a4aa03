// Command-line front end: placement solvers, the toy comparison, Monte Carlo
// experiments and the regional-incentive analysis, emitting JSON or CSV.

#include "snc/harness.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

struct CommonOpts {
    std::string scenario_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    int trials = 100;
    std::string out_dir;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_trials = false)
{
    cmd->add_option("--scenario", o.scenario_path, "scenario JSON file");
    cmd->add_option("--preset", o.preset, "named preset (paper-default)");
    cmd->add_option("--seed", o.seed, "master seed override");
    if (with_trials)
        cmd->add_option("--trials", o.trials, "Monte Carlo trials");
    cmd->add_option("--out", o.out_dir, "output directory (default: stdout)");
    cmd->add_option("--format", o.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

snc::Scenario resolve_scenario(const CommonOpts& o)
{
    snc::Scenario s;
    if (!o.scenario_path.empty())
        s = snc::load_scenario(o.scenario_path);
    else if (o.preset.empty() || o.preset == "paper-default")
        s = snc::Scenario::paper_default();
    else
        throw std::invalid_argument("unknown preset: " + o.preset);
    if (o.seed)
        s.users.seed = *o.seed;
    s.validate();
    return s;
}

void emit(const CommonOpts& o, const std::string& filename, const std::string& content)
{
    if (o.out_dir.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n')
            std::cout << '\n';
        return;
    }
    std::filesystem::create_directories(o.out_dir);
    const auto path = std::filesystem::path(o.out_dir) / filename;
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
    f << content;
    if (!content.empty() && content.back() != '\n')
        f << '\n';
    std::cout << "wrote " << path.string() << "\n";
}

std::string offers_csv(const snc::SncSolution& sol)
{
    std::ostringstream os;
    os << "user_id,tau,d,accept_prob,expected_profit,move_dx,move_dy\n";
    os.precision(12);
    for (const auto& of : sol.offers)
        os << of.user_id << ',' << of.tau << ',' << of.d << ',' << of.accept_prob << ','
           << of.expected_profit << ',' << of.move_dx << ',' << of.move_dy << '\n';
    return os.str();
}

int run_placement(const CommonOpts& o, snc::SncMethod method)
{
    const snc::Scenario s = resolve_scenario(o);
    const snc::ScenarioArtifacts art = snc::prepare_artifacts(s);
    const std::vector<snc::User> users =
        s.users.random ? snc::generate_users(s.world, s.users.count, s.users.seed)
                       : s.users.explicit_users;
    if (users.empty())
        throw std::runtime_error("scenario has no users");

    snc::SncSolution sol;
    if (method == snc::SncMethod::usnc) {
        snc::UsncOptions uo;
        uo.alpha_star = art.alpha.alpha_star;
        const snc::UsncResult r = snc::solve_usnc(users, s.bounds, art.alpha.gamma_star, uo);
        sol = snc::attach_incentives(r.placement, r.assignment, users, s.d_u, s.fit);
    } else {
        snc::SncSolverOptions so;
        so.alpha_star = art.alpha.alpha_star;
        if (method == snc::SncMethod::jsnc)
            sol = snc::solve_jsnc(users, s.bounds, art.alpha.gamma_star, s.d_u, art.grid, s.fit, so);
        else
            sol = snc::solve_semi_jsnc(users, s.bounds, art.alpha.gamma_star, s.d_u,
                                       art.profile_fit, s.fit, so);
    }

    const std::string name = snc::to_string(sol.method);
    if (o.format == "csv") {
        emit(o, name + "_offers.csv", offers_csv(sol));
    } else {
        json j;
        j["scenario_hash"] = snc::scenario_hash(s);
        j["gamma_star"] = art.alpha.gamma_star;
        j["alpha_star"] = art.alpha.alpha_star;
        json ju = json::array();
        for (const auto& u : users)
            ju.push_back({{"id", u.id}, {"x", u.x}, {"y", u.y}});
        j["users"] = ju;
        j["solution"] = snc::solution_to_json(sol, users);
        j["exact_profit"] =
            snc::exact_profit(sol.placement.center(), users, art.alpha.gamma_star, s.d_u, s.fit)
                .total;
        emit(o, name + ".json", j.dump(2));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"spatial network configuration: drone placement + user incentives"};
    app.require_subcommand(1);

    CommonOpts place_o, jsnc_o, semi_o, mc_o, sweep_o, toy_o, reg_o, alpha_o, fit_o;

    auto* place = app.add_subcommand("place", "uncoordinated placement (max coverage)");
    add_common(place, place_o);
    auto* jsnc = app.add_subcommand("jsnc", "joint placement + incentives");
    add_common(jsnc, jsnc_o);
    auto* semi = app.add_subcommand("semi-jsnc", "semi-joint placement, closed-form incentives");
    add_common(semi, semi_o);

    auto* mc = app.add_subcommand("montecarlo", "multi-trial method comparison");
    add_common(mc, mc_o, true);

    auto* sweep = app.add_subcommand("density-sweep", "mean profit vs user density");
    add_common(sweep, sweep_o, true);
    std::vector<int> sweep_counts;
    sweep->add_option("--counts", sweep_counts, "user counts (default 10..27)");

    auto* toy = app.add_subcommand("toy", "two-triplet comparison scenario");
    add_common(toy, toy_o);
    snc::ToyConfig toy_cfg;
    toy->add_option("--satellite-angle", toy_cfg.satellite_angle_deg,
                    "satellite angle off the outward axis, degrees");
    toy->add_option("--coverage-radius", toy_cfg.coverage_radius, "coverage radius, m");
    toy->add_option("--separation", toy_cfg.group_separation, "anchor separation, m");
    toy->add_option("--satellite-offset", toy_cfg.satellite_offset, "satellite distance, m");

    auto* reg = app.add_subcommand("regional", "uniform-density regional incentive analysis");
    add_common(reg, reg_o);
    snc::RegionalModel reg_model;
    reg_model.R = 200.0;
    reg_model.W = 2000.0;
    reg_model.d_u = 1800.0;
    int reg_samples = 200;
    bool reg_du_sweep = false;
    reg->add_option("--R", reg_model.R, "coverage radius, m");
    reg->add_option("--W", reg_model.W, "world radius, m");
    reg->add_option("--du", reg_model.d_u, "incentive band width, m");
    reg->add_option("--samples", reg_samples, "tau samples for the curve");
    reg->add_flag("--du-sweep", reg_du_sweep, "emit tau*(d_u) sweep instead of the tau curve");

    auto* alpha = app.add_subcommand("alpha-star", "optimal altitude-to-radius ratio");
    add_common(alpha, alpha_o);
    std::string alpha_env = "dense-urban";
    double alpha_gamma = 90.0, alpha_fc = 2.5e9;
    alpha->add_option("--env", alpha_env, "suburban|urban|dense-urban");
    alpha->add_option("--gamma", alpha_gamma, "max tolerable path loss, dB");
    alpha->add_option("--fc", alpha_fc, "carrier frequency, Hz");

    auto* fitc = app.add_subcommand("fit-pwl", "fit the univariate profit approximation");
    add_common(fitc, fit_o);
    int fit_n = 3;
    double fit_du = 200.0;
    fitc->add_option("--breakpoints", fit_n, "breakpoint count N");
    fitc->add_option("--du", fit_du, "fit domain upper bound, m");

    CLI11_PARSE(app, argc, argv);

    try {
        if (place->parsed())
            return run_placement(place_o, snc::SncMethod::usnc);
        if (jsnc->parsed())
            return run_placement(jsnc_o, snc::SncMethod::jsnc);
        if (semi->parsed())
            return run_placement(semi_o, snc::SncMethod::semi_jsnc);

        if (mc->parsed()) {
            const snc::Scenario s = resolve_scenario(mc_o);
            const snc::ExperimentReport rep = snc::run_monte_carlo(s, mc_o.trials, {}, mc_o.seed);
            if (mc_o.format == "csv")
                emit(mc_o, "montecarlo.csv", snc::report_csv(rep));
            else
                emit(mc_o, "montecarlo.json", snc::report_to_json(rep).dump(2));
            return 0;
        }
        if (sweep->parsed()) {
            const snc::Scenario s = resolve_scenario(sweep_o);
            std::vector<int> counts = sweep_counts;
            if (counts.empty())
                for (int c = 10; c <= 27; ++c)
                    counts.push_back(c);
            const auto reports = snc::run_density_sweep(s, counts, sweep_o.trials);
            if (sweep_o.format == "csv") {
                emit(sweep_o, "density_sweep.csv", snc::density_sweep_csv(reports));
            } else {
                json j = json::array();
                for (const auto& r : reports)
                    j.push_back(snc::report_to_json(r));
                emit(sweep_o, "density_sweep.json", j.dump(2));
            }
            return 0;
        }
        if (toy->parsed()) {
            const snc::ToyResult r = snc::run_toy_scenario(toy_cfg);
            if (toy_o.format == "csv") {
                std::ostringstream os;
                os << "method,exact_profit\nusnc," << r.usnc_profit << "\njsnc," << r.jsnc_profit
                   << "\nsemi-jsnc," << r.semi_profit << "\n";
                emit(toy_o, "toy.csv", os.str());
            } else {
                emit(toy_o, "toy.json", snc::toy_to_json(r).dump(2));
            }
            return 0;
        }
        if (reg->parsed()) {
            if (reg_du_sweep) {
                std::vector<double> dus;
                const double max_du = reg_model.W - reg_model.R;
                for (int i = 1; i <= 30; ++i)
                    dus.push_back(max_du * i / 30.0);
                emit(reg_o, "regional_du_sweep.csv", snc::regional_du_sweep_csv(reg_model, dus));
            } else if (reg_o.format == "csv") {
                emit(reg_o, "regional_curve.csv", snc::regional_curve_csv(reg_model, reg_samples));
            } else {
                const snc::RegionalOptimum opt = snc::optimal_regional_incentive(reg_model);
                json j = {{"R", reg_model.R},
                          {"W", reg_model.W},
                          {"d_u", reg_model.d_u},
                          {"tau_star", opt.tau_star},
                          {"profit", opt.profit},
                          {"gain_percent", opt.gain_percent}};
                const snc::TauInfinityResult ti = snc::tau_infinity(reg_model.R);
                j["tau_infinity"] = {{"tau", ti.tau_inf},
                                     {"profit_per_density", ti.profit_per_density},
                                     {"residual", ti.residual}};
                emit(reg_o, "regional.json", j.dump(2));
            }
            return 0;
        }
        if (alpha->parsed()) {
            const snc::Environment env = snc::Environment::by_name(alpha_env);
            const snc::ChannelConfig cfg{alpha_fc, alpha_gamma};
            const snc::AlphaStarResult r = snc::find_alpha_star(env, cfg);
            json j = {{"environment", env.name}, {"gamma_db", alpha_gamma},
                      {"fc_hz", alpha_fc},      {"alpha_star", r.alpha_star},
                      {"gamma_star", r.gamma_star}, {"iterations", r.iterations},
                      {"residual", r.residual}};
            emit(alpha_o, "alpha_star.json", j.dump(2));
            return 0;
        }
        if (fitc->parsed()) {
            snc::PersuasionFit pf;
            const snc::Pwl1D f = snc::fit_pwl1d(
                [pf](double d) { return snc::optimal_incentive(d, pf).profit; }, fit_n, fit_du);
            json j = {{"breakpoints", f.breakpoints},
                      {"node_values", f.node_values},
                      {"slopes", f.slopes},
                      {"intercepts", f.intercepts},
                      {"rmse", f.rmse},
                      {"d_u", f.d_u}};
            emit(fit_o, "pwl_fit.json", j.dump(2));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
