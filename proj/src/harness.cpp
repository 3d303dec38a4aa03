#include "snc/harness.hpp"

#include "snc/optim.hpp"
#include "snc/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace snc {

using nlohmann::json;

std::vector<User> generate_users(const WorldShape& world, int count, std::uint64_t seed)
{
    if (count < 0)
        throw std::invalid_argument("generate_users: negative count");
    std::vector<User> users;
    users.reserve(static_cast<std::size_t>(count));
    Rng rng(seed);
    for (int i = 0; i < count; ++i) {
        double x = 0.0, y = 0.0;
        if (world.kind == WorldShape::Kind::disk) {
            do {
                x = rng.uniform(-world.radius, world.radius);
                y = rng.uniform(-world.radius, world.radius);
            } while (x * x + y * y > world.radius * world.radius);
        } else {
            x = rng.uniform(world.x_lo, world.x_hi);
            y = rng.uniform(world.y_lo, world.y_hi);
        }
        users.push_back({i, x, y});
    }
    return users;
}

ScenarioArtifacts prepare_artifacts(const Scenario& s)
{
    s.validate();
    ChannelConfig cfg{s.fc_hz, s.gamma_db};
    PwlGrid grid = PwlGrid::build(s.pwl.tau_vertices, s.pwl.d_vertices, s.fit);
    const PersuasionFit fit = s.fit;
    Pwl1D fit1d = fit_pwl1d([fit](double d) { return optimal_incentive(d, fit).profit; },
                            s.pwl.breakpoints, s.d_u);
    return ScenarioArtifacts{find_alpha_star(s.env, cfg), std::move(grid), std::move(fit1d)};
}

// ---------------------------------------------------------------------------

namespace {

double altitude_ratio(const Environment& env)
{
    const BisectionResult r = bisect_root(
        [&](double a) { return alpha_star_stationarity(a, env); }, 0.01, 100.0, 1e-9);
    return r.root;
}

} // namespace

ToyResult run_toy_scenario(const ToyConfig& cfg)
{
    ToyResult out;
    const double half = cfg.group_separation / 2.0;
    const double phi = cfg.satellite_angle_deg * std::numbers::pi / 180.0;
    const double ox = cfg.satellite_offset * std::cos(phi);
    const double oy = cfg.satellite_offset * std::sin(phi);
    // anchors 1 and 2, then the two satellites of each, offset away from the
    // opposite group
    out.users = {
        {0, -half, 0.0},          {1, half, 0.0},
        {2, -half - ox, oy},      {3, -half - ox, -oy},
        {4, half + ox, oy},       {5, half + ox, -oy},
    };

    Bounds bounds;
    const double margin = cfg.group_separation + 2.0 * cfg.coverage_radius;
    bounds.x_lo = -margin;
    bounds.x_hi = margin;
    bounds.y_lo = -margin;
    bounds.y_hi = margin;

    const double alpha = altitude_ratio(cfg.env);
    const double gs = cfg.coverage_radius;

    UsncOptions uopts;
    uopts.alpha_star = alpha;
    const UsncResult u = solve_usnc(out.users, bounds, gs, uopts);
    out.usnc = attach_incentives(u.placement, u.assignment, out.users, cfg.d_u, cfg.fit);

    const PwlGrid grid = PwlGrid::build(cfg.pwl.tau_vertices, cfg.pwl.d_vertices, cfg.fit);
    const PersuasionFit fit = cfg.fit;
    const Pwl1D fit1d = fit_pwl1d([fit](double d) { return optimal_incentive(d, fit).profit; },
                                  cfg.pwl.breakpoints, cfg.d_u);
    SncSolverOptions sopts;
    sopts.alpha_star = alpha;
    out.jsnc = solve_jsnc(out.users, bounds, gs, cfg.d_u, grid, cfg.fit, sopts);
    out.semi = solve_semi_jsnc(out.users, bounds, gs, cfg.d_u, fit1d, cfg.fit, sopts);

    out.usnc_profit = exact_profit(out.usnc.placement.center(), out.users, gs, cfg.d_u, cfg.fit).total;
    out.jsnc_profit = exact_profit(out.jsnc.placement.center(), out.users, gs, cfg.d_u, cfg.fit).total;
    out.semi_profit = exact_profit(out.semi.placement.center(), out.users, gs, cfg.d_u, cfg.fit).total;
    out.jsnc_gain_percent = 100.0 * (out.jsnc_profit - out.usnc_profit) / out.usnc_profit;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

double median(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TrialMethodResult score_solution(const SncSolution& sol, std::span<const User> users,
                                 double gamma_star, double d_u, const PersuasionFit& fit)
{
    TrialMethodResult r;
    r.solved = true;
    r.objective = sol.objective;
    r.approx_objective = sol.solver_stats.approx_objective;
    r.wall_time_ms = sol.solver_stats.wall_time_ms;
    r.center_x = sol.placement.x_d;
    r.center_y = sol.placement.y_d;
    for (const auto f : sol.flags.u)
        r.covered += f;
    r.exact_score = exact_profit(sol.placement.center(), users, gamma_star, d_u, fit).total;
    return r;
}

} // namespace

ExperimentReport run_monte_carlo(const Scenario& s, int trials, const MethodSelection& methods,
                                 std::optional<std::uint64_t> master_seed)
{
    if (trials < 1)
        throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    s.validate();
    const ScenarioArtifacts art = prepare_artifacts(s);
    const double gs = art.alpha.gamma_star;

    ExperimentReport rep;
    rep.scenario_name = s.name;
    rep.scenario_hash = scenario_hash(s);
    rep.master_seed = master_seed.value_or(s.users.seed);
    rep.trials = trials;
    rep.user_count = s.users.random ? s.users.count
                                    : static_cast<int>(s.users.explicit_users.size());
    rep.density = static_cast<double>(rep.user_count) / s.world.area();

    UsncOptions uopts;
    uopts.alpha_star = art.alpha.alpha_star;
    SncSolverOptions sopts;
    sopts.alpha_star = art.alpha.alpha_star;

    for (int t = 0; t < trials; ++t) {
        TrialRecord row;
        row.index = t;
        row.seed = substream_seed(rep.master_seed, static_cast<std::uint64_t>(t));
        const std::vector<User> users =
            s.users.random ? generate_users(s.world, s.users.count, row.seed)
                           : s.users.explicit_users;

        SncSolution usnc_sol;
        bool have_usnc = false;
        if (methods.usnc || methods.no_uil) {
            try {
                const UsncResult u = solve_usnc(users, s.bounds, gs, uopts);
                usnc_sol = attach_incentives(u.placement, u.assignment, users, s.d_u, s.fit);
                have_usnc = true;
            } catch (const std::exception& e) {
                TrialMethodResult r;
                r.error = e.what();
                if (methods.usnc)
                    row.methods["usnc"] = r;
                if (methods.no_uil)
                    row.methods["no-uil"] = r;
            }
        }
        if (have_usnc && methods.usnc)
            row.methods["usnc"] = score_solution(usnc_sol, users, gs, s.d_u, s.fit);
        if (have_usnc && methods.no_uil) {
            // baseline: the uncoordinated placement scored without offers
            TrialMethodResult r;
            r.solved = true;
            r.wall_time_ms = 0.0;
            r.center_x = usnc_sol.placement.x_d;
            r.center_y = usnc_sol.placement.y_d;
            for (const auto f : usnc_sol.flags.u)
                r.covered += f;
            r.exact_score = r.objective = static_cast<double>(r.covered);
            row.methods["no-uil"] = r;
        }
        if (methods.jsnc) {
            try {
                const SncSolution sol =
                    solve_jsnc(users, s.bounds, gs, s.d_u, art.grid, s.fit, sopts);
                row.methods["jsnc"] = score_solution(sol, users, gs, s.d_u, s.fit);
            } catch (const std::exception& e) {
                TrialMethodResult r;
                r.error = e.what();
                row.methods["jsnc"] = r;
            }
        }
        if (methods.semi_jsnc) {
            try {
                const SncSolution sol =
                    solve_semi_jsnc(users, s.bounds, gs, s.d_u, art.profile_fit, s.fit, sopts);
                row.methods["semi-jsnc"] = score_solution(sol, users, gs, s.d_u, s.fit);
            } catch (const std::exception& e) {
                TrialMethodResult r;
                r.error = e.what();
                row.methods["semi-jsnc"] = r;
            }
        }
        rep.trial_rows.push_back(std::move(row));
    }

    // aggregate, ordered by trial index by construction
    std::map<std::string, std::vector<double>> profits;
    std::map<std::string, std::vector<double>> times;
    std::map<std::string, int> failures;
    for (const auto& row : rep.trial_rows) {
        for (const auto& [name, r] : row.methods) {
            if (r.solved) {
                profits[name].push_back(r.exact_score);
                times[name].push_back(r.wall_time_ms);
            } else {
                failures[name] += 1;
            }
        }
    }
    for (auto& [name, vals] : profits) {
        MethodSummary sum;
        sum.profit_cdf = vals;
        std::sort(sum.profit_cdf.begin(), sum.profit_cdf.end());
        double total = 0.0;
        for (double v : vals)
            total += v;
        sum.mean_profit = vals.empty() ? 0.0 : total / static_cast<double>(vals.size());
        sum.median_time_ms = median(times[name]);
        sum.failures = failures[name];
        rep.summary[name] = std::move(sum);
    }
    for (const auto& [name, n] : failures)
        if (!rep.summary.count(name))
            rep.summary[name] = MethodSummary{0.0, 0.0, {}, n};
    return rep;
}

std::vector<ExperimentReport> run_density_sweep(const Scenario& s,
                                                const std::vector<int>& user_counts,
                                                int trials_per_count,
                                                const MethodSelection& methods)
{
    std::vector<ExperimentReport> out;
    for (std::size_t i = 0; i < user_counts.size(); ++i) {
        Scenario si = s;
        si.users.random = true;
        si.users.count = user_counts[i];
        si.users.seed = substream_seed(s.users.seed, 1000 + i);
        out.push_back(run_monte_carlo(si, trials_per_count, methods));
    }
    return out;
}

// ---------------------------------------------------------------------------
// serialization

json solution_to_json(const SncSolution& sol, std::span<const User> users)
{
    json j;
    j["schema"] = "snc-solution/1";
    j["method"] = to_string(sol.method);
    j["placement"] = {{"x", sol.placement.x_d},
                      {"y", sol.placement.y_d},
                      {"h", sol.placement.h_d},
                      {"coverage_radius", sol.placement.coverage_radius},
                      {"alpha", sol.placement.alpha}};
    j["objective"] = sol.objective;
    json ju = json::array(), jw = json::array();
    for (std::size_t i = 0; i < sol.flags.u.size(); ++i) {
        const int id = i < users.size() ? users[i].id : static_cast<int>(i);
        if (sol.flags.u[i])
            ju.push_back(id);
        if (i < sol.flags.w.size() && sol.flags.w[i])
            jw.push_back(id);
    }
    j["covered_users"] = ju;
    j["incentivized_users"] = jw;
    json offers = json::array();
    for (const auto& o : sol.offers)
        offers.push_back({{"user_id", o.user_id},
                          {"tau", o.tau},
                          {"d", o.d},
                          {"accept_prob", o.accept_prob},
                          {"expected_profit", o.expected_profit},
                          {"move_dx", o.move_dx},
                          {"move_dy", o.move_dy}});
    j["offers"] = offers;
    j["solver_stats"] = {{"candidates", sol.solver_stats.candidates},
                         {"refine_iterations", sol.solver_stats.refine_iterations},
                         {"wall_time_ms", sol.solver_stats.wall_time_ms},
                         {"approx_objective", sol.solver_stats.approx_objective},
                         {"converged", sol.solver_stats.converged}};
    return j;
}

json report_to_json(const ExperimentReport& r)
{
    json j;
    j["schema"] = "snc-report/1";
    j["scenario_name"] = r.scenario_name;
    j["scenario_hash"] = r.scenario_hash;
    j["master_seed"] = r.master_seed;
    j["trials"] = r.trials;
    j["user_count"] = r.user_count;
    j["density"] = r.density;
    json rows = json::array();
    for (const auto& row : r.trial_rows) {
        json jr;
        jr["trial"] = row.index;
        jr["seed"] = row.seed;
        for (const auto& [name, m] : row.methods) {
            jr["methods"][name] = {{"solved", m.solved},
                                   {"exact_score", m.exact_score},
                                   {"objective", m.objective},
                                   {"approx_objective", m.approx_objective},
                                   {"wall_time_ms", m.wall_time_ms},
                                   {"center", {m.center_x, m.center_y}},
                                   {"covered", m.covered},
                                   {"error", m.error}};
        }
        rows.push_back(std::move(jr));
    }
    j["trials_detail"] = rows;
    for (const auto& [name, s] : r.summary)
        j["summary"][name] = {{"mean_profit", s.mean_profit},
                              {"median_time_ms", s.median_time_ms},
                              {"profit_cdf", s.profit_cdf},
                              {"failures", s.failures}};
    return j;
}

json toy_to_json(const ToyResult& r)
{
    json j;
    j["schema"] = "snc-toy/1";
    json ju = json::array();
    for (const auto& u : r.users)
        ju.push_back({{"id", u.id}, {"x", u.x}, {"y", u.y}});
    j["users"] = ju;
    j["usnc"] = solution_to_json(r.usnc, r.users);
    j["jsnc"] = solution_to_json(r.jsnc, r.users);
    j["semi-jsnc"] = solution_to_json(r.semi, r.users);
    j["profits"] = {{"usnc", r.usnc_profit},
                    {"jsnc", r.jsnc_profit},
                    {"semi-jsnc", r.semi_profit},
                    {"jsnc_gain_percent", r.jsnc_gain_percent}};
    return j;
}

std::string report_csv(const ExperimentReport& r)
{
    std::ostringstream os;
    os << "trial,seed,method,solved,exact_score,objective,approx_objective,wall_time_ms,"
          "center_x,center_y,covered\n";
    os.precision(12);
    for (const auto& row : r.trial_rows)
        for (const auto& [name, m] : row.methods)
            os << row.index << ',' << row.seed << ',' << name << ',' << (m.solved ? 1 : 0) << ','
               << m.exact_score << ',' << m.objective << ',' << m.approx_objective << ','
               << m.wall_time_ms << ',' << m.center_x << ',' << m.center_y << ',' << m.covered
               << '\n';
    return os.str();
}

std::string density_sweep_csv(std::span<const ExperimentReport> reports)
{
    std::ostringstream os;
    os << "user_count,density,method,mean_profit,median_time_ms\n";
    os.precision(12);
    for (const auto& r : reports)
        for (const auto& [name, s] : r.summary)
            os << r.user_count << ',' << r.density << ',' << name << ',' << s.mean_profit << ','
               << s.median_time_ms << '\n';
    return os.str();
}

std::string regional_curve_csv(const RegionalModel& model, int samples)
{
    model.validate();
    std::ostringstream os;
    os << "tau,profit,gain_percent\n";
    os.precision(12);
    for (int i = 1; i <= samples; ++i) {
        const double tau = static_cast<double>(i) / static_cast<double>(samples);
        const RegionalProfit p = regional_profit(model, tau);
        os << tau << ',' << p.profit << ',' << p.gain_percent.value_or(0.0) << '\n';
    }
    return os.str();
}

std::string regional_du_sweep_csv(RegionalModel model, std::span<const double> du_values)
{
    std::ostringstream os;
    os << "d_u,tau_star,profit,gain_percent\n";
    os.precision(12);
    for (double du : du_values) {
        model.d_u = du;
        const RegionalOptimum o = optimal_regional_incentive(model);
        os << du << ',' << o.tau_star << ',' << o.profit << ',' << o.gain_percent << '\n';
    }
    return os.str();
}

} // namespace snc
