#ifndef SNC_HARNESS_HPP
#define SNC_HARNESS_HPP

#include "snc/jsnc.hpp"
#include "snc/regional.hpp"
#include "snc/scenario.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace snc {

/// Uniform i.i.d. user positions in the world region; deterministic for a
/// fixed seed (generator "mt19937_64/v1", disk points by rejection from the
/// bounding square).
std::vector<User> generate_users(const WorldShape& world, int count, std::uint64_t seed);

/// Pre-solved per-scenario machinery: the coverage optimum and the two PWL
/// approximations of the profit surface.
struct ScenarioArtifacts {
    AlphaStarResult alpha;
    PwlGrid grid;
    Pwl1D profile_fit; // univariate fit of d -> profit at the optimal incentive
};

ScenarioArtifacts prepare_artifacts(const Scenario& s);

// ---------------------------------------------------------------------------
// toy comparison (two user triplets, one coverage disk between them)

struct ToyConfig {
    double group_separation = 400.0; // m between the two anchor users
    double satellite_offset = 25.0;  // m from each anchor to its two satellites
    double satellite_angle_deg = 42.0; // satellites at +/- this angle off the outward axis
    double coverage_radius = 200.0;  // Gamma* used by all methods
    double d_u = 200.0;
    Environment env = Environment::dense_urban(); // sets the altitude ratio
    PersuasionFit fit;
    PwlConfig pwl;
};

struct ToyResult {
    std::vector<User> users;
    SncSolution usnc;
    SncSolution jsnc;
    SncSolution semi;
    double usnc_profit = 0.0; // exact-scored at each method's center
    double jsnc_profit = 0.0;
    double semi_profit = 0.0;
    double jsnc_gain_percent = 0.0; // vs usnc
};

ToyResult run_toy_scenario(const ToyConfig& cfg = {});

// ---------------------------------------------------------------------------
// Monte Carlo comparison

struct MethodSelection {
    bool no_uil = true;
    bool usnc = true;
    bool jsnc = true;
    bool semi_jsnc = true;
};

struct TrialMethodResult {
    bool solved = false;
    double exact_score = 0.0;      // exact profit at the method's center
    double objective = 0.0;        // the method's own reported objective
    double approx_objective = 0.0; // PWL objective where applicable
    double wall_time_ms = 0.0;
    double center_x = 0.0, center_y = 0.0;
    int covered = 0;
    std::string error; // nonempty when solved == false
};

struct TrialRecord {
    int index = 0;
    std::uint64_t seed = 0;
    std::map<std::string, TrialMethodResult> methods;
};

struct MethodSummary {
    double mean_profit = 0.0;
    double median_time_ms = 0.0;
    std::vector<double> profit_cdf; // exact scores sorted ascending
    int failures = 0;
};

struct ExperimentReport {
    std::string scenario_name;
    std::string scenario_hash;
    std::uint64_t master_seed = 0;
    int trials = 0;
    int user_count = 0;
    double density = 0.0; // users per m^2 of the world region
    std::vector<TrialRecord> trial_rows;
    std::map<std::string, MethodSummary> summary;
};

/// Runs `trials` independent draws of the scenario's user process and solves
/// the selected methods on each, scoring every method with the same exact
/// profit function. Per-trial seeds are substreams of the master seed and are
/// recorded in the report. A failed solve is recorded, not fatal.
ExperimentReport run_monte_carlo(const Scenario& s, int trials,
                                 const MethodSelection& methods = {},
                                 std::optional<std::uint64_t> master_seed = std::nullopt);

/// Profit-vs-density sweep: one Monte Carlo report per user count.
std::vector<ExperimentReport> run_density_sweep(const Scenario& s,
                                                const std::vector<int>& user_counts,
                                                int trials_per_count,
                                                const MethodSelection& methods = {});

// ---------------------------------------------------------------------------
// serialization

nlohmann::json solution_to_json(const SncSolution& sol, std::span<const User> users);
nlohmann::json report_to_json(const ExperimentReport& r);
nlohmann::json toy_to_json(const ToyResult& r);

/// Per-trial rows: trial,seed,method,solved,exact_score,objective,
/// approx_objective,wall_time_ms,center_x,center_y,covered
std::string report_csv(const ExperimentReport& r);

/// Per-count series: user_count,density,method,mean_profit,median_time_ms
std::string density_sweep_csv(std::span<const ExperimentReport> reports);

/// Columns: tau,profit,gain_percent
std::string regional_curve_csv(const RegionalModel& model, int samples = 200);

/// Columns: d_u,tau_star,profit,gain_percent
std::string regional_du_sweep_csv(RegionalModel model, std::span<const double> du_values);

} // namespace snc

#endif
