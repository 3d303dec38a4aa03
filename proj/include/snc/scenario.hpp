#ifndef SNC_SCENARIO_HPP
#define SNC_SCENARIO_HPP

#include "snc/channel.hpp"
#include "snc/uil.hpp"
#include "snc/usnc.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace snc {

struct WorldShape {
    enum class Kind { disk, rectangle };
    Kind kind = Kind::disk;
    double radius = 700.0; // disk
    double x_lo = -700.0, x_hi = 700.0, y_lo = -700.0, y_hi = 700.0; // rectangle

    bool contains(double x, double y) const;
    double area() const;
};

struct UserSpec {
    bool random = true;
    int count = 15;
    std::uint64_t seed = 1;
    std::vector<User> explicit_users; // used when random == false
};

struct PwlConfig {
    std::vector<double> tau_vertices{0.05, 0.1, 0.2, 0.9};
    std::vector<double> d_vertices{5.0, 10.0, 20.0, 40.0, 200.0};
    int breakpoints = 3;
};

/// One self-contained experiment description; serializable as versioned JSON
/// (schema "snc-scenario/1").
struct Scenario {
    std::string name = "custom";
    Environment env = Environment::dense_urban();
    double gamma_db = 90.0;
    double fc_hz = 2.5e9;
    Bounds bounds{-700.0, 700.0, -700.0, 700.0, 0.0, 1e9};
    double d_u = 200.0;
    WorldShape world;
    UserSpec users;
    PersuasionFit fit;
    PwlConfig pwl;

    void validate() const;

    /// The stock simulation configuration, available as "paper-default".
    static Scenario paper_default();
};

nlohmann::json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

/// FNV-1a over the canonical JSON dump; embedded in reports for replay.
std::string scenario_hash(const Scenario& s);

} // namespace snc

#endif
