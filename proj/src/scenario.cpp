#include "snc/scenario.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace snc {

using nlohmann::json;

bool WorldShape::contains(double x, double y) const
{
    if (kind == Kind::disk)
        return x * x + y * y <= radius * radius + 1e-9;
    return x >= x_lo && x <= x_hi && y >= y_lo && y <= y_hi;
}

double WorldShape::area() const
{
    if (kind == Kind::disk)
        return std::numbers::pi * radius * radius;
    return (x_hi - x_lo) * (y_hi - y_lo);
}

void Scenario::validate() const
{
    env.validate();
    fit.validate();
    ChannelConfig cfg{fc_hz, gamma_db};
    cfg.validate(env);
    if (!(d_u >= 0.0))
        throw std::invalid_argument("Scenario: d_u must be nonnegative");
    if (world.kind == WorldShape::Kind::disk && !(world.radius > 0.0))
        throw std::invalid_argument("Scenario: world radius must be positive");
    if (!(bounds.x_lo <= bounds.x_hi) || !(bounds.y_lo <= bounds.y_hi) ||
        !(bounds.h_lo <= bounds.h_hi))
        throw std::invalid_argument("Scenario: empty bounds box");
    if (users.random) {
        if (users.count < 0)
            throw std::invalid_argument("Scenario: negative user count");
    } else {
        for (const auto& u : users.explicit_users)
            if (!world.contains(u.x, u.y))
                throw std::invalid_argument("Scenario: explicit user outside the world region");
    }
    if (pwl.breakpoints < 2)
        throw std::invalid_argument("Scenario: need at least 2 PWL breakpoints");
    if (pwl.d_vertices.empty() || std::abs(pwl.d_vertices.back() - d_u) > 1e-6)
        throw std::invalid_argument("Scenario: PWL d vertices must span (0, d_u]");
}

Scenario Scenario::paper_default()
{
    Scenario s;
    s.name = "paper-default";
    return s; // member defaults are the Table-II values
}

json scenario_to_json(const Scenario& s)
{
    json j;
    j["schema"] = "snc-scenario/1";
    j["name"] = s.name;
    if (s.env.name == "suburban" || s.env.name == "urban" || s.env.name == "dense-urban") {
        j["environment"] = s.env.name;
    } else {
        j["environment"] = {{"a", s.env.a},
                            {"b", s.env.b},
                            {"eta_los", s.env.eta_los},
                            {"eta_nlos", s.env.eta_nlos},
                            {"name", s.env.name}};
    }
    j["gamma_db"] = s.gamma_db;
    j["fc_hz"] = s.fc_hz;
    j["bounds"] = {{"x", {s.bounds.x_lo, s.bounds.x_hi}},
                   {"y", {s.bounds.y_lo, s.bounds.y_hi}},
                   {"h", {s.bounds.h_lo, s.bounds.h_hi}}};
    j["d_u"] = s.d_u;
    if (s.world.kind == WorldShape::Kind::disk) {
        j["world"] = {{"shape", "disk"}, {"radius", s.world.radius}};
    } else {
        j["world"] = {{"shape", "rectangle"},
                      {"x", {s.world.x_lo, s.world.x_hi}},
                      {"y", {s.world.y_lo, s.world.y_hi}}};
    }
    if (s.users.random) {
        j["users"] = {{"count", s.users.count}, {"seed", s.users.seed}};
    } else {
        json arr = json::array();
        for (const auto& u : s.users.explicit_users)
            arr.push_back({u.x, u.y});
        j["users"] = {{"explicit", arr}};
    }
    j["persuasion_fit"] = {{"k1", s.fit.k1}, {"k2", s.fit.k2}};
    j["pwl"] = {{"tau_vertices", s.pwl.tau_vertices},
                {"d_vertices", s.pwl.d_vertices},
                {"breakpoints", s.pwl.breakpoints}};
    return j;
}

Scenario scenario_from_json(const json& j)
{
    if (j.value("schema", "") != "snc-scenario/1")
        throw std::invalid_argument("scenario: unknown or missing schema tag");
    Scenario s;
    s.name = j.value("name", "custom");
    const auto& je = j.at("environment");
    if (je.is_string()) {
        s.env = Environment::by_name(je.get<std::string>());
    } else {
        s.env.a = je.at("a").get<double>();
        s.env.b = je.at("b").get<double>();
        s.env.eta_los = je.at("eta_los").get<double>();
        s.env.eta_nlos = je.at("eta_nlos").get<double>();
        s.env.name = je.value("name", "inline");
    }
    s.gamma_db = j.at("gamma_db").get<double>();
    s.fc_hz = j.at("fc_hz").get<double>();
    if (j.contains("bounds")) {
        const auto& jb = j.at("bounds");
        s.bounds.x_lo = jb.at("x").at(0).get<double>();
        s.bounds.x_hi = jb.at("x").at(1).get<double>();
        s.bounds.y_lo = jb.at("y").at(0).get<double>();
        s.bounds.y_hi = jb.at("y").at(1).get<double>();
        if (jb.contains("h")) {
            s.bounds.h_lo = jb.at("h").at(0).get<double>();
            s.bounds.h_hi = jb.at("h").at(1).get<double>();
        }
    }
    s.d_u = j.at("d_u").get<double>();
    if (j.contains("world")) {
        const auto& jw = j.at("world");
        const std::string shape = jw.at("shape").get<std::string>();
        if (shape == "disk") {
            s.world.kind = WorldShape::Kind::disk;
            s.world.radius = jw.at("radius").get<double>();
        } else if (shape == "rectangle") {
            s.world.kind = WorldShape::Kind::rectangle;
            s.world.x_lo = jw.at("x").at(0).get<double>();
            s.world.x_hi = jw.at("x").at(1).get<double>();
            s.world.y_lo = jw.at("y").at(0).get<double>();
            s.world.y_hi = jw.at("y").at(1).get<double>();
        } else {
            throw std::invalid_argument("scenario: unknown world shape " + shape);
        }
    }
    const auto& ju = j.at("users");
    if (ju.contains("explicit")) {
        s.users.random = false;
        s.users.explicit_users.clear();
        int id = 0;
        for (const auto& p : ju.at("explicit"))
            s.users.explicit_users.push_back({id++, p.at(0).get<double>(), p.at(1).get<double>()});
    } else {
        s.users.random = true;
        s.users.count = ju.at("count").get<int>();
        s.users.seed = ju.value("seed", std::uint64_t{1});
    }
    if (j.contains("persuasion_fit")) {
        s.fit.k1 = j.at("persuasion_fit").at("k1").get<double>();
        s.fit.k2 = j.at("persuasion_fit").at("k2").get<double>();
    }
    if (j.contains("pwl")) {
        const auto& jp = j.at("pwl");
        s.pwl.tau_vertices = jp.at("tau_vertices").get<std::vector<double>>();
        s.pwl.d_vertices = jp.at("d_vertices").get<std::vector<double>>();
        s.pwl.breakpoints = jp.at("breakpoints").get<int>();
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open scenario file: " + path);
    json j;
    in >> j;
    return scenario_from_json(j);
}

void save_scenario(const Scenario& s, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write scenario file: " + path);
    out << scenario_to_json(s).dump(2) << "\n";
}

std::string scenario_hash(const Scenario& s)
{
    const std::string dump = scenario_to_json(s).dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace snc
