#include "snc/channel.hpp"

#include "snc/optim.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace snc {

namespace {
constexpr double rad2deg = 180.0 / std::numbers::pi;
}

void Environment::validate() const
{
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("Environment: a and b must be positive");
    if (!(eta_los >= 0.0) || !(eta_nlos >= eta_los))
        throw std::invalid_argument("Environment: require eta_nlos >= eta_los >= 0");
}

Environment Environment::suburban() { return {4.88, 0.43, 0.1, 21.0, "suburban"}; }
Environment Environment::urban() { return {9.61, 0.16, 1.0, 20.0, "urban"}; }
Environment Environment::dense_urban() { return {12.08, 0.11, 1.6, 23.0, "dense-urban"}; }

Environment Environment::by_name(std::string_view name)
{
    if (name == "suburban")
        return suburban();
    if (name == "urban")
        return urban();
    if (name == "dense-urban" || name == "dense_urban")
        return dense_urban();
    throw std::invalid_argument("unknown environment preset: " + std::string(name));
}

double ChannelConfig::z2(const Environment& env) const
{
    return 20.0 * std::log10(4.0 * std::numbers::pi * fc_hz / speed_of_light) + env.eta_nlos;
}

void ChannelConfig::validate(const Environment& env) const
{
    if (!(fc_hz > 0.0))
        throw std::invalid_argument("ChannelConfig: fc must be positive");
    if (!(gamma_db > z2(env)))
        throw std::invalid_argument("ChannelConfig: gamma <= z2, coverage set is empty");
}

double los_probability(double h, double r, const Environment& env)
{
    if (h == 0.0 && r == 0.0)
        throw std::domain_error("los_probability: elevation angle undefined at h = r = 0");
    if (h < 0.0 || r < 0.0)
        throw std::domain_error("los_probability: h and r must be nonnegative");
    const double theta_deg = std::atan2(h, r) * rad2deg;
    return 1.0 / (1.0 + env.a * std::exp(-env.b * (theta_deg - env.a)));
}

double path_loss_db(double h, double r, const Environment& env, const ChannelConfig& cfg)
{
    const double p = los_probability(h, r, env); // also rejects h = r = 0
    const double dist = std::hypot(h, r);
    return 20.0 * std::log10(dist) + env.z1() * p + cfg.z2(env);
}

double gamma_of_alpha(double alpha, const Environment& env, const ChannelConfig& cfg)
{
    if (!(alpha > 0.0))
        throw std::domain_error("gamma_of_alpha: alpha must be positive");
    const double theta_deg = std::atan(alpha) * rad2deg;
    const double p = 1.0 / (1.0 + env.a * std::exp(-env.b * (theta_deg - env.a)));
    const double exponent = (cfg.gamma_db - (env.z1() * p + cfg.z2(env))) / 10.0;
    return std::sqrt(std::pow(10.0, exponent) / (1.0 + alpha * alpha));
}

double alpha_star_stationarity(double alpha, const Environment& env)
{
    const double theta_deg = std::atan(alpha) * rad2deg;
    const double e = std::exp(-env.b * (theta_deg - env.a));
    const double k3 = -9.0 * std::log(10.0) * env.a * env.b * env.z1();
    const double t = 1.0 + env.a * e;
    return alpha * std::numbers::pi * t * t - k3 * e;
}

AlphaStarResult find_alpha_star(const Environment& env, const ChannelConfig& cfg, double tol)
{
    env.validate();
    cfg.validate(env);
    constexpr double lo = 0.01, hi = 100.0;
    BisectionResult root;
    try {
        root = bisect_root([&](double a) { return alpha_star_stationarity(a, env); }, lo, hi,
                           tol, /*polish=*/true);
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("find_alpha_star: dGamma/dalpha has no sign change on "
                                 "[0.01, 100]; Gamma has no interior maximum");
    }
    AlphaStarResult res;
    res.alpha_star = root.root;
    res.gamma_star = gamma_of_alpha(root.root, env, cfg);
    res.iterations = root.iterations;
    res.residual = std::abs(alpha_star_stationarity(root.root, env));
    return res;
}

} // namespace snc
