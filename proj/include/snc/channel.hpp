#ifndef SNC_CHANNEL_HPP
#define SNC_CHANNEL_HPP

#include <string>
#include <string_view>

namespace snc {

/// Air-to-ground propagation environment. The LOS-probability S-curve is
/// parameterized by (a, b); eta_los / eta_nlos are the mean excess losses in
/// dB of the LOS and non-LOS components.
struct Environment {
    double a = 0.0;
    double b = 0.0;
    double eta_los = 0.0;  // dB
    double eta_nlos = 0.0; // dB
    std::string name;

    /// eta_los - eta_nlos, the dB swing between fully-LOS and fully-NLOS.
    double z1() const { return eta_los - eta_nlos; }

    /// Throws std::invalid_argument unless a > 0, b > 0 and
    /// eta_nlos >= eta_los >= 0.
    void validate() const;

    static Environment suburban();
    static Environment urban();
    static Environment dense_urban();

    /// Lookup by preset name ("suburban", "urban", "dense-urban").
    static Environment by_name(std::string_view name);
};

struct ChannelConfig {
    double fc_hz = 2.5e9;   // carrier frequency
    double gamma_db = 90.0; // maximum tolerable path loss

    static constexpr double speed_of_light = 299792458.0; // m/s

    /// Frequency-dependent constant of the path-loss model:
    /// 20*log10(4*pi*fc/c) + eta_nlos.
    double z2(const Environment& env) const;

    /// Throws std::invalid_argument when fc <= 0 or when gamma <= z2 (the
    /// coverage set would be empty at every geometry).
    void validate(const Environment& env) const;
};

/// Probability of a line-of-sight link between a drone at altitude h and a
/// ground user at horizontal distance r. The elevation angle enters the
/// S-curve in DEGREES. Undefined (throws std::domain_error) at h = r = 0.
double los_probability(double h, double r, const Environment& env);

/// Mean path loss in dB: 20*log10(sqrt(h^2+r^2)) + z1*P(h,r) + z2.
double path_loss_db(double h, double r, const Environment& env, const ChannelConfig& cfg);

/// Maximum ground coverage radius as a function of the altitude-to-radius
/// ratio alpha = h/R:
///   Gamma(alpha) = sqrt(10^((gamma - z1*P(alpha) - z2)/10) / (1 + alpha^2)).
double gamma_of_alpha(double alpha, const Environment& env, const ChannelConfig& cfg);

/// Left-hand side of the stationarity equation dGamma/dalpha = 0 after
/// clearing positive factors:
///   alpha*pi*(1 + a*E)^2 - k3*E,   E = exp(-b(theta_deg(alpha) - a)),
///   k3 = -9*ln(10)*a*b*z1.
/// Negative where Gamma is increasing, positive where it is decreasing.
double alpha_star_stationarity(double alpha, const Environment& env);

struct AlphaStarResult {
    double alpha_star = 0.0;  // h/R ratio at the coverage maximum
    double gamma_star = 0.0;  // maximum ground coverage radius, m
    int iterations = 0;
    double residual = 0.0;    // |stationarity| at alpha_star
};

/// Unique maximizer of Gamma(alpha) on [0.01, 100], found by bisecting the
/// sign of the analytic derivative. Throws std::runtime_error when the
/// derivative has no sign change on the bracket (e.g. z1 = 0: Gamma is then
/// monotone and has no interior maximum).
AlphaStarResult find_alpha_star(const Environment& env, const ChannelConfig& cfg,
                                double tol = 1e-6);

} // namespace snc

#endif
