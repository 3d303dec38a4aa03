#include "snc/channel.hpp"
#include "snc/harness.hpp"
#include "snc/solution.hpp"
#include "snc/usnc.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace snc;

namespace {

const Bounds kBox{-700.0, 700.0, -700.0, 700.0, 0.0, 1e9};

UsncOptions default_opts()
{
    UsncOptions o;
    o.alpha_star = 1.4081; // dense-urban ratio
    return o;
}

std::vector<User> toy_users(double angle_deg)
{
    ToyConfig cfg;
    cfg.satellite_angle_deg = angle_deg;
    return run_toy_scenario(cfg).users;
}

} // namespace

TEST_CASE("single user: centered placement with the radius floor")
{
    const std::vector<User> users{{0, 120.0, -40.0}};
    const UsncResult r = solve_usnc(users, kBox, 200.0, default_opts());
    CHECK(r.assignment.covered_count == 1);
    CHECK(r.placement.x_d == doctest::Approx(120.0).epsilon(1e-9));
    CHECK(r.placement.y_d == doctest::Approx(-40.0).epsilon(1e-9));
    CHECK(r.placement.coverage_radius == doctest::Approx(1.0)); // r_min
    CHECK(r.placement.h_d == doctest::Approx(1.4081).epsilon(1e-9));
}

TEST_CASE("coincident users are all covered")
{
    std::vector<User> users;
    for (int i = 0; i < 7; ++i)
        users.push_back({i, 10.0, 10.0});
    const UsncResult r = solve_usnc(users, kBox, 150.0, default_opts());
    CHECK(r.assignment.covered_count == 7);
}

TEST_CASE("two-triplet geometry covers exactly one triplet")
{
    const UsncResult r = solve_usnc(toy_users(42.0), kBox, 200.0, default_opts());
    CHECK(r.assignment.covered_count == 3);
    // shrunk well below the full coverage radius
    CHECK(r.placement.coverage_radius < 30.0);
}

TEST_CASE("altitude tracks the ratio")
{
    const UsncResult r = solve_usnc(toy_users(42.0), kBox, 200.0, default_opts());
    CHECK(r.placement.h_d / r.placement.coverage_radius ==
          doctest::Approx(r.placement.alpha).epsilon(1e-9));
    CHECK_FALSE(r.altitude_clamped);
}

TEST_CASE("altitude box binds: alpha re-solved on the boundary")
{
    Bounds tight = kBox;
    tight.h_lo = 0.0;
    tight.h_hi = 10.0; // far below alpha_star * R for the toy triplet radius
    const UsncResult r = solve_usnc(toy_users(42.0), tight, 200.0, default_opts());
    CHECK(r.altitude_clamped);
    CHECK(r.placement.h_d <= 10.0 + 1e-9);
    CHECK(r.placement.h_d / r.placement.coverage_radius ==
          doctest::Approx(r.placement.alpha).epsilon(1e-9));
}

TEST_CASE("solver count matches the brute-force grid oracle")
{
    WorldShape world; // disk, radius 700
    for (int inst = 0; inst < 12; ++inst) {
        const auto users = generate_users(world, 15, 1000u + static_cast<std::uint64_t>(inst));
        const UsncResult r = solve_usnc(users, kBox, 113.355, default_opts());
        const BruteForceUsnc bf = brute_force_usnc(users, kBox, 113.355, 2.0);
        CHECK(r.assignment.covered_count >= bf.best_count); // the grid can only undercount
        const BruteForceUsnc bf1 = brute_force_usnc(users, kBox, 113.355, 1.0);
        CHECK(r.assignment.covered_count == bf1.best_count);
    }
}

TEST_CASE("covered users satisfy the QoS path-loss budget")
{
    const auto env = Environment::dense_urban();
    const ChannelConfig cfg{2.5e9, 90.0};
    const AlphaStarResult a = find_alpha_star(env, cfg);
    WorldShape world;
    const auto users = generate_users(world, 15, 77u);
    UsncOptions opts;
    opts.alpha_star = a.alpha_star;
    const UsncResult r = solve_usnc(users, kBox, a.gamma_star, opts);
    for (std::size_t i = 0; i < users.size(); ++i) {
        if (!r.assignment.covered[i])
            continue;
        const double pl =
            path_loss_db(r.placement.h_d, std::max(r.assignment.ground_dist[i], 1e-6), env, cfg);
        CHECK(pl <= cfg.gamma_db + 1e-6);
    }
}

TEST_CASE("coverage flags are consistent with the shrunk radius")
{
    WorldShape world;
    const auto users = generate_users(world, 20, 5u);
    const UsncResult r = solve_usnc(users, kBox, 113.355, default_opts());
    for (std::size_t i = 0; i < users.size(); ++i) {
        const double ri = std::hypot(users[i].x - r.placement.x_d, users[i].y - r.placement.y_d);
        CHECK(r.assignment.ground_dist[i] == doctest::Approx(ri).epsilon(1e-12));
        CHECK(static_cast<bool>(r.assignment.covered[i]) ==
              (ri <= r.placement.coverage_radius + 1e-9));
    }
}

TEST_CASE("attach_incentives: boundary user gets no offer, near user gets the closed form")
{
    Placement p;
    p.x_d = 0.0;
    p.y_d = 0.0;
    p.coverage_radius = 100.0;
    p.alpha = 1.4;
    p.h_d = 140.0;
    const std::vector<User> users{{0, 100.0, 0.0}, {1, 110.0, 0.0}, {2, 500.0, 0.0}};
    CoverageAssignment a;
    a.covered = {1, 0, 0};
    a.ground_dist = {100.0, 110.0, 500.0};
    a.covered_count = 1;

    const SncSolution sol = attach_incentives(p, a, users, 200.0, {});
    CHECK(sol.method == SncMethod::usnc);
    REQUIRE(sol.offers.size() == 1); // only the user at d = 10
    CHECK(sol.offers[0].user_id == 1);
    CHECK(sol.offers[0].tau == doctest::Approx(0.104).epsilon(1e-2));
    CHECK(sol.offers[0].expected_profit == doctest::Approx(0.65).epsilon(1e-2));
    CHECK(sol.offers[0].move_dx == doctest::Approx(-10.0).epsilon(1e-9));
    CHECK(sol.objective == doctest::Approx(1.0 + 0.6502).epsilon(1e-3));
    CHECK(sol.flags.u[0] == 1);
    CHECK(sol.flags.w[1] == 1);
    CHECK(sol.flags.w[2] == 0); // beyond d_u
}

TEST_CASE("usnc toy profit is exactly the covered triplet")
{
    ToyConfig cfg;
    const ToyResult r = run_toy_scenario(cfg);
    CHECK(r.usnc.objective == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(r.usnc_profit == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("input validation")
{
    CHECK_THROWS_AS(solve_usnc({}, kBox, 100.0, default_opts()), std::invalid_argument);
    const std::vector<User> one{{0, 0.0, 0.0}};
    const Bounds empty_box{10.0, -10.0, 0.0, 1.0, 0.0, 1e9};
    CHECK_THROWS_AS(solve_usnc(one, empty_box, 100.0, default_opts()), std::runtime_error);
    const std::vector<User> users{{0, 0.0, 0.0}};
    CHECK_THROWS_AS(solve_usnc(users, kBox, -5.0, default_opts()), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_usnc(users, kBox, 100.0, 0.0), std::invalid_argument);
}
