#include "snc/harness.hpp"
#include "snc/jsnc.hpp"
#include "snc/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace snc;

namespace {

const Bounds kBox{-700.0, 700.0, -700.0, 700.0, 0.0, 1e9};
constexpr double kGammaStar = 113.355;
constexpr double kDu = 200.0;

PwlGrid table_grid()
{
    return PwlGrid::build({0.05, 0.1, 0.2, 0.9}, {5.0, 10.0, 20.0, 40.0, 200.0}, {});
}

Pwl1D profile_fit(int n = 3)
{
    return fit_pwl1d([](double d) { return optimal_incentive(d).profit; }, n, kDu);
}

SncSolverOptions solver_opts()
{
    SncSolverOptions o;
    o.alpha_star = 1.4081;
    return o;
}

} // namespace

TEST_CASE("exact_profit covers the three regions")
{
    const std::vector<User> users{{0, 0.0, 0.0}, {1, 50.0, 0.0}, {2, 0.0, 123.355},
                                  {3, 400.0, 0.0}};
    const ExactProfit p = exact_profit({0.0, 0.0}, users, kGammaStar, kDu, {});
    CHECK(p.per_user[0] == 1.0);
    CHECK(p.per_user[1] == 1.0);
    CHECK(p.per_user[2] == doctest::Approx(0.65).epsilon(1e-2)); // d = 10
    CHECK(p.per_user[3] == 0.0); // beyond Gamma* + d_u
    CHECK(p.total == doctest::Approx(2.0 + p.per_user[2]).epsilon(1e-12));
}

TEST_CASE("exact_profit: everyone inside gives the head count")
{
    std::vector<User> users;
    for (int i = 0; i < 9; ++i)
        users.push_back({i, 10.0 * i, 0.0});
    CHECK(exact_profit({40.0, 0.0}, users, kGammaStar, kDu, {}).total == 9.0);
}

TEST_CASE("exact_profit is nondecreasing in d_u")
{
    WorldShape world;
    const auto users = generate_users(world, 15, 31u);
    Rng rng(8u);
    for (int rep = 0; rep < 10; ++rep) {
        const Point2 c{rng.uniform(-700.0, 700.0), rng.uniform(-700.0, 700.0)};
        const double lo = exact_profit(c, users, kGammaStar, 150.0, {}).total;
        const double hi = exact_profit(c, users, kGammaStar, 250.0, {}).total;
        CHECK(hi >= lo - 1e-12);
    }
}

TEST_CASE("max_on_surface agrees with a dense probe of the feasible region")
{
    const PwlGrid grid = table_grid();
    for (double dmin : {0.0, 3.0, 5.0, 17.0, 60.0, 150.0, 199.5}) {
        const SurfaceMax sm = max_on_surface(grid, dmin);
        double probe = 0.0;
        const double dlo = std::max(dmin, grid.d_vertices().front());
        for (int i = 0; i <= 350; ++i)
            for (int j = 0; j <= 350; ++j) {
                const double tau = 0.05 + (0.9 - 0.05) * i / 350.0;
                const double d = dlo + (200.0 - dlo) * j / 350.0;
                probe = std::max(probe, triangle_approx(grid, tau, d).value);
            }
        CHECK(sm.value >= probe - 1e-9);
        CHECK(sm.value <= probe + 0.02); // probe resolution slack
        // the argmax is feasible and evaluates to the reported value
        CHECK(sm.d >= dlo - 1e-9);
        CHECK(triangle_approx(grid, sm.tau, sm.d).value == doctest::Approx(sm.value).epsilon(1e-9));
    }
    CHECK(max_on_surface(grid, 201.0).value == 0.0);
}

TEST_CASE("jsnc with everyone already covered returns the head count and no offers")
{
    std::vector<User> users;
    for (int i = 0; i < 6; ++i)
        users.push_back({i, 5.0 * i, -3.0 * i});
    const SncSolution sol = solve_jsnc(users, kBox, kGammaStar, kDu, table_grid(), {}, solver_opts());
    CHECK(sol.objective == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(sol.offers.empty());
    CHECK(sol.solver_stats.approx_objective == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("semi-jsnc with unreachable users yields zero objective and no offers")
{
    // bounds pinned far away from every user
    Bounds far{-700.0, -650.0, -700.0, -650.0, 0.0, 1e9};
    std::vector<User> users{{0, 600.0, 600.0}, {1, 650.0, 500.0}};
    const SncSolution sol =
        solve_semi_jsnc(users, far, kGammaStar, kDu, profile_fit(), {}, solver_opts());
    CHECK(sol.objective == 0.0);
    CHECK(sol.offers.empty());
}

TEST_CASE("offer coherence and region flags on random instances")
{
    WorldShape world;
    const PwlGrid grid = table_grid();
    const Pwl1D f1d = profile_fit();
    for (int inst = 0; inst < 6; ++inst) {
        const auto users = generate_users(world, 15, 900u + static_cast<std::uint64_t>(inst));
        for (const SncSolution& sol :
             {solve_jsnc(users, kBox, kGammaStar, kDu, grid, {}, solver_opts()),
              solve_semi_jsnc(users, kBox, kGammaStar, kDu, f1d, {}, solver_opts())}) {
            for (std::size_t i = 0; i < users.size(); ++i)
                CHECK(sol.flags.u[i] + sol.flags.w[i] <= 1);
            for (const auto& o : sol.offers) {
                CHECK(o.expected_profit ==
                      doctest::Approx((1.0 - o.tau) * std::exp(-beta(o.tau) * o.d))
                          .epsilon(1e-12));
                CHECK(o.accept_prob == doctest::Approx(std::exp(-beta(o.tau) * o.d)).epsilon(1e-12));
                CHECK(o.d > 0.0);
                CHECK(o.d <= kDu + 1e-9);
                // moving d places the user on or inside the circle
                const User& u = users[static_cast<std::size_t>(o.user_id)];
                const double r =
                    std::hypot(u.x - sol.placement.x_d, u.y - sol.placement.y_d);
                CHECK(r - o.d <= kGammaStar + 1e-6);
                // the suggested displacement is radial with magnitude d
                CHECK(std::hypot(o.move_dx, o.move_dy) == doctest::Approx(o.d).epsilon(1e-9));
            }
            // objective equals covered count plus offer profits
            double expect = 0.0;
            for (std::size_t i = 0; i < users.size(); ++i)
                expect += sol.flags.u[i];
            for (const auto& o : sol.offers)
                expect += o.expected_profit;
            CHECK(sol.objective == doctest::Approx(expect).epsilon(1e-12));
        }
    }
}

TEST_CASE("solvers beat the center-grid oracle on their own objectives")
{
    WorldShape world;
    const PwlGrid grid = table_grid();
    const Pwl1D f1d = profile_fit();
    for (int inst = 0; inst < 5; ++inst) {
        const auto users = generate_users(world, 12, 4000u + static_cast<std::uint64_t>(inst));
        const SncSolution j = solve_jsnc(users, kBox, kGammaStar, kDu, grid, {}, solver_opts());
        const BruteForceCenter bj = brute_force_center(users, kBox, kGammaStar, kDu, {}, 4.0,
                                                       ObjectiveKind::jsnc_approx, &grid);
        CHECK(j.solver_stats.approx_objective >= bj.objective - 1e-6);

        const SncSolution s = solve_semi_jsnc(users, kBox, kGammaStar, kDu, f1d, {}, solver_opts());
        const BruteForceCenter bs = brute_force_center(users, kBox, kGammaStar, kDu, {}, 4.0,
                                                       ObjectiveKind::semi_approx, nullptr, &f1d);
        CHECK(s.solver_stats.approx_objective >= bs.objective - 1e-6);
    }
}

TEST_CASE("dominance: joint methods never trail the uncoordinated one materially")
{
    WorldShape world;
    const PwlGrid grid = table_grid();
    const Pwl1D f1d = profile_fit();
    UsncOptions uo;
    uo.alpha_star = 1.4081;
    for (int inst = 0; inst < 8; ++inst) {
        const auto users = generate_users(world, 15, 7100u + static_cast<std::uint64_t>(inst));
        const double slack = 0.02 * static_cast<double>(users.size());

        const UsncResult u = solve_usnc(users, kBox, kGammaStar, uo);
        const double usnc_score =
            exact_profit(u.placement.center(), users, kGammaStar, kDu, {}).total;

        const SncSolution j = solve_jsnc(users, kBox, kGammaStar, kDu, grid, {}, solver_opts());
        const double j_score = exact_profit(j.placement.center(), users, kGammaStar, kDu, {}).total;
        CHECK(j_score >= usnc_score - slack);

        const SncSolution s = solve_semi_jsnc(users, kBox, kGammaStar, kDu, f1d, {}, solver_opts());
        const double s_score = exact_profit(s.placement.center(), users, kGammaStar, kDu, {}).total;
        CHECK(s_score >= usnc_score - slack);
    }
}

TEST_CASE("triangle objective stays within the secant error of the exact score")
{
    const PwlGrid grid = table_grid();
    // max deviation of the exact surface from the interpolant, over a dense probe
    double cell_err = 0.0;
    for (int i = 0; i <= 250; ++i)
        for (int j = 0; j <= 250; ++j) {
            const double tau = 0.05 + (0.9 - 0.05) * i / 250.0;
            const double d = 5.0 + (200.0 - 5.0) * j / 250.0;
            cell_err = std::max(cell_err,
                                std::abs(triangle_approx(grid, tau, d).value - unit_profit(tau, d)));
        }
    WorldShape world;
    const auto users = generate_users(world, 15, 60u);
    const SncSolution j = solve_jsnc(users, kBox, kGammaStar, kDu, grid, {}, solver_opts());
    const double exact = exact_profit(j.placement.center(), users, kGammaStar, kDu, {}).total;
    CHECK(std::abs(j.solver_stats.approx_objective - exact) <=
          static_cast<double>(users.size()) * cell_err + 1e-6);
}

TEST_CASE("brute_force_center respects symmetry and the single-user case")
{
    // symmetric pair close enough to be covered together: the midpoint of the
    // pair attains the grid optimum
    const std::vector<User> sym{{0, -75.0, 0.0}, {1, 75.0, 0.0}};
    const BruteForceCenter b =
        brute_force_center(sym, kBox, kGammaStar, kDu, {}, 5.0, ObjectiveKind::exact);
    CHECK(b.objective == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(exact_profit({0.0, 0.0}, sym, kGammaStar, kDu, {}).total >= b.objective - 1e-9);

    const std::vector<User> one{{0, 100.0, 100.0}};
    const BruteForceCenter b1 =
        brute_force_center(one, kBox, kGammaStar, kDu, {}, 10.0, ObjectiveKind::exact);
    CHECK(b1.objective == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("iteration-starved search returns best-so-far and drops the converged flag")
{
    WorldShape world;
    const auto users = generate_users(world, 12, 3u);
    SncSolverOptions o = solver_opts();
    o.max_iterations = 1;
    o.simplex_tol = 1e-9;
    o.random_starts = 2;
    const SncSolution sol =
        solve_semi_jsnc(users, kBox, kGammaStar, kDu, profile_fit(), {}, o);
    CHECK_FALSE(sol.solver_stats.converged);
    CHECK(sol.objective >= 0.0); // still a usable solution
}

TEST_CASE("exact-oracle center grid dominates every method up to the shared slack")
{
    WorldShape world;
    const PwlGrid grid = table_grid();
    const Pwl1D f1d = profile_fit();
    UsncOptions uo;
    uo.alpha_star = 1.4081;
    const auto users = generate_users(world, 15, 8123u);
    const double slack = 0.02 * static_cast<double>(users.size());
    const BruteForceCenter oracle =
        brute_force_center(users, kBox, kGammaStar, kDu, {}, 2.0, ObjectiveKind::exact);

    const UsncResult u = solve_usnc(users, kBox, kGammaStar, uo);
    const SncSolution j = solve_jsnc(users, kBox, kGammaStar, kDu, grid, {}, solver_opts());
    const SncSolution s = solve_semi_jsnc(users, kBox, kGammaStar, kDu, f1d, {}, solver_opts());
    for (const Point2 c : {u.placement.center(), j.placement.center(), s.placement.center()}) {
        const double score = exact_profit(c, users, kGammaStar, kDu, {}).total;
        CHECK(oracle.objective >= score - slack);
    }
}

TEST_CASE("solver input validation")
{
    const PwlGrid grid = table_grid();
    const Pwl1D f1d = profile_fit();
    const std::vector<User> users{{0, 0.0, 0.0}};
    CHECK_THROWS_AS(solve_jsnc({}, kBox, kGammaStar, kDu, grid, {}, solver_opts()),
                    std::invalid_argument);
    CHECK_THROWS_AS(solve_jsnc(users, kBox, kGammaStar, 400.0, grid, {}, solver_opts()),
                    std::invalid_argument); // grid does not span d_u
    CHECK_THROWS_AS(solve_semi_jsnc(users, kBox, kGammaStar, 400.0, f1d, {}, solver_opts()),
                    std::invalid_argument);
    CHECK_THROWS_AS(brute_force_center(users, kBox, kGammaStar, kDu, {}, 1.0,
                                       ObjectiveKind::jsnc_approx, nullptr),
                    std::invalid_argument);
}
