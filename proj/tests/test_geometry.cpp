#include "snc/geometry.hpp"
#include "snc/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace snc;

TEST_CASE("circle intersections of two equal circles")
{
    const auto pts = circle_intersections({0.0, 0.0}, {2.0, 0.0}, 2.0);
    REQUIRE(pts.has_value());
    for (const Point2& p : {pts->first, pts->second}) {
        CHECK(distance(p, {0.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(distance(p, {2.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-12));
    }
    CHECK(pts->first.y == doctest::Approx(-pts->second.y).epsilon(1e-12));
}

TEST_CASE("disjoint or coincident circles have no intersection points")
{
    CHECK_FALSE(circle_intersections({0.0, 0.0}, {10.0, 0.0}, 2.0).has_value());
    CHECK_FALSE(circle_intersections({1.0, 1.0}, {1.0, 1.0}, 2.0).has_value());
}

TEST_CASE("minimum enclosing circle of simple configurations")
{
    // two points: diameter circle
    const Circle two = min_enclosing_circle(std::vector<Point2>{{0.0, 0.0}, {4.0, 0.0}});
    CHECK(two.radius == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(two.center.x == doctest::Approx(2.0).epsilon(1e-9));

    // equilateral triangle: circumcircle
    const double s = 10.0;
    const Circle tri = min_enclosing_circle(
        std::vector<Point2>{{0.0, 0.0}, {s, 0.0}, {s / 2.0, s * std::sqrt(3.0) / 2.0}});
    CHECK(tri.radius == doctest::Approx(s / std::sqrt(3.0)).epsilon(1e-9));

    // obtuse triangle: the long side is the diameter
    const Circle obtuse =
        min_enclosing_circle(std::vector<Point2>{{0.0, 0.0}, {10.0, 0.0}, {5.0, 0.5}});
    CHECK(obtuse.radius == doctest::Approx(5.0).epsilon(1e-6));

    const Circle one = min_enclosing_circle(std::vector<Point2>{{3.0, -2.0}});
    CHECK(one.radius == 0.0);
}

TEST_CASE("minimum enclosing circle covers and is locally minimal")
{
    Rng rng(4242u);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Point2> pts;
        const int n = 3 + static_cast<int>(rng.uniform(0.0, 12.0));
        for (int i = 0; i < n; ++i)
            pts.push_back({rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)});
        const Circle c = min_enclosing_circle(pts);
        double reach = 0.0;
        for (const auto& p : pts) {
            CHECK(c.contains(p, 1e-6));
            reach = std::max(reach, distance(c.center, p));
        }
        // no nearby center does strictly better
        for (int probe = 0; probe < 40; ++probe) {
            const Point2 alt{c.center.x + rng.uniform(-5.0, 5.0),
                             c.center.y + rng.uniform(-5.0, 5.0)};
            double alt_reach = 0.0;
            for (const auto& p : pts)
                alt_reach = std::max(alt_reach, distance(alt, p));
            CHECK(alt_reach >= c.radius - 1e-6);
        }
        CHECK(reach <= c.radius + 1e-6);
    }
}
