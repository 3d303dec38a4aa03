#include "snc/geometry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace snc {

double distance_sq(const Point2& a, const Point2& b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double distance(const Point2& a, const Point2& b)
{
    return std::hypot(a.x - b.x, a.y - b.y);
}

bool Circle::contains(const Point2& p, double tol) const
{
    return distance(center, p) <= radius + tol;
}

std::optional<std::pair<Point2, Point2>> circle_intersections(const Point2& a,
                                                              const Point2& b,
                                                              double radius)
{
    const double d = distance(a, b);
    if (d <= 0.0 || d > 2.0 * radius)
        return std::nullopt;
    const Point2 mid{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0};
    const double h_sq = radius * radius - (d / 2.0) * (d / 2.0);
    const double h = std::sqrt(std::max(0.0, h_sq));
    // unit normal to the segment a-b
    const double ux = -(b.y - a.y) / d;
    const double uy = (b.x - a.x) / d;
    return std::make_pair(Point2{mid.x + h * ux, mid.y + h * uy},
                          Point2{mid.x - h * ux, mid.y - h * uy});
}

namespace {

Circle circle_from(const Point2& a, const Point2& b)
{
    return Circle{Point2{(a.x + b.x) / 2.0, (a.y + b.y) / 2.0}, distance(a, b) / 2.0};
}

std::optional<Circle> circumcircle(const Point2& a, const Point2& b, const Point2& c)
{
    const double ax = b.x - a.x, ay = b.y - a.y;
    const double bx = c.x - a.x, by = c.y - a.y;
    const double det = 2.0 * (ax * by - ay * bx);
    if (std::abs(det) < 1e-14)
        return std::nullopt; // collinear
    const double a2 = ax * ax + ay * ay;
    const double b2 = bx * bx + by * by;
    const double cx = a.x + (by * a2 - ay * b2) / det;
    const double cy = a.y + (ax * b2 - bx * a2) / det;
    const Point2 center{cx, cy};
    return Circle{center, distance(center, a)};
}

bool covers_all(const Circle& c, std::span<const Point2> pts)
{
    const double lim = c.radius + 1e-7;
    for (const auto& p : pts)
        if (distance(c.center, p) > lim)
            return false;
    return true;
}

} // namespace

Circle min_enclosing_circle(std::span<const Point2> points)
{
    if (points.empty())
        throw std::invalid_argument("min_enclosing_circle: empty point set");
    if (points.size() == 1)
        return Circle{points[0], 0.0};

    Circle best{Point2{}, std::numeric_limits<double>::infinity()};
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Circle c = circle_from(points[i], points[j]);
            if (c.radius < best.radius && covers_all(c, points))
                best = c;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (auto cc = circumcircle(points[i], points[j], points[k])) {
                    if (cc->radius < best.radius && covers_all(*cc, points))
                        best = *cc;
                }
            }
        }
    }
    if (!std::isfinite(best.radius))
        return Circle{points[0], 0.0}; // all points coincident
    return best;
}

} // namespace snc
