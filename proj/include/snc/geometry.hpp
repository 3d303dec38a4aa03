#ifndef SNC_GEOMETRY_HPP
#define SNC_GEOMETRY_HPP

#include <optional>
#include <span>
#include <utility>

namespace snc {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

double distance(const Point2& a, const Point2& b);
double distance_sq(const Point2& a, const Point2& b);

struct Circle {
    Point2 center;
    double radius = 0.0;

    bool contains(const Point2& p, double tol = 1e-9) const;
};

// Intersection points of two circles of equal radius centered at a and b.
// Empty when the circles are disjoint or concentric.
std::optional<std::pair<Point2, Point2>> circle_intersections(const Point2& a,
                                                              const Point2& b,
                                                              double radius);

// Smallest circle containing all points. Deterministic: enumerates the
// candidate circles defined by point pairs (diameter) and triples
// (circumcircle). Fine for the instance sizes used here (tens of points).
Circle min_enclosing_circle(std::span<const Point2> points);

} // namespace snc

#endif
