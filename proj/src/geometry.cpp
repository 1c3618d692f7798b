#include "arena2d/geometry.hpp"

#include <algorithm>
#include <limits>

namespace arena2d {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kRayEps = 1e-12;
}  // namespace

double normalize_angle(double a) {
    if (!std::isfinite(a)) {
        throw std::invalid_argument("normalize_angle: non-finite angle");
    }
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) {
        a += 2.0 * kPi;
    } else if (a > kPi) {
        a -= 2.0 * kPi;
    }
    return a;
}

const char* to_string(ObstacleClass c) {
    switch (c) {
        case ObstacleClass::Wall: return "wall";
        case ObstacleClass::StaticObstacle: return "static";
        case ObstacleClass::Human: return "human";
        case ObstacleClass::Robot: return "robot";
    }
    return "unknown";
}

double point_segment_distance(const Vec2& p, const Segment& s) {
    const Vec2 d = s.b - s.a;
    const double len2 = d.dot(d);
    if (len2 <= 0.0) {
        return distance(p, s.a);
    }
    double t = (p - s.a).dot(d) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, s.a + d * t);
}

bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& vertices) {
    bool inside = false;
    const std::size_t n = vertices.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& vi = vertices[i];
        const Vec2& vj = vertices[j];
        const bool crosses = (vi.y > p.y) != (vj.y > p.y);
        if (crosses && p.x < (vj.x - vi.x) * (p.y - vi.y) / (vj.y - vi.y) + vi.x) {
            inside = !inside;
        }
    }
    return inside;
}

bool point_inside_walls(const WorldGeometry& world, const Vec2& p) {
    // Even-odd crossing count of a horizontal ray against the wall loop.
    int crossings = 0;
    for (const Segment& s : world.walls) {
        const bool spans = (s.a.y > p.y) != (s.b.y > p.y);
        if (spans && p.x < (s.b.x - s.a.x) * (p.y - s.a.y) / (s.b.y - s.a.y) + s.a.x) {
            ++crossings;
        }
    }
    return (crossings % 2) == 1;
}

double ray_segment_hit(const Vec2& origin, const Vec2& dir, const Segment& s) {
    const Vec2 e = s.b - s.a;
    const double denom = dir.cross(e);
    if (std::abs(denom) < kRayEps) {
        return -1.0;  // parallel
    }
    const Vec2 ao = s.a - origin;
    const double t = ao.cross(e) / denom;
    const double u = ao.cross(dir) / denom;
    if (t >= kRayEps && u >= 0.0 && u <= 1.0) {
        return t;
    }
    return -1.0;
}

double ray_circle_hit(const Vec2& origin, const Vec2& dir, const Circle& c) {
    const Vec2 oc = origin - c.center;
    const double b = oc.dot(dir);
    const double q = oc.dot(oc) - c.radius * c.radius;
    const double disc = b * b - q;
    if (disc < 0.0) {
        return -1.0;
    }
    const double root = std::sqrt(disc);
    const double t0 = -b - root;
    if (t0 >= kRayEps) {
        return t0;
    }
    const double t1 = -b + root;
    if (t1 >= kRayEps) {
        return t1;  // origin inside the circle
    }
    return -1.0;
}

double ray_shape_hit(const Vec2& origin, const Vec2& dir, const Shape& shape) {
    if (const Circle* c = std::get_if<Circle>(&shape)) {
        return ray_circle_hit(origin, dir, *c);
    }
    const Polygon& poly = std::get<Polygon>(shape);
    double best = -1.0;
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const double t = ray_segment_hit(origin, dir, {poly.vertices[j], poly.vertices[i]});
        if (t >= 0.0 && (best < 0.0 || t < best)) {
            best = t;
        }
    }
    return best;
}

LaserScan raycast_scan(const WorldGeometry& world, const Pose& pose, int n_beams,
                       double max_range) {
    if (n_beams < 1) {
        throw std::invalid_argument("raycast_scan: n_beams must be >= 1");
    }
    if (!(max_range > 0.0) || !std::isfinite(max_range)) {
        throw std::invalid_argument("raycast_scan: max_range must be positive");
    }
    const Vec2 origin = pose.position();
    if (!world.walls.empty() && !point_inside_walls(world, origin)) {
        throw std::invalid_argument("raycast_scan: pose outside arena");
    }

    LaserScan scan;
    scan.max_range = max_range;
    scan.ranges.resize(static_cast<std::size_t>(n_beams), max_range);

    for (int k = 0; k < n_beams; ++k) {
        const double angle = pose.theta + 2.0 * kPi * static_cast<double>(k) /
                                              static_cast<double>(n_beams);
        const Vec2 dir{std::cos(angle), std::sin(angle)};
        double best = max_range;
        for (const Segment& s : world.walls) {
            const double t = ray_segment_hit(origin, dir, s);
            if (t >= 0.0 && t < best) best = t;
        }
        for (const Obstacle& o : world.obstacles) {
            const double t = ray_shape_hit(origin, dir, o.shape);
            if (t >= 0.0 && t < best) best = t;
        }
        scan.ranges[static_cast<std::size_t>(k)] = best;
    }
    return scan;
}

double shape_clearance(const Vec2& p, const Shape& shape) {
    if (const Circle* c = std::get_if<Circle>(&shape)) {
        return distance(p, c->center) - c->radius;
    }
    const Polygon& poly = std::get<Polygon>(shape);
    double boundary = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.vertices.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        boundary = std::min(boundary,
                            point_segment_distance(p, {poly.vertices[j], poly.vertices[i]}));
    }
    return point_in_polygon(p, poly.vertices) ? -boundary : boundary;
}

CollisionReport check_collision(const WorldGeometry& world, const Pose& pose,
                                double robot_radius) {
    const Vec2 p = pose.position();
    CollisionReport report;
    double nearest = std::numeric_limits<double>::infinity();

    for (const Segment& s : world.walls) {
        const double d = point_segment_distance(p, s);
        if (d < robot_radius && d < nearest) {
            nearest = d;
            report = {true, ObstacleClass::Wall};
        }
    }
    for (const Obstacle& o : world.obstacles) {
        const double d = shape_clearance(p, o.shape);
        if (d < robot_radius && d < nearest) {
            nearest = d;
            report = {true, o.cls};
        }
    }
    return report;
}

double angle_to_goal(const Pose& pose, const Vec2& goal) {
    const Vec2 delta = goal - pose.position();
    if (delta.x == 0.0 && delta.y == 0.0) {
        throw std::invalid_argument("angle_to_goal: goal coincides with position");
    }
    return normalize_angle(std::atan2(delta.y, delta.x) - pose.theta);
}

}  // namespace arena2d
