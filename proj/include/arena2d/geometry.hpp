#pragma once

#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

namespace arena2d {

struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    friend constexpr Vec2 operator*(double s, const Vec2& v) { return {v.x * s, v.y * s}; }

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    constexpr double cross(const Vec2& r) const { return x * r.y - y * r.x; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

/// Normalize an angle to (-pi, pi].
double normalize_angle(double a);

/// Robot pose: position in meters, heading in radians, heading always
/// normalized to (-pi, pi].
struct Pose {
    double x{0.0};
    double y{0.0};
    double theta{0.0};

    Vec2 position() const { return {x, y}; }
};

struct Segment {
    Vec2 a;
    Vec2 b;
};

struct Circle {
    Vec2 center;
    double radius{0.0};
};

/// Simple (non self-intersecting) polygon, vertices in order.
struct Polygon {
    std::vector<Vec2> vertices;
};

using Shape = std::variant<Circle, Polygon>;

enum class ObstacleClass { Wall, StaticObstacle, Human, Robot };

const char* to_string(ObstacleClass c);

struct Obstacle {
    Shape shape;
    ObstacleClass cls{ObstacleClass::StaticObstacle};
};

/// Static collision/raycast geometry: the enclosing wall loop plus shaped
/// obstacles. Dynamic obstacles are merged in by the caller per step.
struct WorldGeometry {
    std::vector<Segment> walls;
    std::vector<Obstacle> obstacles;
};

struct LaserScan {
    std::vector<double> ranges;
    double max_range{3.5};

    int n_beams() const { return static_cast<int>(ranges.size()); }
};

struct CollisionReport {
    bool hit{false};
    ObstacleClass cls{ObstacleClass::Wall};  // meaningful only when hit
};

/// Distance from point p to segment s.
double point_segment_distance(const Vec2& p, const Segment& s);

/// Even-odd point-in-polygon test.
bool point_in_polygon(const Vec2& p, const std::vector<Vec2>& vertices);

/// True when p lies inside the closed wall loop.
bool point_inside_walls(const WorldGeometry& world, const Vec2& p);

/// Signed clearance from point p to the shape boundary (negative inside).
double shape_clearance(const Vec2& p, const Shape& shape);

/// Distance along a ray (origin, unit direction) to the first intersection
/// with the shape/segment, or a negative value when there is no hit.
double ray_segment_hit(const Vec2& origin, const Vec2& dir, const Segment& s);
double ray_circle_hit(const Vec2& origin, const Vec2& dir, const Circle& c);
double ray_shape_hit(const Vec2& origin, const Vec2& dir, const Shape& shape);

/// Cast n_beams rays from the pose. Beam k leaves at angle
/// theta + 2*pi*k/n_beams (counter-clockwise, beam 0 along the heading);
/// ranges are clamped to max_range when nothing is hit.
/// Throws std::invalid_argument when the pose lies outside the arena walls.
LaserScan raycast_scan(const WorldGeometry& world, const Pose& pose, int n_beams,
                       double max_range);

/// Disc-vs-world overlap test; reports the class of the nearest violating
/// object when several overlap.
CollisionReport check_collision(const WorldGeometry& world, const Pose& pose,
                                double robot_radius);

/// Signed angle between the robot heading and the bearing to the goal,
/// normalized to (-pi, pi]. Throws when the goal coincides with the position.
double angle_to_goal(const Pose& pose, const Vec2& goal);

}  // namespace arena2d
