#include "arena2d/stage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arena2d {

namespace {

constexpr int kMaxPlacementAttempts = 1000;
constexpr double kPi = 3.141592653589793238462643383279502884;

struct PlacedDisc {
    Vec2 center;
    double bound;  // bounding-circle radius used for overlap rejection
};

double bounding_radius(const Shape& shape) {
    if (const Circle* c = std::get_if<Circle>(&shape)) {
        return c->radius;
    }
    const Polygon& poly = std::get<Polygon>(shape);
    double best = 0.0;
    Vec2 centroid{0.0, 0.0};
    for (const Vec2& v : poly.vertices) centroid = centroid + v;
    centroid = centroid * (1.0 / static_cast<double>(poly.vertices.size()));
    for (const Vec2& v : poly.vertices) best = std::max(best, distance(centroid, v));
    return best;
}

bool placement_ok(const Vec2& center, double bound, const std::vector<PlacedDisc>& placed,
                  double spawn_clearance) {
    if (center.norm() < spawn_clearance + bound) {
        return false;  // keep the center spawn disc free
    }
    for (const PlacedDisc& p : placed) {
        if (distance(center, p.center) < p.bound + bound) {
            return false;
        }
    }
    return true;
}

Vec2 sample_center(RngStream& rng, double half, double keepout) {
    const double lo = -half + keepout;
    const double hi = half - keepout;
    return {rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

Obstacle sample_static_obstacle(const StageSpec& spec, const StageParams& params,
                                RngStream& rng, const std::vector<PlacedDisc>& placed,
                                PlacedDisc& out_disc) {
    const double half = spec.arena_size / 2.0;
    for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
        const bool circle = rng.uniform() < 0.5;
        if (circle) {
            const double r = rng.uniform(params.static_min_extent, params.static_max_extent);
            const Vec2 c = sample_center(rng, half, r + params.wall_margin);
            if (!placement_ok(c, r, placed, params.spawn_clearance)) continue;
            out_disc = {c, r};
            return Obstacle{Circle{c, r}, ObstacleClass::StaticObstacle};
        }
        const double ex = rng.uniform(params.static_min_extent, params.static_max_extent);
        const double ey = rng.uniform(params.static_min_extent, params.static_max_extent);
        const double bound = std::sqrt(ex * ex + ey * ey);
        const Vec2 c = sample_center(rng, half, bound + params.wall_margin);
        if (!placement_ok(c, bound, placed, params.spawn_clearance)) continue;
        out_disc = {c, bound};
        Polygon rect;
        rect.vertices = {{c.x - ex, c.y - ey},
                         {c.x + ex, c.y - ey},
                         {c.x + ex, c.y + ey},
                         {c.x - ex, c.y + ey}};
        return Obstacle{std::move(rect), ObstacleClass::StaticObstacle};
    }
    throw std::runtime_error("generate_stage: stage too crowded (static obstacle placement)");
}

DynamicObstacle sample_dynamic_obstacle(ObstacleClass cls, const StageSpec& spec,
                                        const StageParams& params, RngStream& rng,
                                        const std::vector<PlacedDisc>& placed,
                                        PlacedDisc& out_disc) {
    const double half = spec.arena_size / 2.0;
    const double r = params.dynamic_radius;
    for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
        const Vec2 c = sample_center(rng, half, r + params.wall_margin);
        if (!placement_ok(c, r, placed, params.spawn_clearance)) continue;
        out_disc = {c, r};
        DynamicObstacle d;
        d.shape = Circle{c, r};
        d.cls = cls;
        d.speed = params.obstacle_speed;
        d.heading = rng.uniform(-kPi, kPi);
        d.stop_rate = (cls == ObstacleClass::Human) ? params.human_stop_rate : 0.0;
        d.stop_timer = 0.0;
        return d;
    }
    throw std::runtime_error("generate_stage: stage too crowded (dynamic obstacle placement)");
}

GoalSpec sample_goal(const WorldState& world, RngStream& rng) {
    const double half = world.spec.arena_size / 2.0;
    const StageParams& params = world.params;
    GoalSpec goal;
    goal.radius = params.goal_radius;
    for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
        const Vec2 c = sample_center(rng, half, goal.radius + params.wall_margin);
        if (c.norm() < params.spawn_clearance + goal.radius) continue;
        bool clear = true;
        for (const Obstacle& o : world.static_geometry.obstacles) {
            if (shape_clearance(c, o.shape) < goal.radius) {
                clear = false;
                break;
            }
        }
        if (clear) {
            for (const DynamicObstacle& d : world.dynamics) {
                if (distance(c, d.shape.center) < d.shape.radius + goal.radius) {
                    clear = false;
                    break;
                }
            }
        }
        if (!clear) continue;
        goal.position = c;
        return goal;
    }
    throw std::runtime_error("generate_stage: stage too crowded (goal placement)");
}

void place_dynamics(WorldState& world, RngStream& rng) {
    std::vector<PlacedDisc> placed;
    placed.reserve(world.static_geometry.obstacles.size() + world.dynamics.size());
    for (const Obstacle& o : world.static_geometry.obstacles) {
        Vec2 c{0.0, 0.0};
        if (const Circle* circ = std::get_if<Circle>(&o.shape)) {
            c = circ->center;
        } else {
            const Polygon& poly = std::get<Polygon>(o.shape);
            for (const Vec2& v : poly.vertices) c = c + v;
            c = c * (1.0 / static_cast<double>(poly.vertices.size()));
        }
        placed.push_back({c, bounding_radius(o.shape)});
    }

    world.dynamics.clear();
    const StageSpec& spec = world.spec;
    for (int i = 0; i < spec.n_dynamic; ++i) {
        PlacedDisc disc{};
        world.dynamics.push_back(
            sample_dynamic_obstacle(ObstacleClass::Robot, spec, world.params, rng, placed, disc));
        placed.push_back(disc);
    }
    for (int i = 0; i < spec.n_humans; ++i) {
        PlacedDisc disc{};
        world.dynamics.push_back(
            sample_dynamic_obstacle(ObstacleClass::Human, spec, world.params, rng, placed, disc));
        placed.push_back(disc);
    }
}

}  // namespace

const char* to_string(StageKind k) {
    switch (k) {
        case StageKind::Static: return "static";
        case StageKind::Dynamic: return "dynamic";
        case StageKind::Semantic: return "semantic";
    }
    return "unknown";
}

StageKind stage_kind_from_string(const std::string& s) {
    if (s == "static") return StageKind::Static;
    if (s == "dynamic") return StageKind::Dynamic;
    if (s == "semantic") return StageKind::Semantic;
    throw std::invalid_argument("unknown stage kind: " + s);
}

void StageSpec::validate() const {
    if (!(arena_size > 0.0) || !std::isfinite(arena_size)) {
        throw std::invalid_argument("StageSpec: arena_size must be positive");
    }
    if (n_static < 0 || n_dynamic < 0 || n_humans < 0) {
        throw std::invalid_argument("StageSpec: obstacle counts must be >= 0");
    }
    if (kind == StageKind::Static && (n_dynamic != 0 || n_humans != 0)) {
        throw std::invalid_argument("StageSpec: static stage cannot hold moving obstacles");
    }
    if (kind == StageKind::Dynamic && n_humans != 0) {
        throw std::invalid_argument("StageSpec: human obstacles require a semantic stage");
    }
    if (kind == StageKind::Semantic && n_humans < 1) {
        throw std::invalid_argument("StageSpec: semantic stage needs at least one human");
    }
}

WorldGeometry combined_geometry(const WorldState& world) {
    WorldGeometry geo = world.static_geometry;
    geo.obstacles.reserve(geo.obstacles.size() + world.dynamics.size());
    for (const DynamicObstacle& d : world.dynamics) {
        geo.obstacles.push_back(Obstacle{d.shape, d.cls});
    }
    return geo;
}

WorldState generate_stage(const StageSpec& spec, const StageParams& params, RngStream& rng) {
    spec.validate();

    WorldState world;
    world.spec = spec;
    world.params = params;

    const double h = spec.arena_size / 2.0;
    world.static_geometry.walls = {
        {{-h, -h}, {h, -h}},
        {{h, -h}, {h, h}},
        {{h, h}, {-h, h}},
        {{-h, h}, {-h, -h}},
    };

    std::vector<PlacedDisc> placed;
    placed.reserve(static_cast<std::size_t>(spec.n_static));
    for (int i = 0; i < spec.n_static; ++i) {
        PlacedDisc disc{};
        world.static_geometry.obstacles.push_back(
            sample_static_obstacle(spec, params, rng, placed, disc));
        placed.push_back(disc);
    }

    place_dynamics(world, rng);
    world.goal = sample_goal(world, rng);
    world.robot = Pose{0.0, 0.0, 0.0};
    return world;
}

void reset_episode(WorldState& world, RngStream& rng) {
    world.robot = Pose{0.0, 0.0, 0.0};
    place_dynamics(world, rng);
    world.goal = sample_goal(world, rng);
}

void update_dynamic_obstacles(WorldState& world, double dt, RngStream& rng) {
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw std::invalid_argument("update_dynamic_obstacles: dt must be > 0");
    }
    const double half = world.spec.arena_size / 2.0;

    for (DynamicObstacle& d : world.dynamics) {
        if (d.stop_timer > 0.0) {
            d.stop_timer = std::max(0.0, d.stop_timer - dt);
            continue;
        }
        if (d.cls == ObstacleClass::Human && rng.uniform() < d.stop_rate) {
            d.stop_timer = world.params.human_stop_duration;
            continue;
        }
        if (d.speed <= 0.0) {
            continue;
        }

        double vx = d.speed * std::cos(d.heading);
        double vy = d.speed * std::sin(d.heading);
        double x = d.shape.center.x + vx * dt;
        double y = d.shape.center.y + vy * dt;

        // Specular reflection off the arena box, folding the overshoot back in.
        const double lim = half - d.shape.radius;
        for (int i = 0; i < 8 && (std::abs(x) > lim || std::abs(y) > lim); ++i) {
            if (x > lim) {
                x = 2.0 * lim - x;
                vx = -vx;
            } else if (x < -lim) {
                x = -2.0 * lim - x;
                vx = -vx;
            }
            if (y > lim) {
                y = 2.0 * lim - y;
                vy = -vy;
            } else if (y < -lim) {
                y = -2.0 * lim - y;
                vy = -vy;
            }
        }
        x = std::clamp(x, -lim + 1e-9, lim - 1e-9);
        y = std::clamp(y, -lim + 1e-9, lim - 1e-9);

        d.shape.center = {x, y};
        d.heading = std::atan2(vy, vx);
    }
}

}  // namespace arena2d
