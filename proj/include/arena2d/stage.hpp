#pragma once

#include <string>
#include <vector>

#include "arena2d/geometry.hpp"
#include "arena2d/rng.hpp"

namespace arena2d {

enum class StageKind { Static, Dynamic, Semantic };

const char* to_string(StageKind k);
StageKind stage_kind_from_string(const std::string& s);

/// Stage description. Counts: n_static shaped static obstacles, n_dynamic
/// moving robot-class discs, n_humans moving human-class discs (semantic
/// stages only).
struct StageSpec {
    StageKind kind{StageKind::Static};
    double arena_size{4.0};  // side length of the square arena, meters
    int n_static{3};
    int n_dynamic{0};
    int n_humans{0};
    std::uint64_t seed{0};

    /// Throws std::invalid_argument when the stage invariants are violated
    /// (static stages must have no moving obstacles, semantic stages need at
    /// least one human, counts non-negative).
    void validate() const;
};

/// Tunables the paper leaves open; every value can be overridden from the
/// run configuration.
struct StageParams {
    double obstacle_speed{0.1};       // m/s, moving obstacles
    double human_stop_rate{0.01};     // stop probability per step
    double human_stop_duration{2.0};  // seconds
    double dynamic_radius{0.15};      // disc radius of moving obstacles
    double static_min_extent{0.10};   // half-extent / radius range of
    double static_max_extent{0.30};   //   randomized static obstacles
    double goal_radius{0.15};
    double spawn_clearance{0.30};     // free disc kept around the center spawn
    double wall_margin{0.05};         // obstacle clearance from the walls
};

struct DynamicObstacle {
    Circle shape;
    ObstacleClass cls{ObstacleClass::Robot};  // Human or Robot
    double speed{0.1};                        // m/s
    double heading{0.0};                      // radians
    double stop_rate{0.0};                    // per-step probability (> 0 only for humans)
    double stop_timer{0.0};                   // seconds remaining stationary
};

struct GoalSpec {
    Vec2 position;
    double radius{0.15};
};

/// Full mutable simulation state: static geometry, moving obstacles, goal
/// and robot pose. Static geometry is fixed for the lifetime of a stage;
/// resets only move the robot, goal and dynamic obstacles.
struct WorldState {
    StageSpec spec;
    StageParams params;
    WorldGeometry static_geometry;  // walls + static obstacles
    std::vector<DynamicObstacle> dynamics;
    GoalSpec goal;
    Pose robot;
};

/// Geometry snapshot for raycasting/collision: static geometry plus the
/// dynamic obstacles as circles of their class.
WorldGeometry combined_geometry(const WorldState& world);

/// Build a randomized stage. Walls enclose a centered square of
/// spec.arena_size; obstacles are rejection-sampled without mutual overlap,
/// clear of the walls and of the spawn disc at the center; the goal is
/// sampled collision-free. Deterministic given (spec, params, rng state).
/// Throws std::runtime_error when placement fails 1000 times in a row.
WorldState generate_stage(const StageSpec& spec, const StageParams& params, RngStream& rng);

/// Episode reset: robot back to the arena center with heading 0, goal
/// re-sampled, dynamic obstacles re-seeded to fresh positions. Static
/// obstacles stay where they are.
void reset_episode(WorldState& world, RngStream& rng);

/// Advance the moving obstacles by dt. Humans currently stopped stay still
/// and run down their timer; otherwise a human starts a 2 s stop with
/// probability stop_rate. Moving obstacles reflect specularly off the walls
/// and always remain strictly inside the arena.
void update_dynamic_obstacles(WorldState& world, double dt, RngStream& rng);

}  // namespace arena2d
