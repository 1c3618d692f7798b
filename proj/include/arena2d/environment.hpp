#pragma once

#include <vector>

#include "arena2d/geometry.hpp"
#include "arena2d/kinematics.hpp"
#include "arena2d/rng.hpp"
#include "arena2d/stage.hpp"

namespace arena2d {

/// Sentinel distance reported for an absent human/robot detection.
constexpr double kAbsentDistance = 10.0;

enum class EpisodeEvent { None, GoalReached, WallHit, Timeout };

const char* to_string(EpisodeEvent e);

/// Episode-engine configuration. Defaults reproduce the reference setup:
/// 360 beams, 0.1 s steps, 30 degree heading corridor and the 0.7 m / 0.2 m
/// proximity thresholds.
struct EnvConfig {
    double dt{0.1};                     // seconds per step
    int n_beams{360};
    double max_range{3.5};              // meters
    double robot_radius{0.11};          // meters
    double noise_sigma{0.0};            // lidar noise std, meters
    double human_min_dist{0.7};         // meters
    double robot_min_dist{0.2};         // meters
    double heading_threshold{0.5235987755982988};  // 30 degrees
    int max_episode_steps{600};
    bool semantic_slots{true};          // append (distance, angle) per class
    bool goal_slot{false};              // append (distance, angle) to the goal
    bool scale_ranges{false};           // divide ranges by max_range
    bool terminate_on_collision{true};  // evaluation runs log contacts instead

    int observation_size() const {
        return n_beams + (semantic_slots ? 4 : 0) + (goal_slot ? 2 : 0);
    }
};

/// Flattened layout: ranges, then human (distance, angle) and robot
/// (distance, angle) when semantic slots are enabled, then goal
/// (distance, angle) when the goal slot is enabled. With the default
/// 360-beam semantic configuration the observation is the 364-vector
/// [ranges[0..359], d_human, a_human, d_robot, a_robot].
struct Observation {
    std::vector<double> ranges;
    bool has_semantic{false};
    double human_dist{kAbsentDistance};
    double human_angle{0.0};
    double robot_dist{kAbsentDistance};
    double robot_angle{0.0};
    bool has_goal{false};
    double goal_dist{0.0};
    double goal_angle{0.0};

    int size() const {
        return static_cast<int>(ranges.size()) + (has_semantic ? 4 : 0) + (has_goal ? 2 : 0);
    }
    std::vector<float> flatten() const;
};

struct StepResult {
    Observation next_observation;
    double reward{0.0};
    bool done{false};
    EpisodeEvent event{EpisodeEvent::None};
    int step_index{0};
};

/// Inputs to the reward rule for one transition.
struct RewardFacts {
    bool goal_reached{false};
    bool wall_hit{false};
    double abs_goal_angle{0.0};          // |alpha|, radians
    double d_human{kAbsentDistance};     // nearest human, meters
    double d_robot{kAbsentDistance};     // nearest other robot, meters
};

struct RewardResult {
    double reward{0.0};
    bool done{false};
};

/// Reward table: goal +100 (terminal), wall -100 (terminal); otherwise
/// +0.1 when |alpha| <= 30 degrees else -0.2, plus -10 when a human is
/// closer than 0.7 m and -10 when another robot is closer than 0.2 m.
/// Throws std::invalid_argument when both terminal facts are asserted.
RewardResult compute_reward(const RewardFacts& facts, const EnvConfig& cfg);

/// Add independent zero-mean Gaussian noise of std sigma to every range and
/// clamp the result to (0.01, max_range].
LaserScan apply_noise(const LaserScan& scan, double sigma, RngStream& rng);

/// Build the observation from a (already noisy) scan and the world state.
/// Nearest obstacle per class supplies (distance, angle); an absent class
/// reports (10.0, 0.0).
Observation pack_observation(const LaserScan& scan, const WorldState& world,
                             const EnvConfig& cfg);

/// Episode engine. Owns the world, applies actions, advances dynamic
/// obstacles, computes rewards and packs observations. Deterministic given
/// the construction seed and the action sequence.
class Environment {
public:
    Environment(const StageSpec& stage, const EnvConfig& cfg, const StageParams& params,
                std::uint64_t seed);

    /// Start a new episode: robot to the center, fresh goal and dynamics.
    const Observation& reset();

    /// Start a new episode with a fixed goal position (evaluation protocol).
    const Observation& reset_with_goal(const Vec2& goal);

    /// Advance one step. Throws std::logic_error when the episode is done.
    StepResult step(int action);

    bool done() const { return done_; }
    int step_index() const { return steps_; }
    const Observation& observation() const { return obs_; }
    const WorldState& world() const { return world_; }
    const EnvConfig& config() const { return cfg_; }

    /// Contacts logged while terminate_on_collision is false.
    int contact_count() const { return contacts_; }
    double min_human_distance() const { return min_d_human_; }

private:
    Observation observe();

    WorldState world_;
    EnvConfig cfg_;
    RngStream rng_;
    Observation obs_;
    int steps_{0};
    bool done_{true};
    bool in_contact_{false};
    int contacts_{0};
    double min_d_human_{kAbsentDistance};
};

}  // namespace arena2d
