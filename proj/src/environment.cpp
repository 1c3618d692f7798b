#include "arena2d/environment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace arena2d {

const char* to_string(EpisodeEvent e) {
    switch (e) {
        case EpisodeEvent::None: return "none";
        case EpisodeEvent::GoalReached: return "goal";
        case EpisodeEvent::WallHit: return "wall";
        case EpisodeEvent::Timeout: return "timeout";
    }
    return "unknown";
}

std::vector<float> Observation::flatten() const {
    std::vector<float> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (double r : ranges) out.push_back(static_cast<float>(r));
    if (has_semantic) {
        out.push_back(static_cast<float>(human_dist));
        out.push_back(static_cast<float>(human_angle));
        out.push_back(static_cast<float>(robot_dist));
        out.push_back(static_cast<float>(robot_angle));
    }
    if (has_goal) {
        out.push_back(static_cast<float>(goal_dist));
        out.push_back(static_cast<float>(goal_angle));
    }
    return out;
}

RewardResult compute_reward(const RewardFacts& facts, const EnvConfig& cfg) {
    if (facts.goal_reached && facts.wall_hit) {
        throw std::invalid_argument("compute_reward: goal and wall cannot both be asserted");
    }
    if (facts.goal_reached) {
        return {100.0, true};
    }
    if (facts.wall_hit) {
        return {-100.0, true};
    }
    double reward = (facts.abs_goal_angle <= cfg.heading_threshold) ? 0.1 : -0.2;
    if (facts.d_human < cfg.human_min_dist) reward -= 10.0;
    if (facts.d_robot < cfg.robot_min_dist) reward -= 10.0;
    return {reward, false};
}

LaserScan apply_noise(const LaserScan& scan, double sigma, RngStream& rng) {
    if (sigma < 0.0) {
        throw std::invalid_argument("apply_noise: sigma must be >= 0");
    }
    if (sigma == 0.0) {
        return scan;
    }
    LaserScan out = scan;
    for (double& r : out.ranges) {
        r = std::clamp(r + rng.normal(sigma), 0.01, scan.max_range);
    }
    return out;
}

namespace {

struct NearestDetection {
    double dist{kAbsentDistance};
    double angle{0.0};
    bool present{false};
};

NearestDetection nearest_of_class(const WorldState& world, ObstacleClass cls) {
    NearestDetection best;
    for (const DynamicObstacle& d : world.dynamics) {
        if (d.cls != cls) continue;
        const double dist = distance(world.robot.position(), d.shape.center);
        if (!best.present || dist < best.dist) {
            best.present = true;
            best.dist = dist;
            best.angle = angle_to_goal(world.robot, d.shape.center);
        }
    }
    return best;
}

}  // namespace

Observation pack_observation(const LaserScan& scan, const WorldState& world,
                             const EnvConfig& cfg) {
    Observation obs;
    obs.ranges = scan.ranges;
    if (cfg.scale_ranges && cfg.max_range > 0.0) {
        for (double& r : obs.ranges) r /= cfg.max_range;
    }
    obs.has_semantic = cfg.semantic_slots;
    if (obs.has_semantic) {
        const NearestDetection human = nearest_of_class(world, ObstacleClass::Human);
        const NearestDetection robot = nearest_of_class(world, ObstacleClass::Robot);
        obs.human_dist = human.present ? human.dist : kAbsentDistance;
        obs.human_angle = human.present ? human.angle : 0.0;
        obs.robot_dist = robot.present ? robot.dist : kAbsentDistance;
        obs.robot_angle = robot.present ? robot.angle : 0.0;
    }
    obs.has_goal = cfg.goal_slot;
    if (obs.has_goal) {
        obs.goal_dist = distance(world.robot.position(), world.goal.position);
        obs.goal_angle = (obs.goal_dist > 0.0) ? angle_to_goal(world.robot, world.goal.position)
                                               : 0.0;
    }
    return obs;
}

Environment::Environment(const StageSpec& stage, const EnvConfig& cfg,
                         const StageParams& params, std::uint64_t seed)
    : cfg_(cfg), rng_(seed) {
    world_ = generate_stage(stage, params, rng_);
}

Observation Environment::observe() {
    const WorldGeometry geo = combined_geometry(world_);
    LaserScan scan = raycast_scan(geo, world_.robot, cfg_.n_beams, cfg_.max_range);
    scan = apply_noise(scan, cfg_.noise_sigma, rng_);
    return pack_observation(scan, world_, cfg_);
}

const Observation& Environment::reset() {
    reset_episode(world_, rng_);
    steps_ = 0;
    done_ = false;
    in_contact_ = false;
    contacts_ = 0;
    min_d_human_ = kAbsentDistance;
    obs_ = observe();
    return obs_;
}

const Observation& Environment::reset_with_goal(const Vec2& goal) {
    reset();
    world_.goal.position = goal;
    obs_ = observe();
    return obs_;
}

StepResult Environment::step(int action) {
    if (done_) {
        throw std::logic_error("Environment::step: episode already finished");
    }
    const VelocityCommand cmd = command_for_action(action);

    const Pose previous = world_.robot;
    world_.robot = integrate_motion(world_.robot, cmd, cfg_.dt);
    update_dynamic_obstacles(world_, cfg_.dt, rng_);

    const WorldGeometry geo = combined_geometry(world_);
    const double goal_dist = distance(world_.robot.position(), world_.goal.position);
    const bool goal_reached = goal_dist <= world_.goal.radius;

    bool collided = false;
    if (!goal_reached) {
        collided = check_collision(geo, world_.robot, cfg_.robot_radius).hit;
        if (collided && !cfg_.terminate_on_collision) {
            // Evaluation mode: block the translation (rotation in place stays
            // possible), log the contact, keep going.
            world_.robot.x = previous.x;
            world_.robot.y = previous.y;
            if (!in_contact_) ++contacts_;
            in_contact_ = true;
            collided = false;
        } else if (!collided) {
            in_contact_ = false;
        }
    }

    RewardFacts facts;
    facts.goal_reached = goal_reached;
    facts.wall_hit = collided;
    if (!goal_reached && !collided) {
        facts.abs_goal_angle =
            (goal_dist > 0.0) ? std::abs(angle_to_goal(world_.robot, world_.goal.position)) : 0.0;
    }
    const NearestDetection human = nearest_of_class(world_, ObstacleClass::Human);
    const NearestDetection robot = nearest_of_class(world_, ObstacleClass::Robot);
    facts.d_human = human.present ? human.dist : kAbsentDistance;
    facts.d_robot = robot.present ? robot.dist : kAbsentDistance;
    min_d_human_ = std::min(min_d_human_, facts.d_human);

    RewardResult reward = compute_reward(facts, cfg_);

    ++steps_;
    EpisodeEvent event = EpisodeEvent::None;
    if (goal_reached) {
        event = EpisodeEvent::GoalReached;
    } else if (collided) {
        event = EpisodeEvent::WallHit;
    } else if (steps_ >= cfg_.max_episode_steps) {
        event = EpisodeEvent::Timeout;
        reward.done = true;
    }
    done_ = reward.done;

    obs_ = observe();

    StepResult result;
    result.next_observation = obs_;
    result.reward = reward.reward;
    result.done = done_;
    result.event = event;
    result.step_index = steps_;
    return result;
}

}  // namespace arena2d
