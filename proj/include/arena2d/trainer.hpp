#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>

#include "arena2d/environment.hpp"
#include "arena2d/network.hpp"
#include "arena2d/replay_buffer.hpp"

namespace arena2d {

/// Training hyperparameters. Defaults are the published table values:
/// discount 0.99, target sync every 2000 steps, learning rate 0.00025,
/// epsilon 1 -> 0.05 over 1e5 steps, batch 64, training start 64, memory 1e6,
/// mean success bound 1.
struct TrainConfig {
    double mean_success_bound{1.0};
    double gamma{0.99};
    std::uint64_t sync_target_steps{2000};
    double learning_rate{0.00025};
    double epsilon_start{1.0};
    std::uint64_t epsilon_max_steps{100000};
    double epsilon_end{0.05};
    int batch_size{64};
    std::size_t training_start{64};
    std::size_t memory_size{1000000};
    std::uint64_t step_budget{300000};  // hard stop backing the convergence loop
    int success_window{100};
    int checkpoint_interval{200};  // episodes between periodic checkpoints, 0 = off
};

/// Linear exploration schedule: max(eps_min, 1 - t/t_max).
double epsilon_at(std::uint64_t t, std::uint64_t t_max = 100000, double eps_min = 0.05);

/// Mutable training-loop state.
struct TrainState {
    std::uint64_t t{0};
    double epsilon{1.0};
    std::deque<bool> outcomes;  // success flags of the most recent episodes
    int episodes{0};
    double episode_return{0.0};
    int episode_steps{0};
    std::vector<float> current_obs;

    double mean_success(int window) const;
};

/// Regression targets: y = r for terminal transitions, otherwise
/// r + gamma * max_a Q_target(s', a).
std::vector<double> bellman_targets(const ReplayBuffer& buffer,
                                    const std::vector<std::size_t>& batch,
                                    const QNetwork& target_net, double gamma);

struct PreStepResult {
    int action{0};
    double reward{0.0};
    bool episode_ended{false};
    EpisodeEvent event{EpisodeEvent::None};
    Pose pose_after;              // robot pose produced by the action
    std::uint64_t obs_digest{0};  // digest of the post-action observation
    // filled when episode_ended
    int episode_steps{0};
    double episode_return{0.0};
};

/// Simulation half of the loop: epsilon-greedy action (greedy uses the
/// evaluation-mode forward), one environment step, transition insert, env
/// reset on episode end, t incremented.
PreStepResult pre_step(Environment& env, const QNetwork& net, ReplayBuffer& buffer,
                       TrainState& state, RngStream& rng);

/// Learning half: once the buffer holds training_start transitions, sample a
/// uniform batch, regress the chosen-action Q values onto the Bellman
/// targets with one Adam step. Every sync_target_steps global steps the
/// target network is replaced by a copy of the online network; epsilon is
/// recomputed from t.
void post_step(QNetwork& net, QNetwork& target_net, const ReplayBuffer& buffer,
               TrainState& state, AdamState& adam, const TrainConfig& cfg, RngStream& rng);

struct EpisodeSummary {
    int episode{0};
    int steps{0};
    double episode_return{0.0};
    EpisodeEvent outcome{EpisodeEvent::None};
    double epsilon{1.0};
    double mean_success{0.0};
    std::uint64_t t{0};
};

struct StepRecord {
    int episode{0};
    int step{0};
    Pose pose;
    int action{0};
    double reward{0.0};
    EpisodeEvent event{EpisodeEvent::None};
    std::uint64_t scan_digest{0};
};

using EpisodeHook = std::function<void(const EpisodeSummary&)>;
using StepHook = std::function<void(const StepRecord&)>;
using CheckpointHook = std::function<void(int episode, const QNetwork&, const AdamState&)>;

struct TrainResult {
    QNetwork net;
    QNetwork target;
    AdamState adam;
    TrainState state;
    bool converged{false};  // stopped via the mean-success bound
};

/// FNV-1a digest over the observation vector (replay integrity checks).
std::uint64_t observation_digest(const std::vector<float>& obs);

/// Alternate pre_step/post_step until the mean success over the last
/// success_window episodes reaches the bound or the step budget runs out.
TrainResult train_loop(const TrainConfig& cfg, Environment& env, QNetwork net,
                       std::uint64_t seed, const EpisodeHook& on_episode = nullptr,
                       const StepHook& on_step = nullptr,
                       const CheckpointHook& on_checkpoint = nullptr);

}  // namespace arena2d
