#include "arena2d/trainer.hpp"

#include <algorithm>
#include <cstring>

namespace arena2d {

double epsilon_at(std::uint64_t t, std::uint64_t t_max, double eps_min) {
    const double decayed = 1.0 - static_cast<double>(t) / static_cast<double>(t_max);
    return std::max(eps_min, decayed);
}

double TrainState::mean_success(int window) const {
    if (outcomes.empty()) {
        return 0.0;
    }
    const std::size_t n = std::min(outcomes.size(), static_cast<std::size_t>(window));
    std::size_t hits = 0;
    for (std::size_t i = outcomes.size() - n; i < outcomes.size(); ++i) {
        if (outcomes[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(n);
}

std::vector<double> bellman_targets(const ReplayBuffer& buffer,
                                    const std::vector<std::size_t>& batch,
                                    const QNetwork& target_net, double gamma) {
    if (batch.empty()) {
        throw std::invalid_argument("bellman_targets: empty batch");
    }
    const int obs_size = static_cast<int>(buffer.at(batch[0]).s_next.size());
    Tensor next_inputs;
    next_inputs.shape = {static_cast<int>(batch.size()), obs_size};
    next_inputs.data.reserve(batch.size() * static_cast<std::size_t>(obs_size));
    for (std::size_t idx : batch) {
        const Transition& tr = buffer.at(idx);
        next_inputs.data.insert(next_inputs.data.end(), tr.s_next.begin(), tr.s_next.end());
    }
    RngStream unused(0);
    const Tensor q_next = forward(target_net, next_inputs, false, unused);
    const int n_out = target_net.output_size();

    std::vector<double> targets(batch.size());
    for (std::size_t b = 0; b < batch.size(); ++b) {
        const Transition& tr = buffer.at(batch[b]);
        if (tr.done) {
            targets[b] = tr.r;
        } else {
            double best = q_next.data[b * static_cast<std::size_t>(n_out)];
            for (int a = 1; a < n_out; ++a) {
                best = std::max(best,
                                static_cast<double>(
                                    q_next.data[b * static_cast<std::size_t>(n_out) +
                                                static_cast<std::size_t>(a)]));
            }
            targets[b] = tr.r + gamma * best;
        }
    }
    return targets;
}

PreStepResult pre_step(Environment& env, const QNetwork& net, ReplayBuffer& buffer,
                       TrainState& state, RngStream& rng) {
    PreStepResult out;
    out.action = (rng.uniform() < state.epsilon) ? rng.uniform_int(kNumActions)
                                                 : argmax_action(net, state.current_obs);

    const StepResult step = env.step(out.action);
    out.reward = step.reward;
    out.event = step.event;
    out.pose_after = env.world().robot;

    Transition tr;
    tr.s = state.current_obs;
    tr.s_next = step.next_observation.flatten();
    tr.a = out.action;
    tr.r = static_cast<float>(step.reward);
    tr.done = step.done;
    out.obs_digest = observation_digest(tr.s_next);
    buffer.insert(std::move(tr));

    state.episode_return += step.reward;
    state.episode_steps += 1;

    if (step.done) {
        out.episode_ended = true;
        out.episode_steps = state.episode_steps;
        out.episode_return = state.episode_return;
        state.outcomes.push_back(step.event == EpisodeEvent::GoalReached);
        while (state.outcomes.size() > 1024) state.outcomes.pop_front();
        state.episodes += 1;
        state.episode_return = 0.0;
        state.episode_steps = 0;
        state.current_obs = env.reset().flatten();
    } else {
        state.current_obs = step.next_observation.flatten();
    }
    state.t += 1;
    return out;
}

void post_step(QNetwork& net, QNetwork& target_net, const ReplayBuffer& buffer,
               TrainState& state, AdamState& adam, const TrainConfig& cfg, RngStream& rng) {
    if (buffer.size() >= cfg.training_start) {
        const std::vector<std::size_t> batch =
            buffer.sample_indices(static_cast<std::size_t>(cfg.batch_size), rng);
        const std::vector<double> targets = bellman_targets(buffer, batch, target_net, cfg.gamma);

        const int obs_size = static_cast<int>(buffer.at(batch[0]).s.size());
        Tensor inputs;
        inputs.shape = {static_cast<int>(batch.size()), obs_size};
        inputs.data.reserve(batch.size() * static_cast<std::size_t>(obs_size));
        std::vector<int> actions;
        actions.reserve(batch.size());
        for (std::size_t idx : batch) {
            const Transition& tr = buffer.at(idx);
            inputs.data.insert(inputs.data.end(), tr.s.begin(), tr.s.end());
            actions.push_back(tr.a);
        }

        const LossResult loss = mse_loss_and_grad(net, inputs, actions, targets, true, rng);
        adam_step(net, loss.grads, adam);
    }

    if (cfg.sync_target_steps > 0 && state.t % cfg.sync_target_steps == 0) {
        target_net = sync_target(net);
    }
    state.epsilon = epsilon_at(state.t, cfg.epsilon_max_steps, cfg.epsilon_end);
}

std::uint64_t observation_digest(const std::vector<float>& obs) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (float v : obs) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 4; ++i) {
            h ^= (bits >> (8 * i)) & 0xFF;
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

TrainResult train_loop(const TrainConfig& cfg, Environment& env, QNetwork net,
                       std::uint64_t seed, const EpisodeHook& on_episode,
                       const StepHook& on_step, const CheckpointHook& on_checkpoint) {
    TrainResult result;
    result.net = std::move(net);
    result.target = sync_target(result.net);
    result.adam = AdamState::for_network(result.net, cfg.learning_rate);

    RngStream rng(seed);
    ReplayBuffer buffer(cfg.memory_size);

    TrainState& state = result.state;
    state.current_obs = env.reset().flatten();
    state.epsilon = epsilon_at(0, cfg.epsilon_max_steps, cfg.epsilon_end);

    int episode_step = 0;
    while (state.t < cfg.step_budget) {
        const int episode_index = state.episodes;
        const PreStepResult pre = pre_step(env, result.net, buffer, state, rng);
        ++episode_step;

        if (on_step) {
            StepRecord rec;
            rec.episode = episode_index;
            rec.step = episode_step;
            rec.pose = pre.pose_after;
            rec.action = pre.action;
            rec.reward = pre.reward;
            rec.event = pre.event;
            rec.scan_digest = pre.obs_digest;
            on_step(rec);
        }

        post_step(result.net, result.target, buffer, state, result.adam, cfg, rng);

        if (pre.episode_ended) {
            episode_step = 0;
            const double mean = state.mean_success(cfg.success_window);
            if (on_episode) {
                EpisodeSummary summary;
                summary.episode = episode_index;
                summary.steps = pre.episode_steps;
                summary.episode_return = pre.episode_return;
                summary.outcome = pre.event;
                summary.epsilon = state.epsilon;
                summary.mean_success = mean;
                summary.t = state.t;
                on_episode(summary);
            }
            if (on_checkpoint && cfg.checkpoint_interval > 0 &&
                state.episodes % cfg.checkpoint_interval == 0) {
                on_checkpoint(state.episodes, result.net, result.adam);
            }
            if (mean >= cfg.mean_success_bound) {
                result.converged = true;
                break;
            }
        }
    }
    return result;
}

}  // namespace arena2d
