#pragma once

#include <map>
#include <string>
#include <vector>

#include "arena2d/environment.hpp"
#include "arena2d/stage.hpp"
#include "arena2d/trainer.hpp"

namespace arena2d {

/// Flat key-value document (lines of `key = value`, `#` comments). Used for
/// run configurations and stage files; unknown keys are rejected so typos
/// do not silently fall back to defaults.
std::map<std::string, std::string> parse_key_value_text(const std::string& text);
std::map<std::string, std::string> parse_key_value_file(const std::string& path);

/// Complete run configuration: stage, environment, network and training
/// hyperparameters plus run bookkeeping. Defaults reproduce the published
/// hyperparameter table.
struct RunConfig {
    std::string name{"drl_static"};
    std::uint64_t seed{1};
    std::string out_dir{"out"};

    StageSpec stage;
    StageParams stage_params;
    EnvConfig env;
    double heading_threshold_deg{30.0};

    std::vector<int> hidden_sizes{256, 128};
    double dropout{0.2};

    TrainConfig train;

    int eval_runs_per_goal{3};
    double eval_timeout_s{60.0};
    bool gzip_logs{false};

    /// EnvConfig with the derived fields filled in (heading threshold in
    /// radians, semantic slots per stage kind).
    EnvConfig resolved_env() const;

    /// Observation width implied by this configuration.
    int observation_size() const;

    /// Apply one `key = value` assignment; throws std::invalid_argument on
    /// unknown keys or unparsable values.
    void apply(const std::string& key, const std::string& value);

    /// Canonical resolved snapshot; parsing it back reproduces the config.
    std::string to_text() const;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_text(const std::string& text);
};

/// Stage file: key-value document mirroring the StageSpec fields
/// (kind, arena_size, n_static, n_dynamic, n_humans, seed).
StageSpec load_stage_file(const std::string& path);

/// Defaults for a named stage kind (obstacle counts per stage).
StageSpec default_stage(StageKind kind);

/// Goal list file: one `x y` pair per line, `#` comments allowed.
std::vector<Vec2> load_goal_list(const std::string& path);

}  // namespace arena2d
