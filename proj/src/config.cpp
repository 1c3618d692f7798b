#include "arena2d/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace arena2d {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: bad numeric value for " + key + ": " + value);
    }
}

long long parse_ll(const std::string& key, const std::string& value) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config: bad integer value for " + key + ": " + value);
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw std::invalid_argument("config: bad unsigned value for " + key + ": " + value);
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config: bad boolean value for " + key + ": " + value);
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        out.push_back(static_cast<int>(parse_ll(key, item)));
    }
    if (out.empty()) {
        throw std::invalid_argument("config: empty list for " + key);
    }
    return out;
}

std::string format_int_list(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(v[i]);
    }
    return out;
}

struct KeyHandler {
    std::function<void(RunConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
};

const std::map<std::string, KeyHandler>& key_handlers() {
    static const std::map<std::string, KeyHandler> handlers = [] {
        std::map<std::string, KeyHandler> h;
        auto add = [&h](const std::string& key,
                        std::function<void(RunConfig&, const std::string&, const std::string&)> set,
                        std::function<std::string(const RunConfig&)> get) {
            h.emplace(key, KeyHandler{std::move(set), std::move(get)});
        };

        add("run.name",
            [](RunConfig& c, const std::string&, const std::string& v) { c.name = v; },
            [](const RunConfig& c) { return c.name; });
        add("run.seed",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.seed = parse_u64(k, v);
            },
            [](const RunConfig& c) { return std::to_string(c.seed); });
        add("run.out",
            [](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = v; },
            [](const RunConfig& c) { return c.out_dir; });

        add("stage.kind",
            [](RunConfig& c, const std::string&, const std::string& v) {
                c.stage.kind = stage_kind_from_string(v);
            },
            [](const RunConfig& c) { return to_string(c.stage.kind); });
        add("stage.arena_size",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage.arena_size = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage.arena_size); });
        add("stage.n_static",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage.n_static = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.stage.n_static); });
        add("stage.n_dynamic",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage.n_dynamic = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.stage.n_dynamic); });
        add("stage.n_humans",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage.n_humans = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.stage.n_humans); });
        add("stage.seed",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage.seed = parse_u64(k, v);
            },
            [](const RunConfig& c) { return std::to_string(c.stage.seed); });
        add("stage.obstacle_speed",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.obstacle_speed = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.obstacle_speed); });
        add("stage.stop_rate",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.human_stop_rate = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.human_stop_rate); });
        add("stage.stop_duration",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.human_stop_duration = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.human_stop_duration); });
        add("stage.dynamic_radius",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.dynamic_radius = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.dynamic_radius); });
        add("stage.static_min_extent",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.static_min_extent = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.static_min_extent); });
        add("stage.static_max_extent",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.static_max_extent = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.static_max_extent); });
        add("stage.goal_radius",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.goal_radius = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.goal_radius); });
        add("stage.spawn_clearance",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.spawn_clearance = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.spawn_clearance); });
        add("stage.wall_margin",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.stage_params.wall_margin = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.stage_params.wall_margin); });

        add("env.dt",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.dt = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.env.dt); });
        add("env.n_beams",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.n_beams = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.env.n_beams); });
        add("env.max_range",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.max_range = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.env.max_range); });
        add("env.robot_radius",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.robot_radius = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.env.robot_radius); });
        add("env.noise_sigma",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.noise_sigma = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.env.noise_sigma); });
        add("env.human_min_dist",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.human_min_dist = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.env.human_min_dist); });
        add("env.robot_min_dist",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.robot_min_dist = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.env.robot_min_dist); });
        add("env.heading_threshold_deg",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.heading_threshold_deg = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.heading_threshold_deg); });
        add("env.max_episode_steps",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.max_episode_steps = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.env.max_episode_steps); });

        add("obs.goal_slot",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.goal_slot = parse_bool(k, v);
            },
            [](const RunConfig& c) { return c.env.goal_slot ? "true" : "false"; });
        add("obs.scale_ranges",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.env.scale_ranges = parse_bool(k, v);
            },
            [](const RunConfig& c) { return c.env.scale_ranges ? "true" : "false"; });

        add("net.hidden",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.hidden_sizes = parse_int_list(k, v);
            },
            [](const RunConfig& c) { return format_int_list(c.hidden_sizes); });
        add("net.dropout",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.dropout = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.dropout); });

        add("train.mean_success_bound",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.mean_success_bound = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.train.mean_success_bound); });
        add("train.num_actions",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                if (parse_ll(k, v) != 7) {
                    throw std::invalid_argument("config: train.num_actions is fixed at 7");
                }
            },
            [](const RunConfig&) { return std::string("7"); });
        add("train.gamma",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.gamma = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.train.gamma); });
        add("train.sync_target_steps",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.sync_target_steps = parse_u64(k, v);
            },
            [](const RunConfig& c) { return std::to_string(c.train.sync_target_steps); });
        add("train.learning_rate",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.learning_rate = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.train.learning_rate); });
        add("train.epsilon_start",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.epsilon_start = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.train.epsilon_start); });
        add("train.epsilon_max_steps",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.epsilon_max_steps = parse_u64(k, v);
            },
            [](const RunConfig& c) { return std::to_string(c.train.epsilon_max_steps); });
        add("train.epsilon_end",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.epsilon_end = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.train.epsilon_end); });
        add("train.batch_size",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.batch_size = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.train.batch_size); });
        add("train.training_start",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.training_start = static_cast<std::size_t>(parse_u64(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.train.training_start); });
        add("train.memory_size",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.memory_size = static_cast<std::size_t>(parse_u64(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.train.memory_size); });
        add("train.step_budget",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.step_budget = parse_u64(k, v);
            },
            [](const RunConfig& c) { return std::to_string(c.train.step_budget); });
        add("train.success_window",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.success_window = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.train.success_window); });
        add("train.checkpoint_interval",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.train.checkpoint_interval = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.train.checkpoint_interval); });

        add("eval.runs_per_goal",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.eval_runs_per_goal = static_cast<int>(parse_ll(k, v));
            },
            [](const RunConfig& c) { return std::to_string(c.eval_runs_per_goal); });
        add("eval.timeout_s",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.eval_timeout_s = parse_double(k, v);
            },
            [](const RunConfig& c) { return format_double(c.eval_timeout_s); });

        add("log.gzip",
            [](RunConfig& c, const std::string& k, const std::string& v) {
                c.gzip_logs = parse_bool(k, v);
            },
            [](const RunConfig& c) { return c.gzip_logs ? "true" : "false"; });

        return h;
    }();
    return handlers;
}

}  // namespace

std::map<std::string, std::string> parse_key_value_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " is not `key = value`");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config: empty key on line " + std::to_string(line_no));
        }
        out[key] = value;
    }
    return out;
}

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_key_value_text(buffer.str());
}

EnvConfig RunConfig::resolved_env() const {
    EnvConfig cfg = env;
    cfg.heading_threshold = heading_threshold_deg * kPi / 180.0;
    cfg.semantic_slots = (stage.kind == StageKind::Semantic);
    return cfg;
}

int RunConfig::observation_size() const { return resolved_env().observation_size(); }

void RunConfig::apply(const std::string& key, const std::string& value) {
    const auto& handlers = key_handlers();
    const auto it = handlers.find(key);
    if (it == handlers.end()) {
        throw std::invalid_argument("config: unknown key: " + key);
    }
    it->second.set(*this, key, value);
}

std::string RunConfig::to_text() const {
    std::string out;
    for (const auto& [key, handler] : key_handlers()) {
        out += key;
        out += " = ";
        out += handler.get(*this);
        out += "\n";
    }
    return out;
}

RunConfig RunConfig::from_text(const std::string& text) {
    RunConfig cfg;
    for (const auto& [key, value] : parse_key_value_text(text)) {
        cfg.apply(key, value);
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    RunConfig cfg;
    for (const auto& [key, value] : parse_key_value_file(path)) {
        cfg.apply(key, value);
    }
    return cfg;
}

StageSpec default_stage(StageKind kind) {
    StageSpec spec;
    spec.kind = kind;
    switch (kind) {
        case StageKind::Static:
            spec.n_static = 3;
            spec.n_dynamic = 0;
            spec.n_humans = 0;
            break;
        case StageKind::Dynamic:
            spec.n_static = 3;
            spec.n_dynamic = 2;
            spec.n_humans = 0;
            break;
        case StageKind::Semantic:
            spec.n_static = 3;
            spec.n_dynamic = 1;
            spec.n_humans = 1;
            break;
    }
    return spec;
}

StageSpec load_stage_file(const std::string& path) {
    StageSpec spec;
    bool kind_seen = false;
    for (const auto& [key, value] : parse_key_value_file(path)) {
        if (key == "kind") {
            spec.kind = stage_kind_from_string(value);
            kind_seen = true;
        } else if (key == "arena_size") {
            spec.arena_size = parse_double(key, value);
        } else if (key == "n_static") {
            spec.n_static = static_cast<int>(parse_ll(key, value));
        } else if (key == "n_dynamic") {
            spec.n_dynamic = static_cast<int>(parse_ll(key, value));
        } else if (key == "n_humans") {
            spec.n_humans = static_cast<int>(parse_ll(key, value));
        } else if (key == "seed") {
            spec.seed = parse_u64(key, value);
        } else {
            throw std::invalid_argument("stage file: unknown key: " + key);
        }
    }
    if (!kind_seen) {
        throw std::invalid_argument("stage file: missing `kind`");
    }
    spec.validate();
    return spec;
}

std::vector<Vec2> load_goal_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("goal list: cannot open " + path);
    }
    std::vector<Vec2> goals;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        double x = 0.0, y = 0.0;
        if (!(ls >> x >> y)) {
            throw std::invalid_argument("goal list: bad line " + std::to_string(line_no));
        }
        goals.push_back({x, y});
    }
    if (goals.empty()) {
        throw std::invalid_argument("goal list: no goals in " + path);
    }
    return goals;
}

}  // namespace arena2d
