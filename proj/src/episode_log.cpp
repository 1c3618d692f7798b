#include "arena2d/episode_log.hpp"

#include <zlib.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace arena2d {

namespace {

bool has_gz_suffix(const std::string& path) {
    return path.size() >= 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
}

std::string digest_hex(std::uint64_t digest) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

}  // namespace

struct LineWriter::Impl {
    std::ofstream file;
    gzFile gz{nullptr};
};

LineWriter::LineWriter(const std::string& path) : impl_(std::make_unique<Impl>()) {
    if (has_gz_suffix(path)) {
        impl_->gz = gzopen(path.c_str(), "wb");
        if (!impl_->gz) {
            throw std::runtime_error("cannot open log for writing: " + path);
        }
    } else {
        impl_->file.open(path, std::ios::binary);
        if (!impl_->file) {
            throw std::runtime_error("cannot open log for writing: " + path);
        }
    }
}

LineWriter::~LineWriter() { close(); }

void LineWriter::write_line(const std::string& line) {
    if (impl_->gz) {
        gzwrite(impl_->gz, line.data(), static_cast<unsigned>(line.size()));
        gzwrite(impl_->gz, "\n", 1);
    } else {
        impl_->file << line << '\n';
    }
}

void LineWriter::close() {
    if (impl_->gz) {
        gzclose(impl_->gz);
        impl_->gz = nullptr;
    }
    if (impl_->file.is_open()) {
        impl_->file.close();
    }
}

struct LineReader::Impl {
    std::ifstream file;
    gzFile gz{nullptr};
};

LineReader::LineReader(const std::string& path) : impl_(std::make_unique<Impl>()) {
    if (has_gz_suffix(path)) {
        impl_->gz = gzopen(path.c_str(), "rb");
        if (!impl_->gz) {
            throw std::runtime_error("cannot open log: " + path);
        }
    } else {
        impl_->file.open(path, std::ios::binary);
        if (!impl_->file) {
            throw std::runtime_error("cannot open log: " + path);
        }
    }
}

LineReader::~LineReader() {
    if (impl_->gz) gzclose(impl_->gz);
}

bool LineReader::next_line(std::string& line) {
    if (impl_->gz) {
        line.clear();
        char buf[4096];
        while (true) {
            if (gzgets(impl_->gz, buf, sizeof(buf)) == nullptr) {
                return !line.empty();
            }
            line += buf;
            if (!line.empty() && line.back() == '\n') {
                line.pop_back();
                return true;
            }
        }
    }
    return static_cast<bool>(std::getline(impl_->file, line));
}

std::string header_line(const std::string& mode, const std::string& config_text) {
    nlohmann::json j;
    j["type"] = "header";
    j["version"] = kLogFormatVersion;
    j["mode"] = mode;
    j["config"] = config_text;
    return j.dump();
}

std::string reset_line(int episode, const Environment& env) {
    const Pose& pose = env.world().robot;
    nlohmann::json j;
    j["type"] = "reset";
    j["episode"] = episode;
    j["x"] = pose.x;
    j["y"] = pose.y;
    j["theta"] = pose.theta;
    j["goal_x"] = env.world().goal.position.x;
    j["goal_y"] = env.world().goal.position.y;
    j["scan_digest"] = digest_hex(observation_digest(env.observation().flatten()));
    return j.dump();
}

std::string step_line(const StepRecord& rec) {
    nlohmann::json j;
    j["type"] = "step";
    j["episode"] = rec.episode;
    j["t"] = rec.step;
    j["action"] = rec.action;
    j["x"] = rec.pose.x;
    j["y"] = rec.pose.y;
    j["theta"] = rec.pose.theta;
    j["reward"] = rec.reward;
    j["event"] = to_string(rec.event);
    j["scan_digest"] = digest_hex(rec.scan_digest);
    return j.dump();
}

std::string episode_line(const EpisodeSummary& summary) {
    nlohmann::json j;
    j["episode"] = summary.episode;
    j["steps"] = summary.steps;
    j["return"] = summary.episode_return;
    j["outcome"] = to_string(summary.outcome);
    j["epsilon"] = summary.epsilon;
    j["mean_success"] = summary.mean_success;
    return j.dump();
}

}  // namespace arena2d
