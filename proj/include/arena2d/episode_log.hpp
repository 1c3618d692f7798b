#pragma once

#include <memory>
#include <string>

#include "arena2d/environment.hpp"
#include "arena2d/trainer.hpp"

namespace arena2d {

/// Line-oriented text sink; gzip-compressed when the path ends in ".gz".
class LineWriter {
public:
    explicit LineWriter(const std::string& path);
    ~LineWriter();
    LineWriter(const LineWriter&) = delete;
    LineWriter& operator=(const LineWriter&) = delete;

    void write_line(const std::string& line);
    void close();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Line-oriented text source; transparently reads gzip files.
class LineReader {
public:
    explicit LineReader(const std::string& path);
    ~LineReader();
    LineReader(const LineReader&) = delete;
    LineReader& operator=(const LineReader&) = delete;

    /// False at end of file.
    bool next_line(std::string& line);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// JSON-Lines step logs. Layout: one header object
/// {"type":"header","version":1,"mode":...,"config":...}, then per episode a
/// reset record followed by step records. Poses and rewards are serialized
/// with round-trip precision so replays can compare exactly.
constexpr int kLogFormatVersion = 1;

std::string header_line(const std::string& mode, const std::string& config_text);
std::string reset_line(int episode, const Environment& env);
std::string step_line(const StepRecord& rec);

/// One training-log line per episode:
/// {"episode", "steps", "return", "outcome", "epsilon", "mean_success"}.
std::string episode_line(const EpisodeSummary& summary);

}  // namespace arena2d
