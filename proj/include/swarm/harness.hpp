#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "swarm/overmind.hpp"
#include "swarm/terran_policy.hpp"

namespace swarm {

struct MatchConfig {
    Difficulty difficulty = Difficulty::VeryEasy;
    std::uint64_t seed = 1;
    std::string brain = "scripted:rush";  // scripted:<id> | replay:<file> | remote:<url>
    LatencyProfile latency = LatencyProfile::parse("gpt-3.5");
    int max_ticks = 1800;
    std::string map_file;  // empty = default layout
    std::string out_dir;   // empty = keep in memory only
    std::string model = "gpt-3.5-turbo";
    int timeout_ms = 30000;
    std::size_t memory_capacity = 1;
    bool brain_enabled = true;
    bool reflex_enabled = true;
};

enum class MatchResult : std::uint8_t { Win, Loss, Draw, Timeout, Aborted };
std::string_view match_result_name(MatchResult r);

struct MatchStats {
    std::uint64_t seed = 0;
    MatchResult result = MatchResult::Timeout;
    int duration_ticks = 0;
    std::map<std::string, int> command_counts;     // frequency_key -> count
    std::map<std::string, int> transition_counts;  // "Drone Gather->Attack" -> count
    std::string loss_cause;                        // parse-failure | economic-collapse | army-loss
    std::string abort_reason;
    int plans_requested = 0;
    int critical_requests = 0;
    int plans_parsed = 0;
    int parse_failures = 0;
    int commands_parsed = 0;
    int commands_dispatched = 0;
    std::optional<int> first_dispatch_tick;
    std::vector<int> plan_request_ticks;
    std::vector<int> plan_delivery_ticks;
    std::uint64_t replay_hash = 0;
};

struct MatchRun {
    MatchStats stats;
    std::string replay;  // JSON lines
};

// Throws Error("bad-brain") and friends for invalid configurations. A remote
// brain failing mid-match ends it as Aborted with abort_reason
// "brain-unavailable".
MatchRun run_match(const MatchConfig& config);

struct SeriesReport {
    MatchConfig config;
    std::vector<MatchStats> matches;
    int wins = 0;
    double win_rate = 0;
    double mean_duration_ticks = 0;
    std::map<std::string, int> command_totals;
    std::map<std::string, double> command_percent;
};

// Seeds config.seed, config.seed + 1, ... Replays are written under
// out_dir when set and appended to `replays` when given.
SeriesReport run_series(const MatchConfig& config, int n, std::vector<std::string>* replays = nullptr);

std::string series_csv(const SeriesReport& r);
std::string series_json(const SeriesReport& r);
std::string frequency_table(const SeriesReport& r);
// stats.csv and report.json into `dir`. Throws Error("io").
void export_series(const SeriesReport& r, const std::string& dir);
void export_replay(const std::string& replay, const std::string& path);

}  // namespace swarm
