#include "swarm/swarm_c.h"

#include <cstring>
#include <json.hpp>

#include "swarm/command.hpp"
#include "swarm/error.hpp"
#include "swarm/harness.hpp"
#include "swarm/replay.hpp"

struct swarm_config {
    swarm::MatchConfig match;
    int matches = 1;
};

struct swarm_result {
    swarm::SeriesReport report;
    std::vector<std::string> replays;
    std::string csv, json, frequency;
};

namespace {

thread_local std::string g_error = "";
thread_local std::string g_code = "";

swarm_status fail(swarm_status st, std::string code, std::string msg) {
    g_code = std::move(code);
    g_error = std::move(msg);
    return st;
}

swarm_status status_for(const std::string& code) {
    if (code == "brain-unavailable") return SWARM_E_BRAIN_UNAVAILABLE;
    if (code == "io") return SWARM_E_IO;
    if (code == "malformed-line" || code == "unknown-verb" || code == "unknown-kind" || code == "unparseable-plan")
        return SWARM_E_PARSE;
    return SWARM_E_CONFIG;
}

template <typename F>
swarm_status guarded(F&& f) {
    try {
        return f();
    } catch (const swarm::Error& e) {
        return fail(status_for(e.code()), e.code(), e.what());
    } catch (const nlohmann::json::exception& e) {
        return fail(SWARM_E_CONFIG, "bad-json", e.what());
    } catch (const std::exception& e) {
        return fail(SWARM_E_INTERNAL, "internal", e.what());
    } catch (...) {
        return fail(SWARM_E_INTERNAL, "internal", "unknown failure");
    }
}

int to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long n = std::stoll(v, &used);
        if (used != v.size() || n < 0 || n > 1'000'000'000) throw std::invalid_argument(v);
        return static_cast<int>(n);
    } catch (const std::exception&) {
        throw swarm::Error("bad-value", key + " expects a non-negative integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "1" || v == "true" || v == "on") return true;
    if (v == "0" || v == "false" || v == "off") return false;
    throw swarm::Error("bad-value", key + " expects 0 or 1, got '" + v + "'");
}

void set_key(swarm_config& c, const std::string& key, const std::string& v) {
    auto& m = c.match;
    if (key == "difficulty") m.difficulty = swarm::parse_difficulty(v);
    else if (key == "seed") {
        try {
            std::size_t used = 0;
            m.seed = std::stoull(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
        } catch (const std::exception&) {
            throw swarm::Error("bad-value", "seed expects an unsigned integer, got '" + v + "'");
        }
    } else if (key == "brain") m.brain = v;
    else if (key == "latency") m.latency = swarm::LatencyProfile::parse(v);
    else if (key == "matches") {
        c.matches = to_int(key, v);
        if (c.matches < 1) throw swarm::Error("bad-value", "matches must be at least 1");
    } else if (key == "max_ticks") m.max_ticks = to_int(key, v);
    else if (key == "max_minutes") m.max_ticks = to_int(key, v) * 60;
    else if (key == "map") m.map_file = v;
    else if (key == "out") m.out_dir = v;
    else if (key == "model") m.model = v;
    else if (key == "timeout_ms") m.timeout_ms = to_int(key, v);
    else if (key == "memory") {
        m.memory_capacity = static_cast<std::size_t>(to_int(key, v));
        if (m.memory_capacity < 1) throw swarm::Error("bad-value", "memory must be at least 1");
    } else if (key == "reflex") m.reflex_enabled = to_bool(key, v);
    else if (key == "brain_enabled") m.brain_enabled = to_bool(key, v);
    else throw swarm::Error("unknown-key", "unknown configuration key '" + key + "'");
}

}  // namespace

extern "C" {

const char* swarm_version(void) { return "0.1.0"; }
const char* swarm_last_error(void) { return g_error.c_str(); }
const char* swarm_last_error_code(void) { return g_code.c_str(); }

swarm_status swarm_config_new(swarm_config** out) {
    if (!out) return fail(SWARM_E_INVALID, "null", "out is NULL");
    return guarded([&] {
        *out = new swarm_config();
        return SWARM_OK;
    });
}

void swarm_config_free(swarm_config* cfg) { delete cfg; }

swarm_status swarm_config_set(swarm_config* cfg, const char* key, const char* value) {
    if (!cfg || !key || !value) return fail(SWARM_E_INVALID, "null", "NULL argument");
    return guarded([&] {
        swarm_config copy = *cfg;
        set_key(copy, key, value);
        *cfg = std::move(copy);
        return SWARM_OK;
    });
}

swarm_status swarm_config_load_json(swarm_config* cfg, const char* json_text) {
    if (!cfg || !json_text) return fail(SWARM_E_INVALID, "null", "NULL argument");
    return guarded([&] {
        auto j = nlohmann::json::parse(json_text);
        if (!j.is_object()) throw swarm::Error("bad-config", "configuration must be a JSON object");
        swarm_config copy = *cfg;
        for (const auto& [k, v] : j.items()) {
            std::string text;
            if (v.is_string()) text = v.get<std::string>();
            else if (v.is_boolean()) text = v.get<bool>() ? "1" : "0";
            else if (v.is_number_unsigned()) text = std::to_string(v.get<std::uint64_t>());
            else if (v.is_number_integer()) text = std::to_string(v.get<std::int64_t>());
            else throw swarm::Error("bad-value", "unsupported value for '" + k + "'");
            set_key(copy, k, text);
        }
        *cfg = std::move(copy);
        return SWARM_OK;
    });
}

swarm_status swarm_run(const swarm_config* cfg, swarm_result** out) {
    if (!cfg || !out) return fail(SWARM_E_INVALID, "null", "NULL argument");
    *out = nullptr;
    return guarded([&] {
        auto r = std::make_unique<swarm_result>();
        r->report = swarm::run_series(cfg->match, cfg->matches, &r->replays);
        r->csv = swarm::series_csv(r->report);
        r->json = swarm::series_json(r->report);
        r->frequency = swarm::frequency_table(r->report);
        if (!cfg->match.out_dir.empty()) swarm::export_series(r->report, cfg->match.out_dir);
        bool aborted = false;
        for (const auto& m : r->report.matches) aborted = aborted || m.result == swarm::MatchResult::Aborted;
        *out = r.release();
        if (aborted) return fail(SWARM_E_BRAIN_UNAVAILABLE, "brain-unavailable", "a match was aborted: brain unavailable");
        return SWARM_OK;
    });
}

void swarm_result_free(swarm_result* r) { delete r; }

int swarm_result_matches(const swarm_result* r) { return r ? static_cast<int>(r->report.matches.size()) : 0; }
int swarm_result_wins(const swarm_result* r) { return r ? r->report.wins : 0; }
double swarm_result_mean_duration(const swarm_result* r) { return r ? r->report.mean_duration_ticks : 0.0; }
const char* swarm_result_csv(const swarm_result* r) { return r ? r->csv.c_str() : ""; }
const char* swarm_result_json(const swarm_result* r) { return r ? r->json.c_str() : ""; }
const char* swarm_result_frequency(const swarm_result* r) { return r ? r->frequency.c_str() : ""; }

const char* swarm_result_replay(const swarm_result* r, int index) {
    if (!r || index < 0 || index >= static_cast<int>(r->replays.size())) return "";
    return r->replays[static_cast<std::size_t>(index)].c_str();
}

swarm_status swarm_result_match(const swarm_result* r, int index, const char** outcome, int* duration_ticks,
                                uint64_t* replay_hash) {
    if (!r || index < 0 || index >= static_cast<int>(r->report.matches.size()))
        return fail(SWARM_E_INVALID, "bad-index", "match index out of range");
    const auto& m = r->report.matches[static_cast<std::size_t>(index)];
    if (outcome) *outcome = swarm::match_result_name(m.result).data();
    if (duration_ticks) *duration_ticks = m.duration_ticks;
    if (replay_hash) *replay_hash = m.replay_hash;
    return SWARM_OK;
}

swarm_status swarm_result_export(const swarm_result* r, const char* dir) {
    if (!r || !dir) return fail(SWARM_E_INVALID, "null", "NULL argument");
    return guarded([&] {
        swarm::export_series(r->report, dir);
        for (std::size_t i = 0; i < r->replays.size(); ++i)
            swarm::export_replay(r->replays[i],
                                 std::string(dir) + "/replay_" + std::to_string(r->report.matches[i].seed) + ".jsonl");
        return SWARM_OK;
    });
}

swarm_status swarm_parse_command(const char* line, char* buf, size_t buflen) {
    if (!line || (!buf && buflen)) return fail(SWARM_E_INVALID, "null", "NULL argument");
    return guarded([&] {
        std::string canonical = swarm::render_command(swarm::parse_command(line));
        if (buflen) {
            std::size_t n = std::min(buflen - 1, canonical.size());
            std::memcpy(buf, canonical.data(), n);
            buf[n] = '\0';
        }
        return SWARM_OK;
    });
}

uint64_t swarm_replay_hash(const char* replay_text, size_t len) {
    if (!replay_text) return 0;
    return swarm::replay_hash(std::string_view(replay_text, len));
}

}  // extern "C"
