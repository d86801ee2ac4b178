#pragma once

#include <cstdint>
#include <json.hpp>
#include <map>
#include <string>
#include <string_view>

namespace swarm {

// JSON-lines replay. Line 1 is a header record, then one record per tick in
// which anything happened (strictly increasing "tick"), then a result record.
class ReplayWriter {
public:
    void header(nlohmann::json h);
    void tick(int tick, nlohmann::json record);  // record gains "tick"; empty records are skipped
    void result(nlohmann::json r);

    const std::string& text() const { return text_; }
    std::uint64_t hash() const;

private:
    void line(const nlohmann::json& j);
    std::string text_;
    int last_tick_ = -1;
};

std::uint64_t replay_hash(std::string_view replay_text);
std::string hex64(std::uint64_t v);

// Train and Attack counts keyed "Train Zergling", "Attack Zerg units",
// re-derived from the canonical command lines stored in a replay.
std::map<std::string, int> recount_commands(std::string_view replay_text);

}  // namespace swarm
