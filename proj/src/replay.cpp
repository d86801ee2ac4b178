#include "swarm/replay.hpp"

#include <cstdio>

#include "swarm/command.hpp"
#include "swarm/error.hpp"
#include "swarm/hash.hpp"

namespace swarm {

void ReplayWriter::line(const nlohmann::json& j) {
    text_ += j.dump();
    text_ += '\n';
}

void ReplayWriter::header(nlohmann::json h) {
    h["type"] = "header";
    line(h);
}

void ReplayWriter::tick(int tick, nlohmann::json record) {
    if (record.empty()) return;
    if (tick <= last_tick_) throw Error("replay-order", "tick records must strictly increase");
    last_tick_ = tick;
    record["tick"] = tick;
    record["type"] = "tick";
    line(record);
}

void ReplayWriter::result(nlohmann::json r) {
    r["type"] = "result";
    line(r);
}

std::uint64_t ReplayWriter::hash() const { return replay_hash(text_); }

std::uint64_t replay_hash(std::string_view replay_text) { return fnv1a64(replay_text); }

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::map<std::string, int> recount_commands(std::string_view replay_text) {
    std::map<std::string, int> counts;
    std::size_t pos = 0;
    while (pos < replay_text.size()) {
        std::size_t nl = replay_text.find('\n', pos);
        std::string_view ln = replay_text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? replay_text.size() : nl + 1;
        if (ln.empty()) continue;
        auto j = nlohmann::json::parse(ln);
        if (!j.contains("commands")) continue;
        for (const auto& c : j["commands"]) {
            if (!c.contains("canonical")) continue;
            if (auto key = frequency_key(parse_command(c["canonical"].get<std::string>()))) ++counts[*key];
        }
    }
    return counts;
}

}  // namespace swarm
