#include <algorithm>
#include <json.hpp>
#include <regex>

#include "swarm/error.hpp"
#include "swarm/overmind.hpp"
#include "swarm/perception.hpp"

namespace swarm {

namespace {

// Text between "<header>\n{\n" and the next "\n}".
std::string block_after(std::string_view prompt, std::string_view header) {
    auto h = prompt.find(header);
    if (h == std::string_view::npos) return {};
    auto open = prompt.find("{\n", h);
    if (open == std::string_view::npos) return {};
    auto close = prompt.find("\n}", open + 2);
    if (close == std::string_view::npos) return {};
    return std::string(prompt.substr(open + 2, close - open - 2));
}

std::string section_after(std::string_view prompt, std::string_view header, std::string_view end) {
    auto h = prompt.find(header);
    if (h == std::string_view::npos) return {};
    h += header.size();
    auto e = prompt.find(end, h);
    return std::string(prompt.substr(h, e == std::string_view::npos ? std::string_view::npos : e - h));
}

// What a scripted planner reads back out of its prompt.
struct Situation {
    ReportCounts units, buildings, enemy_units, enemy_buildings;
    std::string research;
    std::string memory;
    std::vector<std::pair<EventKind, std::string>> events;  // kind, base

    int count_units(std::string_view kind, std::string_view base = {}, std::string_view phrase = {}) const {
        int n = 0;
        for (const auto& [key, c] : units) {
            const auto& [b, k, p] = key;
            if (k == kind && (base.empty() || b == base) && (phrase.empty() || p.find(phrase) != std::string::npos))
                n += c;
        }
        return n;
    }
    int count_buildings(std::string_view kind, std::string_view base = {}) const {
        int n = 0;
        for (const auto& [key, c] : buildings)
            if (std::get<1>(key) == kind && (base.empty() || std::get<0>(key) == base)) n += c;
        return n;
    }
    bool has_research(std::string_view name) const { return research.find(name) != std::string::npos; }
    int enemy_units_at(std::string_view base) const {
        int n = 0;
        for (const auto& [key, c] : enemy_units)
            if (std::get<0>(key) == base) n += c;
        return n;
    }
    // Enemy base to hit: a remembered town hall first, then any structure.
    std::string enemy_target() const {
        for (const auto& [key, c] : enemy_buildings)
            if (std::get<1>(key) == "Command center" || std::get<1>(key) == "Orbital Command") return std::get<0>(key);
        for (const auto& [key, c] : enemy_buildings) return std::get<0>(key);
        return "B1";
    }
    bool remembers_attack() const { return memory.find("Attack the enemy") != std::string::npos; }
};

Situation read_situation(std::string_view prompt) {
    Situation s;
    s.units = parse_report_block(block_after(prompt, "Your current Units consists of:"));
    s.buildings = parse_report_block(block_after(prompt, "Your current Buildings consists of:"));
    s.research = block_after(prompt, "Your Zerg has developed these technological research:");
    s.enemy_units = parse_report_block(block_after(prompt, "You have detected enemy units in:"));
    s.enemy_buildings = parse_report_block(block_after(prompt, "You have detected enemy buildings in:"));
    s.memory = section_after(prompt, "------Your commands in previous round\n", "\n------");
    static const std::regex event_re(
        R"(detected a group of Terran army (is ready to attack the|is assembling at|at) ([AB][1-8]))");
    std::string critical = section_after(prompt, "Important!!!", "\n\n");
    for (auto it = std::sregex_iterator(critical.begin(), critical.end(), event_re); it != std::sregex_iterator();
         ++it) {
        std::string verb = (*it)[1];
        EventKind k = verb.starts_with("is ready") ? EventKind::UnderAttack
                      : verb.starts_with("is assembling") ? EventKind::EnemyAssembling
                                                          : EventKind::EnemyArmyDetected;
        s.events.emplace_back(k, (*it)[2]);
    }
    return s;
}

// Knobs distinguishing the shipped planner policies (docs/policies.md).
struct PolicyParams {
    std::string name;
    int drone_target;           // drones before the army starts
    bool pool_first;            // no drones until the pool is placed
    const char* army_unit;      // main production
    const char* army_building;  // its tech building ("" = pool only)
    int army_orders;            // army production decisions per round
    int first_wave;             // idle army needed for the first attack
    int reinforce_wave;         // idle army needed once attacking
    int spines;                 // static defence at home
    bool expand;                // second hatchery at A2
    bool speed;                 // zergling speed research
};

const PolicyParams kRush{"rush", 16, true, "Zergling", "", 3, 12, 12, 0, false, false};
const PolicyParams kMacro{"macro", 22, false, "Roach", "Roach Warren", 2, 10, 6, 0, true, false};
const PolicyParams kTurtle{"turtle", 18, false, "Roach", "Roach Warren", 2, 16, 10, 2, false, true};

std::string plural(std::string_view unit) {
    std::string s(unit);
    return s + (s.ends_with("ch") ? "es" : "s");
}

int army_size(const Situation& s, std::string_view base, std::string_view unit) {
    return s.count_units(unit, base, "idling") + s.count_units(unit, base, "attacking");
}

std::vector<std::string> plan_decisions(const PolicyParams& p, const Situation& s) {
    std::vector<std::string> d;
    const std::string home = "A1";

    for (const auto& [kind, base] : s.events)
        if (kind != EventKind::EnemyArmyDetected || base.front() == 'A')
            d.push_back("Defend " + base + " with all Zerg units");

    bool scouted = !s.enemy_buildings.empty();
    if (!scouted && s.count_units("Overlord", {}, "moving") == 0 && s.count_units("Overlord", home) > 0 &&
        s.count_units("Overlord") < 3)
        d.push_back("Send an Overlord to scout the opponent's base B1");

    int drones = s.count_units("Drone");
    bool pool = s.count_buildings("Spawning Pool") > 0;
    if (!pool) {
        d.push_back("Build a Spawning Pool in Hatchery A1");
        if (p.pool_first && drones >= 12) return d;
    }

    int halls = s.count_buildings("Hatchery") + s.count_buildings("Lair") + s.count_buildings("Hive");
    int overlords = s.count_units("Overlord") + s.count_units("Overseer");
    int lings = s.count_units("Zergling");
    int queens = s.count_units("Queen");
    int used = drones + (lings + 1) / 2 + 2 * queens + 2 * s.count_units("Roach") + 2 * s.count_units("Hydralisk");
    int cap = std::min(200, 8 * overlords + 6 * halls);

    if (used + 3 + 2 * halls >= cap && cap < 200) d.push_back("Train an Overlord at A1 to maintain supply");
    if (drones < p.drone_target) {
        d.push_back("Build additional Drones in Hatchery A1");
        if (drones + 4 < p.drone_target) d.push_back("Build additional Drones in Hatchery A1");
    }
    if (pool && queens < halls) d.push_back("Train a Queen from the Hatchery A1 for larva injects");

    if (p.expand && drones >= 16 && halls < 2) d.push_back("Expand to a nearby mineral field A2");
    bool needs_gas = std::string_view(p.army_building).size() > 0 || p.speed;
    if (needs_gas && pool && s.count_buildings("Extractor") == 0) d.push_back("Build an Extractor on the gas geyser A1");
    if (s.count_buildings("Extractor") > 0 && s.count_units("Drone", {}, "gathering gas") < 3)
        d.push_back("Send Drones to gather gas at Extractor1 A1");
    if (pool && std::string_view(p.army_building).size() > 0 && s.count_buildings(p.army_building) == 0)
        d.push_back(std::string("Build a ") + p.army_building + " in Hatchery A1");
    if (p.speed && pool && !s.has_research("Metabolic Boost"))
        d.push_back("Research Metabolic Boost upgrade at the Spawning Pool A1");
    for (int i = 0; i < p.spines && pool; ++i)
        if (s.count_buildings("Spine Crawler", home) < p.spines) d.push_back("Build a Spine Crawler at A1");

    bool tech_ready = std::string_view(p.army_building).empty() ? pool : s.count_buildings(p.army_building) > 0;
    if (tech_ready)
        for (int i = 0; i < p.army_orders; ++i) d.push_back("Train " + plural(p.army_unit) + " at A1");
    else if (pool && p.army_unit != std::string_view("Zergling"))
        d.push_back("Train Zerglings from the Spawning Pool A1");

    int idle_army = army_size(s, home, p.army_unit);
    if (p.army_unit != std::string_view("Zergling")) idle_army += army_size(s, home, "Zergling") / 2;
    int wave = s.remembers_attack() ? p.reinforce_wave : p.first_wave;
    if (idle_army >= wave) d.push_back("Attack the enemy base at " + s.enemy_target() + " with all Zerg units");
    return d;
}

std::string render_overmind_reply(const std::vector<std::string>& decisions, const PolicyParams& p) {
    std::string out = "1. Current Stage of the Match: following the " + p.name + " build.\n";
    out += "8. Based on above analysis, the following actionable decisions can be made:\n{\n";
    for (std::size_t i = 0; i < decisions.size(); ++i)
        out += "'" + std::to_string(i) + "': " + decisions[i] + (i + 1 < decisions.size() ? ",\n" : "\n");
    out += "}\n";
    return out;
}

std::optional<std::string> first_base(const std::string& text) {
    static const std::regex base_re(R"(\b([AB][1-8])\b)");
    std::smatch m;
    if (std::regex_search(text, m, base_re)) return m[1];
    return std::nullopt;
}

// Phrase conventions of the scripted planners, turned into command lines.
std::optional<std::string> translate_decision(const std::string& decision) {
    using std::regex;
    constexpr auto icase = std::regex::icase;
    static const regex scout_overlord(R"(^(send|move) an? overlords? to scout)", icase);
    static const regex scout_units(R"(^scout .* with (\w+))", icase);
    static const regex drones(R"(^(build|train|morph) (additional |more |an? )?drones?)", icase);
    static const regex overlord(R"(^(build|train|morph) (additional |more |an? )?overlords?)", icase);
    static const regex queen(R"(^train (additional |more |an? )?queens?)", icase);
    static const regex train(R"(^(train|morph) (additional |more |an? )?([A-Za-z ]+?)(es|s)? (at|from|in)\b)", icase);
    static const regex expand(R"(^expand to)", icase);
    static const regex build(R"(^build (an? |more |additional )?([A-Za-z ]+?)s? (in|at|on)\b)", icase);
    static const regex research(R"(^research (.+?)( upgrade)? at the ([A-Za-z ]+?) ([AB][1-8]))", icase);
    static const regex attack(R"(^(attack|defend|launch)\b)", icase);
    static const regex rally(R"(^(rally|gather|move) (the )?(army|zerg units))", icase);
    static const regex gas(R"(^send (\d+ )?drones? to gather gas)", icase);

    std::string loc = first_base(decision).value_or("A1");
    std::smatch m;
    if (std::regex_search(decision, scout_overlord)) return "(Overlord, A1)->(Move)->(" + loc + ")";
    if (std::regex_search(decision, m, scout_units)) return "(" + m[1].str() + ", A1)->(Scout)->(" + loc + ")";
    if (std::regex_search(decision, drones)) return "(Larva, " + loc + ")->(Train)->(Drone)";
    if (std::regex_search(decision, overlord)) return "(Larva, " + loc + ")->(Train)->(Overlord)";
    if (std::regex_search(decision, queen)) return "(Hatchery, " + loc + ")->(Train)->(Queen)";
    if (std::regex_search(decision, gas)) return "(Drone, " + loc + ")->(Gather gas)->(Extractor1, " + loc + ")";
    if (std::regex_search(decision, m, research))
        return "(" + m[3].str() + ", " + m[4].str() + ")->(Research)->(" + m[1].str() + ")";
    if (std::regex_search(decision, expand)) return "(Drone, A1)->(Build)->(Hatchery, " + loc + ")";
    if (std::regex_search(decision, m, build)) {
        std::string what = m[2];
        if (what.ends_with(" on the gas geyser")) what = what.substr(0, what.size() - 18);
        return "(Drone, A1)->(Build)->(" + what + ", " + loc + ")";
    }
    if (std::regex_search(decision, m, train)) return "(Larva, " + loc + ")->(Train)->(" + m[3].str() + ")";
    if (std::regex_search(decision, attack)) return "(Zerg units)->(Attack)->(" + loc + ")";
    if (std::regex_search(decision, rally)) return "(Zerg units)->(Move)->(" + loc + ")";
    return std::nullopt;
}

std::string translate(std::string_view prompt) {
    std::string thoughts = block_after(prompt, "Your current thoughts:");
    ActionPlan plan;
    try {
        plan = parse_action_plan("{\n" + thoughts + "\n}");
    } catch (const Error&) {
        return "{\n}\n";
    }
    std::vector<std::string> lines;
    for (const auto& e : plan.entries)
        if (auto line = translate_decision(e)) lines.push_back(*line);
    std::string out = "{\n";
    for (std::size_t i = 0; i < lines.size(); ++i)
        out += "'" + std::to_string(i) + "': \"" + lines[i] + "\"" + (i + 1 < lines.size() ? ",\n" : "\n");
    out += "}\n";
    return out;
}

class ScriptedBrain final : public Brain {
public:
    explicit ScriptedBrain(const PolicyParams& p) : params_(p) {}

    BrainReply respond(BrainRole role, const std::string& prompt) override {
        if (role == BrainRole::Translator) return {translate(prompt), std::nullopt};
        return {render_overmind_reply(plan_decisions(params_, read_situation(prompt)), params_), std::nullopt};
    }
    std::string describe() const override { return "scripted:" + params_.name; }

private:
    PolicyParams params_;
};

class ReplayBrain final : public Brain {
public:
    ReplayBrain(std::vector<std::string> overmind, std::vector<std::string> translator)
        : overmind_(std::move(overmind)), translator_(std::move(translator)) {}

    BrainReply respond(BrainRole role, const std::string&) override {
        auto& list = role == BrainRole::Overmind ? overmind_ : translator_;
        auto& next = role == BrainRole::Overmind ? next_overmind_ : next_translator_;
        if (list.empty()) return {"", std::nullopt};
        const std::string& out = list[std::min(next, list.size() - 1)];
        ++next;
        return {out, std::nullopt};
    }
    std::string describe() const override { return "replay"; }

private:
    std::vector<std::string> overmind_, translator_;
    std::size_t next_overmind_ = 0, next_translator_ = 0;
};

}  // namespace

std::unique_ptr<Brain> scripted_brain(std::string_view policy_id) {
    if (policy_id == "rush") return std::make_unique<ScriptedBrain>(kRush);
    if (policy_id == "macro") return std::make_unique<ScriptedBrain>(kMacro);
    if (policy_id == "turtle") return std::make_unique<ScriptedBrain>(kTurtle);
    throw Error("unknown-policy", "unknown scripted policy '" + std::string(policy_id) + "'");
}

std::unique_ptr<Brain> replay_brain(std::string_view transcript_json) {
    try {
        auto j = nlohmann::json::parse(transcript_json);
        auto list = [&](const char* key) {
            std::vector<std::string> out;
            if (j.contains(key))
                for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
            return out;
        };
        auto overmind = list("overmind");
        auto translator = list("translator");
        if (overmind.empty() && translator.empty()) throw Error("bad-transcript", "transcript has no responses");
        return std::make_unique<ReplayBrain>(std::move(overmind), std::move(translator));
    } catch (const nlohmann::json::exception& e) {
        throw Error("bad-transcript", std::string("transcript: ") + e.what());
    }
}

}  // namespace swarm
