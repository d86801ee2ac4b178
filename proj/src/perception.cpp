#include "swarm/perception.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "swarm/error.hpp"
#include "swarm/game_data.hpp"

namespace swarm {

namespace {

// Listing order of activities within one kind.
int activity_rank(Activity a) {
    switch (a) {
        case Activity::GatheringMinerals: return 0;
        case Activity::GatheringGas: return 1;
        case Activity::Injecting: return 2;
        case Activity::Idle: return 3;
        case Activity::Moving: return 4;
        case Activity::Attacking: return 5;
        case Activity::Fleeing: return 6;
        case Activity::Morphing: return 7;
    }
    return 8;
}

std::string activity_phrase(Activity a, int gas_slot, Player owner, std::string_view hall) {
    switch (a) {
        case Activity::GatheringMinerals:
            if (hall.empty()) return "are idling";
            return "are gathering minerals in " + std::string(hall);
        case Activity::GatheringGas:
            return std::string("are gathering gas in ") + (owner == Player::Zerg ? "Extractor" : "Refinery") +
                   std::to_string(gas_slot);
        case Activity::Injecting:
            if (hall.empty()) return "are idling";
            return "constantly injecting eggs into " + std::string(hall);
        case Activity::Idle: return "are idling";
        case Activity::Moving: return "are moving";
        case Activity::Attacking: return "are attacking";
        case Activity::Fleeing: return "are fleeing";
        case Activity::Morphing: return "are morphing";
    }
    return "are idling";
}

struct Group {
    UnitKind kind;
    int rank;
    int slot;
    std::string phrase;
    int count = 0;
};

std::string render_unit_items(const std::vector<SeenUnit>& units, Player owner, std::string_view hall) {
    std::vector<Group> groups;
    for (const auto& u : units) {
        std::string phrase = activity_phrase(u.activity, u.gas_slot, owner, hall);
        int rank = activity_rank(u.activity);
        auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
            return g.kind == u.kind && g.phrase == phrase;
        });
        if (it == groups.end()) groups.push_back({u.kind, rank, u.gas_slot, phrase, 1});
        else ++it->count;
    }
    std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
        return std::tie(a.kind, a.rank, a.slot, a.phrase) < std::tie(b.kind, b.rank, b.slot, b.phrase);
    });
    std::string out;
    for (const auto& g : groups) {
        if (!out.empty()) out += ", ";
        out += std::to_string(g.count) + " " + std::string(display_name(g.kind)) + " " + g.phrase;
    }
    return out;
}

std::string render_building_items(const std::vector<SeenBuilding>& buildings) {
    std::map<BuildingKind, int> counts;
    for (const auto& b : buildings) ++counts[b.kind];
    std::string out;
    for (const auto& [k, n] : counts) {
        if (!out.empty()) out += ", ";
        out += std::to_string(n) + " " + std::string(display_name(k));
    }
    return out;
}

std::string line(BaseId b, const std::string& items, std::string_view suffix = {}) {
    return "At point " + b.str() + ", there are: " + (items.empty() ? "Nothing" : items) + std::string(suffix) + ";";
}

std::string join_lines(const std::vector<std::string>& lines) {
    if (lines.empty()) return "Nothing";
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += "\n";
        out += lines[i];
    }
    return out;
}

std::string hall_name(const GameData& d, const std::vector<SeenBuilding>& buildings, BaseId b) {
    for (const auto& bl : buildings)
        if (bl.base == b && d.building(bl.kind).town_hall) return std::string(display_name(bl.kind));
    return {};
}

bool is_combat(const GameData& d, UnitKind k) {
    auto role = d.unit(k).role;
    return role == UnitRole::Combat || role == UnitRole::Queen;
}

}  // namespace

SituationReport render_situation_report(const Observation& obs) {
    const GameData& d = *obs.data;
    SituationReport r;
    std::vector<SeenUnit> own_units;
    std::vector<SeenBuilding> own_buildings;
    for (const auto& u : obs.own_units) own_units.push_back({u.id, u.kind, u.base, u.activity, u.gas_slot, u.hp});
    for (const auto& b : obs.own_buildings) own_buildings.push_back({b.id, b.kind, b.base, b.complete, b.slot});

    std::vector<std::string> unit_lines, building_lines;
    for (int i = 0; i < BaseId::kCount; ++i) {
        BaseId b = BaseId::from_index(i);
        std::vector<SeenUnit> here;
        for (const auto& u : own_units)
            if (u.base == b) here.push_back(u);
        std::vector<SeenBuilding> here_b;
        for (const auto& bl : own_buildings)
            if (bl.base == b) here_b.push_back(bl);
        if (!here.empty()) unit_lines.push_back(line(b, render_unit_items(here, obs.player, hall_name(d, here_b, b))));
        if (!here.empty() || !here_b.empty()) building_lines.push_back(line(b, render_building_items(here_b)));
    }
    r.own_units = join_lines(unit_lines);
    r.own_buildings = join_lines(building_lines);

    std::vector<std::string> research;
    for (auto id : kAllResearch)
        if (obs.research_done.test(static_cast<std::size_t>(id))) research.push_back(std::string(display_name(id)) + ",");
    r.research = join_lines(research);

    std::vector<std::string> eu, eb;
    for (const auto& e : obs.enemy) {
        std::string suffix;
        if (e.staleness > kStaleAfterTicks) suffix = " (last seen " + std::to_string(e.staleness) + "s ago)";
        eu.push_back(line(e.base, render_unit_items(e.units, opponent(obs.player), hall_name(d, e.buildings, e.base)),
                          e.units.empty() ? std::string_view{} : std::string_view(suffix)));
        eb.push_back(line(e.base, render_building_items(e.buildings),
                          e.buildings.empty() ? std::string_view{} : std::string_view(suffix)));
    }
    r.enemy_units = join_lines(eu);
    r.enemy_buildings = join_lines(eb);
    return r;
}

ReportCounts parse_report_block(std::string_view block) {
    static const std::regex line_re(R"(^At point ([AB][1-8]), there are: (.*);\s*$)");
    static const std::regex unit_item(R"(^(\d+) (.+?) ((?:are |constantly ).*)$)");
    static const std::regex building_item(R"(^(\d+) (.+)$)");
    static const std::regex stale(R"( \(last seen \d+s ago\)$)");
    ReportCounts out;
    std::string text(block);
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string ln = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
        std::smatch m;
        if (!std::regex_match(ln, m, line_re)) continue;
        std::string base = m[1];
        std::string items = std::regex_replace(m[2].str(), stale, "");
        if (items == "Nothing") continue;
        std::size_t start = 0;
        while (start <= items.size()) {
            std::size_t comma = items.find(", ", start);
            std::string item = items.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            start = comma == std::string::npos ? items.size() + 1 : comma + 2;
            std::smatch im;
            if (std::regex_match(item, im, unit_item)) out[{base, im[2], im[3]}] += std::stoi(im[1]);
            else if (std::regex_match(item, im, building_item)) out[{base, im[2], ""}] += std::stoi(im[1]);
        }
    }
    return out;
}

std::string_view event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::UnderAttack: return "under-attack";
        case EventKind::EnemyArmyDetected: return "enemy-army-detected";
        case EventKind::EnemyAssembling: return "enemy-assembling";
    }
    return "?";
}

namespace {

std::vector<CriticalEvent> conditions(const Observation& obs) {
    const GameData& d = *obs.data;
    std::vector<CriticalEvent> out;
    for (const auto& e : obs.enemy) {
        if (e.staleness != 0) continue;
        int n = 0;
        for (const auto& u : e.units)
            if (is_combat(d, u.kind)) ++n;
        if (n == 0) continue;
        CriticalEvent ev;
        ev.location = e.base;
        ev.enemy_combat_units = n;
        if (obs.own_buildings_at(e.base)) ev.kind = EventKind::UnderAttack;
        else if (n >= kAssemblingThreshold) ev.kind = EventKind::EnemyAssembling;
        else ev.kind = EventKind::EnemyArmyDetected;
        for (const auto& u : obs.own_units)
            if (u.base == e.base) {
                ev.reporter = std::string(display_name(u.kind));
                break;
            }
        if (ev.reporter.empty())
            for (const auto& b : obs.own_buildings)
                if (b.base == e.base) {
                    ev.reporter = std::string(display_name(b.kind));
                    break;
                }
        out.push_back(std::move(ev));
    }
    return out;
}

}  // namespace

std::vector<CriticalEvent> detect_critical_events(const Observation& obs, const Observation* previous) {
    auto now = conditions(obs);
    if (!previous) return now;
    std::set<std::pair<EventKind, BaseId>> before;
    for (const auto& e : conditions(*previous)) before.insert({e.kind, e.location});
    std::erase_if(now, [&](const CriticalEvent& e) { return before.count({e.kind, e.location}) > 0; });
    return now;
}

std::string render_event(const CriticalEvent& e) {
    std::string who = e.reporter.empty() ? "Overlord" : e.reporter;
    switch (e.kind) {
        case EventKind::UnderAttack:
            return who + " have detected a group of Terran army is ready to attack the " + e.location.str() +
                   " and destory our army.";
        case EventKind::EnemyAssembling:
            return who + " have detected a group of Terran army is assembling at " + e.location.str() + ".";
        case EventKind::EnemyArmyDetected:
            return who + " have detected a group of Terran army at " + e.location.str() + ".";
    }
    return {};
}

std::string substitute(std::string_view tmpl, std::span<const std::pair<std::string_view, std::string_view>> vars) {
    std::string out;
    out.reserve(tmpl.size() * 2);
    std::size_t i = 0;
    while (i < tmpl.size()) {
        bool hit = false;
        if (tmpl[i] == '<') {
            for (const auto& [key, value] : vars) {
                if (tmpl.substr(i, key.size()) == key) {
                    out += value;
                    i += key.size();
                    hit = true;
                    break;
                }
            }
        }
        if (!hit) out += tmpl[i++];
    }
    return out;
}

std::string assemble_overmind_prompt(PromptMode mode, std::string_view matrix_text, std::string_view memory_text,
                                     const SituationReport& report, std::span<const CriticalEvent> events) {
    std::string critical;
    if (mode == PromptMode::Critical) {
        if (events.empty()) throw Error("no-events", "critical prompt requires at least one event");
        critical = "Important!!!";
        for (const auto& e : events) critical += "\n" + render_event(e);
    }
    std::string_view memory = memory_text.empty() ? kEmptyMemory : memory_text;
    const std::pair<std::string_view, std::string_view> vars[] = {
        {"<map_matrix>", matrix_text},
        {"<pre_thoughts>", memory},
        {"<critical_battlefield_information>", critical},
        {"<cur_units>", report.own_units},
        {"<cur_buildings>", report.own_buildings},
        {"<cur_abilities>", report.research},
        {"<enemy_units>", report.enemy_units},
        {"<enemy_buildings>", report.enemy_buildings},
    };
    auto tmpl = mode == PromptMode::Critical ? embedded::kOvermindCriticalTemplate : embedded::kOvermindNormalTemplate;
    return substitute(tmpl, vars);
}

std::string assemble_translation_prompt(std::string_view thoughts) {
    if (thoughts.find_first_not_of(" \t\r\n") == std::string_view::npos)
        throw Error("empty-plan", "translation needs a non-empty plan");
    const std::pair<std::string_view, std::string_view> vars[] = {{"<cur_thoughts>", thoughts}};
    return substitute(embedded::kTranslatorTemplate, vars);
}

}  // namespace swarm
