#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "swarm/observation.hpp"

namespace swarm {

// The five text blocks substituted into the planner prompt.
struct SituationReport {
    std::string own_units;
    std::string own_buildings;
    std::string research;
    std::string enemy_units;
    std::string enemy_buildings;
};

inline constexpr int kStaleAfterTicks = 30;
inline constexpr int kAssemblingThreshold = 6;
inline constexpr std::string_view kEmptyMemory = "None (first round).";

SituationReport render_situation_report(const Observation& obs);

// (base, kind display name, activity phrase) -> count. Building lines use an
// empty activity. "Nothing" lines contribute no entries.
using ReportCounts = std::map<std::tuple<std::string, std::string, std::string>, int>;
ReportCounts parse_report_block(std::string_view block);

enum class EventKind : std::uint8_t { UnderAttack, EnemyArmyDetected, EnemyAssembling };
std::string_view event_kind_name(EventKind k);

struct CriticalEvent {
    EventKind kind{};
    BaseId location{};
    int enemy_combat_units = 0;
    std::string reporter;  // display name of the own unit or building that saw it
    bool operator==(const CriticalEvent&) const = default;
};

// Conditions true in `obs` but not in `previous`. Pass nullptr for the
// first observation of a match.
std::vector<CriticalEvent> detect_critical_events(const Observation& obs, const Observation* previous);
std::string render_event(const CriticalEvent& e);

enum class PromptMode : std::uint8_t { Normal, Critical };

// Throws Error("no-events") for Critical mode without events.
std::string assemble_overmind_prompt(PromptMode mode, std::string_view matrix_text, std::string_view memory_text,
                                     const SituationReport& report, std::span<const CriticalEvent> events);
// Throws Error("empty-plan") for blank thoughts.
std::string assemble_translation_prompt(std::string_view thoughts);

// Replaces every occurrence of each key; keys are matched literally.
std::string substitute(std::string_view tmpl, std::span<const std::pair<std::string_view, std::string_view>> vars);

}  // namespace swarm
