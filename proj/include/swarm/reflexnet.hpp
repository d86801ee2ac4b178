#pragma once

#include <map>
#include <optional>
#include <vector>

#include "swarm/observation.hpp"
#include "swarm/world.hpp"

namespace swarm {

enum class Archetype : std::uint8_t { Worker, Transport, Combat, Queen };
std::string_view archetype_name(Archetype a);
Archetype archetype_of(const GameData& d, UnitKind k);

// Worker {Gather, Attack, Flee}; transport {Idle, Flee}; combat {Idle,
// Attack, Flee}; queen {Inject}.
bool legal_state(Archetype a, ReflexMode m);
// Drawn edges only:
//   worker    G->A G->F A->F A->G F->G
//   transport I->F F->I
//   combat    I->A A->I I->F A->F F->I
bool legal_edge(Archetype a, ReflexMode from, ReflexMode to);

struct ThreatAssessment {
    int enemy_power = 0;     // summed ground attack of visible enemy units at the base
    int friendly_power = 0;  // summed ground attack of the nearby same-archetype friendlies
    std::map<UnitKind, int> enemy_composition;
};

ThreatAssessment assess_threat(const Unit& unit, const Observation& obs);

struct Transition {
    EntityId unit = 0;
    ReflexMode from{};
    ReflexMode to{};
    char condition = 'A';  // A, G, F or I
};

struct ReflexResult {
    std::vector<Transition> transitions;
    std::vector<EngineOrder> orders;
    std::vector<std::pair<EntityId, EntityId>> targets;  // attacker, chosen target
};

// Every own unit, ascending id. Pure function of the observation.
ReflexResult reflex_step(const Observation& obs);

// Per-archetype steps; each appends to `out`.
void drone_step(BaseId base, const Observation& obs, ReflexResult& out);
void overlord_step(const Unit& unit, const Observation& obs, ReflexResult& out);
void combat_step(const Unit& unit, const Observation& obs, ReflexResult& out);
std::optional<InjectOrder> queen_step(const Unit& unit, const Observation& obs);

}  // namespace swarm
