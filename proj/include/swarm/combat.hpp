#pragma once

#include <optional>
#include <span>

#include "swarm/game_data.hpp"
#include "swarm/world.hpp"

namespace swarm {

// Either side of an exchange, reduced to what targeting and damage need.
struct Combatant {
    EntityId id = 0;
    bool building = false;
    UnitKind unit{};
    BuildingKind structure{};
    int hp = 0;
    bool flying = false;
};

Combatant combatant_of(const GameData& d, const Unit& u);
Combatant combatant_of(const GameData& d, const Building& b);

// Target class, lower fires first; nullopt when `attacker` cannot hit `target`.
//   0 Medivac, for attackers with an anti-air attack
//   1 combat units
//   2 workers
//   3 other units
//   4 buildings with an attack
//   5 other buildings
std::optional<int> target_rank(const GameData& d, const Combatant& attacker, const Combatant& target);

// Lowest rank, then lowest hp, then lowest id.
std::optional<EntityId> choose_target(const GameData& d, const Combatant& attacker,
                                      std::span<const Combatant> enemies);

// Per-hit damage including research bonus and the flank modifier.
int hit_damage(const GameData& d, const Combatant& attacker, const Combatant& target,
               const PlayerState& attacker_owner);

// Whether a unit takes part in a combat round this tick.
bool engages(const GameData& d, const Unit& u);

}  // namespace swarm
