#pragma once

#include <bitset>
#include <vector>

#include "swarm/world.hpp"

namespace swarm {

// Remembered enemy presence at one base.
struct EnemyView {
    BaseId base{};
    int seen_tick = 0;
    int staleness = 0;  // ticks since the snapshot was taken; 0 = in sight now
    std::vector<SeenUnit> units;
    std::vector<SeenBuilding> buildings;
};

// One player's fog-filtered snapshot. Own assets are complete; enemy assets
// appear only at bases the player currently sees or has seen before.
struct Observation {
    const GameData* data = nullptr;
    const MapMatrix* map = nullptr;
    int tick = 0;
    Player player{};
    int minerals = 0;
    int gas = 0;
    int supply_used_x2 = 0;
    int supply_cap = 0;
    std::vector<Unit> own_units;
    std::vector<Building> own_buildings;
    std::vector<Production> own_production;
    std::bitset<kResearchCount> research_done;
    std::vector<EnemyView> enemy;  // ascending base

    const EnemyView* enemy_at(BaseId b) const;
    bool own_presence(BaseId b) const;
    bool own_buildings_at(BaseId b) const;
    const Building* own_town_hall(BaseId b) const;
};

Observation observe(const WorldState& s, Player p);

}  // namespace swarm
