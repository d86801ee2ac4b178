#pragma once

#include <algorithm>
#include <string>

#include "swarm/game_data.hpp"
#include "swarm/io.hpp"
#include "swarm/map.hpp"
#include "swarm/observation.hpp"
#include "swarm/world.hpp"

#ifndef SWARM_FIXTURE_DIR
#error "SWARM_FIXTURE_DIR must be defined by the build"
#endif

namespace swarm::test {

inline std::string fixture(const std::string& name) { return read_text_file(std::string(SWARM_FIXTURE_DIR) + "/" + name); }

inline BaseId B(const char* s) { return BaseId::must_parse(s); }

// An empty world on the default map: no units, no buildings, no money.
inline WorldState empty_world() {
    WorldState s;
    s.data = &GameData::builtin();
    s.map = &default_map();
    return s;
}

inline Unit& add_unit(WorldState& s, UnitKind k, Player p, BaseId b, Activity a = Activity::Idle, int gas_slot = 0) {
    const auto& st = s.data->unit(k);
    Unit u;
    u.id = s.next_id++;
    u.kind = k;
    u.owner = p;
    u.base = b;
    u.hp = st.max_hp;
    u.activity = a;
    u.gas_slot = gas_slot;
    switch (st.role) {
        case UnitRole::Worker: u.reflex = ReflexMode::Gather; break;
        case UnitRole::Queen: u.reflex = ReflexMode::Inject; break;
        default: u.reflex = ReflexMode::Idle; break;
    }
    s.units.push_back(u);
    return s.units.back();
}

inline void add_units(WorldState& s, int n, UnitKind k, Player p, BaseId b, Activity a = Activity::Idle,
                      int gas_slot = 0) {
    for (int i = 0; i < n; ++i) add_unit(s, k, p, b, a, gas_slot);
}

inline Building& add_building(WorldState& s, BuildingKind k, Player p, BaseId b, bool complete = true, int slot = 0) {
    const auto& st = s.data->building(k);
    Building bl;
    bl.id = s.next_id++;
    bl.kind = k;
    bl.owner = p;
    bl.base = b;
    bl.hp = st.max_hp;
    bl.complete = complete;
    bl.progress = complete ? st.build_ticks : 0;
    bl.slot = slot;
    s.buildings.push_back(bl);
    return s.buildings.back();
}

// Mid-game Zerg position shared by the prompt goldens. Tick 200; the Terran
// main was last scouted at tick 100 and a Terran group stands at A4 in sight
// of an Overlord.
inline WorldState golden_world() {
    WorldState s = empty_world();
    s.tick = 200;
    const auto Z = Player::Zerg;
    const auto T = Player::Terran;
    add_building(s, BuildingKind::Hatchery, Z, B("A1"));
    add_building(s, BuildingKind::SpawningPool, Z, B("A1"));
    add_building(s, BuildingKind::Extractor, Z, B("A1"), true, 1);
    add_building(s, BuildingKind::RoachWarren, Z, B("A1"));
    add_building(s, BuildingKind::Hatchery, Z, B("A2"));
    add_units(s, 10, UnitKind::Drone, Z, B("A1"), Activity::GatheringMinerals);
    add_units(s, 3, UnitKind::Drone, Z, B("A1"), Activity::GatheringGas, 1);
    add_units(s, 2, UnitKind::Overlord, Z, B("A1"));
    add_unit(s, UnitKind::Queen, Z, B("A1"), Activity::Injecting);
    add_units(s, 6, UnitKind::Zergling, Z, B("A1"));
    add_units(s, 4, UnitKind::Roach, Z, B("A1"));
    add_units(s, 8, UnitKind::Drone, Z, B("A2"), Activity::GatheringMinerals);
    add_unit(s, UnitKind::Overlord, Z, B("A4"));
    add_units(s, 4, UnitKind::Marine, T, B("A4"), Activity::Moving);
    add_units(s, 2, UnitKind::Marauder, T, B("A4"), Activity::Moving);
    s.player(Z).research_done.set(static_cast<std::size_t>(ResearchId::MetabolicBoost));
    s.player(Z).research_done.set(static_cast<std::size_t>(ResearchId::MissileAttacks1));

    IntelSnapshot b1;
    b1.seen_tick = 100;
    EntityId id = 10'000;
    for (int i = 0; i < 16; ++i)
        b1.units.push_back({id++, UnitKind::SCV, B("B1"), Activity::GatheringMinerals, 0, 45});
    for (int i = 0; i < 2; ++i) b1.units.push_back({id++, UnitKind::Marine, B("B1"), Activity::Idle, 0, 45});
    b1.buildings.push_back({id++, BuildingKind::CommandCenter, B("B1"), true, 0});
    b1.buildings.push_back({id++, BuildingKind::SupplyDepot, B("B1"), true, 0});
    b1.buildings.push_back({id++, BuildingKind::SupplyDepot, B("B1"), true, 0});
    b1.buildings.push_back({id++, BuildingKind::Barracks, B("B1"), true, 0});
    s.player(Z).intel[B("B1").index()] = b1;
    refresh_intel(s);
    return s;
}

}  // namespace swarm::test
