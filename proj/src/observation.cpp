#include "swarm/observation.hpp"

namespace swarm {

const EnemyView* Observation::enemy_at(BaseId b) const {
    for (const auto& e : enemy)
        if (e.base == b) return &e;
    return nullptr;
}

bool Observation::own_presence(BaseId b) const {
    for (const auto& u : own_units)
        if (u.base == b) return true;
    return own_buildings_at(b);
}

bool Observation::own_buildings_at(BaseId b) const {
    for (const auto& bl : own_buildings)
        if (bl.base == b) return true;
    return false;
}

const Building* Observation::own_town_hall(BaseId b) const {
    for (const auto& bl : own_buildings)
        if (bl.base == b && bl.complete && data->building(bl.kind).town_hall) return &bl;
    return nullptr;
}

Observation observe(const WorldState& s, Player p) {
    Observation o;
    o.data = s.data;
    o.map = s.map;
    o.tick = s.tick;
    o.player = p;
    const auto& ps = s.player(p);
    o.minerals = ps.minerals;
    o.gas = ps.gas;
    o.supply_used_x2 = supply_used_x2(s, p);
    o.supply_cap = supply_cap(s, p);
    o.research_done = ps.research_done;
    for (const auto& u : s.units)
        if (u.owner == p) o.own_units.push_back(u);
    for (const auto& b : s.buildings)
        if (b.owner == p) o.own_buildings.push_back(b);
    for (const auto& pr : s.production)
        if (pr.owner == p) o.own_production.push_back(pr);
    for (int i = 0; i < BaseId::kCount; ++i) {
        const auto& snap = ps.intel[i];
        if (!snap) continue;
        o.enemy.push_back({BaseId::from_index(i), snap->seen_tick, s.tick - snap->seen_tick, snap->units,
                           snap->buildings});
    }
    return o;
}

}  // namespace swarm
