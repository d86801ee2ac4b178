#include "swarm/reflexnet.hpp"

#include <algorithm>

#include "swarm/combat.hpp"

namespace swarm {

std::string_view archetype_name(Archetype a) {
    switch (a) {
        case Archetype::Worker: return "worker";
        case Archetype::Transport: return "transport";
        case Archetype::Combat: return "combat";
        case Archetype::Queen: return "queen";
    }
    return "?";
}

Archetype archetype_of(const GameData& d, UnitKind k) {
    switch (d.unit(k).role) {
        case UnitRole::Worker: return Archetype::Worker;
        case UnitRole::Transport: return Archetype::Transport;
        case UnitRole::Queen: return Archetype::Queen;
        case UnitRole::Combat: return Archetype::Combat;
    }
    return Archetype::Combat;
}

bool legal_state(Archetype a, ReflexMode m) {
    switch (a) {
        case Archetype::Worker: return m == ReflexMode::Gather || m == ReflexMode::Attack || m == ReflexMode::Flee;
        case Archetype::Transport: return m == ReflexMode::Idle || m == ReflexMode::Flee;
        case Archetype::Combat: return m == ReflexMode::Idle || m == ReflexMode::Attack || m == ReflexMode::Flee;
        case Archetype::Queen: return m == ReflexMode::Inject;
    }
    return false;
}

bool legal_edge(Archetype a, ReflexMode from, ReflexMode to) {
    using R = ReflexMode;
    auto is = [&](R f, R t) { return from == f && to == t; };
    switch (a) {
        case Archetype::Worker:
            return is(R::Gather, R::Attack) || is(R::Gather, R::Flee) || is(R::Attack, R::Flee) ||
                   is(R::Attack, R::Gather) || is(R::Flee, R::Gather);
        case Archetype::Transport: return is(R::Idle, R::Flee) || is(R::Flee, R::Idle);
        case Archetype::Combat:
            return is(R::Idle, R::Attack) || is(R::Attack, R::Idle) || is(R::Idle, R::Flee) ||
                   is(R::Attack, R::Flee) || is(R::Flee, R::Idle);
        case Archetype::Queen: return false;
    }
    return false;
}

namespace {

const std::vector<SeenUnit>* visible_enemy_units(const Observation& obs, BaseId b) {
    const EnemyView* e = obs.enemy_at(b);
    if (!e || e->staleness != 0) return nullptr;
    return &e->units;
}

bool hostiles_at(const Observation& obs, BaseId b) {
    const EnemyView* e = obs.enemy_at(b);
    return e && e->staleness == 0 && !e->units.empty();
}

bool enemies_or_buildings_at(const Observation& obs, BaseId b) {
    const EnemyView* e = obs.enemy_at(b);
    return e && e->staleness == 0 && (!e->units.empty() || !e->buildings.empty());
}

int enemy_combat_at(const Observation& obs, BaseId b) {
    const EnemyView* e = obs.enemy_at(b);
    if (!e) return 0;
    int n = 0;
    for (const auto& u : e->units)
        if (obs.data->unit(u.kind).role == UnitRole::Combat) ++n;
    return n;
}

bool damaged_recently(const Unit& u, const Observation& obs) { return u.last_damaged_tick >= obs.tick - 1; }

template <typename Pred>
std::optional<BaseId> nearest(const Observation& obs, BaseId from, Pred pred) {
    std::optional<BaseId> best;
    int best_d = 0;
    for (int i = 0; i < BaseId::kCount; ++i) {
        BaseId b = BaseId::from_index(i);
        if (b == from || !pred(b)) continue;
        int d = obs.map->distance(from, b);
        if (!best || d < best_d) {
            best = b;
            best_d = d;
        }
    }
    return best;
}

void transition(ReflexResult& out, const Unit& u, ReflexMode to, char cond) {
    out.transitions.push_back({u.id, u.reflex, to, cond});
    out.orders.push_back(StanceOrder{{u.id}, to});
}

}  // namespace

ThreatAssessment assess_threat(const Unit& unit, const Observation& obs) {
    const GameData& d = *obs.data;
    ThreatAssessment t;
    if (const auto* enemies = visible_enemy_units(obs, unit.base)) {
        for (const auto& e : *enemies) {
            t.enemy_power += d.unit(e.kind).ground_attack;
            ++t.enemy_composition[e.kind];
        }
    }
    Archetype mine = archetype_of(d, unit.kind);
    int counted = 0;
    int limit = mine == Archetype::Worker ? d.constants().drone_proximate_count : 1 << 20;
    for (const auto& u : obs.own_units) {
        if (counted >= limit) break;
        if (u.base != unit.base || u.transit || archetype_of(d, u.kind) != mine) continue;
        t.friendly_power += d.unit(u.kind).ground_attack;
        ++counted;
    }
    return t;
}

void drone_step(BaseId base, const Observation& obs, ReflexResult& out) {
    const GameData& d = *obs.data;
    std::vector<const Unit*> drones;
    for (const auto& u : obs.own_units)
        if (u.base == base && !u.transit && archetype_of(d, u.kind) == Archetype::Worker &&
            u.activity != Activity::Morphing)
            drones.push_back(&u);
    if (drones.empty()) return;

    if (!hostiles_at(obs, base)) {
        for (const auto* u : drones)
            if (u->reflex == ReflexMode::Attack || u->reflex == ReflexMode::Flee)
                transition(out, *u, ReflexMode::Gather, 'G');
        return;
    }

    ThreatAssessment threat = assess_threat(*drones.front(), obs);
    bool hellions = threat.enemy_composition.count(UnitKind::Hellion) > 0;
    if (hellions || threat.enemy_power >= threat.friendly_power) {
        auto refuge = nearest(obs, base, [&](BaseId b) { return obs.own_town_hall(b) && !hostiles_at(obs, b); });
        std::vector<EntityId> movers;
        for (const auto* u : drones) {
            if (u->reflex == ReflexMode::Flee) continue;
            transition(out, *u, ReflexMode::Flee, 'F');
            movers.push_back(u->id);
        }
        if (refuge && !movers.empty()) out.orders.push_back(MoveOrder{movers, *refuge, MoveMode::Flee});
        return;
    }

    // Measured response: the fewest drones whose summed power beats the
    // intruders, drones already fighting first, then by id.
    std::vector<const Unit*> candidates;
    for (const auto* u : drones)
        if (u->reflex == ReflexMode::Attack) candidates.push_back(u);
    for (const auto* u : drones)
        if (u->reflex == ReflexMode::Gather) candidates.push_back(u);
    int power = 0;
    std::size_t take = 0;
    while (take < candidates.size() && power <= threat.enemy_power) power += d.unit(candidates[take++]->kind).ground_attack;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Unit* u = candidates[i];
        if (i < take && u->reflex != ReflexMode::Attack) transition(out, *u, ReflexMode::Attack, 'A');
        if (i >= take && u->reflex == ReflexMode::Attack) transition(out, *u, ReflexMode::Gather, 'G');
    }
}

void overlord_step(const Unit& unit, const Observation& obs, ReflexResult& out) {
    if (unit.reflex == ReflexMode::Idle) {
        if (!damaged_recently(unit, obs)) return;
        auto friendly = nearest(obs, unit.base, [&](BaseId b) {
            for (const auto& u : obs.own_units)
                if (u.id != unit.id && u.base == b && !u.transit) return !hostiles_at(obs, b);
            return false;
        });
        if (!friendly) friendly = nearest(obs, unit.base, [&](BaseId b) { return obs.map->on_edge(b); });
        transition(out, unit, ReflexMode::Flee, 'F');
        if (friendly) out.orders.push_back(MoveOrder{{unit.id}, *friendly, MoveMode::Flee});
    } else if (unit.reflex == ReflexMode::Flee) {
        if (!unit.transit && !hostiles_at(obs, unit.base)) transition(out, unit, ReflexMode::Idle, 'I');
    }
}

void combat_step(const Unit& unit, const Observation& obs, ReflexResult& out) {
    const GameData& d = *obs.data;
    if (unit.transit && unit.transit->mode != MoveMode::AttackMove) return;
    if (unit.activity == Activity::Morphing) return;
    BaseId b = unit.base;
    bool enemies = enemies_or_buildings_at(obs, b);

    if (unit.reflex == ReflexMode::Flee) {
        if (!unit.transit) transition(out, unit, ReflexMode::Idle, 'I');
        return;
    }

    // Small groups caught away from home fall back.
    int group = 0;
    bool hit = false;
    for (const auto& u : obs.own_units)
        if (u.base == b && archetype_of(d, u.kind) == Archetype::Combat && u.activity != Activity::Morphing) {
            ++group;
            hit = hit || damaged_recently(u, obs);
        }
    if (enemies && hit && group <= 4 && !obs.own_buildings_at(b)) {
        auto refuge = nearest(obs, b, [&](BaseId x) {
            int mine = 0;
            for (const auto& u : obs.own_units)
                if (u.base == x && archetype_of(d, u.kind) == Archetype::Combat) ++mine;
            return (obs.own_town_hall(x) != nullptr || mine > 0) && mine >= enemy_combat_at(obs, x) &&
                   !hostiles_at(obs, x);
        });
        transition(out, unit, ReflexMode::Flee, 'F');
        out.orders.push_back(MoveOrder{{unit.id}, refuge.value_or(obs.map->home(obs.player)), MoveMode::Flee});
        return;
    }

    if (unit.reflex == ReflexMode::Idle && enemies) transition(out, unit, ReflexMode::Attack, 'A');
    else if (unit.reflex == ReflexMode::Attack && !enemies) transition(out, unit, ReflexMode::Idle, 'I');

    if (enemies) {
        const EnemyView* e = obs.enemy_at(b);
        std::vector<Combatant> cands;
        for (const auto& su : e->units) cands.push_back({su.id, false, su.kind, {}, su.hp, d.unit(su.kind).can_fly});
        for (const auto& sb : e->buildings) cands.push_back({sb.id, true, {}, sb.kind, 1, false});
        if (auto t = choose_target(d, combatant_of(d, unit), cands)) out.targets.push_back({unit.id, *t});
    }
}

std::optional<InjectOrder> queen_step(const Unit& unit, const Observation& obs) {
    if (unit.transit || unit.inject_ready_tick > obs.tick) return std::nullopt;
    const Building* hall = obs.own_town_hall(unit.base);
    if (!hall) return std::nullopt;
    return InjectOrder{unit.id, hall->id};
}

ReflexResult reflex_step(const Observation& obs) {
    const GameData& d = *obs.data;
    ReflexResult out;
    std::array<bool, BaseId::kCount> drones_done{};
    for (const auto& u : obs.own_units) {
        switch (archetype_of(d, u.kind)) {
            case Archetype::Worker:
                if (!u.transit && !drones_done[u.base.index()]) {
                    drones_done[u.base.index()] = true;
                    drone_step(u.base, obs, out);
                }
                break;
            case Archetype::Transport: overlord_step(u, obs, out); break;
            case Archetype::Combat: combat_step(u, obs, out); break;
            case Archetype::Queen:
                if (auto inj = queen_step(u, obs)) out.orders.push_back(*inj);
                break;
        }
    }
    return out;
}

}  // namespace swarm
