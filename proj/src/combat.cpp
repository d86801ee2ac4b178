#include "swarm/combat.hpp"

#include <tuple>

namespace swarm {

Combatant combatant_of(const GameData& d, const Unit& u) {
    Combatant c;
    c.id = u.id;
    c.unit = u.kind;
    c.hp = u.hp;
    c.flying = d.unit(u.kind).can_fly;
    return c;
}

Combatant combatant_of(const GameData&, const Building& b) {
    Combatant c;
    c.id = b.id;
    c.building = true;
    c.structure = b.kind;
    c.hp = b.hp;
    return c;
}

namespace {

int attack_vs(const GameData& d, const Combatant& a, bool flying_target) {
    if (a.building) {
        const auto& st = d.building(a.structure);
        return flying_target ? st.air_attack : st.ground_attack;
    }
    const auto& st = d.unit(a.unit);
    return flying_target ? st.air_attack : st.ground_attack;
}

bool has_anti_air(const GameData& d, const Combatant& a) {
    return a.building ? d.building(a.structure).air_attack > 0 : d.unit(a.unit).air_attack > 0;
}

}  // namespace

std::optional<int> target_rank(const GameData& d, const Combatant& attacker, const Combatant& target) {
    if (attack_vs(d, attacker, target.flying) <= 0) return std::nullopt;
    if (target.building) {
        const auto& st = d.building(target.structure);
        return st.ground_attack > 0 || st.air_attack > 0 ? 4 : 5;
    }
    if (target.unit == UnitKind::Medivac && has_anti_air(d, attacker)) return 0;
    switch (d.unit(target.unit).role) {
        case UnitRole::Combat:
        case UnitRole::Queen: return 1;
        case UnitRole::Worker: return 2;
        case UnitRole::Transport: return 3;
    }
    return 3;
}

std::optional<EntityId> choose_target(const GameData& d, const Combatant& attacker,
                                      std::span<const Combatant> enemies) {
    std::optional<std::tuple<int, int, EntityId>> best;
    for (const auto& e : enemies) {
        if (e.hp <= 0) continue;
        auto rank = target_rank(d, attacker, e);
        if (!rank) continue;
        std::tuple<int, int, EntityId> key{*rank, e.hp, e.id};
        if (!best || key < *best) best = key;
    }
    if (!best) return std::nullopt;
    return std::get<2>(*best);
}

int hit_damage(const GameData& d, const Combatant& attacker, const Combatant& target,
               const PlayerState& attacker_owner) {
    int dmg = attack_vs(d, attacker, target.flying);
    if (dmg <= 0) return 0;
    if (!attacker.building) {
        const auto& st = d.unit(attacker.unit);
        for (auto r : kAllResearch) {
            if (!attacker_owner.research_done.test(static_cast<std::size_t>(r))) continue;
            const auto& rs = d.research(r);
            if (st.can_fly) dmg += rs.air_bonus;
            else if (st.melee) dmg += rs.melee_bonus;
            else dmg += rs.ranged_bonus;
        }
        // Melee units closing on a tank from the flank take reduced fire.
        if (attacker.unit == UnitKind::SiegeTank && !target.building && d.unit(target.unit).melee)
            dmg = dmg * d.constants().flank_damage_taken_percent / 100;
    }
    return dmg;
}

bool engages(const GameData& d, const Unit& u) {
    const auto& st = d.unit(u.kind);
    if (st.ground_attack <= 0 && st.air_attack <= 0) return false;
    if (u.activity == Activity::Fleeing || u.activity == Activity::Morphing) return false;
    if (u.transit && u.transit->mode != MoveMode::AttackMove) return false;
    if (st.role == UnitRole::Worker) return u.activity == Activity::Attacking;
    return true;
}

}  // namespace swarm
