#include "swarm/world.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "swarm/combat.hpp"
#include "swarm/error.hpp"
#include "swarm/hash.hpp"

namespace swarm {

std::string_view activity_name(Activity a) {
    switch (a) {
        case Activity::GatheringMinerals: return "gathering-minerals";
        case Activity::GatheringGas: return "gathering-gas";
        case Activity::Idle: return "idle";
        case Activity::Moving: return "moving";
        case Activity::Attacking: return "attacking";
        case Activity::Fleeing: return "fleeing";
        case Activity::Morphing: return "morphing";
        case Activity::Injecting: return "injecting";
    }
    return "?";
}

std::string_view reflex_mode_name(ReflexMode m) {
    switch (m) {
        case ReflexMode::Gather: return "Gather";
        case ReflexMode::Attack: return "Attack";
        case ReflexMode::Flee: return "Flee";
        case ReflexMode::Idle: return "Idle";
        case ReflexMode::Inject: return "Inject";
    }
    return "?";
}

std::string_view resource_name(Resource r) {
    switch (r) {
        case Resource::Minerals: return "minerals";
        case Resource::Gas: return "gas";
        case Resource::Supply: return "supply";
        case Resource::Larva: return "larva";
        case Resource::Producer: return "producer";
    }
    return "?";
}

namespace {

template <typename T>
T* find_by_id(std::vector<T>& v, EntityId id) {
    auto it = std::lower_bound(v.begin(), v.end(), id, [](const T& e, EntityId x) { return e.id < x; });
    return (it != v.end() && it->id == id) ? &*it : nullptr;
}

template <typename T>
const T* find_by_id(const std::vector<T>& v, EntityId id) {
    auto it = std::lower_bound(v.begin(), v.end(), id, [](const T& e, EntityId x) { return e.id < x; });
    return (it != v.end() && it->id == id) ? &*it : nullptr;
}

std::string join_ids(const std::vector<EntityId>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(ids[i]);
    }
    return out;
}

ReflexMode default_reflex(const GameData& d, UnitKind k) {
    switch (d.unit(k).role) {
        case UnitRole::Worker: return ReflexMode::Gather;
        case UnitRole::Queen: return ReflexMode::Inject;
        default: return ReflexMode::Idle;
    }
}

bool is_worker(const GameData& d, UnitKind k) { return d.unit(k).role == UnitRole::Worker; }

bool available(const Unit& u) { return !u.transit && u.activity != Activity::Morphing; }

Unit make_unit(WorldState& s, UnitKind k, Player p, BaseId b) {
    const GameData& d = *s.data;
    Unit u;
    u.id = s.next_id++;
    u.kind = k;
    u.owner = p;
    u.base = b;
    u.hp = d.unit(k).max_hp;
    u.reflex = default_reflex(d, k);
    u.activity = Activity::Idle;
    if (is_worker(d, k) && town_hall_at(s, p, b)) u.activity = Activity::GatheringMinerals;
    return u;
}

Building make_building(WorldState& s, BuildingKind k, Player p, BaseId b, bool complete) {
    Building bl;
    bl.id = s.next_id++;
    bl.kind = k;
    bl.owner = p;
    bl.base = b;
    bl.hp = s.data->building(k).max_hp;
    bl.complete = complete;
    bl.progress = complete ? s.data->building(k).build_ticks : 0;
    return bl;
}

void insert_unit(WorldState& s, Unit u) {
    auto it = std::lower_bound(s.units.begin(), s.units.end(), u.id,
                               [](const Unit& e, EntityId x) { return e.id < x; });
    s.units.insert(it, std::move(u));
}

bool enemies_at(const WorldState& s, Player p, BaseId b) {
    for (const auto& u : s.units)
        if (u.owner != p && u.base == b) return true;
    for (const auto& bl : s.buildings)
        if (bl.owner != p && bl.base == b) return true;
    return false;
}

// Existing own units of `k` at `loc` (or anywhere) that can start a morph or
// a construction.
std::vector<const Unit*> ready_units(const WorldState& s, Player p, UnitKind k, std::optional<BaseId> loc) {
    std::vector<const Unit*> out;
    for (const auto& u : s.units)
        if (u.owner == p && u.kind == k && available(u) && (!loc || u.base == *loc)) out.push_back(&u);
    return out;
}

std::vector<const Building*> completed_of(const WorldState& s, Player p, BuildingKind need,
                                          std::optional<BaseId> loc, bool exact) {
    std::vector<const Building*> out;
    for (const auto& b : s.buildings) {
        if (b.owner != p || !b.complete || (loc && b.base != *loc)) continue;
        if (exact ? b.kind == need : s.data->satisfies(b.kind, need)) out.push_back(&b);
    }
    return out;
}

const Building* idle_of(const std::vector<const Building*>& v) {
    for (const auto* b : v)
        if (!b->busy) return b;
    return nullptr;
}

int geysers_taken(const WorldState& s, BaseId b) {
    int n = 0;
    for (const auto& bl : s.buildings)
        if (bl.base == b && s.data->building(bl.kind).geyser) ++n;
    return n;
}

bool any_town_hall(const WorldState& s, BaseId b) {
    for (const auto& bl : s.buildings)
        if (bl.base == b && s.data->building(bl.kind).town_hall) return true;
    return false;
}

int unit_supply_delta(const GameData& d, UnitKind k) {
    const auto& st = d.unit(k);
    if (d.unit_recipe(k).producer == ProducerKind::Morph && st.morph_from)
        return std::max(0, st.supply_x2 - d.unit(*st.morph_from).supply_x2);
    return st.supply_x2 * st.spawn_count;
}

void missing_requirements(const WorldState& s, Player p, const std::vector<BuildingKind>& reqs,
                          std::vector<Producible>& missing) {
    for (auto r : reqs)
        if (!has_completed(s, p, r)) missing.emplace_back(r);
}

void push_unique(std::vector<Producible>& v, Producible x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

bool research_in_progress(const WorldState& s, Player p, ResearchId r) {
    for (const auto& pr : s.production)
        if (pr.owner == p && pr.what == Producible{r}) return true;
    return false;
}

Feasibility check_unit(const WorldState& s, UnitKind k, Player p, std::optional<BaseId> loc) {
    const GameData& d = *s.data;
    if (owner_race(k) != p) return Impossible{"wrong-race"};
    const auto& st = d.unit(k);
    const auto& recipe = d.unit_recipe(k);
    std::vector<Producible> missing;
    missing_requirements(s, p, recipe.requires_buildings, missing);
    std::vector<const Building*> producers;
    switch (recipe.producer) {
        case ProducerKind::Larva: {
            for (const auto& b : s.buildings)
                if (b.owner == p && b.complete && d.building(b.kind).town_hall && (!loc || b.base == *loc))
                    producers.push_back(&b);
            if (producers.empty()) push_unique(missing, BuildingKind::Hatchery);
            break;
        }
        case ProducerKind::Building:
            producers = completed_of(s, p, recipe.producer_building, loc, false);
            if (producers.empty()) push_unique(missing, recipe.producer_building);
            break;
        case ProducerKind::Morph:
            if (st.morph_from && ready_units(s, p, *st.morph_from, loc).empty())
                push_unique(missing, *st.morph_from);
            break;
    }
    if (!missing.empty()) return Blocked{std::move(missing)};
    const auto& ps = s.player(p);
    if (ps.minerals < st.minerals) return Unaffordable{Resource::Minerals};
    if (ps.gas < st.gas) return Unaffordable{Resource::Gas};
    if (supply_used_x2(s, p) + unit_supply_delta(d, k) > 2 * supply_cap(s, p)) return Unaffordable{Resource::Supply};
    if (recipe.producer == ProducerKind::Larva) {
        bool larva = std::any_of(producers.begin(), producers.end(), [](const Building* b) { return b->larva > 0; });
        if (!larva) return Unaffordable{Resource::Larva};
    } else if (recipe.producer == ProducerKind::Building) {
        if (!idle_of(producers)) return Unaffordable{Resource::Producer};
    }
    return Ready{};
}

Feasibility check_building(const WorldState& s, BuildingKind k, Player p, std::optional<BaseId> loc,
                           std::optional<BaseId> builder_from) {
    const GameData& d = *s.data;
    if (owner_race(k) != p) return Impossible{"wrong-race"};
    const auto& st = d.building(k);
    if (st.unique) {
        for (const auto& b : s.buildings)
            if (b.owner == p && b.kind == k) return Impossible{"already-exists"};
    }
    if (loc && !st.morph_from) {
        if (st.town_hall && any_town_hall(s, *loc)) return Impossible{"base-occupied"};
        if (st.geyser && geysers_taken(s, *loc) >= d.constants().geysers_per_base) return Impossible{"no-free-geyser"};
    }
    std::vector<Producible> missing;
    missing_requirements(s, p, d.building_recipe(k).requires_buildings, missing);
    std::vector<const Building*> sources;
    if (st.morph_from) {
        sources = completed_of(s, p, *st.morph_from, loc, true);
        if (sources.empty()) push_unique(missing, *st.morph_from);
    } else {
        UnitKind worker = p == Player::Zerg ? UnitKind::Drone : UnitKind::SCV;
        if (ready_units(s, p, worker, builder_from ? builder_from : loc).empty()) push_unique(missing, worker);
        if (p == Player::Zerg && !st.town_hall) {
            bool hall = false;
            for (const auto& b : s.buildings)
                if (b.owner == p && b.complete && d.building(b.kind).town_hall && (!loc || b.base == *loc)) hall = true;
            if (!hall) push_unique(missing, BuildingKind::Hatchery);
        }
    }
    if (!missing.empty()) return Blocked{std::move(missing)};
    const auto& ps = s.player(p);
    if (ps.minerals < st.minerals) return Unaffordable{Resource::Minerals};
    if (ps.gas < st.gas) return Unaffordable{Resource::Gas};
    if (st.morph_from && !idle_of(sources)) return Unaffordable{Resource::Producer};
    return Ready{};
}

Feasibility check_research(const WorldState& s, ResearchId r, Player p) {
    const GameData& d = *s.data;
    const auto& st = d.research(r);
    if (owner_race(st.producer) != p) return Impossible{"wrong-race"};
    if (s.player(p).research_done.test(static_cast<std::size_t>(r))) return Impossible{"already-researched"};
    if (research_in_progress(s, p, r)) return Impossible{"in-progress"};
    std::vector<Producible> missing;
    auto producers = completed_of(s, p, st.producer, std::nullopt, false);
    if (producers.empty()) push_unique(missing, st.producer);
    missing_requirements(s, p, st.requires_buildings, missing);
    if (!missing.empty()) return Blocked{std::move(missing)};
    const auto& ps = s.player(p);
    if (ps.minerals < st.minerals) return Unaffordable{Resource::Minerals};
    if (ps.gas < st.gas) return Unaffordable{Resource::Gas};
    if (!idle_of(producers)) return Unaffordable{Resource::Producer};
    return Ready{};
}

void debit(WorldState& s, Player p, int minerals, int gas) {
    auto& ps = s.player(p);
    ps.minerals -= minerals;
    ps.gas -= gas;
}

EntityId add_production(WorldState& s, Production pr) {
    pr.id = s.next_id++;
    EntityId id = pr.id;
    s.production.push_back(std::move(pr));
    return id;
}

void remove_dead(WorldState& s, TickEvents* events, std::vector<Casualty>& out) {
    std::vector<EntityId> dead_units, dead_buildings;
    for (const auto& u : s.units)
        if (u.hp <= 0) {
            dead_units.push_back(u.id);
            out.push_back({u.id, false, std::string(identifier(u.kind)), u.owner, u.base});
        }
    for (const auto& b : s.buildings)
        if (b.hp <= 0) {
            dead_buildings.push_back(b.id);
            out.push_back({b.id, true, std::string(identifier(b.kind)), b.owner, b.base});
        }
    if (dead_units.empty() && dead_buildings.empty()) return;
    std::erase_if(s.units, [](const Unit& u) { return u.hp <= 0; });
    std::erase_if(s.buildings, [](const Building& b) { return b.hp <= 0; });
    auto gone = [&](const std::optional<EntityId>& id, const std::vector<EntityId>& v) {
        return id && std::find(v.begin(), v.end(), *id) != v.end();
    };
    std::erase_if(s.production, [&](const Production& pr) {
        return gone(pr.producer, dead_buildings) || gone(pr.source_unit, dead_units);
    });
    (void)events;
}

void apply_move(WorldState& s, const std::vector<EntityId>& ids, BaseId dest, MoveMode mode,
                std::optional<int> gather) {
    for (auto id : ids) {
        Unit* u = s.find_unit(id);
        if (!u || u->activity == Activity::Morphing) {
            s.log.push_back("tick " + std::to_string(s.tick) + ": move ignored for unit " + std::to_string(id));
            continue;
        }
        if (u->base == dest && (!u->transit || u->transit->progress_milli == 0)) {
            u->transit.reset();
            if (gather) {
                u->activity = *gather == 0 ? Activity::GatheringMinerals : Activity::GatheringGas;
                u->gas_slot = *gather;
            } else {
                u->activity = mode == MoveMode::Flee ? Activity::Fleeing : Activity::Idle;
            }
            continue;
        }
        if (effective_speed_milli(s, *u) <= 0) continue;
        // A unit mid-edge continues from the node it is heading to.
        BaseId start = u->base;
        int carried = 0;
        if (u->transit && u->transit->progress_milli > 0) {
            BaseId next = u->transit->path[u->transit->leg + 1];
            auto via_next = s.map->path(next, dest);
            auto via_back = s.map->path(u->base, dest);
            if (via_next.size() <= via_back.size()) {
                start = next;
                carried = u->transit->progress_milli;
            }
        }
        Transit t;
        t.path = s.map->path(start, dest);
        t.mode = mode;
        t.gather_on_arrival = gather;
        if (start != u->base) {
            t.path.insert(t.path.begin(), u->base);
            t.progress_milli = carried;
        }
        u->transit = std::move(t);
        u->activity = mode == MoveMode::Flee ? Activity::Fleeing : Activity::Moving;
        u->gas_slot = 0;
    }
}

void apply_stance(WorldState& s, const StanceOrder& o) {
    const GameData& d = *s.data;
    for (auto id : o.units) {
        Unit* u = s.find_unit(id);
        if (!u || u->activity == Activity::Morphing) continue;
        u->reflex = o.mode;
        switch (o.mode) {
            case ReflexMode::Gather:
                if (!u->transit) {
                    u->activity = town_hall_at(s, u->owner, u->base) ? Activity::GatheringMinerals : Activity::Idle;
                    u->gas_slot = 0;
                }
                break;
            case ReflexMode::Attack:
                if (!u->transit) u->activity = Activity::Attacking;
                break;
            case ReflexMode::Flee:
                if (!u->transit) u->activity = Activity::Fleeing;
                break;
            case ReflexMode::Idle:
                if (!u->transit && u->activity != Activity::Injecting) u->activity = Activity::Idle;
                break;
            case ReflexMode::Inject: break;
        }
        (void)d;
    }
}

void move_units(WorldState& s) {
    for (auto& u : s.units) {
        if (!u.transit) continue;
        Transit& t = *u.transit;
        if (t.mode == MoveMode::AttackMove && t.progress_milli == 0 && t.leg > 0 && enemies_at(s, u.owner, u.base))
            continue;
        t.progress_milli += effective_speed_milli(s, u);
        while (t.progress_milli >= 1000 && t.leg + 1 < t.path.size()) {
            t.progress_milli -= 1000;
            ++t.leg;
            u.base = t.path[t.leg];
            if (t.mode == MoveMode::AttackMove && t.leg + 1 < t.path.size() && enemies_at(s, u.owner, u.base)) {
                t.progress_milli = 0;
                break;
            }
        }
        if (t.leg + 1 >= t.path.size()) {
            auto gather = t.gather_on_arrival;
            auto mode = t.mode;
            u.transit.reset();
            if (gather) {
                bool ok = *gather == 0 ? town_hall_at(s, u.owner, u.base) != nullptr : true;
                u.activity = !ok ? Activity::Idle
                             : *gather == 0 ? Activity::GatheringMinerals
                                            : Activity::GatheringGas;
                u.gas_slot = ok ? *gather : 0;
            } else {
                u.activity = mode == MoveMode::Flee ? Activity::Fleeing : Activity::Idle;
            }
        }
    }
}

void accrue_income(WorldState& s) {
    const GameData& d = *s.data;
    const auto& c = d.constants();
    for (Player p : {Player::Zerg, Player::Terran}) {
        std::array<int, BaseId::kCount> mineral_workers{};
        std::map<std::pair<int, int>, int> gas_workers;
        for (const auto& u : s.units) {
            if (u.owner != p || u.transit || !is_worker(d, u.kind)) continue;
            if (u.activity == Activity::GatheringMinerals) ++mineral_workers[u.base.index()];
            if (u.activity == Activity::GatheringGas) ++gas_workers[{u.base.index(), u.gas_slot}];
        }
        int minerals = 0, gas = 0;
        for (int i = 0; i < BaseId::kCount; ++i)
            if (mineral_workers[i] > 0 && town_hall_at(s, p, BaseId::from_index(i)))
                minerals += std::min(mineral_workers[i], c.mineral_saturation_per_base) * c.mineral_rate_per_worker;
        for (const auto& b : s.buildings) {
            if (b.owner != p || !b.complete || !d.building(b.kind).geyser) continue;
            auto it = gas_workers.find({b.base.index(), b.slot});
            if (it != gas_workers.end()) gas += std::min(it->second, c.gas_workers_per_extractor) * c.gas_rate_per_worker;
        }
        s.player(p).minerals += minerals;
        s.player(p).gas += gas;
    }
}

void grow_larva(WorldState& s) {
    const auto& c = s.data->constants();
    for (auto& b : s.buildings) {
        if (b.owner != Player::Zerg || !b.complete || !s.data->building(b.kind).town_hall) continue;
        if (b.larva < c.larva_cap) {
            if (++b.larva_timer >= c.larva_regen_ticks) {
                ++b.larva;
                b.larva_timer = 0;
            }
        } else {
            b.larva_timer = 0;
        }
        if (b.inject_remaining > 0 && --b.inject_remaining == 0)
            b.larva = std::min(b.larva + c.inject_larva, c.larva_hard_cap);
    }
}

void progress_production(WorldState& s, TickEvents& ev) {
    const GameData& d = *s.data;
    for (auto& b : s.buildings) {
        if (b.complete) continue;
        if (++b.progress >= d.building(b.kind).build_ticks) {
            b.complete = true;
            ev.completed.push_back(std::string(player_name(b.owner)) + " " + std::string(identifier(b.kind)) + "@" +
                                   b.base.str());
        }
    }
    std::vector<Production> done;
    for (auto& pr : s.production)
        if (--pr.remaining <= 0) done.push_back(pr);
    std::erase_if(s.production, [](const Production& pr) { return pr.remaining <= 0; });
    for (const auto& pr : done) {
        ev.completed.push_back(std::string(player_name(pr.owner)) + " " + identifier(pr.what) + "@" + pr.base.str());
        if (pr.producer)
            if (Building* b = s.find_building(*pr.producer)) b->busy = false;
        if (const auto* k = std::get_if<UnitKind>(&pr.what)) {
            BaseId at = pr.base;
            if (pr.source_unit) {
                const Unit* src = s.find_unit(*pr.source_unit);
                if (!src) continue;
                at = src->base;
                std::erase_if(s.units, [&](const Unit& u) { return u.id == *pr.source_unit; });
            }
            for (int i = 0; i < d.unit(*k).spawn_count; ++i) insert_unit(s, make_unit(s, *k, pr.owner, at));
        } else if (const auto* bk = std::get_if<BuildingKind>(&pr.what)) {
            if (Building* b = pr.producer ? s.find_building(*pr.producer) : nullptr) {
                b->kind = *bk;
                b->hp = d.building(*bk).max_hp;
            }
        } else if (const auto* r = std::get_if<ResearchId>(&pr.what)) {
            s.player(pr.owner).research_done.set(static_cast<std::size_t>(*r));
        }
    }
}

void check_winner(WorldState& s) {
    int z = count_town_halls(s, Player::Zerg);
    int t = count_town_halls(s, Player::Terran);
    if (z == 0 && t == 0) s.draw = true;
    else if (z == 0) s.loser = Player::Zerg;
    else if (t == 0) s.loser = Player::Terran;
}

}  // namespace

Unit* WorldState::find_unit(EntityId id) { return find_by_id(units, id); }
const Unit* WorldState::find_unit(EntityId id) const { return find_by_id(units, id); }
Building* WorldState::find_building(EntityId id) { return find_by_id(buildings, id); }
const Building* WorldState::find_building(EntityId id) const { return find_by_id(buildings, id); }

WorldState new_match_state(const GameData& data, const MapMatrix& map, std::uint64_t seed, int terran_workers) {
    WorldState s;
    s.data = &data;
    s.map = &map;
    s.rng_seed = seed;
    for (Player p : {Player::Zerg, Player::Terran}) {
        s.player(p).minerals = data.constants().starting_minerals;
        BaseId home = map.home(p);
        Building hall = make_building(s, p == Player::Zerg ? BuildingKind::Hatchery : BuildingKind::CommandCenter, p,
                                      home, true);
        if (p == Player::Zerg) hall.larva = data.constants().larva_cap;
        s.buildings.push_back(hall);
        int workers = p == Player::Zerg ? 12 : terran_workers;
        for (int i = 0; i < workers; ++i)
            insert_unit(s, make_unit(s, p == Player::Zerg ? UnitKind::Drone : UnitKind::SCV, p, home));
        if (p == Player::Zerg) insert_unit(s, make_unit(s, UnitKind::Overlord, p, home));
    }
    refresh_intel(s);
    return s;
}

std::string describe(const EngineOrder& order) {
    return std::visit(
        [](const auto& o) -> std::string {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, MoveOrder>) {
                static constexpr std::string_view names[] = {"move", "attack-move", "flee"};
                return std::string(names[static_cast<int>(o.mode)]) + " [" + join_ids(o.units) + "] -> " +
                       o.destination.str();
            } else if constexpr (std::is_same_v<T, GatherOrder>) {
                return "gather [" + join_ids(o.units) + "] @" + o.base.str() +
                       (o.slot ? " gas" + std::to_string(o.slot) : " minerals");
            } else if constexpr (std::is_same_v<T, StanceOrder>) {
                return "stance [" + join_ids(o.units) + "] " + std::string(reflex_mode_name(o.mode));
            } else if constexpr (std::is_same_v<T, InjectOrder>) {
                return "inject " + std::to_string(o.queen) + " -> " + std::to_string(o.town_hall);
            } else {
                return "produce " + identifier(o.what) + " @" + o.base.str() + " #" + std::to_string(o.entity);
            }
        },
        order);
}

std::string describe(const Feasibility& f) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Ready>) {
                return "ready";
            } else if constexpr (std::is_same_v<T, Blocked>) {
                std::string out = "blocked:";
                for (std::size_t i = 0; i < v.missing.size(); ++i) out += (i ? "," : "") + identifier(v.missing[i]);
                return out;
            } else if constexpr (std::is_same_v<T, Unaffordable>) {
                return "unaffordable:" + std::string(resource_name(v.resource));
            } else {
                return "impossible:" + v.reason;
            }
        },
        f);
}

Feasibility check_prerequisites(const WorldState& s, const Producible& what, Player p, std::optional<BaseId> location,
                                std::optional<BaseId> builder_from) {
    return std::visit(
        [&](const auto& x) -> Feasibility {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, UnitKind>) return check_unit(s, x, p, location);
            else if constexpr (std::is_same_v<T, BuildingKind>) return check_building(s, x, p, location, builder_from);
            else return check_research(s, x, p);
        },
        what);
}

Feasibility check_prerequisites(const WorldState& s, std::string_view name, Player p, std::optional<BaseId> location) {
    if (auto u = match_unit(name)) return check_prerequisites(s, Producible{*u}, p, location);
    if (auto b = match_building(name)) return check_prerequisites(s, Producible{*b}, p, location);
    if (auto r = match_research(name)) return check_prerequisites(s, Producible{*r}, p, location);
    throw Error("unknown-producible", "unknown producible '" + std::string(name) + "'");
}

EngineOrder spawn_order(WorldState& s, Player p, const Producible& what, BaseId location,
                        std::optional<BaseId> builder_from) {
    if (!std::holds_alternative<Ready>(check_prerequisites(s, what, p, location, builder_from)))
        throw Error("not-ready", identifier(what) + " is not ready at " + location.str());
    const GameData& d = *s.data;
    ProduceOrder out{what, p, location, 0};
    if (const auto* k = std::get_if<UnitKind>(&what)) {
        const auto& st = d.unit(*k);
        const auto& recipe = d.unit_recipe(*k);
        debit(s, p, st.minerals, st.gas);
        Production pr{0, what, p, location, st.build_ticks, unit_supply_delta(d, *k), std::nullopt, std::nullopt};
        if (recipe.producer == ProducerKind::Larva) {
            for (auto& b : s.buildings)
                if (b.owner == p && b.complete && b.base == location && d.building(b.kind).town_hall && b.larva > 0) {
                    --b.larva;
                    break;
                }
        } else if (recipe.producer == ProducerKind::Building) {
            for (auto& b : s.buildings)
                if (b.owner == p && b.complete && !b.busy && b.base == location &&
                    d.satisfies(b.kind, recipe.producer_building)) {
                    b.busy = true;
                    pr.producer = b.id;
                    break;
                }
        } else {
            for (auto& u : s.units)
                if (u.owner == p && u.kind == *st.morph_from && u.base == location && available(u)) {
                    u.activity = Activity::Morphing;
                    u.gas_slot = 0;
                    pr.source_unit = u.id;
                    break;
                }
        }
        out.entity = add_production(s, std::move(pr));
    } else if (const auto* bk = std::get_if<BuildingKind>(&what)) {
        const auto& st = d.building(*bk);
        debit(s, p, st.minerals, st.gas);
        if (st.morph_from) {
            Production pr{0, what, p, location, st.build_ticks, 0, std::nullopt, std::nullopt};
            for (auto& b : s.buildings)
                if (b.owner == p && b.complete && !b.busy && b.base == location && b.kind == *st.morph_from) {
                    b.busy = true;
                    pr.producer = b.id;
                    break;
                }
            out.entity = add_production(s, std::move(pr));
        } else {
            Building nb = make_building(s, *bk, p, location, false);
            if (st.geyser) {
                std::set<int> used;
                for (const auto& b : s.buildings)
                    if (b.base == location && d.building(b.kind).geyser) used.insert(b.slot);
                for (int k = 1; k <= d.constants().geysers_per_base; ++k)
                    if (!used.count(k)) {
                        nb.slot = k;
                        break;
                    }
            }
            out.entity = nb.id;
            s.buildings.push_back(nb);
            if (p == Player::Zerg) {
                // The builder Drone becomes the building; prefer a mineral gatherer.
                EntityId chosen = 0;
                for (const auto& u : s.units)
                    if (u.owner == p && u.kind == UnitKind::Drone && u.base == builder_from.value_or(location) &&
                        available(u) &&
                        (chosen == 0 || (u.activity == Activity::GatheringMinerals &&
                                         s.find_unit(chosen)->activity != Activity::GatheringMinerals)))
                        chosen = u.id;
                std::erase_if(s.units, [&](const Unit& u) { return u.id == chosen; });
            }
        }
    } else {
        ResearchId r = std::get<ResearchId>(what);
        const auto& st = d.research(r);
        debit(s, p, st.minerals, st.gas);
        Production pr{0, what, p, location, st.ticks, 0, std::nullopt, std::nullopt};
        for (auto& b : s.buildings)
            if (b.owner == p && b.complete && !b.busy && d.satisfies(b.kind, st.producer)) {
                b.busy = true;
                pr.producer = b.id;
                pr.base = b.base;
                break;
            }
        out.base = pr.base;
        out.entity = add_production(s, std::move(pr));
    }
    return out;
}

void apply_order(WorldState& s, const EngineOrder& order) {
    std::visit(
        [&](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, MoveOrder>) {
                apply_move(s, o.units, o.destination, o.mode, std::nullopt);
            } else if constexpr (std::is_same_v<T, GatherOrder>) {
                std::vector<EntityId> workers;
                for (auto id : o.units) {
                    const Unit* u = s.find_unit(id);
                    if (u && is_worker(*s.data, u->kind)) workers.push_back(id);
                }
                if (o.slot != 0) {
                    bool ok = false;
                    for (const auto& b : s.buildings)
                        if (b.base == o.base && b.slot == o.slot && b.complete && s.data->building(b.kind).geyser &&
                            !workers.empty() && b.owner == s.find_unit(workers.front())->owner)
                            ok = true;
                    if (!ok) {
                        s.log.push_back("tick " + std::to_string(s.tick) + ": no extractor " +
                                        std::to_string(o.slot) + " at " + o.base.str());
                        return;
                    }
                }
                apply_move(s, workers, o.base, MoveMode::Move, o.slot);
            } else if constexpr (std::is_same_v<T, StanceOrder>) {
                apply_stance(s, o);
            } else if constexpr (std::is_same_v<T, InjectOrder>) {
                Unit* q = s.find_unit(o.queen);
                Building* h = s.find_building(o.town_hall);
                if (!q || !h || q->base != h->base || q->transit || q->inject_ready_tick > s.tick) {
                    s.log.push_back("tick " + std::to_string(s.tick) + ": inject ignored");
                    return;
                }
                q->inject_ready_tick = s.tick + s.data->constants().inject_cooldown_ticks;
                q->activity = Activity::Injecting;
                if (h->inject_remaining == 0) h->inject_remaining = s.data->constants().inject_cooldown_ticks;
            } else {
                // Already applied when admitted.
            }
        },
        order);
}

TickEvents advance_tick(WorldState& s, std::span<const EngineOrder> orders) {
    TickEvents ev;
    for (const auto& o : orders) apply_order(s, o);
    accrue_income(s);
    grow_larva(s);
    progress_production(s, ev);
    move_units(s);
    for (int i = 0; i < BaseId::kCount; ++i) {
        BaseId b = BaseId::from_index(i);
        if (has_presence(s, Player::Zerg, b) && has_presence(s, Player::Terran, b)) {
            auto c = resolve_combat(s, b);
            ev.casualties.insert(ev.casualties.end(), c.begin(), c.end());
        }
    }
    check_winner(s);
    ++s.tick;
    refresh_intel(s);
    return ev;
}

std::vector<Casualty> resolve_combat(WorldState& s, BaseId base) {
    const GameData& d = *s.data;
    std::vector<Casualty> out;
    std::array<std::vector<Combatant>, 2> side;
    for (const auto& u : s.units)
        if (u.base == base && u.hp > 0) side[static_cast<int>(u.owner)].push_back(combatant_of(d, u));
    for (const auto& b : s.buildings)
        if (b.base == base && b.hp > 0) side[static_cast<int>(b.owner)].push_back(combatant_of(d, b));
    if (side[0].empty() || side[1].empty()) return out;

    std::map<EntityId, int> damage;
    auto fire = [&](const Combatant& me, Player owner) {
        const auto& enemies = side[1 - static_cast<int>(owner)];
        auto target = choose_target(d, me, enemies);
        if (!target) return;
        auto it = std::find_if(enemies.begin(), enemies.end(), [&](const Combatant& c) { return c.id == *target; });
        damage[*target] += hit_damage(d, me, *it, s.player(owner));
    };
    for (const auto& u : s.units)
        if (u.base == base && u.hp > 0 && engages(d, u)) fire(combatant_of(d, u), u.owner);
    for (const auto& b : s.buildings)
        if (b.base == base && b.hp > 0 && b.complete) fire(combatant_of(d, b), b.owner);

    for (const auto& [id, dmg] : damage) {
        if (dmg <= 0) continue;
        if (Unit* u = s.find_unit(id)) {
            u->hp = std::max(0, u->hp - dmg);
            u->last_damaged_tick = s.tick;
        } else if (Building* b = s.find_building(id)) {
            b->hp = std::max(0, b->hp - dmg);
            b->last_damaged_tick = s.tick;
        }
    }
    // Medivacs patch up the most damaged surviving ground unit at the base.
    for (const auto& m : s.units) {
        if (m.kind != UnitKind::Medivac || m.base != base || m.hp <= 0) continue;
        Unit* best = nullptr;
        for (auto& u : s.units) {
            if (u.owner != m.owner || u.base != base || u.hp <= 0 || d.unit(u.kind).can_fly) continue;
            int missing = d.unit(u.kind).max_hp - u.hp;
            if (missing <= 0) continue;
            if (!best || missing > d.unit(best->kind).max_hp - best->hp) best = &u;
        }
        if (best)
            best->hp = std::min(d.unit(best->kind).max_hp, best->hp + d.constants().medivac_heal_per_tick);
    }
    remove_dead(s, nullptr, out);
    return out;
}

void refresh_intel(WorldState& s) {
    for (Player p : {Player::Zerg, Player::Terran}) {
        auto& ps = s.player(p);
        for (int i = 0; i < BaseId::kCount; ++i) {
            BaseId b = BaseId::from_index(i);
            if (!has_presence(s, p, b)) continue;
            IntelSnapshot snap;
            snap.seen_tick = s.tick;
            for (const auto& u : s.units)
                if (u.owner != p && u.base == b) snap.units.push_back({u.id, u.kind, b, u.activity, u.gas_slot, u.hp});
            for (const auto& bl : s.buildings)
                if (bl.owner != p && bl.base == b) snap.buildings.push_back({bl.id, bl.kind, b, bl.complete, bl.slot});
            ps.intel[i] = std::move(snap);
        }
    }
}

int supply_used_x2(const WorldState& s, Player p) {
    int total = 0;
    for (const auto& u : s.units)
        if (u.owner == p) total += s.data->unit(u.kind).supply_x2;
    for (const auto& pr : s.production)
        if (pr.owner == p) total += pr.supply_x2;
    return total;
}

int supply_cap(const WorldState& s, Player p) {
    int cap = 0;
    for (const auto& u : s.units)
        if (u.owner == p) cap += s.data->unit(u.kind).supply_provided;
    for (const auto& b : s.buildings)
        if (b.owner == p && b.complete) cap += s.data->building(b.kind).supply_provided;
    return std::min(cap, s.data->constants().supply_hard_cap);
}

int effective_speed_milli(const WorldState& s, const Unit& u) {
    int speed = s.data->unit(u.kind).speed_milli;
    const auto& done = s.player(u.owner).research_done;
    for (auto r : kAllResearch) {
        if (!done.test(static_cast<std::size_t>(r))) continue;
        const auto& pct = s.data->research(r).speed_percent;
        if (auto it = pct.find(u.kind); it != pct.end()) speed = speed * it->second / 100;
    }
    return speed;
}

bool has_presence(const WorldState& s, Player p, BaseId b) {
    for (const auto& u : s.units)
        if (u.owner == p && u.base == b) return true;
    for (const auto& bl : s.buildings)
        if (bl.owner == p && bl.base == b) return true;
    return false;
}

const Building* town_hall_at(const WorldState& s, Player p, BaseId b, bool require_complete) {
    for (const auto& bl : s.buildings)
        if (bl.owner == p && bl.base == b && s.data->building(bl.kind).town_hall && (bl.complete || !require_complete))
            return &bl;
    return nullptr;
}

int count_units(const WorldState& s, Player p, UnitKind k) {
    return static_cast<int>(std::count_if(s.units.begin(), s.units.end(),
                                          [&](const Unit& u) { return u.owner == p && u.kind == k; }));
}

int count_town_halls(const WorldState& s, Player p) {
    return static_cast<int>(std::count_if(s.buildings.begin(), s.buildings.end(), [&](const Building& b) {
        return b.owner == p && s.data->building(b.kind).town_hall;
    }));
}

bool has_completed(const WorldState& s, Player p, BuildingKind need) {
    for (const auto& b : s.buildings)
        if (b.owner == p && b.complete && s.data->satisfies(b.kind, need)) return true;
    return false;
}

std::uint64_t state_digest(const WorldState& s) {
    std::ostringstream o;
    o << s.tick << '|' << s.rng_seed << '|' << s.next_id << '|';
    for (const auto& p : s.players) o << p.minerals << ',' << p.gas << ',' << p.research_done.to_string() << ';';
    for (const auto& u : s.units) {
        o << 'u' << u.id << ',' << int(u.kind) << ',' << int(u.owner) << ',' << u.base.index() << ',' << u.hp << ','
          << int(u.activity) << ',' << u.gas_slot << ',' << int(u.reflex) << ',' << u.inject_ready_tick;
        if (u.transit) {
            o << ",t" << u.transit->leg << ',' << u.transit->progress_milli << ',' << int(u.transit->mode);
            for (auto b : u.transit->path) o << ':' << b.index();
        }
        o << ';';
    }
    for (const auto& b : s.buildings)
        o << 'b' << b.id << ',' << int(b.kind) << ',' << int(b.owner) << ',' << b.base.index() << ',' << b.hp << ','
          << b.progress << ',' << b.complete << ',' << b.slot << ',' << b.busy << ',' << b.larva << ','
          << b.larva_timer << ',' << b.inject_remaining << ';';
    for (const auto& pr : s.production)
        o << 'p' << pr.id << ',' << identifier(pr.what) << ',' << int(pr.owner) << ',' << pr.base.index() << ','
          << pr.remaining << ';';
    for (const auto& p : s.players)
        for (std::size_t i = 0; i < p.intel.size(); ++i)
            if (p.intel[i]) o << 'i' << i << ',' << p.intel[i]->seen_tick << ',' << p.intel[i]->units.size() << ','
                              << p.intel[i]->buildings.size() << ';';
    return fnv1a64(o.str());
}

}  // namespace swarm
