#include "swarm/terran_policy.hpp"

#include <algorithm>
#include <map>

#include "swarm/error.hpp"

namespace swarm {

namespace {

constexpr Player kMe = Player::Terran;

const std::array<DifficultyParams, 5>& table() {
    using U = UnitKind;
    static const std::array<DifficultyParams, 5> t = {{
        {Difficulty::VeryEasy, 12, 1, 0, 0, 0, false, 6, 300, 240, 20, {{U::Marine, 3}}, false},
        {Difficulty::Easy, 16, 1, 0, 0, 0, false, 10, 270, 220, 20, {{U::Marine, 5}}, false},
        {Difficulty::Medium, 20, 2, 0, 0, 1, false, 16, 240, 200, 30, {{U::Marine, 6}, {U::Marauder, 2}}, true},
        {Difficulty::MediumHard, 24, 2, 1, 0, 1, false, 24, 240, 180, 30,
         {{U::Marine, 8}, {U::Marauder, 2}, {U::Hellion, 2}}, true},
        {Difficulty::Hard, 30, 3, 1, 1, 2, true, 40, 270, 180, 30,
         {{U::Marine, 10}, {U::Marauder, 2}, {U::SiegeTank, 2}, {U::Medivac, 1}, {U::Thor, 1}}, true},
    }};
    return t;
}

std::optional<BuildingKind> producer_of(UnitKind k) {
    switch (k) {
        case UnitKind::Marine:
        case UnitKind::Marauder:
        case UnitKind::Reaper: return BuildingKind::Barracks;
        case UnitKind::Hellion:
        case UnitKind::SiegeTank:
        case UnitKind::Cyclone:
        case UnitKind::Thor: return BuildingKind::Factory;
        case UnitKind::Medivac:
        case UnitKind::Viking:
        case UnitKind::Raven: return BuildingKind::Starport;
        default: return std::nullopt;
    }
}

int count_buildings(const WorldState& s, BuildingKind k) {
    return static_cast<int>(
        std::count_if(s.buildings.begin(), s.buildings.end(), [&](const Building& b) { return b.owner == kMe && b.kind == k; }));
}

bool is_combat(const WorldState& s, UnitKind k) { return s.data->unit(k).role == UnitRole::Combat; }

}  // namespace

std::string_view difficulty_name(Difficulty d) {
    switch (d) {
        case Difficulty::VeryEasy: return "VeryEasy";
        case Difficulty::Easy: return "Easy";
        case Difficulty::Medium: return "Medium";
        case Difficulty::MediumHard: return "MediumHard";
        case Difficulty::Hard: return "Hard";
    }
    return "?";
}

Difficulty parse_difficulty(std::string_view text) {
    std::string folded = fold_name(text);
    for (const auto& row : table())
        if (fold_name(difficulty_name(row.level)) == folded) return row.level;
    throw Error("bad-difficulty", "unknown difficulty '" + std::string(text) + "'");
}

const DifficultyParams& difficulty_params(Difficulty d) { return table()[static_cast<std::size_t>(d)]; }

TerranPolicy::TerranPolicy(Difficulty d, std::uint64_t seed)
    : params_(difficulty_params(d)), rng_(seed ^ 0x7e55a1u), next_wave_(params_.first_wave_tick) {
    next_wave_ += static_cast<int>(rng_() % static_cast<std::uint64_t>(2 * params_.jitter + 1)) - params_.jitter;
}

bool TerranPolicy::try_spawn(WorldState& s, const Producible& what, BaseId at) {
    if (!std::holds_alternative<Ready>(check_prerequisites(s, what, kMe, at))) return false;
    spawn_order(s, kMe, what, at);
    return true;
}

void TerranPolicy::build(WorldState& s, BuildingKind k, BaseId at) { try_spawn(s, k, at); }

BaseId TerranPolicy::wave_target(const WorldState& s) const {
    BaseId home = s.map->home(kMe);
    std::optional<BaseId> best;
    for (int i = 0; i < BaseId::kCount; ++i) {
        const auto& snap = s.player(kMe).intel[i];
        if (!snap) continue;
        bool hall = std::any_of(snap->buildings.begin(), snap->buildings.end(),
                                [&](const SeenBuilding& b) { return s.data->building(b.kind).town_hall; });
        BaseId b = BaseId::from_index(i);
        if (hall && (!best || s.map->distance(home, b) < s.map->distance(home, *best))) best = b;
    }
    return best.value_or(s.map->home(Player::Zerg));
}

std::vector<EngineOrder> TerranPolicy::step(WorldState& s) {
    std::vector<EngineOrder> orders;
    BaseId home = s.map->home(kMe);
    const Building* hall = town_hall_at(s, kMe, home);
    if (!hall)
        for (const auto& b : s.buildings)
            if (b.owner == kMe && b.complete && s.data->building(b.kind).town_hall) {
                hall = &b;
                break;
            }
    BaseId base = hall ? hall->base : home;

    // Economy and structures, in priority order.
    if (hall && count_units(s, kMe, UnitKind::SCV) < params_.worker_target) try_spawn(s, UnitKind::SCV, base);
    int used = supply_used_x2(s, kMe) / 2;
    int cap = supply_cap(s, kMe);
    bool depot_pending = std::any_of(s.buildings.begin(), s.buildings.end(), [](const Building& b) {
        return b.owner == kMe && b.kind == BuildingKind::SupplyDepot && !b.complete;
    });
    if (cap < s.data->constants().supply_hard_cap && used + 6 >= cap && !depot_pending)
        build(s, BuildingKind::SupplyDepot, base);
    if (count_buildings(s, BuildingKind::Barracks) < params_.barracks) build(s, BuildingKind::Barracks, base);
    if (count_buildings(s, BuildingKind::Refinery) < params_.refineries && count_buildings(s, BuildingKind::Barracks) > 0)
        build(s, BuildingKind::Refinery, base);
    if (count_buildings(s, BuildingKind::Factory) < params_.factories) build(s, BuildingKind::Factory, base);
    if (count_buildings(s, BuildingKind::Starport) < params_.starports) build(s, BuildingKind::Starport, base);
    if (params_.armory && count_buildings(s, BuildingKind::Armory) == 0) build(s, BuildingKind::Armory, base);

    // Three SCVs per finished refinery.
    for (const auto& b : s.buildings) {
        if (b.owner != kMe || b.kind != BuildingKind::Refinery || !b.complete) continue;
        int on_gas = 0;
        for (const auto& u : s.units)
            if (u.owner == kMe && u.base == b.base && u.activity == Activity::GatheringGas && u.gas_slot == b.slot) ++on_gas;
        GatherOrder g{{}, b.base, b.slot};
        for (const auto& u : s.units) {
            if (on_gas + static_cast<int>(g.units.size()) >= s.data->constants().gas_workers_per_extractor) break;
            if (u.owner == kMe && u.kind == UnitKind::SCV && u.base == b.base && !u.transit &&
                u.activity == Activity::GatheringMinerals)
                g.units.push_back(u.id);
        }
        if (!g.units.empty()) orders.push_back(std::move(g));
    }

    // Army production toward the wave ratio.
    std::map<UnitKind, int> have;
    int army = 0;
    int wave_units = 0;
    for (const auto& [kind, n] : params_.wave) wave_units += n;
    for (const auto& u : s.units)
        if (u.owner == kMe && is_combat(s, u.kind)) {
            ++have[u.kind];
            ++army;
        }
    for (const auto& p : s.production)
        if (p.owner == kMe)
            if (const auto* k = std::get_if<UnitKind>(&p.what); k && is_combat(s, *k)) {
                ++have[*k];
                ++army;
            }
    for (const auto& b : s.buildings) {
        if (army >= params_.army_cap) break;
        if (b.owner != kMe || !b.complete || b.busy) continue;
        std::optional<UnitKind> pick;
        double best = 0;
        for (const auto& [kind, n] : params_.wave) {
            if (producer_of(kind) != b.kind) continue;
            // Each kind keeps to its share of the cap so fast producers
            // cannot crowd out the rest of the wave.
            if (have[kind] * wave_units >= params_.army_cap * n) continue;
            double fill = static_cast<double>(have[kind]) / n;
            if (!pick || fill < best) {
                pick = kind;
                best = fill;
            }
        }
        if (pick && try_spawn(s, *pick, b.base)) {
            ++have[*pick];
            ++army;
        }
    }

    // Waves leave once the full composition is waiting at home.
    if (s.tick >= next_wave_) {
        std::vector<EntityId> wave;
        bool complete = true;
        for (const auto& [kind, n] : params_.wave) {
            int taken = 0;
            for (const auto& u : s.units)
                if (taken < n && u.owner == kMe && u.kind == kind && u.base == home && !u.transit) {
                    wave.push_back(u.id);
                    ++taken;
                }
            complete = complete && taken == n;
        }
        if (complete) {
            orders.push_back(MoveOrder{wave, wave_target(s), MoveMode::AttackMove});
            ++waves_sent_;
            next_wave_ = s.tick + params_.wave_period +
                         static_cast<int>(rng_() % static_cast<std::uint64_t>(2 * params_.jitter + 1)) - params_.jitter;
        }
    }

    // Units idling away from home after their target fell move on.
    std::vector<EntityId> stragglers;
    for (const auto& u : s.units)
        if (u.owner == kMe && is_combat(s, u.kind) && !u.transit && u.base != home &&
            !has_presence(s, Player::Zerg, u.base))
            stragglers.push_back(u.id);
    if (!stragglers.empty()) orders.push_back(MoveOrder{stragglers, wave_target(s), MoveMode::AttackMove});

    // Worker defence at home.
    if (params_.pull_workers) {
        bool intruders = false;
        for (const auto& u : s.units)
            if (u.owner == Player::Zerg && u.base == base && !u.transit && s.data->unit(u.kind).ground_attack > 0)
                intruders = true;
        StanceOrder st{{}, intruders ? ReflexMode::Attack : ReflexMode::Gather};
        if (intruders != workers_pulled_) {
            for (const auto& u : s.units)
                if (u.owner == kMe && u.kind == UnitKind::SCV && u.base == base && !u.transit &&
                    (intruders ? u.activity == Activity::GatheringMinerals : u.activity == Activity::Attacking))
                    st.units.push_back(u.id);
            workers_pulled_ = intruders;
            if (!st.units.empty()) orders.push_back(std::move(st));
        }
    }
    return orders;
}

}  // namespace swarm
