#pragma once

#include <array>
#include <bitset>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "swarm/game_data.hpp"
#include "swarm/kinds.hpp"
#include "swarm/map.hpp"

namespace swarm {

using EntityId = std::uint32_t;

enum class Activity : std::uint8_t {
    GatheringMinerals, GatheringGas, Idle, Moving, Attacking, Fleeing, Morphing, Injecting,
};
std::string_view activity_name(Activity a);

// Per-unit reflex machine state. Which members are legal depends on the
// unit's archetype (see reflexnet.hpp).
enum class ReflexMode : std::uint8_t { Gather, Attack, Flee, Idle, Inject };
std::string_view reflex_mode_name(ReflexMode m);

enum class MoveMode : std::uint8_t { Move, AttackMove, Flee };

struct Transit {
    std::vector<BaseId> path;  // path.front() is the origin, path.back() the destination
    std::size_t leg = 0;       // index of the last node reached
    int progress_milli = 0;    // progress along path[leg] -> path[leg + 1]
    MoveMode mode = MoveMode::Move;
    // Workers resume gathering on arrival when set (0 = minerals, k = extractor k).
    std::optional<int> gather_on_arrival;
};

struct Unit {
    EntityId id = 0;
    UnitKind kind{};
    Player owner{};
    // The current node; for a unit in transit, the last node it reached.
    BaseId base{};
    std::optional<Transit> transit;
    int hp = 0;
    Activity activity = Activity::Idle;
    int gas_slot = 0;  // 1-based extractor index while gathering gas
    ReflexMode reflex = ReflexMode::Idle;
    int last_damaged_tick = -1000;
    int inject_ready_tick = 0;
};

struct Building {
    EntityId id = 0;
    BuildingKind kind{};
    Player owner{};
    BaseId base{};
    int hp = 0;
    int progress = 0;  // construction ticks done; complete once >= build_ticks
    bool complete = false;
    int slot = 0;      // 1-based geyser index for extractors/refineries
    bool busy = false; // producing, researching or morphing
    int larva = 0;
    int larva_timer = 0;
    int inject_remaining = 0;  // ticks until injected larva pop; 0 = none pending
    int last_damaged_tick = -1000;
};

// An egg, a queued unit, a cocoon, a building morph or a research.
struct Production {
    EntityId id = 0;
    Producible what;
    Player owner{};
    BaseId base{};
    int remaining = 0;
    int supply_x2 = 0;  // supply reserved until completion
    std::optional<EntityId> producer;     // busy building
    std::optional<EntityId> source_unit;  // unit being morphed
};

struct SeenUnit {
    EntityId id = 0;
    UnitKind kind{};
    BaseId base{};
    Activity activity = Activity::Idle;
    int gas_slot = 0;
    int hp = 0;
};

struct SeenBuilding {
    EntityId id = 0;
    BuildingKind kind{};
    BaseId base{};
    bool complete = false;
    int slot = 0;
};

// What one player last saw of the enemy at one base.
struct IntelSnapshot {
    int seen_tick = 0;
    std::vector<SeenUnit> units;
    std::vector<SeenBuilding> buildings;
};

struct PlayerState {
    int minerals = 0;
    int gas = 0;
    std::bitset<kResearchCount> research_done;
    std::array<std::optional<IntelSnapshot>, BaseId::kCount> intel;
};

struct WorldState {
    const GameData* data = nullptr;
    const MapMatrix* map = nullptr;
    int tick = 0;
    std::uint64_t rng_seed = 0;
    EntityId next_id = 1;
    std::array<PlayerState, 2> players{};
    std::vector<Unit> units;            // ascending id
    std::vector<Building> buildings;    // ascending id
    std::vector<Production> production; // ascending id
    std::vector<std::string> log;       // defensively ignored orders
    std::optional<Player> loser;
    bool draw = false;

    PlayerState& player(Player p) { return players[static_cast<std::size_t>(p)]; }
    const PlayerState& player(Player p) const { return players[static_cast<std::size_t>(p)]; }
    Unit* find_unit(EntityId id);
    const Unit* find_unit(EntityId id) const;
    Building* find_building(EntityId id);
    const Building* find_building(EntityId id) const;
};

// Zerg: 12 Drones, 1 Overlord, 1 Hatchery at A1. Terran mirrors at B1 with
// `terran_workers` SCVs and a Command Center.
WorldState new_match_state(const GameData& data, const MapMatrix& map, std::uint64_t seed,
                           int terran_workers = 12);

// ---- engine orders ---------------------------------------------------------

struct MoveOrder {
    std::vector<EntityId> units;
    BaseId destination{};
    MoveMode mode = MoveMode::Move;
};
// Workers gather at `base` (moving there first if needed). slot 0 = minerals.
struct GatherOrder {
    std::vector<EntityId> units;
    BaseId base{};
    int slot = 0;
};
struct StanceOrder {
    std::vector<EntityId> units;
    ReflexMode mode = ReflexMode::Idle;
};
struct InjectOrder {
    EntityId queen = 0;
    EntityId town_hall = 0;
};
// Record of a production already admitted by spawn_order.
struct ProduceOrder {
    Producible what;
    Player owner{};
    BaseId base{};
    EntityId entity = 0;  // production entry or new building
};
using EngineOrder = std::variant<MoveOrder, GatherOrder, StanceOrder, InjectOrder, ProduceOrder>;

std::string describe(const EngineOrder& order);

// ---- feasibility -------------------------------------------------------------

enum class Resource : std::uint8_t { Minerals, Gas, Supply, Larva, Producer };
std::string_view resource_name(Resource r);

struct Ready {};
struct Blocked {
    std::vector<Producible> missing;
};
struct Unaffordable {
    Resource resource{};
};
// Can never succeed from here (already researched, unique building exists,
// base already has a town hall, no free geyser).
struct Impossible {
    std::string reason;
};
using Feasibility = std::variant<Ready, Blocked, Unaffordable, Impossible>;

std::string describe(const Feasibility& f);

// `location` narrows where the producer must be and where a structure goes;
// research ignores it. A builder worker is looked for at `builder_from`
// when given, otherwise at `location`.
Feasibility check_prerequisites(const WorldState& s, const Producible& what, Player p,
                                std::optional<BaseId> location = std::nullopt,
                                std::optional<BaseId> builder_from = std::nullopt);
// Name lookup variant. Throws Error("unknown-producible").
Feasibility check_prerequisites(const WorldState& s, std::string_view name, Player p,
                                std::optional<BaseId> location = std::nullopt);

// Debits resources and starts production at `location`. Throws
// Error("not-ready") unless check_prerequisites is Ready.
EngineOrder spawn_order(WorldState& s, Player p, const Producible& what, BaseId location,
                        std::optional<BaseId> builder_from = std::nullopt);

// ---- ticking -----------------------------------------------------------------

struct Casualty {
    EntityId id = 0;
    bool building = false;
    std::string kind;
    Player owner{};
    BaseId base{};
};

struct TickEvents {
    std::vector<Casualty> casualties;
    std::vector<std::string> completed;  // "Zerg Zergling@A1" style records
};

// Applies orders, then: income, larva, production, movement, combat, removal,
// win check, tick++, intel refresh.
TickEvents advance_tick(WorldState& s, std::span<const EngineOrder> orders);
void apply_order(WorldState& s, const EngineOrder& order);

// One simultaneous combat round at `base`.
std::vector<Casualty> resolve_combat(WorldState& s, BaseId base);

// Records what each player currently sees into its intel memory.
void refresh_intel(WorldState& s);

// ---- queries -----------------------------------------------------------------

int supply_used_x2(const WorldState& s, Player p);
int supply_cap(const WorldState& s, Player p);
int effective_speed_milli(const WorldState& s, const Unit& u);
bool has_presence(const WorldState& s, Player p, BaseId b);
const Building* town_hall_at(const WorldState& s, Player p, BaseId b, bool require_complete = true);
int count_units(const WorldState& s, Player p, UnitKind k);
int count_town_halls(const WorldState& s, Player p);
// True if `p` has a completed building fulfilling `need` anywhere.
bool has_completed(const WorldState& s, Player p, BuildingKind need);

// Stable 64-bit digest of the whole state (FNV-1a over a canonical dump).
std::uint64_t state_digest(const WorldState& s);

}  // namespace swarm
