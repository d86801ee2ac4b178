#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace swarm {

enum class Player : std::uint8_t { Zerg = 0, Terran = 1 };

constexpr Player opponent(Player p) { return p == Player::Zerg ? Player::Terran : Player::Zerg; }
std::string_view player_name(Player p);

enum class UnitKind : std::uint8_t {
    Drone, Overlord, Overseer, Queen, Zergling, Baneling, Roach, Ravager, Hydralisk,
    Mutalisk, Corruptor, SwarmHost, Ultralisk, BroodLord, Infestor,
    SCV, Marine, Marauder, Reaper, Hellion, SiegeTank, Cyclone, Medivac, Viking, Raven, Thor,
};
inline constexpr std::size_t kUnitKindCount = 26;

enum class BuildingKind : std::uint8_t {
    Hatchery, Lair, Hive, Extractor, SpawningPool, RoachWarren, BanelingNest, EvolutionChamber,
    HydraliskDen, Spire, InfestationPit, NydusNetwork, SpineCrawler, SporeCrawler,
    CommandCenter, OrbitalCommand, SupplyDepot, Barracks, Factory, Starport, Refinery,
    EngineeringBay, Armory, MissileTurret, Bunker, SensorTower, GhostAcademy,
};
inline constexpr std::size_t kBuildingKindCount = 27;

enum class ResearchId : std::uint8_t {
    MetabolicBoost, CentrifugalHooks, PneumatizedCarapace, Burrow, GroovedSpines,
    MuscularAugments, MeleeAttacks1, MissileAttacks1, GroundCarapace1, FlyerAttacks1,
    FlyerCarapace1, Stimpack, CombatShield, InfantryWeapons1, InfantryArmor1,
};
inline constexpr std::size_t kResearchCount = 15;

using Producible = std::variant<UnitKind, BuildingKind, ResearchId>;

// Identifier form, as used in the data files ("SpawningPool").
std::string_view identifier(UnitKind k);
std::string_view identifier(BuildingKind k);
std::string_view identifier(ResearchId r);

// Display form, as used in prompts and command lines ("Spawning Pool").
std::string_view display_name(UnitKind k);
std::string_view display_name(BuildingKind k);
std::string_view display_name(ResearchId r);
std::string display_name(const Producible& p);
std::string identifier(const Producible& p);

std::optional<UnitKind> unit_from_identifier(std::string_view id);
std::optional<BuildingKind> building_from_identifier(std::string_view id);
std::optional<ResearchId> research_from_identifier(std::string_view id);

// Case-insensitive lookup that ignores spaces, hyphens and underscores, and
// folds English plurals ("Zerglings", "Roaches", "Spine Crawlers").
std::optional<UnitKind> match_unit(std::string_view text);
std::optional<BuildingKind> match_building(std::string_view text);
// Accepts display names, identifiers and the short aliases LLMs tend to emit
// ("Missile Attacks" for level 1).
std::optional<ResearchId> match_research(std::string_view text);

Player owner_race(UnitKind k);
Player owner_race(BuildingKind k);

template <typename E, std::size_t N>
constexpr std::array<E, N> all_enum_values() {
    std::array<E, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = static_cast<E>(i);
    return out;
}
inline constexpr auto kAllUnitKinds = all_enum_values<UnitKind, kUnitKindCount>();
inline constexpr auto kAllBuildingKinds = all_enum_values<BuildingKind, kBuildingKindCount>();
inline constexpr auto kAllResearch = all_enum_values<ResearchId, kResearchCount>();

// Lower-cases and strips everything except letters and digits.
std::string fold_name(std::string_view text);

}  // namespace swarm
