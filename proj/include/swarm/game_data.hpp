#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "swarm/kinds.hpp"

namespace swarm {

enum class UnitRole : std::uint8_t { Worker, Transport, Combat, Queen };

struct UnitStats {
    Player race{};
    int max_hp = 0;
    int ground_attack = 0;
    int air_attack = 0;
    bool can_fly = false;
    bool melee = false;
    // Speed in thousandths of a base hop per tick (0.1 bases/tick -> 100).
    int speed_milli = 0;
    int minerals = 0;
    int gas = 0;
    // Supply per unit in half-supply steps (a Zergling occupies 1).
    int supply_x2 = 0;
    int supply_provided = 0;
    int build_ticks = 0;
    // Units hatched per egg; costs are per egg.
    int spawn_count = 1;
    UnitRole role = UnitRole::Combat;
    std::optional<UnitKind> morph_from;
};

struct BuildingStats {
    Player race{};
    int max_hp = 0;
    int minerals = 0;
    int gas = 0;
    int build_ticks = 0;
    int supply_provided = 0;
    int ground_attack = 0;
    int air_attack = 0;
    bool town_hall = false;
    bool geyser = false;
    bool unique = false;
    std::optional<BuildingKind> morph_from;
};

struct ResearchStats {
    BuildingKind producer{};
    std::vector<BuildingKind> requires_buildings;
    int minerals = 0;
    int gas = 0;
    int ticks = 0;
    std::map<UnitKind, int> speed_percent;
    int melee_bonus = 0;
    int ranged_bonus = 0;
    int air_bonus = 0;
};

// How a unit is produced: from a larva at a town hall, by morphing an
// existing unit, or from a specific production building.
enum class ProducerKind : std::uint8_t { Larva, Morph, Building };

struct UnitRecipe {
    ProducerKind producer = ProducerKind::Larva;
    BuildingKind producer_building = BuildingKind::Hatchery;
    std::vector<BuildingKind> requires_buildings;
};

struct BuildingRecipe {
    std::vector<BuildingKind> requires_buildings;
};

struct Constants {
    int mineral_rate_per_worker = 1;
    int gas_rate_per_worker = 1;
    int mineral_saturation_per_base = 16;
    int gas_workers_per_extractor = 3;
    int geysers_per_base = 2;
    int larva_cap = 3;
    int larva_regen_ticks = 11;
    int larva_hard_cap = 19;
    int inject_cooldown_ticks = 29;
    int inject_larva = 3;
    int supply_hard_cap = 200;
    int flank_damage_taken_percent = 50;
    int drone_proximate_count = 4;
    int medivac_heal_per_tick = 4;
    int starting_minerals = 50;
};

// Stats table plus tech tree. Loaded once, immutable afterwards.
class GameData {
public:
    static const GameData& builtin();
    static GameData from_json(std::string_view stats_json, std::string_view tech_json);
    static GameData from_files(const std::string& stats_path, const std::string& tech_path);

    const UnitStats& unit(UnitKind k) const { return units_[static_cast<std::size_t>(k)]; }
    const BuildingStats& building(BuildingKind k) const { return buildings_[static_cast<std::size_t>(k)]; }
    const ResearchStats& research(ResearchId r) const { return research_[static_cast<std::size_t>(r)]; }
    const UnitRecipe& unit_recipe(UnitKind k) const { return unit_recipes_[static_cast<std::size_t>(k)]; }
    const BuildingRecipe& building_recipe(BuildingKind k) const {
        return building_recipes_[static_cast<std::size_t>(k)];
    }
    const Constants& constants() const { return constants_; }

    // True when an existing `have` building fulfils a requirement for `need`
    // (a Hive counts as a Lair and a Hatchery).
    bool satisfies(BuildingKind have, BuildingKind need) const;

    // Every building/research prerequisite of `p`, one level deep.
    std::vector<Producible> direct_prerequisites(const Producible& p) const;

    int version() const { return version_; }

private:
    int version_ = 0;
    std::array<UnitStats, kUnitKindCount> units_{};
    std::array<BuildingStats, kBuildingKindCount> buildings_{};
    std::array<ResearchStats, kResearchCount> research_{};
    std::array<UnitRecipe, kUnitKindCount> unit_recipes_{};
    std::array<BuildingRecipe, kBuildingKindCount> building_recipes_{};
    std::map<BuildingKind, std::vector<BuildingKind>> satisfies_;
    Constants constants_{};
};

namespace embedded {
extern const std::string_view kStatsJson;
extern const std::string_view kTechTreeJson;
extern const std::string_view kVerbsJson;
extern const std::string_view kOvermindNormalTemplate;
extern const std::string_view kOvermindCriticalTemplate;
extern const std::string_view kTranslatorTemplate;
}  // namespace embedded

}  // namespace swarm
