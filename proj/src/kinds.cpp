#include "swarm/kinds.hpp"

#include <cctype>

namespace swarm {
namespace {

struct Names {
    std::string_view id;
    std::string_view display;
};

constexpr std::array<Names, kUnitKindCount> kUnitNames{{
    {"Drone", "Drone"},         {"Overlord", "Overlord"},   {"Overseer", "Overseer"},
    {"Queen", "Queen"},         {"Zergling", "Zergling"},   {"Baneling", "Baneling"},
    {"Roach", "Roach"},         {"Ravager", "Ravager"},     {"Hydralisk", "Hydralisk"},
    {"Mutalisk", "Mutalisk"},   {"Corruptor", "Corruptor"}, {"SwarmHost", "Swarm Host"},
    {"Ultralisk", "Ultralisk"}, {"BroodLord", "Brood Lord"}, {"Infestor", "Infestor"},
    {"SCV", "SCV"},             {"Marine", "Marine"},       {"Marauder", "Marauder"},
    {"Reaper", "Reaper"},       {"Hellion", "Hellion"},     {"SiegeTank", "Siege Tank"},
    {"Cyclone", "Cyclone"},     {"Medivac", "Medivac"},     {"Viking", "Viking"},
    {"Raven", "Raven"},         {"Thor", "Thor"},
}};

constexpr std::array<Names, kBuildingKindCount> kBuildingNames{{
    {"Hatchery", "Hatchery"},
    {"Lair", "Lair"},
    {"Hive", "Hive"},
    {"Extractor", "Extractor"},
    {"SpawningPool", "Spawning Pool"},
    {"RoachWarren", "Roach Warren"},
    {"BanelingNest", "Baneling Nest"},
    {"EvolutionChamber", "Evolution Chamber"},
    {"HydraliskDen", "Hydralisk Den"},
    {"Spire", "Spire"},
    {"InfestationPit", "Infestation Pit"},
    {"NydusNetwork", "Nydus Network"},
    {"SpineCrawler", "Spine Crawler"},
    {"SporeCrawler", "Spore Crawler"},
    // Lower-case "center" matches the situation blocks the planner was tuned on.
    {"CommandCenter", "Command center"},
    {"OrbitalCommand", "Orbital Command"},
    {"SupplyDepot", "Supply Depot"},
    {"Barracks", "Barracks"},
    {"Factory", "Factory"},
    {"Starport", "Starport"},
    {"Refinery", "Refinery"},
    {"EngineeringBay", "Engineering Bay"},
    {"Armory", "Armory"},
    {"MissileTurret", "Missile Turret"},
    {"Bunker", "Bunker"},
    {"SensorTower", "Sensor Tower"},
    {"GhostAcademy", "Ghost Academy"},
}};

constexpr std::array<Names, kResearchCount> kResearchNames{{
    {"MetabolicBoost", "Metabolic Boost"},
    {"CentrifugalHooks", "Centrifugal Hooks"},
    {"PneumatizedCarapace", "Pneumatized Carapace"},
    {"Burrow", "Burrow"},
    {"GroovedSpines", "Grooved Spines"},
    {"MuscularAugments", "Muscular Augments"},
    {"MeleeAttacks1", "Melee Attacks Level 1"},
    {"MissileAttacks1", "Missile Attacks Level 1"},
    {"GroundCarapace1", "Ground Carapace Level 1"},
    {"FlyerAttacks1", "Flyer Attacks Level 1"},
    {"FlyerCarapace1", "Flyer Carapace Level 1"},
    {"Stimpack", "Stimpack"},
    {"CombatShield", "Combat Shield"},
    {"InfantryWeapons1", "Infantry Weapons Level 1"},
    {"InfantryArmor1", "Infantry Armor Level 1"},
}};

struct Alias {
    std::string_view folded;
    ResearchId id;
};

constexpr std::array<Alias, 22> kResearchAliases{{
    {"meleeattacks", ResearchId::MeleeAttacks1},
    {"meleeattacksl1", ResearchId::MeleeAttacks1},
    {"meleeattackslevel1", ResearchId::MeleeAttacks1},
    {"missileattacks", ResearchId::MissileAttacks1},
    {"missileattacksl1", ResearchId::MissileAttacks1},
    {"missileattackslevel1", ResearchId::MissileAttacks1},
    {"groundcarapace", ResearchId::GroundCarapace1},
    {"groundcarapacel1", ResearchId::GroundCarapace1},
    {"flyerattacks", ResearchId::FlyerAttacks1},
    {"flyerattacksl1", ResearchId::FlyerAttacks1},
    {"flyercarapace", ResearchId::FlyerCarapace1},
    {"flyercarapacel1", ResearchId::FlyerCarapace1},
    {"zerglingspeed", ResearchId::MetabolicBoost},
    {"metabolicboostupgrade", ResearchId::MetabolicBoost},
    {"overlordspeed", ResearchId::PneumatizedCarapace},
    {"banelingspeed", ResearchId::CentrifugalHooks},
    {"hydraliskrange", ResearchId::GroovedSpines},
    {"hydraliskspeed", ResearchId::MuscularAugments},
    {"stim", ResearchId::Stimpack},
    {"infantryweapons", ResearchId::InfantryWeapons1},
    {"infantryarmor", ResearchId::InfantryArmor1},
    {"infantryarmour", ResearchId::InfantryArmor1},
}};

template <std::size_t N>
std::optional<std::size_t> find_folded(const std::array<Names, N>& table, std::string_view folded) {
    for (std::size_t i = 0; i < N; ++i) {
        if (fold_name(table[i].id) == folded || fold_name(table[i].display) == folded) return i;
    }
    return std::nullopt;
}

template <std::size_t N>
std::optional<std::size_t> find_with_plural(const std::array<Names, N>& table, std::string_view text) {
    const std::string folded = fold_name(text);
    if (folded.empty()) return std::nullopt;
    if (auto hit = find_folded(table, folded)) return hit;
    if (folded.size() > 3 && folded.ends_with("ies")) {
        std::string singular = folded.substr(0, folded.size() - 3) + "y";
        if (auto hit = find_folded(table, singular)) return hit;
    }
    if (folded.size() > 2 && folded.ends_with("es")) {
        if (auto hit = find_folded(table, std::string_view(folded).substr(0, folded.size() - 2))) return hit;
    }
    if (folded.size() > 1 && folded.ends_with('s')) {
        if (auto hit = find_folded(table, std::string_view(folded).substr(0, folded.size() - 1))) return hit;
    }
    return std::nullopt;
}

template <std::size_t N>
std::optional<std::size_t> find_identifier(const std::array<Names, N>& table, std::string_view id) {
    for (std::size_t i = 0; i < N; ++i) {
        if (table[i].id == id) return i;
    }
    return std::nullopt;
}

}  // namespace

std::string fold_name(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc)) out.push_back(static_cast<char>(std::tolower(uc)));
    }
    return out;
}

std::string_view player_name(Player p) { return p == Player::Zerg ? "Zerg" : "Terran"; }

std::string_view identifier(UnitKind k) { return kUnitNames[static_cast<std::size_t>(k)].id; }
std::string_view identifier(BuildingKind k) { return kBuildingNames[static_cast<std::size_t>(k)].id; }
std::string_view identifier(ResearchId r) { return kResearchNames[static_cast<std::size_t>(r)].id; }
std::string_view display_name(UnitKind k) { return kUnitNames[static_cast<std::size_t>(k)].display; }
std::string_view display_name(BuildingKind k) { return kBuildingNames[static_cast<std::size_t>(k)].display; }
std::string_view display_name(ResearchId r) { return kResearchNames[static_cast<std::size_t>(r)].display; }

std::string display_name(const Producible& p) {
    return std::visit([](auto v) { return std::string(display_name(v)); }, p);
}

std::string identifier(const Producible& p) {
    return std::visit([](auto v) { return std::string(identifier(v)); }, p);
}

std::optional<UnitKind> unit_from_identifier(std::string_view id) {
    if (auto i = find_identifier(kUnitNames, id)) return static_cast<UnitKind>(*i);
    return std::nullopt;
}
std::optional<BuildingKind> building_from_identifier(std::string_view id) {
    if (auto i = find_identifier(kBuildingNames, id)) return static_cast<BuildingKind>(*i);
    return std::nullopt;
}
std::optional<ResearchId> research_from_identifier(std::string_view id) {
    if (auto i = find_identifier(kResearchNames, id)) return static_cast<ResearchId>(*i);
    return std::nullopt;
}

std::optional<UnitKind> match_unit(std::string_view text) {
    if (auto i = find_with_plural(kUnitNames, text)) return static_cast<UnitKind>(*i);
    return std::nullopt;
}

std::optional<BuildingKind> match_building(std::string_view text) {
    if (auto i = find_with_plural(kBuildingNames, text)) return static_cast<BuildingKind>(*i);
    return std::nullopt;
}

std::optional<ResearchId> match_research(std::string_view text) {
    const std::string folded = fold_name(text);
    if (folded.empty()) return std::nullopt;
    if (auto i = find_folded(kResearchNames, folded)) return static_cast<ResearchId>(*i);
    for (const auto& a : kResearchAliases) {
        if (a.folded == folded) return a.id;
    }
    return std::nullopt;
}

Player owner_race(UnitKind k) {
    return static_cast<std::size_t>(k) < static_cast<std::size_t>(UnitKind::SCV) ? Player::Zerg : Player::Terran;
}

Player owner_race(BuildingKind k) {
    return static_cast<std::size_t>(k) < static_cast<std::size_t>(BuildingKind::CommandCenter) ? Player::Zerg
                                                                                                : Player::Terran;
}

}  // namespace swarm
