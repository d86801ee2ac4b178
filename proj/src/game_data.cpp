#include "swarm/game_data.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "swarm/error.hpp"
#include "swarm/io.hpp"

namespace swarm {
namespace {

using nlohmann::json;

UnitKind require_unit(const std::string& id) {
    if (auto k = unit_from_identifier(id)) return *k;
    throw Error("data", "unknown unit kind in data file: " + id);
}

BuildingKind require_building(const std::string& id) {
    if (auto k = building_from_identifier(id)) return *k;
    throw Error("data", "unknown building kind in data file: " + id);
}

std::vector<BuildingKind> building_list(const json& arr) {
    std::vector<BuildingKind> out;
    for (const auto& v : arr) out.push_back(require_building(v.get<std::string>()));
    return out;
}

UnitRole parse_role(const std::string& s) {
    if (s == "worker") return UnitRole::Worker;
    if (s == "transport") return UnitRole::Transport;
    if (s == "queen") return UnitRole::Queen;
    if (s == "combat") return UnitRole::Combat;
    throw Error("data", "unknown unit role: " + s);
}

Player parse_race(const std::string& s) {
    if (s == "Zerg") return Player::Zerg;
    if (s == "Terran") return Player::Terran;
    throw Error("data", "unknown race: " + s);
}

void load_stats(const json& j, std::array<UnitStats, kUnitKindCount>& units,
                std::array<BuildingStats, kBuildingKindCount>& buildings, Constants& c) {
    const auto& k = j.at("constants");
    c.mineral_rate_per_worker = k.value("mineral_rate_per_worker", c.mineral_rate_per_worker);
    c.gas_rate_per_worker = k.value("gas_rate_per_worker", c.gas_rate_per_worker);
    c.mineral_saturation_per_base = k.value("mineral_saturation_per_base", c.mineral_saturation_per_base);
    c.gas_workers_per_extractor = k.value("gas_workers_per_extractor", c.gas_workers_per_extractor);
    c.geysers_per_base = k.value("geysers_per_base", c.geysers_per_base);
    c.larva_cap = k.value("larva_cap", c.larva_cap);
    c.larva_regen_ticks = k.value("larva_regen_ticks", c.larva_regen_ticks);
    c.larva_hard_cap = k.value("larva_hard_cap", c.larva_hard_cap);
    c.inject_cooldown_ticks = k.value("inject_cooldown_ticks", c.inject_cooldown_ticks);
    c.inject_larva = k.value("inject_larva", c.inject_larva);
    c.supply_hard_cap = k.value("supply_hard_cap", c.supply_hard_cap);
    c.flank_damage_taken_percent = k.value("flank_damage_taken_percent", c.flank_damage_taken_percent);
    c.drone_proximate_count = k.value("drone_proximate_count", c.drone_proximate_count);
    c.medivac_heal_per_tick = k.value("medivac_heal_per_tick", c.medivac_heal_per_tick);
    c.starting_minerals = k.value("starting_minerals", c.starting_minerals);

    std::array<bool, kUnitKindCount> seen_units{};
    for (const auto& [name, v] : j.at("units").items()) {
        const UnitKind kind = require_unit(name);
        UnitStats s;
        s.race = parse_race(v.at("race").get<std::string>());
        s.max_hp = v.at("hp").get<int>();
        s.ground_attack = v.at("ground").get<int>();
        s.air_attack = v.at("air").get<int>();
        s.can_fly = v.at("fly").get<bool>();
        s.melee = v.value("melee", false);
        s.speed_milli = static_cast<int>(std::lround(v.at("speed").get<double>() * 1000.0));
        s.minerals = v.at("minerals").get<int>();
        s.gas = v.at("gas").get<int>();
        s.supply_x2 = static_cast<int>(std::lround(v.at("supply").get<double>() * 2.0));
        s.supply_provided = v.value("supply_provided", 0);
        s.build_ticks = v.at("build_ticks").get<int>();
        s.spawn_count = v.value("spawn_count", 1);
        s.role = parse_role(v.at("role").get<std::string>());
        if (v.contains("morph_from")) s.morph_from = require_unit(v.at("morph_from").get<std::string>());
        if (s.max_hp <= 0 || s.ground_attack < 0 || s.air_attack < 0 || s.speed_milli < 0 || s.minerals < 0 ||
            s.gas < 0 || s.supply_x2 < 0 || s.build_ticks < 0 || s.spawn_count < 1) {
            throw Error("data", "invalid stats for unit " + name);
        }
        units[static_cast<std::size_t>(kind)] = s;
        seen_units[static_cast<std::size_t>(kind)] = true;
    }
    for (auto k2 : kAllUnitKinds) {
        if (!seen_units[static_cast<std::size_t>(k2)])
            throw Error("data", "stats table lacks unit " + std::string(identifier(k2)));
    }

    std::array<bool, kBuildingKindCount> seen_buildings{};
    for (const auto& [name, v] : j.at("buildings").items()) {
        const BuildingKind kind = require_building(name);
        BuildingStats s;
        s.race = parse_race(v.at("race").get<std::string>());
        s.max_hp = v.at("hp").get<int>();
        s.minerals = v.at("minerals").get<int>();
        s.gas = v.at("gas").get<int>();
        s.build_ticks = v.at("build_ticks").get<int>();
        s.supply_provided = v.value("supply_provided", 0);
        s.ground_attack = v.value("ground", 0);
        s.air_attack = v.value("air", 0);
        s.town_hall = v.value("town_hall", false);
        s.geyser = v.value("geyser", false);
        s.unique = v.value("unique", false);
        if (v.contains("morph_from")) s.morph_from = require_building(v.at("morph_from").get<std::string>());
        if (s.max_hp <= 0 || s.minerals < 0 || s.gas < 0 || s.build_ticks < 0 || s.supply_provided < 0) {
            throw Error("data", "invalid stats for building " + name);
        }
        buildings[static_cast<std::size_t>(kind)] = s;
        seen_buildings[static_cast<std::size_t>(kind)] = true;
    }
    for (auto b : kAllBuildingKinds) {
        if (!seen_buildings[static_cast<std::size_t>(b)])
            throw Error("data", "stats table lacks building " + std::string(identifier(b)));
    }
}

}  // namespace

GameData GameData::from_json(std::string_view stats_json, std::string_view tech_json) {
    GameData g;
    json stats;
    json tech;
    try {
        stats = json::parse(stats_json);
        tech = json::parse(tech_json);
    } catch (const json::parse_error& e) {
        throw Error("data", std::string("malformed data file: ") + e.what());
    }
    try {
        g.version_ = stats.value("version", 0);
        load_stats(stats, g.units_, g.buildings_, g.constants_);

        for (const auto& [name, list] : tech.at("satisfies").items()) {
            g.satisfies_[require_building(name)] = building_list(list);
        }

        std::array<bool, kUnitKindCount> seen_units{};
        for (const auto& [name, v] : tech.at("units").items()) {
            const UnitKind kind = require_unit(name);
            UnitRecipe r;
            const auto producer = v.at("producer").get<std::string>();
            if (producer == "larva") {
                r.producer = ProducerKind::Larva;
            } else if (producer == "morph") {
                r.producer = ProducerKind::Morph;
                if (!g.units_[static_cast<std::size_t>(kind)].morph_from)
                    throw Error("data", "morph recipe without morph_from: " + name);
            } else {
                r.producer = ProducerKind::Building;
                r.producer_building = require_building(producer);
            }
            r.requires_buildings = building_list(v.at("requires"));
            g.unit_recipes_[static_cast<std::size_t>(kind)] = r;
            seen_units[static_cast<std::size_t>(kind)] = true;
        }
        std::array<bool, kBuildingKindCount> seen_buildings{};
        for (const auto& [name, v] : tech.at("buildings").items()) {
            const BuildingKind kind = require_building(name);
            g.building_recipes_[static_cast<std::size_t>(kind)].requires_buildings = building_list(v.at("requires"));
            seen_buildings[static_cast<std::size_t>(kind)] = true;
        }
        std::array<bool, kResearchCount> seen_research{};
        for (const auto& [name, v] : tech.at("research").items()) {
            auto id = research_from_identifier(name);
            if (!id) throw Error("data", "unknown research in tech tree: " + name);
            ResearchStats r;
            r.producer = require_building(v.at("producer").get<std::string>());
            r.requires_buildings = building_list(v.at("requires"));
            r.minerals = v.at("minerals").get<int>();
            r.gas = v.at("gas").get<int>();
            r.ticks = v.at("ticks").get<int>();
            if (v.contains("speed_percent")) {
                for (const auto& [unit, pct] : v.at("speed_percent").items())
                    r.speed_percent[require_unit(unit)] = pct.get<int>();
            }
            if (v.contains("damage_bonus")) {
                const auto& d = v.at("damage_bonus");
                r.melee_bonus = d.value("melee", 0);
                r.ranged_bonus = d.value("ranged", 0);
                r.air_bonus = d.value("air", 0);
            }
            g.research_[static_cast<std::size_t>(*id)] = r;
            seen_research[static_cast<std::size_t>(*id)] = true;
        }
        for (auto k : kAllUnitKinds)
            if (!seen_units[static_cast<std::size_t>(k)])
                throw Error("data", "tech tree lacks unit " + std::string(identifier(k)));
        for (auto b : kAllBuildingKinds)
            if (!seen_buildings[static_cast<std::size_t>(b)])
                throw Error("data", "tech tree lacks building " + std::string(identifier(b)));
        for (auto r : kAllResearch)
            if (!seen_research[static_cast<std::size_t>(r)])
                throw Error("data", "tech tree lacks research " + std::string(identifier(r)));
    } catch (const json::exception& e) {
        throw Error("data", std::string("data file schema error: ") + e.what());
    }
    return g;
}

GameData GameData::from_files(const std::string& stats_path, const std::string& tech_path) {
    return from_json(read_text_file(stats_path), read_text_file(tech_path));
}

const GameData& GameData::builtin() {
    static const GameData data = from_json(embedded::kStatsJson, embedded::kTechTreeJson);
    return data;
}

bool GameData::satisfies(BuildingKind have, BuildingKind need) const {
    if (have == need) return true;
    auto it = satisfies_.find(have);
    if (it == satisfies_.end()) return false;
    for (auto b : it->second)
        if (b == need) return true;
    return false;
}

std::vector<Producible> GameData::direct_prerequisites(const Producible& p) const {
    std::vector<Producible> out;
    if (auto u = std::get_if<UnitKind>(&p)) {
        const auto& r = unit_recipe(*u);
        if (r.producer == ProducerKind::Building) out.emplace_back(r.producer_building);
        if (r.producer == ProducerKind::Morph) out.emplace_back(*unit(*u).morph_from);
        for (auto b : r.requires_buildings) out.emplace_back(b);
    } else if (auto b = std::get_if<BuildingKind>(&p)) {
        for (auto req : building_recipe(*b).requires_buildings) out.emplace_back(req);
        if (auto from = building(*b).morph_from) out.emplace_back(*from);
    } else {
        const auto& r = research(std::get<ResearchId>(p));
        out.emplace_back(r.producer);
        for (auto req : r.requires_buildings) out.emplace_back(req);
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("io", "cannot write " + path);
    out << content;
    if (!out) throw Error("io", "write failed for " + path);
}

}  // namespace swarm
