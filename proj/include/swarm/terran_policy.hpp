#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "swarm/world.hpp"

namespace swarm {

enum class Difficulty : std::uint8_t { VeryEasy, Easy, Medium, MediumHard, Hard };
std::string_view difficulty_name(Difficulty d);
// Accepts "VeryEasy", "very-easy", "veryeasy", ... Throws Error("bad-difficulty").
Difficulty parse_difficulty(std::string_view text);

// One row of the difficulty table (docs/difficulty.md).
struct DifficultyParams {
    Difficulty level{};
    int worker_target = 12;
    int barracks = 1;
    int factories = 0;
    int starports = 0;
    int refineries = 0;
    bool armory = false;
    int army_cap = 6;         // combat units alive at once
    int first_wave_tick = 300;
    int wave_period = 240;
    int jitter = 20;          // seeded +- ticks on every wave time
    std::vector<std::pair<UnitKind, int>> wave;  // units sent per wave
    bool pull_workers = false;  // SCVs fight intruders at home
};

const DifficultyParams& difficulty_params(Difficulty d);

// Deterministic build order plus periodic attack waves. Admits its own
// production through spawn_order and returns the movement and stance orders
// for this tick.
class TerranPolicy {
public:
    TerranPolicy(Difficulty d, std::uint64_t seed);

    std::vector<EngineOrder> step(WorldState& s);

    const DifficultyParams& params() const { return params_; }
    int next_wave_tick() const { return next_wave_; }
    int waves_sent() const { return waves_sent_; }

private:
    void build(WorldState& s, BuildingKind k, BaseId at);
    bool try_spawn(WorldState& s, const Producible& what, BaseId at);
    BaseId wave_target(const WorldState& s) const;

    DifficultyParams params_;
    std::mt19937_64 rng_;
    int next_wave_;
    int waves_sent_ = 0;
    bool workers_pulled_ = false;
};

}  // namespace swarm
