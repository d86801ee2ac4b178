// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "support.hpp"
#include "swarm/command_center.hpp"
#include "swarm/error.hpp"
#include "swarm/harness.hpp"
#include "swarm/overmind.hpp"
#include "swarm/perception.hpp"
#include "swarm/reflexnet.hpp"
#include "swarm/replay.hpp"

#ifndef SWARM_DATA_DIR
#error "SWARM_DATA_DIR must be defined by the build"
#endif

using namespace swarm;
using namespace swarm::test;
using nlohmann::json;

namespace {

constexpr Player Z = Player::Zerg;
constexpr Player T = Player::Terran;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

// ---- 1. prompt fidelity ---------------------------------------------------

Verdict prompt_fidelity() {
    Verdict v;
    auto t0 = Clock::now();
    auto s = golden_world();
    auto obs = observe(s, Z);
    StrategyMemory mem(1);
    mem.record_round(150,
                     ActionPlan{{"Send an Overlord to scout the opponent's base B1", "Build additional Drones in Hatchery A1"},
                                150},
                     {});
    auto matrix = render_prompt_matrix(default_map());
    auto report = render_situation_report(obs);
    if (assemble_overmind_prompt(PromptMode::Normal, matrix, mem.render_text(), report, {}) !=
        fixture("golden_overmind_normal.txt"))
        v.fail("normal prompt differs");
    auto events = detect_critical_events(obs, nullptr);
    if (assemble_overmind_prompt(PromptMode::Critical, matrix, mem.render_text(), report, events) !=
        fixture("golden_overmind_critical.txt"))
        v.fail("critical prompt differs");
    if (assemble_translation_prompt(render_plan(parse_action_plan(fixture("plan_defence.txt")))) !=
        fixture("golden_translator.txt"))
        v.fail("translator prompt differs");
    double dt = seconds_since(t0);
    if (dt >= 1.0) v.fail("took " + std::to_string(dt) + " s");
    if (v.pass) v.detail = "3/3 byte-identical in " + std::to_string(dt) + " s";
    return v;
}

// ---- 2. parser corpus ------------------------------------------------------

Verdict parser_corpus() {
    Verdict v;
    auto golden = golden_world();
    int ok = 0, total = 0;
    for (const auto& line : extract_command_lines(fixture("recorded_commands.txt"))) {
        ++total;
        try {
            repair_command(parse_command(line), golden);
            ++ok;
        } catch (const Error& e) {
            v.fail(line + ": " + e.code());
        }
    }
    if (total < 30) v.fail("corpus has only " + std::to_string(total) + " lines");

    auto s = new_match_state(GameData::builtin(), default_map(), 1);
    SuspendQueue q;
    auto outs = process_command_list(extract_command_lines(fixture("commands_early.txt")), s, q, 0);
    if (outs.size() != 20) {
        v.fail("early transcript has " + std::to_string(outs.size()) + " lines");
    } else {
        const auto* rej = outs[10].outcome ? std::get_if<Rejected>(&*outs[10].outcome) : nullptr;
        if (!rej || rej->reason != "unknown-research") v.fail("line 10 not rejected as unknown research");
        if (outs[14].canonical != "(Zergling, A1)->(Move)->(B1)") v.fail("line 14 repaired to " + outs[14].canonical);
    }

    static const std::string_view pieces[] = {"(",  ")",     "->",      ", ",  "A1",    "B9",     "Zergling", "Drone",
                                              "Build", "Train", "Research", "'",   "\"",    "*",      "Unit(",    "tag=",
                                              " ",  "//",    "{",        ":",   "\n",    "\xff",   "Hatchery", "Move"};
    const std::set<std::string> allowed = {"malformed-line", "unknown-kind", "unknown-verb"};
    std::mt19937_64 rng(20240);
    int odd = 0;
    for (int i = 0; i < 100'000; ++i) {
        std::string line;
        auto n = 1 + rng() % 14;
        for (std::size_t k = 0; k < n; ++k) line += pieces[rng() % std::size(pieces)];
        try {
            parse_command(line);
        } catch (const Error& e) {
            if (!allowed.count(e.code())) ++odd;
        } catch (...) {
            ++odd;
        }
    }
    if (odd) v.fail(std::to_string(odd) + " fuzz lines raised undocumented errors");
    if (v.pass) v.detail = std::to_string(ok) + "/" + std::to_string(total) + " corpus lines, 10^5 fuzz lines clean";
    return v;
}

// ---- 3. condition verification ----------------------------------------------

// Feasibility worked out straight from the data files, without GameData.
class TechOracle {
public:
    TechOracle() {
        std::ifstream t(std::string(SWARM_DATA_DIR) + "/tech_tree.json");
        std::ifstream st(std::string(SWARM_DATA_DIR) + "/stats.json");
        tech_ = json::parse(t);
        stats_ = json::parse(st);
    }

    int cost(const std::string& name, const char* what) const {
        if (stats_["units"].contains(name)) return stats_["units"][name][what];
        if (stats_["buildings"].contains(name)) return stats_["buildings"][name][what];
        return tech_["research"][name][what];
    }

    // "dispatched", "blocked:<kinds>", "unaffordable:<resource>" or
    // "rejected:<reason>".
    std::string judge(const WorldState& s, const Command& c) const {
        const auto* kt = std::get_if<KindTarget>(&c.target);
        const std::string bad = c.verb == Verb::Research ? "rejected:unknown-research" : "rejected:bad-target";
        if (!kt) return bad;
        const std::string name = identifier(kt->kind);
        switch (c.verb) {
            case Verb::Train:
            case Verb::Morph:
                if (!tech_["units"].contains(name)) return bad;
                return unit(s, name, *c.subject.location);
            case Verb::Build: {
                if (!tech_["buildings"].contains(name)) return bad;
                std::optional<BaseId> builder;
                if (std::holds_alternative<UnitKind>(c.subject.kind)) builder = c.subject.location;
                return building(s, name, *kt->location, builder);
            }
            case Verb::Research:
                if (!tech_["research"].contains(name)) return bad;
                return research(s, name);
            default: return "rejected:unsupported";
        }
    }

private:
    json tech_, stats_;

    bool satisfies(const std::string& have, const std::string& need) const {
        if (have == need) return true;
        const auto& sat = tech_["satisfies"];
        if (!sat.contains(have)) return false;
        for (const auto& n : sat[have])
            if (n == need) return true;
        return false;
    }
    const json& bstat(BuildingKind k) const { return stats_["buildings"][std::string(identifier(k))]; }
    const json& ustat(UnitKind k) const { return stats_["units"][std::string(identifier(k))]; }
    bool hall(BuildingKind k) const { return bstat(k).value("town_hall", false); }
    static int x2(const json& unit) { return static_cast<int>(unit["supply"].get<double>() * 2 + 0.5); }

    std::vector<const Building*> own_complete(const WorldState& s, const std::string& need, std::optional<BaseId> at,
                                              bool exact) const {
        std::vector<const Building*> out;
        for (const auto& b : s.buildings) {
            if (b.owner != Z || !b.complete || (at && b.base != *at)) continue;
            std::string have(identifier(b.kind));
            if (exact ? have == need : satisfies(have, need)) out.push_back(&b);
        }
        return out;
    }
    bool any_ready(const WorldState& s, const std::string& kind, std::optional<BaseId> at) const {
        for (const auto& u : s.units)
            if (u.owner == Z && identifier(u.kind) == kind && !u.transit && u.activity != Activity::Morphing &&
                (!at || u.base == *at))
                return true;
        return false;
    }
    static bool any_idle(const std::vector<const Building*>& v) {
        return std::any_of(v.begin(), v.end(), [](const Building* b) { return !b->busy; });
    }
    void requirements(const WorldState& s, const json& reqs, std::vector<std::string>& missing) const {
        for (const auto& r : reqs)
            if (own_complete(s, r, std::nullopt, false).empty()) missing.push_back(r);
    }
    static void add_once(std::vector<std::string>& v, const std::string& x) {
        if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
    static std::string blocked(const std::vector<std::string>& missing) {
        std::string out = "blocked:";
        for (std::size_t i = 0; i < missing.size(); ++i) out += (i ? "," : "") + missing[i];
        return out;
    }
    std::string money(const WorldState& s, const json& price) const {
        if (s.player(Z).minerals < price["minerals"].get<int>()) return "unaffordable:minerals";
        if (s.player(Z).gas < price["gas"].get<int>()) return "unaffordable:gas";
        return {};
    }

    std::string unit(const WorldState& s, const std::string& name, BaseId at) const {
        const auto& st = stats_["units"][name];
        const auto& recipe = tech_["units"][name];
        if (st["race"] != "Zerg") return "rejected:wrong-race";
        std::vector<std::string> missing;
        requirements(s, recipe["requires"], missing);
        const std::string producer = recipe["producer"];
        std::vector<const Building*> producers;
        if (producer == "larva") {
            for (const auto& b : s.buildings)
                if (b.owner == Z && b.complete && hall(b.kind) && b.base == at) producers.push_back(&b);
            if (producers.empty()) add_once(missing, "Hatchery");
        } else if (producer == "morph") {
            if (!any_ready(s, st["morph_from"], at)) add_once(missing, st["morph_from"]);
        } else {
            producers = own_complete(s, producer, at, false);
            if (producers.empty()) add_once(missing, producer);
        }
        if (!missing.empty()) return blocked(missing);
        if (auto m = money(s, st); !m.empty()) return m;

        int used = 0, cap = 0;
        for (const auto& u : s.units)
            if (u.owner == Z) {
                used += x2(ustat(u.kind));
                cap += ustat(u.kind).value("supply_provided", 0);
            }
        for (const auto& p : s.production)
            if (p.owner == Z) used += p.supply_x2;
        for (const auto& b : s.buildings)
            if (b.owner == Z && b.complete) cap += bstat(b.kind).value("supply_provided", 0);
        cap = std::min(cap, stats_["constants"]["supply_hard_cap"].get<int>());
        int delta = producer == "morph" ? std::max(0, x2(st) - x2(stats_["units"][st["morph_from"].get<std::string>()]))
                                        : x2(st) * st.value("spawn_count", 1);
        if (used + delta > 2 * cap) return "unaffordable:supply";

        if (producer == "larva") {
            if (std::none_of(producers.begin(), producers.end(), [](const Building* b) { return b->larva > 0; }))
                return "unaffordable:larva";
        } else if (producer != "morph" && !any_idle(producers)) {
            return "unaffordable:producer";
        }
        return "dispatched";
    }

    std::string building(const WorldState& s, const std::string& name, BaseId at, std::optional<BaseId> builder) const {
        const auto& st = stats_["buildings"][name];
        if (st["race"] != "Zerg") return "rejected:wrong-race";
        if (st.value("unique", false))
            for (const auto& b : s.buildings)
                if (b.owner == Z && identifier(b.kind) == name) return "rejected:already-exists";
        const bool morph = st.contains("morph_from");
        if (!morph) {
            int geysers = 0;
            bool hall_here = false;
            for (const auto& b : s.buildings) {
                if (b.base != at) continue;
                geysers += bstat(b.kind).value("geyser", false);
                hall_here = hall_here || hall(b.kind);
            }
            if (st.value("town_hall", false) && hall_here) return "rejected:base-occupied";
            if (st.value("geyser", false) && geysers >= stats_["constants"]["geysers_per_base"].get<int>())
                return "rejected:no-free-geyser";
        }
        std::vector<std::string> missing;
        requirements(s, tech_["buildings"][name]["requires"], missing);
        std::vector<const Building*> sources;
        if (morph) {
            sources = own_complete(s, st["morph_from"], at, true);
            if (sources.empty()) add_once(missing, st["morph_from"]);
        } else {
            if (!any_ready(s, "Drone", builder ? builder : at)) add_once(missing, "Drone");
            if (!st.value("town_hall", false)) {
                bool own_hall = false;
                for (const auto& b : s.buildings)
                    own_hall = own_hall || (b.owner == Z && b.complete && hall(b.kind) && b.base == at);
                if (!own_hall) add_once(missing, "Hatchery");
            }
        }
        if (!missing.empty()) return blocked(missing);
        if (auto m = money(s, st); !m.empty()) return m;
        if (morph && !any_idle(sources)) return "unaffordable:producer";
        return "dispatched";
    }

    std::string research(const WorldState& s, const std::string& name) const {
        const auto& r = tech_["research"][name];
        const std::string producer = r["producer"];
        if (stats_["buildings"][producer]["race"] != "Zerg") return "rejected:wrong-race";
        auto id = *research_from_identifier(name);
        if (s.player(Z).research_done.test(static_cast<std::size_t>(id))) return "rejected:already-researched";
        for (const auto& p : s.production)
            if (p.owner == Z && p.what == Producible{id}) return "rejected:in-progress";
        std::vector<std::string> missing;
        auto producers = own_complete(s, producer, std::nullopt, false);
        if (producers.empty()) add_once(missing, producer);
        requirements(s, r["requires"], missing);
        if (!missing.empty()) return blocked(missing);
        if (auto m = money(s, r); !m.empty()) return m;
        if (!any_idle(producers)) return "unaffordable:producer";
        return "dispatched";
    }
};

std::string classify(const Outcome& o) {
    if (std::holds_alternative<Dispatched>(o)) return "dispatched";
    if (const auto* r = std::get_if<Rejected>(&o)) return "rejected:" + r->reason;
    const auto& f = std::get<Suspended>(o).reason;
    if (const auto* b = std::get_if<Blocked>(&f)) {
        std::string out = "blocked:";
        for (std::size_t i = 0; i < b->missing.size(); ++i) out += (i ? "," : "") + identifier(b->missing[i]);
        return out;
    }
    if (const auto* u = std::get_if<Unaffordable>(&f)) return "unaffordable:" + std::string(resource_name(u->resource));
    return "suspended:" + describe(f);
}

const BaseId kBases[] = {BaseId::from_index(0), BaseId::from_index(1), BaseId::from_index(2), BaseId::from_index(3)};

WorldState random_state(std::mt19937_64& rng) {
    auto s = empty_world();
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    auto base = [&] { return kBases[pick(4)]; };
    s.tick = pick(600);
    s.player(Z).minerals = 25 * pick(25);
    s.player(Z).gas = 25 * pick(17);
    for (auto k : kAllBuildingKinds) {
        if (owner_race(k) != Z || pick(100) >= (k == BuildingKind::Hatchery ? 80 : 30)) continue;
        auto& b = add_building(s, k, Z, base(), pick(5) != 0, s.data->building(k).geyser ? 1 + pick(2) : 0);
        b.busy = pick(5) == 0;
        if (s.data->building(k).town_hall) b.larva = pick(3);
    }
    if (pick(5) == 0) add_building(s, BuildingKind::CommandCenter, T, base());
    const UnitKind kinds[] = {UnitKind::Drone, UnitKind::Drone, UnitKind::Overlord, UnitKind::Zergling,
                              UnitKind::Roach, UnitKind::Corruptor, UnitKind::Hydralisk};
    for (int i = pick(16); i > 0; --i) {
        auto& u = add_unit(s, kinds[pick(std::size(kinds))], Z, base());
        int roll = pick(10);
        if (roll == 0) u.activity = Activity::Morphing;
        if (roll == 1) u.transit = Transit{{u.base, kBases[(u.base.index() + 1) % 4]}, 0, 300, MoveMode::Move, std::nullopt};
        if (roll >= 5 && u.kind == UnitKind::Drone) u.activity = Activity::GatheringMinerals;
    }
    for (auto r : kAllResearch)
        if (owner_race(s.data->research(r).producer) == Z && pick(8) == 0)
            s.player(Z).research_done.set(static_cast<std::size_t>(r));
    if (pick(4) == 0) {
        Production p;
        p.id = s.next_id++;
        p.what = kAllResearch[pick(kResearchCount)];
        p.owner = Z;
        p.base = kBases[0];
        p.remaining = 30;
        s.production.push_back(p);
    }
    if (pick(3) == 0) {
        Production p;
        p.id = s.next_id++;
        p.what = UnitKind::Roach;
        p.owner = Z;
        p.base = base();
        p.remaining = 10;
        p.supply_x2 = 2 * pick(20);
        s.production.push_back(p);
    }
    return s;
}

Command random_command(const WorldState& s, std::mt19937_64& rng) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    const GameData& d = *s.data;
    BaseId at = kBases[pick(4)];
    Command c;
    int what = pick(10);
    if (what < 4) {
        auto k = kAllUnitKinds[pick(kUnitKindCount)];
        while (owner_race(k) != Z && pick(5)) k = kAllUnitKinds[pick(kUnitKindCount)];
        const auto& r = d.unit_recipe(k);
        if (r.producer == ProducerKind::Morph && d.unit(k).morph_from) {
            c.subject = Subject{*d.unit(k).morph_from, at};
            c.verb = Verb::Morph;
        } else if (r.producer == ProducerKind::Building) {
            c.subject = Subject{r.producer_building, at};
            c.verb = Verb::Train;
        } else {
            c.subject = Subject{GroupAlias::Larva, at};
            c.verb = Verb::Train;
        }
        c.target = KindTarget{k, 0, std::nullopt};
    } else if (what < 8) {
        auto k = kAllBuildingKinds[pick(kBuildingKindCount)];
        while (owner_race(k) != Z && pick(5)) k = kAllBuildingKinds[pick(kBuildingKindCount)];
        if (const auto& from = d.building(k).morph_from) c.subject = Subject{*from, at};
        else c.subject = Subject{UnitKind::Drone, pick(3) ? at : kBases[pick(4)]};
        c.verb = Verb::Build;
        c.target = KindTarget{k, 0, at};
    } else if (what < 10 && pick(10)) {
        auto r = kAllResearch[pick(kResearchCount)];
        while (owner_race(d.research(r).producer) != Z && pick(5)) r = kAllResearch[pick(kResearchCount)];
        c.subject = Subject{d.research(r).producer, at};
        c.verb = Verb::Research;
        c.target = KindTarget{r, 0, std::nullopt};
    } else {
        // Verb and target kind disagree.
        c.subject = Subject{BuildingKind::Hatchery, at};
        c.verb = pick(2) ? Verb::Research : Verb::Train;
        c.target = KindTarget{BuildingKind::SpawningPool, 0, at};
    }
    return c;
}

// Mends whatever the oracle says is holding the command back.
bool satisfy(WorldState& s, const Command& c, const TechOracle& oracle) {
    for (int round = 0; round < 12; ++round) {
        std::string v = oracle.judge(s, c);
        if (v == "dispatched") return true;
        if (v.starts_with("rejected:")) return false;
        const auto* kt = std::get_if<KindTarget>(&c.target);
        BaseId at = kt->location.value_or(c.subject.location.value_or(kBases[0]));
        if (v.starts_with("blocked:")) {
            std::stringstream in(v.substr(8));
            for (std::string name; std::getline(in, name, ',');) {
                if (auto b = building_from_identifier(name)) add_building(s, *b, Z, at);
                else if (auto u = unit_from_identifier(name))
                    add_unit(s, *u, Z, c.verb == Verb::Build && c.subject.location ? *c.subject.location : at);
            }
        } else if (v == "unaffordable:minerals") {
            s.player(Z).minerals += 1000;
        } else if (v == "unaffordable:gas") {
            s.player(Z).gas += 1000;
        } else if (v == "unaffordable:supply") {
            for (int i = 0; i < 4; ++i) add_unit(s, UnitKind::Overlord, Z, at);
        } else if (v == "unaffordable:larva") {
            for (auto& b : s.buildings)
                if (b.owner == Z && b.base == at && b.complete) b.larva = 3;
        } else if (v == "unaffordable:producer") {
            for (auto& b : s.buildings) b.busy = false;
        }
        std::sort(s.units.begin(), s.units.end(), [](const Unit& a, const Unit& b) { return a.id < b.id; });
        std::sort(s.buildings.begin(), s.buildings.end(), [](const Building& a, const Building& b) { return a.id < b.id; });
    }
    return false;
}

Verdict condition_verification() {
    Verdict v;
    TechOracle oracle;
    std::mt19937_64 rng(77);
    std::map<std::string, int> tally;
    int released = 0, unreleasable = 0;
    for (int i = 0; i < 1000; ++i) {
        auto s = random_state(rng);
        auto c = random_command(s, rng);
        std::string expect = oracle.judge(s, c);
        const int minerals = s.player(Z).minerals, gas = s.player(Z).gas;
        SuspendQueue q;
        const int now = s.tick;
        auto got = classify(verify_and_dispatch(c, s, q, now));
        ++tally[got.substr(0, got.find(':'))];
        if (got != expect) {
            v.fail("pair " + std::to_string(i) + " " + render_command(c) + ": got " + got + ", oracle " + expect);
            continue;
        }
        if (got == "dispatched") {
            const std::string name = identifier(std::get<KindTarget>(c.target).kind);
            if (minerals - s.player(Z).minerals != oracle.cost(name, "minerals") ||
                gas - s.player(Z).gas != oracle.cost(name, "gas"))
                v.fail("pair " + std::to_string(i) + " debited the wrong amount");
            continue;
        }
        if (s.player(Z).minerals != minerals || s.player(Z).gas != gas)
            v.fail("pair " + std::to_string(i) + " debited without dispatching");
        if (q.empty()) continue;

        // Still waiting on the enqueue tick; ready one tick later.
        for (const auto& e : process_suspended(s, q, now))
            if (e.what == "dispatched") v.fail("pair " + std::to_string(i) + " dispatched before ready");
        if (!satisfy(s, c, oracle)) {
            ++unreleasable;
            continue;
        }
        auto events = process_suspended(s, q, now + 1);
        if (events.size() != 1 || events[0].what != "dispatched" || events[0].command != c)
            v.fail("pair " + std::to_string(i) + " not dispatched on the tick it became ready");
        else
            ++released;
    }

    // Two waiting Roaches, funds for one: the older entry goes first.
    auto s = empty_world();
    add_building(s, BuildingKind::Hatchery, Z, kBases[0]).larva = 3;
    add_building(s, BuildingKind::SpawningPool, Z, kBases[0]);
    add_unit(s, UnitKind::Overlord, Z, kBases[0]);
    SuspendQueue q;
    auto roach = parse_command("(Larva, A1)->(Train)->(Roach)");
    auto ling = parse_command("(Larva, A1)->(Train)->(Zergling)");
    s.player(Z).minerals = 0;
    verify_and_dispatch(roach, s, q, 0);
    verify_and_dispatch(ling, s, q, 1);
    add_building(s, BuildingKind::RoachWarren, Z, kBases[0]);
    s.player(Z).minerals = 75;
    s.player(Z).gas = 25;
    auto events = process_suspended(s, q, 2);
    if (events.size() != 1 || events[0].command != roach || q.size() != 1)
        v.fail("queue did not release in arrival order");

    if (tally["dispatched"] == 0 || tally["blocked"] == 0 || tally["unaffordable"] == 0 || tally["rejected"] == 0)
        v.fail("corpus misses an outcome class");
    if (v.pass) {
        std::ostringstream o;
        o << "1000 pairs agree (" << tally["dispatched"] << " dispatched, " << tally["blocked"] << " blocked, "
          << tally["unaffordable"] << " unaffordable, " << tally["rejected"] << " rejected); " << released
          << " released on the ready tick, " << unreleasable << " beyond repair";
        v.detail = o.str();
    }
    return v;
}

// ---- 4. reflex soundness -----------------------------------------------------

Verdict reflex_soundness() {
    Verdict v;
    long ticks = 0, transitions = 0;
    const Difficulty levels[] = {Difficulty::VeryEasy, Difficulty::Medium, Difficulty::Hard};
    const char* brains[] = {"scripted:rush", "scripted:macro", "scripted:turtle"};
    const GameData& d = GameData::builtin();
    for (int i = 0; ticks < 10'000; ++i) {
        MatchConfig c;
        c.seed = 500 + i;
        c.difficulty = levels[i % 3];
        c.brain = brains[(i / 3) % 3];
        auto run = run_match(c);
        ticks += run.stats.duration_ticks;
        std::istringstream in(run.replay);
        for (std::string line; std::getline(in, line);) {
            auto rec = json::parse(line);
            if (!rec.contains("transitions")) continue;
            for (const auto& t : rec["transitions"]) {
                ++transitions;
                auto kind = unit_from_identifier(t["kind"].get<std::string>());
                auto mode = [](const std::string& m) {
                    for (auto r : {ReflexMode::Gather, ReflexMode::Attack, ReflexMode::Flee, ReflexMode::Idle,
                                   ReflexMode::Inject})
                        if (reflex_mode_name(r) == m) return r;
                    throw Error("bad-mode", m);
                };
                if (!kind || !legal_edge(archetype_of(d, *kind), mode(t["from"]), mode(t["to"])))
                    v.fail("illegal " + t.dump());
            }
        }
    }
    if (transitions == 0) v.fail("no transitions observed");

    // Lone SCV: the smallest drone group whose power exceeds it answers.
    {
        std::ifstream in(std::string(SWARM_DATA_DIR) + "/stats.json");
        auto stats = json::parse(in);
        int scv = stats["units"]["SCV"]["ground"], drone = stats["units"]["Drone"]["ground"];
        int need = scv / drone + 1;
        auto s = empty_world();
        add_building(s, BuildingKind::Hatchery, Z, kBases[0]);
        add_units(s, 12, UnitKind::Drone, Z, kBases[0], Activity::GatheringMinerals);
        add_unit(s, UnitKind::SCV, T, kBases[0], Activity::Attacking);
        refresh_intel(s);
        auto r = reflex_step(observe(s, Z));
        int attack = 0;
        for (const auto& t : r.transitions) attack += t.to == ReflexMode::Attack;
        if (attack != need) v.fail("lone SCV drew " + std::to_string(attack) + " drones, expected " + std::to_string(need));
    }
    // Four Marines: the mineral line flees.
    {
        auto s = empty_world();
        add_building(s, BuildingKind::Hatchery, Z, kBases[0]);
        add_building(s, BuildingKind::Hatchery, Z, kBases[1]);
        add_units(s, 12, UnitKind::Drone, Z, kBases[0], Activity::GatheringMinerals);
        add_units(s, 4, UnitKind::Marine, T, kBases[0], Activity::Attacking);
        refresh_intel(s);
        auto r = reflex_step(observe(s, Z));
        int flee = 0;
        for (const auto& t : r.transitions) flee += t.to == ReflexMode::Flee;
        if (flee != 12) v.fail("4 Marines made " + std::to_string(flee) + " drones flee");
    }
    // Medivac present: anti-air picks it first.
    {
        auto s = empty_world();
        add_building(s, BuildingKind::Hatchery, Z, kBases[0]);
        EntityId hydra = add_unit(s, UnitKind::Hydralisk, Z, kBases[0]).id;
        EntityId queen = add_unit(s, UnitKind::Queen, Z, kBases[0]).id;
        add_units(s, 4, UnitKind::Zergling, Z, kBases[0]);
        add_units(s, 3, UnitKind::Marine, T, kBases[0], Activity::Attacking);
        EntityId medivac = add_unit(s, UnitKind::Medivac, T, kBases[0], Activity::Attacking).id;
        refresh_intel(s);
        auto r = reflex_step(observe(s, Z));
        std::map<EntityId, EntityId> targets(r.targets.begin(), r.targets.end());
        if (!targets.count(hydra) || targets[hydra] != medivac) v.fail("Hydralisk did not target the Medivac");
        if (targets.count(queen) && targets[queen] != medivac) v.fail("Queen did not target the Medivac");
    }
    if (v.pass)
        v.detail = std::to_string(ticks) + " ticks, " + std::to_string(transitions) + " transitions, all legal; 3 scenarios hold";
    return v;
}

// ---- 5. latency ----------------------------------------------------------------

Verdict latency() {
    Verdict v;
    auto t0 = Clock::now();
    std::map<std::string, MatchStats> by;
    for (const char* lat : {"0", "gpt-3.5", "gpt-4"}) {
        MatchConfig c;
        c.brain = "scripted:macro";
        c.max_ticks = 60;
        c.latency = LatencyProfile::parse(lat);
        by[lat] = run_match(c).stats;
    }
    int fast = by["gpt-3.5"].plans_requested, slow = by["gpt-4"].plans_requested;
    if (fast != 6) v.fail("10 s profile issued " + std::to_string(fast) + " plans");
    if (slow != 3) v.fail("20 s profile issued " + std::to_string(slow) + " plans");
    auto first = [&](const char* k) { return by[k].first_dispatch_tick.value_or(1 << 30); };
    if (!(first("0") < first("gpt-3.5") && first("gpt-3.5") < first("gpt-4")))
        v.fail("first dispatch not monotone in latency");
    double dt = seconds_since(t0);
    if (dt >= 10) v.fail("took " + std::to_string(dt) + " s");
    if (v.pass)
        v.detail = "plans/min 6 and 3; first dispatch " + std::to_string(first("0")) + " < " +
                   std::to_string(first("gpt-3.5")) + " < " + std::to_string(first("gpt-4"));
    return v;
}

// ---- 6. end to end -------------------------------------------------------------

Verdict competence() {
    Verdict v;
    std::string detail;
    for (auto [level, floor] : {std::pair{Difficulty::VeryEasy, 18}, std::pair{Difficulty::Medium, 10}}) {
        MatchConfig c;
        c.difficulty = level;
        c.brain = "scripted:rush";
        auto rep = run_series(c, 20);
        std::string line = std::string(difficulty_name(level)) + " " + std::to_string(rep.wins) + "/20";
        if (rep.wins < floor) v.fail(line + " (floor " + std::to_string(floor) + ")");
        detail += (detail.empty() ? "" : ", ") + line;
    }
    if (v.pass) v.detail = detail;
    return v;
}

// ---- 7. determinism --------------------------------------------------------------

Verdict determinism() {
    Verdict v;
    int matches = 0;
    for (const char* brain : {"scripted:rush", "scripted:macro", "scripted:turtle"}) {
        MatchConfig c;
        c.brain = brain;
        c.seed = 31;
        c.difficulty = Difficulty::Medium;
        std::vector<std::string> a, b;
        auto ra = run_series(c, 2, &a);
        auto rb = run_series(c, 2, &b);
        std::map<std::string, int> totals;
        for (std::size_t i = 0; i < a.size(); ++i) {
            ++matches;
            if (a[i] != b[i] || ra.matches[i].replay_hash != rb.matches[i].replay_hash)
                v.fail(std::string(brain) + " replay differs on re-run");
            if (replay_hash(a[i]) != ra.matches[i].replay_hash) v.fail("stored hash does not match replay text");
            auto counts = recount_commands(a[i]);
            if (counts != ra.matches[i].command_counts) v.fail(std::string(brain) + " recount differs from report");
            for (const auto& [k, n] : counts) totals[k] += n;
        }
        if (totals != ra.command_totals) v.fail(std::string(brain) + " frequency table differs from replays");
    }
    if (v.pass) v.detail = std::to_string(matches) + " matches replay identically; recounts match";
    return v;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"prompt fidelity", prompt_fidelity},
        {"parser corpus", parser_corpus},
        {"condition verification", condition_verification},
        {"reflex soundness", reflex_soundness},
        {"latency", latency},
        {"end-to-end competence", competence},
        {"determinism", determinism},
    };
    int failed = 0;
    int n = 0;
    for (const auto& [name, run] : criteria) {
        Verdict v;
        try {
            v = run();
        } catch (const std::exception& e) {
            v.fail(std::string("threw: ") + e.what());
        }
        failed += !v.pass;
        std::printf("%s %d %s: %s\n", v.pass ? "PASS" : "FAIL", ++n, name, v.detail.c_str());
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
