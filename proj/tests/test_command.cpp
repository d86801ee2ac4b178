#include <doctest.h>

#include <random>
#include <set>

#include "support.hpp"
#include "swarm/command.hpp"
#include "swarm/error.hpp"

using namespace swarm;
using namespace swarm::test;

namespace {

std::string code_of(std::string_view line) {
    try {
        parse_command(line);
    } catch (const Error& e) {
        return e.code();
    }
    return "";
}

}  // namespace

TEST_CASE("canonical lines") {
    auto c = parse_command("(Drone, A1)->(Build)->(Spawning Pool, A1)");
    CHECK(c.subject.kind == SubjectKind{UnitKind::Drone});
    CHECK(c.subject.location == B("A1"));
    CHECK(c.verb == Verb::Build);
    CHECK(c.target == Target{KindTarget{BuildingKind::SpawningPool, 0, B("A1")}});

    c = parse_command("(Overlord, A1)->(Move)->(B1)");
    CHECK(c.target == Target{B("B1")});

    c = parse_command("(Spawning Pool, A1)->(Research)->(Metabolic Boost)");
    CHECK(c.subject.kind == SubjectKind{BuildingKind::SpawningPool});
    CHECK(c.target == Target{KindTarget{ResearchId::MetabolicBoost, 0, std::nullopt}});

    c = parse_command("(Drone, A1)->(Gather gas)->(Extractor1)");
    CHECK(c.verb == Verb::GatherGas);
    CHECK(c.target == Target{KindTarget{BuildingKind::Extractor, 1, std::nullopt}});

    c = parse_command("(Zerg units, A4)->(Attack)");
    CHECK(c.subject.kind == SubjectKind{GroupAlias::AllCombat});
    CHECK(std::holds_alternative<std::monostate>(c.target));
}

TEST_CASE("translator slips the parser absorbs") {
    CHECK(render_command(parse_command("(Zerglings, A4)->(Reinforce)->(A4)")) == "(Zergling, A4)->(Move)->(A4)");
    CHECK(render_command(parse_command("'3': \"(Roaches, A1) -> (Attack) -> (B1)\", // go")) ==
          "(Roach, A1)->(Attack)->(B1)");
    CHECK(render_command(parse_command("(Overlord, A1)->(Coordinate)->(A4)")) == "(Overlord, A1)->(Scout)->(A4)");
    CHECK(render_command(parse_command("(Larvae, A1)->(Morph)->(Overlord)")) == "(Larva, A1)->(Morph)->(Overlord)");
    CHECK(render_command(parse_command("(Evolution Chamber, A1)->(Research)->(Missile Attacks)")) ==
          "(Evolution Chamber, A1)->(Research)->(Missile Attacks Level 1)");
}

TEST_CASE("per-unit tag form") {
    auto c = parse_command("*(Unit(name='Zergling', tag=4362338305))->(Attack)->(B1)");
    CHECK(c.subject.kind == SubjectKind{UnitKind::Zergling});
    CHECK_FALSE(c.subject.location.has_value());
    CHECK(c.verb == Verb::Attack);
    CHECK(c.target == Target{B("B1")});
}

TEST_CASE("unrecognised research stays free text") {
    auto c = parse_command("(Roach Warren, A1)->(Research)->(Roach Speed)");
    CHECK(c.target == Target{FreeText{"Roach Speed"}});
}

TEST_CASE("error codes") {
    CHECK(code_of("") == "malformed-line");
    CHECK(code_of("Drone, A1 -> Build") == "malformed-line");
    CHECK(code_of("(Drone, A1)->(Build)->") == "malformed-line");
    CHECK(code_of("(Drone, A1)") == "malformed-line");
    CHECK(code_of("(, A1)->(Move)->(A2)") == "malformed-line");
    CHECK(code_of("(Stalker, A1)->(Move)->(A2)") == "unknown-kind");
    CHECK(code_of("(Drone, A1)->(Build)->(Pylon, A1)") == "unknown-kind");
    CHECK(code_of("(Drone, A1)->(Dance)->(A2)") == "unknown-verb");
}

TEST_CASE("every recorded command parses") {
    auto text = fixture("recorded_commands.txt");
    int n = 0;
    for (const auto& line : extract_command_lines(text)) {
        CHECK_MESSAGE(code_of(line).empty(), line);
        ++n;
    }
    CHECK(n == 36);
}

TEST_CASE("extracting lines from translator replies") {
    auto lines = extract_command_lines(fixture("commands_early.txt"));
    REQUIRE(lines.size() == 20);
    CHECK(lines[0] == "(Overlord, A1)->(Move)->(B1)");
    CHECK(extract_command_lines(fixture("commands_defence.txt")).size() == 13);
    CHECK(extract_command_lines("Sure! Here you go:\n{\n}\n").empty());
}

TEST_CASE("render then parse is the identity") {
    std::mt19937_64 rng(7);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    const Verb verbs[] = {Verb::Move,     Verb::Attack,    Verb::Build,          Verb::Train, Verb::Morph,
                          Verb::Research, Verb::GatherGas, Verb::GatherMinerals, Verb::Scout};
    for (int i = 0; i < 5000; ++i) {
        Command c;
        switch (pick(4)) {
            case 0: c.subject.kind = kAllBuildingKinds[pick(kBuildingKindCount)]; break;
            case 1: c.subject.kind = pick(2) ? GroupAlias::AllCombat : GroupAlias::Larva; break;
            default: c.subject.kind = kAllUnitKinds[pick(kUnitKindCount)]; break;
        }
        if (pick(4)) c.subject.location = BaseId::from_index(static_cast<int>(pick(BaseId::kCount)));
        c.verb = verbs[pick(std::size(verbs))];
        if (c.verb == Verb::Research) {
            c.target = KindTarget{kAllResearch[pick(kResearchCount)], 0, std::nullopt};
        } else {
            switch (pick(4)) {
                case 0: break;
                case 1: c.target = BaseId::from_index(static_cast<int>(pick(BaseId::kCount))); break;
                case 2: {
                    KindTarget t{kAllUnitKinds[pick(kUnitKindCount)], 0, std::nullopt};
                    if (pick(2)) t.location = BaseId::from_index(static_cast<int>(pick(BaseId::kCount)));
                    c.target = t;
                    break;
                }
                default: {
                    auto b = kAllBuildingKinds[pick(kBuildingKindCount)];
                    KindTarget t{b, 0, std::nullopt};
                    if (GameData::builtin().building(b).geyser && pick(2)) t.slot = 1 + static_cast<int>(pick(2));
                    if (pick(2)) t.location = BaseId::from_index(static_cast<int>(pick(BaseId::kCount)));
                    c.target = t;
                    break;
                }
            }
        }
        auto line = render_command(c);
        auto back = parse_command(line);
        REQUIRE_MESSAGE(back == c, line);
        REQUIRE(render_command(back) == line);
    }
}

TEST_CASE("fuzzed input yields only the documented error codes") {
    static const std::string_view pieces[] = {"(",     ")",        "->",      ", ",    "A1",       "B8",   "Zergling",
                                              "Drone", "Build",    "Move",    "Train", "Spawning", "Pool", "'",
                                              "\"",    "*",        "Unit(",   "name=", "tag=1",    " ",    "//",
                                              "x",     "Extractor", "1",      "\n",    "{",        ":",    "Research"};
    const std::set<std::string> allowed = {"malformed-line", "unknown-kind", "unknown-verb"};
    std::mt19937_64 rng(42);
    int parsed = 0;
    for (int i = 0; i < 100'000; ++i) {
        std::string line;
        auto n = 1 + rng() % 12;
        if (i % 2) {
            // Group-shaped inputs so a share of them gets past the splitter.
            for (std::size_t k = 0; k < 1 + n % 3; ++k) {
                if (k) line += "->";
                line += "(";
                for (std::size_t j = 0; j < 1 + rng() % 3; ++j) line += pieces[rng() % std::size(pieces)];
                line += ")";
            }
        } else {
            for (std::size_t k = 0; k < n; ++k) line += pieces[rng() % std::size(pieces)];
        }
        try {
            parse_command(line);
            ++parsed;
        } catch (const Error& e) {
            if (!allowed.count(e.code())) FAIL("unexpected code " << e.code() << " for " << line);
        }
    }
    CHECK(parsed > 0);
}

TEST_CASE("frequency buckets") {
    CHECK(frequency_key(parse_command("(Larva, A1)->(Train)->(Zergling)")) == "Train Zergling");
    CHECK(frequency_key(parse_command("(Roach, A1)->(Attack)->(B1)")) == "Attack Roach");
    CHECK_FALSE(frequency_key(parse_command("(Roach, A1)->(Move)->(B1)")).has_value());
}

TEST_CASE("verb table from json") {
    auto t = VerbTable::from_json(R"({"verbs": {"Move": ["Go there"]}})");
    CHECK(t.lookup("go   THERE") == Verb::Move);
    CHECK_FALSE(t.lookup("attack").has_value());
    CHECK_THROWS_AS(VerbTable::from_json(R"({"verbs": {"Fly": []}})"), Error);
    CHECK_THROWS_AS(VerbTable::from_json("nope"), Error);
}
