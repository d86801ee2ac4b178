#include <doctest.h>

#include <filesystem>
#include <json.hpp>
#include <sstream>

#include "support.hpp"
#include "swarm/error.hpp"
#include "swarm/harness.hpp"
#include "swarm/replay.hpp"

using namespace swarm;
using namespace swarm::test;
using nlohmann::json;

namespace {

MatchConfig short_match(std::string brain = "scripted:rush", int ticks = 400) {
    MatchConfig c;
    c.brain = std::move(brain);
    c.max_ticks = ticks;
    c.seed = 11;
    return c;
}

std::vector<json> records(const std::string& replay) {
    std::vector<json> out;
    std::istringstream in(replay);
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) out.push_back(json::parse(line));
    return out;
}

}  // namespace

TEST_CASE("matches are reproducible from the seed") {
    auto a = run_match(short_match());
    auto b = run_match(short_match());
    CHECK(a.replay == b.replay);
    CHECK(a.stats.replay_hash == b.stats.replay_hash);
    CHECK(a.stats.replay_hash == replay_hash(a.replay));
    auto other = short_match();
    other.seed = 12;
    other.difficulty = Difficulty::Medium;
    CHECK(run_match(other).stats.replay_hash != a.stats.replay_hash);
}

TEST_CASE("replay layout") {
    auto run = run_match(short_match());
    auto recs = records(run.replay);
    REQUIRE(recs.size() >= 3);
    CHECK(recs.front()["type"] == "header");
    CHECK(recs.front()["seed"] == 11);
    CHECK(recs.back()["type"] == "result");
    int last = -1;
    for (std::size_t i = 1; i + 1 < recs.size(); ++i) {
        CHECK(recs[i]["type"] == "tick");
        int t = recs[i]["tick"].get<int>();
        CHECK(t > last);
        last = t;
        CHECK(recs[i].size() > 2);
    }
    CHECK(recs.back()["result"] == std::string(match_result_name(run.stats.result)));
}

TEST_CASE("command counts can be recovered from the replay") {
    for (const char* brain : {"scripted:rush", "scripted:macro", "scripted:turtle"}) {
        auto run = run_match(short_match(brain, 900));
        CHECK(recount_commands(run.replay) == run.stats.command_counts);
        CHECK_FALSE(run.stats.command_counts.empty());
    }
}

TEST_CASE("slower models plan less often") {
    std::map<std::string, MatchStats> by;
    for (const char* lat : {"0", "gpt-3.5", "gpt-4"}) {
        auto c = short_match("scripted:macro", 60);
        c.latency = LatencyProfile::parse(lat);
        by[lat] = run_match(c).stats;
    }
    CHECK(by["gpt-3.5"].plans_requested <= 6);
    CHECK(by["gpt-4"].plans_requested <= 3);
    // The translator runs alongside the next plan, so a plan leaves every
    // planner latency: ceil(60 / 10) and ceil(60 / 20).
    CHECK(by["gpt-3.5"].plans_requested == 6);
    CHECK(by["gpt-4"].plans_requested == 3);
    CHECK(by["0"].plans_requested > by["gpt-3.5"].plans_requested);
    REQUIRE(by["0"].first_dispatch_tick.has_value());
    REQUIRE(by["gpt-3.5"].first_dispatch_tick.has_value());
    REQUIRE(by["gpt-4"].first_dispatch_tick.has_value());
    CHECK(*by["0"].first_dispatch_tick < *by["gpt-3.5"].first_dispatch_tick);
    CHECK(*by["gpt-3.5"].first_dispatch_tick < *by["gpt-4"].first_dispatch_tick);
    CHECK(*by["gpt-3.5"].first_dispatch_tick == 15);
    CHECK(*by["gpt-4"].first_dispatch_tick == 25);
    for (auto& [name, st] : by) {
        REQUIRE(st.plan_delivery_ticks.size() <= st.plan_request_ticks.size());
        for (std::size_t i = 0; i < st.plan_delivery_ticks.size(); ++i)
            CHECK(st.plan_delivery_ticks[i] >= st.plan_request_ticks[i]);
    }
}

TEST_CASE("a recorded transcript drives the first round") {
    auto c = short_match(std::string("replay:") + SWARM_FIXTURE_DIR + "/transcript_recorded.json", 120);
    auto run = run_match(c);
    bool scout_sent = false;
    for (const auto& r : records(run.replay))
        if (r.contains("commands"))
            for (const auto& cmd : r["commands"])
                if (cmd.value("canonical", "") == "(Overlord, A1)->(Move)->(B1)" &&
                    cmd.value("outcome", "").starts_with("dispatched"))
                    scout_sent = true;
    CHECK(scout_sent);
    CHECK(run.stats.plans_parsed >= 1);
    CHECK(run.stats.parse_failures == 0);
}

TEST_CASE("reflexes alone keep the workers mining") {
    auto c = short_match("scripted:rush", 200);
    c.brain_enabled = false;
    auto run = run_match(c);
    CHECK(run.stats.plans_requested == 0);
    CHECK(run.stats.commands_dispatched == 0);
    CHECK(run.stats.result == MatchResult::Timeout);
}

TEST_CASE("configuration errors surface before the match starts") {
    CHECK_THROWS_AS(run_match(short_match("wizard:x")), Error);
    CHECK_THROWS_AS(run_match(short_match("replay:/nonexistent/transcript.json")), Error);
}

TEST_CASE("an unreachable remote model aborts the match") {
    auto c = short_match("remote:http://127.0.0.1:9/v1/chat/completions", 100);
    c.timeout_ms = 300;
    auto run = run_match(c);
    CHECK(run.stats.result == MatchResult::Aborted);
    CHECK(run.stats.abort_reason == "brain-unavailable");
}

TEST_CASE("series aggregates and exports") {
    auto c = short_match("scripted:rush", 1200);
    std::vector<std::string> replays;
    auto rep = run_series(c, 3, &replays);
    REQUIRE(rep.matches.size() == 3);
    CHECK(replays.size() == 3);
    CHECK(rep.matches[1].seed == 12);
    int wins = 0;
    for (const auto& m : rep.matches) wins += m.result == MatchResult::Win;
    CHECK(rep.wins == wins);
    CHECK(rep.win_rate == doctest::Approx(wins / 3.0));
    double total = 0;
    for (const auto& [k, v] : rep.command_percent) total += v;
    if (!rep.command_totals.empty()) CHECK(total == doctest::Approx(100.0));

    auto dir = std::filesystem::temp_directory_path() / "swarm_series_test";
    std::filesystem::remove_all(dir);
    export_series(rep, dir.string());
    auto csv = read_text_file((dir / "stats.csv").string());
    // Header, one row per match, then the totals and percentages rows.
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
    CHECK(csv.find("\ntotal,wins=") != std::string::npos);
    auto j = json::parse(read_text_file((dir / "report.json").string()));
    CHECK(j["matches"] == 3);
    CHECK(j["wins"] == rep.wins);
    CHECK(j["per_match"].size() == 3);
    CHECK(frequency_table(rep).find("Train Zergling") != std::string::npos);
    std::filesystem::remove_all(dir);
}
