#include <doctest.h>

#include <deque>
#include <map>
#include <set>

#include "support.hpp"
#include "swarm/error.hpp"

using namespace swarm;
using swarm::test::B;

namespace {

// Breadth-first distances over grid neighbours plus explicit links, written
// without MapMatrix.
std::map<std::string, std::map<std::string, int>> oracle_distances(const std::vector<std::vector<std::string>>& rows,
                                                                   const std::vector<std::pair<std::string, std::string>>& links) {
    std::map<std::string, std::set<std::string>> adj;
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            const auto& a = rows[r][c];
            if (a == "0") continue;
            adj[a];
            if (c + 1 < rows[r].size() && rows[r][c + 1] != "0") adj[a].insert(rows[r][c + 1]), adj[rows[r][c + 1]].insert(a);
            if (r + 1 < rows.size() && rows[r + 1][c] != "0") adj[a].insert(rows[r + 1][c]), adj[rows[r + 1][c]].insert(a);
        }
    for (const auto& [a, b] : links) adj[a].insert(b), adj[b].insert(a);
    std::map<std::string, std::map<std::string, int>> out;
    for (const auto& [src, _] : adj) {
        auto& d = out[src];
        d[src] = 0;
        std::deque<std::string> q{src};
        while (!q.empty()) {
            auto u = q.front();
            q.pop_front();
            for (const auto& v : adj[u])
                if (!d.count(v)) d[v] = d[u] + 1, q.push_back(v);
        }
    }
    return out;
}

const std::vector<std::vector<std::string>> kRows = {
    {"0", "A6", "B7", "B3", "B2"},
    {"A5", "0", "B8", "B4", "B1"},
    {"A1", "A4", "A8", "0", "B5"},
    {"A2", "A3", "A7", "B6", "0"},
};
const std::vector<std::pair<std::string, std::string>> kLinks = {{"A5", "A6"}, {"A4", "A6"}, {"B5", "B6"}, {"B4", "B6"}};

}  // namespace

TEST_CASE("prompt matrix renders the layout shown to the planner") {
    CHECK(render_prompt_matrix(default_map()) ==
          "[[0, A6, B7, B3, B2],\n [A5, 0, B8, B4, B1],\n [A1, A4, A8, 0, B5],\n [A2, A3, A7, B6, 0]]");
}

TEST_CASE("grid text round-trips") {
    const auto text = render_grid(default_map().grid());
    CHECK(render_grid(parse_grid(text)) == text);
    CHECK_THROWS_AS(parse_grid("[[A1]]"), Error);
}

TEST_CASE("base ids") {
    CHECK(BaseId::parse("A1")->index() == 0);
    CHECK(BaseId::parse("B8")->index() == 15);
    CHECK(B("B3").side() == 'B');
    CHECK(B("B3").number() == 3);
    CHECK_FALSE(BaseId::parse("C1"));
    CHECK_FALSE(BaseId::parse("A9"));
    CHECK_FALSE(BaseId::parse("A"));
    CHECK(B("A1") < B("A8"));
    CHECK(B("A8") < B("B1"));
}

TEST_CASE("distances agree with an independent breadth-first search") {
    const auto oracle = oracle_distances(kRows, kLinks);
    const auto& m = default_map();
    for (int i = 0; i < BaseId::kCount; ++i)
        for (int j = 0; j < BaseId::kCount; ++j) {
            auto a = BaseId::from_index(i), b = BaseId::from_index(j);
            CHECK(m.distance(a, b) == oracle.at(a.str()).at(b.str()));
        }
}

TEST_CASE("paths are shortest, connected and mirror each other") {
    const auto& m = default_map();
    for (int i = 0; i < BaseId::kCount; ++i)
        for (int j = 0; j < BaseId::kCount; ++j) {
            auto a = BaseId::from_index(i), b = BaseId::from_index(j);
            auto p = m.path(a, b);
            REQUIRE(p.size() == static_cast<std::size_t>(m.distance(a, b) + 1));
            CHECK(p.front() == a);
            CHECK(p.back() == b);
            for (std::size_t k = 0; k + 1 < p.size(); ++k) CHECK(m.adjacent(p[k], p[k + 1]));
            auto back = m.path(b, a);
            std::reverse(back.begin(), back.end());
            CHECK(back == p);
        }
}

TEST_CASE("main-to-main route") {
    // Hand-traced on the layout: the only 5-hop route runs through the centre.
    const auto& m = default_map();
    CHECK(m.distance(B("A1"), B("B1")) == 5);
    std::vector<BaseId> expected{B("A1"), B("A4"), B("A8"), B("B8"), B("B4"), B("B1")};
    CHECK(m.path(B("A1"), B("B1")) == expected);
    CHECK(m.home(Player::Zerg) == B("A1"));
    CHECK(m.home(Player::Terran) == B("B1"));
}

TEST_CASE("map files are validated") {
    const std::string ok = R"({"grid": [["0","A6","B7","B3","B2"],["A5","0","B8","B4","B1"],
        ["A1","A4","A8","0","B5"],["A2","A3","A7","B6","0"]], "links": [["A5","A6"]]})";
    auto m = load_map_json(ok);
    CHECK(m.adjacent(B("A5"), B("A6")));
    CHECK_FALSE(m.adjacent(B("B5"), B("B6")));

    const std::string dup = R"({"grid": [["A1","A6","B7","B3","B2"],["A5","0","B8","B4","B1"],
        ["A1","A4","A8","0","B5"],["A2","A3","A7","B6","0"]], "links": []})";
    try {
        load_map_json(dup);
        FAIL("duplicate base accepted");
    } catch (const Error& e) {
        CHECK(e.code() == "bad-map");
    }
    CHECK_THROWS_AS(load_map_json("{"), Error);
    CHECK_THROWS_AS(load_map_json(R"({"grid": []})"), Error);
}

TEST_CASE("disconnected layouts are rejected") {
    // B2 sits in a corner whose two neighbours are empty.
    const std::string isolated = R"({"grid": [["A6","B7","B8","0","B2"],["A5","B3","B4","B1","0"],
        ["A1","A4","A8","B5","B6"],["A2","A3","A7","0","0"]], "links": []})";
    CHECK_THROWS_AS(load_map_json(isolated), Error);
}
