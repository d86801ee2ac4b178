#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swarm/kinds.hpp"

namespace swarm {

// One of the sixteen mineral-field locations, A1..A8 (Zerg half) and
// B1..B8 (Terran half). Ordered A1 < ... < A8 < B1 < ... < B8.
class BaseId {
public:
    static constexpr int kCount = 16;

    constexpr BaseId() = default;
    static constexpr BaseId from_index(int i) { return BaseId(static_cast<std::uint8_t>(i)); }
    static std::optional<BaseId> parse(std::string_view text);
    // Throws Error("bad-base") on failure.
    static BaseId must_parse(std::string_view text);

    constexpr int index() const { return value_; }
    constexpr char side() const { return value_ < 8 ? 'A' : 'B'; }
    constexpr int number() const { return value_ % 8 + 1; }
    std::string str() const;

    friend constexpr auto operator<=>(BaseId, BaseId) = default;

private:
    constexpr explicit BaseId(std::uint8_t v) : value_(v) {}
    std::uint8_t value_ = 0;
};

inline constexpr int kGridRows = 4;
inline constexpr int kGridCols = 5;
using Grid = std::array<std::array<std::optional<BaseId>, kGridCols>, kGridRows>;

// Renders a grid the way the planner prompt shows it: bracketed rows, "0"
// for cells without a mineral field, rows after the first indented by one
// space.
std::string render_grid(const Grid& grid);
// Inverse of render_grid. Throws Error("bad-map").
Grid parse_grid(std::string_view text);

// The base-location graph the planner reasons over. Immutable once built.
class MapMatrix {
public:
    // Validates: every base exactly once, links reference present bases,
    // graph connected. Throws Error("bad-map").
    MapMatrix(Grid grid, std::vector<std::pair<BaseId, BaseId>> extra_links);

    const Grid& grid() const { return grid_; }
    const std::set<std::pair<BaseId, BaseId>>& edges() const { return edges_; }
    const std::vector<BaseId>& neighbours(BaseId b) const { return adjacency_[b.index()]; }
    bool adjacent(BaseId a, BaseId b) const;
    std::pair<int, int> cell_of(BaseId b) const { return cells_[b.index()]; }
    bool on_edge(BaseId b) const;

    BaseId home(Player p) const { return p == Player::Zerg ? BaseId::from_index(0) : BaseId::from_index(8); }

    // Shortest path with both endpoints included. Among equal-length paths
    // the one starting from the lower base id takes the smallest next hop at
    // every step; the opposite direction returns that path reversed, so
    // path(a, b) and path(b, a) always mirror each other.
    // Throws Error("disconnected").
    std::vector<BaseId> path(BaseId from, BaseId to) const;
    int distance(BaseId from, BaseId to) const;

private:
    std::vector<BaseId> lex_path(BaseId from, BaseId to) const;

    Grid grid_{};
    std::array<std::pair<int, int>, BaseId::kCount> cells_{};
    std::set<std::pair<BaseId, BaseId>> edges_;
    std::array<std::vector<BaseId>, BaseId::kCount> adjacency_{};
    std::array<std::array<int, BaseId::kCount>, BaseId::kCount> dist_{};
};

// The Automaton LE layout the planner prompt is written against.
const MapMatrix& default_map();
MapMatrix build_default_matrix();
std::string render_prompt_matrix(const MapMatrix& m);

// {"grid": [[...5 strings...] x4], "links": [["A5","A6"], ...]}
MapMatrix load_map_json(std::string_view json_text);
MapMatrix load_map_file(const std::string& path);

}  // namespace swarm
