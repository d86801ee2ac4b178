#include "swarm/map.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include <json.hpp>

#include "swarm/error.hpp"
#include "swarm/io.hpp"

namespace swarm {
namespace {

constexpr int kUnreachable = -1;

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

std::optional<BaseId> BaseId::parse(std::string_view text) {
    if (text.size() != 2) return std::nullopt;
    const char side = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
    const char digit = text[1];
    if ((side != 'A' && side != 'B') || digit < '1' || digit > '8') return std::nullopt;
    return from_index((side == 'A' ? 0 : 8) + (digit - '1'));
}

BaseId BaseId::must_parse(std::string_view text) {
    if (auto b = parse(text)) return *b;
    throw Error("bad-base", "not a base id: " + std::string(text));
}

std::string BaseId::str() const { return std::string{side(), static_cast<char>('0' + number())}; }

std::string render_grid(const Grid& grid) {
    std::string out = "[";
    for (int r = 0; r < kGridRows; ++r) {
        if (r > 0) out += ",\n ";
        out += "[";
        for (int c = 0; c < kGridCols; ++c) {
            if (c > 0) out += ", ";
            out += grid[r][c] ? grid[r][c]->str() : "0";
        }
        out += "]";
    }
    out += "]";
    return out;
}

Grid parse_grid(std::string_view text) {
    const std::string t = trim(text);
    if (t.size() < 4 || t.front() != '[' || t.back() != ']') throw Error("bad-map", "grid text must be [[...]]");
    Grid grid{};
    std::string_view body(t);
    body = body.substr(1, body.size() - 2);
    int row = 0;
    std::size_t pos = 0;
    while (pos < body.size()) {
        const auto open = body.find('[', pos);
        if (open == std::string_view::npos) break;
        const auto close = body.find(']', open);
        if (close == std::string_view::npos) throw Error("bad-map", "unterminated grid row");
        if (row >= kGridRows) throw Error("bad-map", "too many grid rows");
        std::string_view cells = body.substr(open + 1, close - open - 1);
        int col = 0;
        std::size_t cpos = 0;
        while (true) {
            const auto comma = cells.find(',', cpos);
            const std::string cell = trim(cells.substr(cpos, comma == std::string_view::npos ? std::string_view::npos
                                                                                            : comma - cpos));
            if (col >= kGridCols) throw Error("bad-map", "too many grid columns");
            if (cell != "0") {
                auto b = BaseId::parse(cell);
                if (!b) throw Error("bad-map", "bad grid cell: " + cell);
                grid[row][col] = *b;
            }
            ++col;
            if (comma == std::string_view::npos) break;
            cpos = comma + 1;
        }
        if (col != kGridCols) throw Error("bad-map", "grid row must have 5 cells");
        ++row;
        pos = close + 1;
    }
    if (row != kGridRows) throw Error("bad-map", "grid must have 4 rows");
    return grid;
}

MapMatrix::MapMatrix(Grid grid, std::vector<std::pair<BaseId, BaseId>> extra_links) : grid_(grid) {
    std::array<int, BaseId::kCount> seen{};
    for (int r = 0; r < kGridRows; ++r) {
        for (int c = 0; c < kGridCols; ++c) {
            if (!grid_[r][c]) continue;
            const int i = grid_[r][c]->index();
            if (seen[i]++) throw Error("bad-map", "base appears twice: " + grid_[r][c]->str());
            cells_[i] = {r, c};
        }
    }
    for (int i = 0; i < BaseId::kCount; ++i) {
        if (!seen[i]) throw Error("bad-map", "base missing from grid: " + BaseId::from_index(i).str());
    }

    auto add_edge = [&](BaseId a, BaseId b) {
        if (a == b) throw Error("bad-map", "self link on " + a.str());
        edges_.insert(std::minmax(a, b));
    };
    for (int r = 0; r < kGridRows; ++r) {
        for (int c = 0; c < kGridCols; ++c) {
            if (!grid_[r][c]) continue;
            if (c + 1 < kGridCols && grid_[r][c + 1]) add_edge(*grid_[r][c], *grid_[r][c + 1]);
            if (r + 1 < kGridRows && grid_[r + 1][c]) add_edge(*grid_[r][c], *grid_[r + 1][c]);
        }
    }
    for (auto [a, b] : extra_links) add_edge(a, b);
    for (auto [a, b] : edges_) {
        adjacency_[a.index()].push_back(b);
        adjacency_[b.index()].push_back(a);
    }
    for (auto& n : adjacency_) std::sort(n.begin(), n.end());

    for (int s = 0; s < BaseId::kCount; ++s) {
        auto& d = dist_[s];
        d.fill(kUnreachable);
        d[s] = 0;
        std::deque<int> q{s};
        while (!q.empty()) {
            const int u = q.front();
            q.pop_front();
            for (BaseId v : adjacency_[u]) {
                if (d[v.index()] == kUnreachable) {
                    d[v.index()] = d[u] + 1;
                    q.push_back(v.index());
                }
            }
        }
        for (int t = 0; t < BaseId::kCount; ++t) {
            if (d[t] == kUnreachable) throw Error("bad-map", "map graph is not connected");
        }
    }
}

bool MapMatrix::adjacent(BaseId a, BaseId b) const { return edges_.contains(std::minmax(a, b)); }

bool MapMatrix::on_edge(BaseId b) const {
    const auto [r, c] = cells_[b.index()];
    return r == 0 || r == kGridRows - 1 || c == 0 || c == kGridCols - 1;
}

int MapMatrix::distance(BaseId from, BaseId to) const {
    const int d = dist_[from.index()][to.index()];
    if (d == kUnreachable) throw Error("disconnected", "no route from " + from.str() + " to " + to.str());
    return d;
}

std::vector<BaseId> MapMatrix::lex_path(BaseId from, BaseId to) const {
    std::vector<BaseId> out{from};
    BaseId cur = from;
    while (cur != to) {
        const int remaining = distance(cur, to);
        // Neighbours are sorted, so the first one that makes progress is the
        // lexicographically smallest next hop.
        bool advanced = false;
        for (BaseId n : adjacency_[cur.index()]) {
            if (dist_[n.index()][to.index()] == remaining - 1) {
                cur = n;
                advanced = true;
                break;
            }
        }
        if (!advanced) throw Error("disconnected", "no route from " + from.str() + " to " + to.str());
        out.push_back(cur);
    }
    return out;
}

std::vector<BaseId> MapMatrix::path(BaseId from, BaseId to) const {
    if (from <= to) return lex_path(from, to);
    auto p = lex_path(to, from);
    std::reverse(p.begin(), p.end());
    return p;
}

MapMatrix build_default_matrix() {
    auto b = [](const char* s) { return BaseId::must_parse(s); };
    Grid grid{};
    const char* rows[kGridRows][kGridCols] = {
        {nullptr, "A6", "B7", "B3", "B2"},
        {"A5", nullptr, "B8", "B4", "B1"},
        {"A1", "A4", "A8", nullptr, "B5"},
        {"A2", "A3", "A7", "B6", nullptr},
    };
    for (int r = 0; r < kGridRows; ++r)
        for (int c = 0; c < kGridCols; ++c)
            if (rows[r][c]) grid[r][c] = b(rows[r][c]);
    // Links drawn in the connection diagram that do not follow from grid
    // adjacency: the paths around the two empty corner cells next to each
    // main base, point-symmetric between the halves.
    std::vector<std::pair<BaseId, BaseId>> links{
        {b("A5"), b("A6")},
        {b("A4"), b("A6")},
        {b("B5"), b("B6")},
        {b("B4"), b("B6")},
    };
    return MapMatrix(grid, std::move(links));
}

const MapMatrix& default_map() {
    static const MapMatrix m = build_default_matrix();
    return m;
}

std::string render_prompt_matrix(const MapMatrix& m) { return render_grid(m.grid()); }

MapMatrix load_map_json(std::string_view json_text) {
    using nlohmann::json;
    try {
        const json j = json::parse(json_text);
        Grid grid{};
        const auto& rows = j.at("grid");
        if (!rows.is_array() || rows.size() != kGridRows) throw Error("bad-map", "grid must have 4 rows");
        for (int r = 0; r < kGridRows; ++r) {
            const auto& row = rows[r];
            if (!row.is_array() || row.size() != kGridCols) throw Error("bad-map", "grid rows must have 5 cells");
            for (int c = 0; c < kGridCols; ++c) {
                const auto cell = row[c].get<std::string>();
                if (cell == "0") continue;
                auto id = BaseId::parse(cell);
                if (!id) throw Error("bad-map", "bad grid cell: " + cell);
                grid[r][c] = *id;
            }
        }
        std::vector<std::pair<BaseId, BaseId>> links;
        if (j.contains("links")) {
            for (const auto& l : j.at("links")) {
                if (!l.is_array() || l.size() != 2) throw Error("bad-map", "links must be pairs");
                auto a = BaseId::parse(l[0].get<std::string>());
                auto b = BaseId::parse(l[1].get<std::string>());
                if (!a || !b) throw Error("bad-map", "bad link endpoint");
                links.emplace_back(*a, *b);
            }
        }
        return MapMatrix(grid, std::move(links));
    } catch (const nlohmann::json::exception& e) {
        throw Error("bad-map", std::string("map file: ") + e.what());
    }
}

MapMatrix load_map_file(const std::string& path) { return load_map_json(read_text_file(path)); }

}  // namespace swarm
