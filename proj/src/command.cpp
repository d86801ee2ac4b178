#include "swarm/command.hpp"

#include <cctype>
#include <json.hpp>

#include "swarm/error.hpp"
#include "swarm/game_data.hpp"

namespace swarm {

std::string_view verb_name(Verb v) {
    switch (v) {
        case Verb::Move: return "Move";
        case Verb::Attack: return "Attack";
        case Verb::Build: return "Build";
        case Verb::Train: return "Train";
        case Verb::Morph: return "Morph";
        case Verb::Research: return "Research";
        case Verb::GatherGas: return "Gather gas";
        case Verb::GatherMinerals: return "Gather minerals";
        case Verb::Scout: return "Scout";
    }
    return "?";
}

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Lower case, punctuation other than '-' dropped, whitespace collapsed.
std::string fold_phrase(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc) || c == '-') {
            if (space && !out.empty()) out += ' ';
            space = false;
            out += static_cast<char>(std::tolower(uc));
        } else if (std::isspace(uc) || c == '_') {
            space = true;
        }
    }
    return out;
}

std::optional<Verb> verb_from_name(std::string_view name) {
    static constexpr Verb all[] = {Verb::Move,     Verb::Attack,    Verb::Build,
                                   Verb::Train,    Verb::Morph,     Verb::Research,
                                   Verb::GatherGas, Verb::GatherMinerals, Verb::Scout};
    for (Verb v : all) {
        std::string id(verb_name(v));
        std::erase(id, ' ');
        if (fold_name(id) == fold_name(name)) return v;
    }
    return std::nullopt;
}

// Splits "(a)->(b)->(c)" into its groups. Parentheses nest; "->" between
// groups may carry surrounding spaces.
std::optional<std::vector<std::string>> split_groups(std::string_view s) {
    std::vector<std::string> groups;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    while (i < s.size()) {
        if (s[i] != '(') return std::nullopt;
        int depth = 0;
        std::size_t start = i + 1;
        for (; i < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            else if (s[i] == ')' && --depth == 0) break;
        }
        if (i >= s.size()) return std::nullopt;
        groups.push_back(std::string(s.substr(start, i - start)));
        ++i;
        skip_ws();
        if (i >= s.size()) break;
        if (s.substr(i, 2) != "->") return std::nullopt;
        i += 2;
        skip_ws();
        if (i >= s.size()) return std::nullopt;
    }
    if (groups.size() < 2 || groups.size() > 3) return std::nullopt;
    return groups;
}

// "Drone, A1" -> ("Drone", A1). A trailing part that is not a base stays in
// the name.
std::pair<std::string, std::optional<BaseId>> split_location(const std::string& text) {
    auto comma = text.rfind(',');
    if (comma != std::string::npos) {
        if (auto b = BaseId::parse(trim(std::string_view(text).substr(comma + 1))))
            return {trim(std::string_view(text).substr(0, comma)), b};
    }
    return {trim(text), std::nullopt};
}

bool is_combat_alias(std::string_view folded) {
    static constexpr std::string_view names[] = {"zergunits", "zergunit", "units", "army", "zergarmy",
                                                 "allunits", "combatunits", "allzergunits", "zergforces"};
    for (auto n : names)
        if (folded == n) return true;
    return false;
}

SubjectKind parse_subject_kind(const std::string& text) {
    std::string folded = fold_name(text);
    if (is_combat_alias(folded)) return GroupAlias::AllCombat;
    if (folded == "larva" || folded == "larvae" || folded == "larvas") return GroupAlias::Larva;
    if (auto u = match_unit(text)) return *u;
    if (auto b = match_building(text)) return *b;
    throw Error("unknown-kind", "unknown kind '" + text + "'");
}

// "Unit(name='Zergling', tag=4362338305)" -> "Zergling".
std::optional<std::string> per_tag_name(const std::string& text) {
    std::string t = trim(text);
    if (!t.starts_with("Unit(") || !t.ends_with(")")) return std::nullopt;
    auto p = t.find("name=");
    if (p == std::string::npos) return std::nullopt;
    p += 5;
    if (p >= t.size() || (t[p] != '\'' && t[p] != '"')) return std::nullopt;
    char q = t[p];
    auto e = t.find(q, p + 1);
    if (e == std::string::npos) return std::nullopt;
    return t.substr(p + 1, e - p - 1);
}

std::optional<KindTarget> parse_kind_target(const std::string& name, std::optional<BaseId> loc) {
    KindTarget kt;
    kt.location = loc;
    if (auto u = match_unit(name)) {
        kt.kind = *u;
        return kt;
    }
    if (auto b = match_building(name)) {
        kt.kind = *b;
        return kt;
    }
    // Numbered geyser buildings: "Extractor1", "Refinery 2".
    std::string n = trim(name);
    std::size_t d = n.size();
    while (d > 0 && std::isdigit(static_cast<unsigned char>(n[d - 1]))) --d;
    if (d < n.size() && d > 0 && n.size() - d <= 2) {
        if (auto b = match_building(n.substr(0, d)); b && GameData::builtin().building(*b).geyser) {
            kt.kind = *b;
            kt.slot = std::stoi(n.substr(d));
            return kt;
        }
    }
    if (auto r = match_research(name)) {
        if (!loc) {
            kt.kind = *r;
            return kt;
        }
    }
    return std::nullopt;
}

Target parse_target(const std::string& text, Verb verb) {
    std::string t = trim(text);
    if (t.empty()) return std::monostate{};
    if (auto b = BaseId::parse(t)) return *b;
    auto [name, loc] = split_location(t);
    if (verb == Verb::Research) {
        if (auto r = match_research(name); r && !loc) return KindTarget{*r, 0, std::nullopt};
        return FreeText{t};
    }
    if (auto kt = parse_kind_target(name, loc)) return *kt;
    if (verb == Verb::Build || verb == Verb::Train || verb == Verb::Morph)
        throw Error("unknown-kind", "unknown kind '" + name + "'");
    return FreeText{t};
}

std::string strip_decorations(std::string_view raw) {
    std::string s = trim(raw);
    // "'3': ..." or "3: ..." key prefix.
    if (!s.empty() && (s[0] == '\'' || s[0] == '"' || s[0] == '\xE2' || std::isdigit(static_cast<unsigned char>(s[0])))) {
        auto colon = s.find(':');
        auto paren = s.find('(');
        if (colon != std::string::npos && (paren == std::string::npos || colon < paren)) {
            std::string key = s.substr(0, colon);
            bool keyish = true;
            for (char c : key)
                if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '\'' || c == '"' || c == ' ' ||
                      static_cast<unsigned char>(c) >= 0x80))
                    keyish = false;
            if (keyish) s = trim(std::string_view(s).substr(colon + 1));
        }
    }
    if (auto c = s.find("//"); c != std::string::npos) s = trim(std::string_view(s).substr(0, c));
    while (!s.empty() && (s.back() == ',' || s.back() == ';')) s = trim(std::string_view(s).substr(0, s.size() - 1));
    if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front())
        s = trim(std::string_view(s).substr(1, s.size() - 2));
    if (!s.empty() && s.front() == '*') s = trim(std::string_view(s).substr(1));
    return s;
}

std::string render_kind(const SubjectKind& k) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, GroupAlias>) return v == GroupAlias::AllCombat ? "Zerg units" : "Larva";
            else return std::string(display_name(v));
        },
        k);
}

}  // namespace

const VerbTable& VerbTable::builtin() {
    static const VerbTable t = from_json(embedded::kVerbsJson);
    return t;
}

VerbTable VerbTable::from_json(std::string_view json_text) {
    VerbTable t;
    try {
        auto j = nlohmann::json::parse(json_text);
        for (const auto& [name, synonyms] : j.at("verbs").items()) {
            auto v = verb_from_name(name);
            if (!v) throw Error("data", "unknown canonical verb '" + name + "'");
            t.table_[fold_phrase(name)] = *v;
            t.table_[fold_phrase(verb_name(*v))] = *v;
            for (const auto& s : synonyms) t.table_[fold_phrase(s.get<std::string>())] = *v;
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("data", std::string("verb table: ") + e.what());
    }
    return t;
}

std::optional<Verb> VerbTable::lookup(std::string_view phrase) const {
    auto it = table_.find(fold_phrase(phrase));
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

Command parse_command(std::string_view line, const VerbTable& verbs) {
    std::string s = strip_decorations(line);
    auto groups = split_groups(s);
    if (!groups) throw Error("malformed-line", "not a (subject)->(action)[->(target)] line");
    Command cmd;
    auto verb = verbs.lookup((*groups)[1]);
    if (!verb) throw Error("unknown-verb", "unknown verb '" + trim((*groups)[1]) + "'");
    cmd.verb = *verb;
    if (auto tagged = per_tag_name((*groups)[0])) {
        cmd.subject.kind = parse_subject_kind(*tagged);
    } else {
        auto [name, loc] = split_location((*groups)[0]);
        if (name.empty()) throw Error("malformed-line", "empty subject");
        cmd.subject.kind = parse_subject_kind(name);
        cmd.subject.location = loc;
    }
    if (groups->size() == 3) cmd.target = parse_target((*groups)[2], cmd.verb);
    return cmd;
}

std::string subject_kind_name(const SubjectKind& k) { return render_kind(k); }

std::optional<std::string> frequency_key(const Command& cmd) {
    if (cmd.verb == Verb::Attack) return "Attack " + render_kind(cmd.subject.kind);
    if (cmd.verb == Verb::Train)
        if (const auto* t = std::get_if<KindTarget>(&cmd.target)) return "Train " + display_name(t->kind);
    return std::nullopt;
}

std::string render_command(const Command& cmd) {
    std::string out = "(" + render_kind(cmd.subject.kind);
    if (cmd.subject.location) out += ", " + cmd.subject.location->str();
    out += ")->(" + std::string(verb_name(cmd.verb)) + ")";
    std::visit(
        [&](const auto& t) {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, BaseId>) {
                out += "->(" + t.str() + ")";
            } else if constexpr (std::is_same_v<T, KindTarget>) {
                out += "->(" + display_name(t.kind);
                if (t.slot) out += std::to_string(t.slot);
                if (t.location) out += ", " + t.location->str();
                out += ")";
            } else if constexpr (std::is_same_v<T, FreeText>) {
                out += "->(" + t.text + ")";
            }
        },
        cmd.target);
    return out;
}

std::vector<std::string> extract_command_lines(std::string_view response) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < response.size()) {
        std::size_t nl = response.find('\n', pos);
        std::string_view ln = response.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? response.size() : nl + 1;
        if (ln.find("->") == std::string_view::npos || ln.find('(') == std::string_view::npos) continue;
        out.push_back(strip_decorations(ln));
    }
    return out;
}

}  // namespace swarm
