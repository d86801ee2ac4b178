#include "swarm/command_center.hpp"

#include <algorithm>
#include <regex>

#include "swarm/error.hpp"

namespace swarm {

std::string describe(const Outcome& o) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Dispatched>) {
                std::string out = "dispatched";
                for (const auto& e : v.orders) out += " {" + describe(e) + "}";
                return out;
            } else if constexpr (std::is_same_v<T, Suspended>) {
                return "suspended " + describe(v.reason) + " until " + std::to_string(v.expiry_tick);
            } else {
                return "rejected " + v.reason;
            }
        },
        o);
}

std::string describe(const LineOutcome& o) {
    if (!o.error_code.empty()) return "error " + o.error_code;
    return o.outcome ? describe(*o.outcome) : "skipped";
}

namespace {

UnitKind worker_of(Player p) { return p == Player::Zerg ? UnitKind::Drone : UnitKind::SCV; }

bool stationary(const Unit& u) { return !u.transit && u.activity != Activity::Morphing; }

bool is_combat_role(const GameData& d, UnitKind k) { return d.unit(k).role == UnitRole::Combat; }

int units_of_at(const WorldState& s, Player p, UnitKind k, BaseId b) {
    int n = 0;
    for (const auto& u : s.units)
        if (u.owner == p && u.kind == k && u.base == b && stationary(u)) ++n;
    return n;
}

int combat_at(const WorldState& s, Player p, BaseId b) {
    int n = 0;
    for (const auto& u : s.units)
        if (u.owner == p && u.base == b && stationary(u) && is_combat_role(*s.data, u.kind)) ++n;
    return n;
}

// Closest base (path length, then id) satisfying `pred`, searching from `from`.
template <typename Pred>
std::optional<BaseId> nearest_base(const WorldState& s, BaseId from, Pred pred) {
    std::optional<BaseId> best;
    int best_d = 0;
    for (int i = 0; i < BaseId::kCount; ++i) {
        BaseId b = BaseId::from_index(i);
        if (!pred(b)) continue;
        int d = s.map->distance(from, b);
        if (!best || d < best_d) {
            best = b;
            best_d = d;
        }
    }
    return best;
}

// Base holding the most `count(b)`, ties to the lower id; nullopt if none.
template <typename Count>
std::optional<BaseId> busiest_base(Count count) {
    std::optional<BaseId> best;
    int best_n = 0;
    for (int i = 0; i < BaseId::kCount; ++i) {
        int n = count(BaseId::from_index(i));
        if (n > best_n) {
            best = BaseId::from_index(i);
            best_n = n;
        }
    }
    return best;
}

// The most recently founded completed town hall, falling back to home.
BaseId newest_base(const WorldState& s, Player p) {
    const Building* newest = nullptr;
    for (const auto& b : s.buildings)
        if (b.owner == p && b.complete && s.data->building(b.kind).town_hall && (!newest || b.id > newest->id))
            newest = &b;
    return newest ? newest->base : s.map->home(p);
}

bool has_hall(const WorldState& s, Player p, BaseId b) { return town_hall_at(s, p, b) != nullptr; }

bool has_building(const WorldState& s, Player p, BuildingKind k, BaseId b) {
    for (const auto& bl : s.buildings)
        if (bl.owner == p && bl.base == b && bl.complete && s.data->satisfies(bl.kind, k)) return true;
    return false;
}

BaseId opponent_home(const WorldState& s, Player p) { return s.map->home(opponent(p)); }

std::optional<BaseId> resolve_free_text(const WorldState& s, const std::string& text, Player p) {
    static const std::regex base_re(R"((?:^|[^A-Za-z0-9])([AB][1-8])(?:$|[^0-9]))");
    std::smatch m;
    if (std::regex_search(text, m, base_re)) return BaseId::parse(m[1].str());
    std::string lower;
    for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    static constexpr std::string_view synonyms[] = {"opponent", "enemy", "enemies", "terran", "foe", "rival", "hostile"};
    for (auto syn : synonyms)
        if (lower.find(syn) != std::string::npos) return opponent_home(s, p);
    return std::nullopt;
}

std::optional<ResearchId> next_research_at(const WorldState& s, BuildingKind building, Player p) {
    for (auto r : kAllResearch) {
        const auto& rs = s.data->research(r);
        if (!s.data->satisfies(building, rs.producer) || owner_race(rs.producer) != p) continue;
        if (s.player(p).research_done.test(static_cast<std::size_t>(r))) continue;
        bool running = false;
        for (const auto& pr : s.production)
            if (pr.owner == p && pr.what == Producible{r}) running = true;
        if (!running) return r;
    }
    return std::nullopt;
}

// Rebinds a unit subject to the nearest base that actually holds that kind.
void rebind_unit_subject(Command& c, const WorldState& s, Player p) {
    auto* kind = std::get_if<UnitKind>(&c.subject.kind);
    if (kind) {
        UnitKind k = *kind;
        if (!c.subject.location) {
            c.subject.location = busiest_base([&](BaseId b) { return units_of_at(s, p, k, b); });
            return;
        }
        if (units_of_at(s, p, k, *c.subject.location) > 0) return;
        if (auto b = nearest_base(s, *c.subject.location, [&](BaseId b) { return units_of_at(s, p, k, b) > 0; }))
            c.subject.location = *b;
        return;
    }
    if (std::holds_alternative<GroupAlias>(c.subject.kind) &&
        std::get<GroupAlias>(c.subject.kind) == GroupAlias::AllCombat && !c.subject.location)
        c.subject.location = busiest_base([&](BaseId b) { return combat_at(s, p, b); });
}

}  // namespace

// Rules, applied in order:
//  - free-text targets: an embedded base id wins, otherwise opponent
//    synonyms resolve to the opponent's home base; research free text naming
//    "upgrades" becomes the next research available at the subject building;
//  - Build with a bare location target and a structure subject becomes a
//    worker building that structure there;
//  - Build places the structure at the target location, else the morph
//    source's location, else the newest completed base, and rebinds the
//    builder to a worker;
//  - Train/Morph run at the subject location, moved to the nearest base
//    that can actually produce them;
//  - any unit subject with none of its kind at the location rebinds to the
//    nearest base that has some; an unspecified location picks the base
//    holding the most.
Command repair_command(const Command& cmd, const WorldState& s, Player p) {
    const GameData& d = *s.data;
    Command c = cmd;

    if (const auto* ft = std::get_if<FreeText>(&c.target)) {
        if (c.verb == Verb::Research) {
            std::string folded = fold_name(ft->text);
            if (folded.find("upgrade") != std::string::npos) {
                if (const auto* bk = std::get_if<BuildingKind>(&c.subject.kind))
                    if (auto r = next_research_at(s, *bk, p)) c.target = KindTarget{*r, 0, std::nullopt};
            }
        } else if (auto b = resolve_free_text(s, ft->text, p)) {
            c.target = *b;
        } else {
            throw Error("unresolvable-target", "cannot resolve target '" + ft->text + "'");
        }
    }

    switch (c.verb) {
        case Verb::Build: {
            if (const auto* bare = std::get_if<BaseId>(&c.target)) {
                if (const auto* bk = std::get_if<BuildingKind>(&c.subject.kind)) {
                    const BaseId at = *bare;  // c.target is overwritten below
                    c.target = KindTarget{*bk, 0, at};
                    c.subject = Subject{worker_of(p), at};
                }
            }
            auto* kt = std::get_if<KindTarget>(&c.target);
            if (!kt || !std::holds_alternative<BuildingKind>(kt->kind)) break;
            BuildingKind what = std::get<BuildingKind>(kt->kind);
            const auto& st = d.building(what);
            if (st.morph_from) {
                if (!kt->location) {
                    kt->location = std::holds_alternative<BuildingKind>(c.subject.kind) && c.subject.location
                                       ? *c.subject.location
                                       : newest_base(s, p);
                }
                c.subject = Subject{*st.morph_from, kt->location};
                break;
            }
            if (!kt->location) kt->location = newest_base(s, p);
            bool worker_subject = std::holds_alternative<UnitKind>(c.subject.kind) &&
                                  std::get<UnitKind>(c.subject.kind) == worker_of(p);
            if (!worker_subject || !c.subject.location) c.subject = Subject{worker_of(p), kt->location};
            rebind_unit_subject(c, s, p);
            break;
        }
        case Verb::Train:
        case Verb::Morph: {
            auto* kt = std::get_if<KindTarget>(&c.target);
            if (!kt || !std::holds_alternative<UnitKind>(kt->kind)) break;
            UnitKind what = std::get<UnitKind>(kt->kind);
            const auto& recipe = d.unit_recipe(what);
            if (recipe.producer == ProducerKind::Morph) {
                UnitKind source = *d.unit(what).morph_from;
                if (std::holds_alternative<UnitKind>(c.subject.kind)) c.subject.kind = source;
                if (!std::holds_alternative<UnitKind>(c.subject.kind)) c.subject = Subject{source, c.subject.location};
                rebind_unit_subject(c, s, p);
                break;
            }
            BaseId at = c.subject.location.value_or(newest_base(s, p));
            if (recipe.producer == ProducerKind::Larva && !has_hall(s, p, at)) {
                if (auto b = nearest_base(s, at, [&](BaseId b) { return has_hall(s, p, b); })) at = *b;
            } else if (recipe.producer == ProducerKind::Building &&
                       !has_building(s, p, recipe.producer_building, at)) {
                if (auto b = nearest_base(s, at, [&](BaseId b) {
                        return has_building(s, p, recipe.producer_building, b);
                    }))
                    at = *b;
            }
            c.subject.location = at;
            break;
        }
        case Verb::Research: break;
        case Verb::Move:
        case Verb::Attack:
        case Verb::Scout: {
            if (const auto* kt = std::get_if<KindTarget>(&c.target); kt && kt->location) c.target = BaseId(*kt->location);
            rebind_unit_subject(c, s, p);
            break;
        }
        case Verb::GatherGas: {
            rebind_unit_subject(c, s, p);
            if (auto* kt = std::get_if<KindTarget>(&c.target)) {
                if (!kt->location) kt->location = c.subject.location;
            } else if (const auto* b = std::get_if<BaseId>(&c.target)) {
                c.target = KindTarget{p == Player::Zerg ? BuildingKind::Extractor : BuildingKind::Refinery, 0, *b};
            } else if (std::holds_alternative<std::monostate>(c.target) && c.subject.location) {
                c.target = KindTarget{p == Player::Zerg ? BuildingKind::Extractor : BuildingKind::Refinery, 0,
                                      c.subject.location};
            }
            auto* kt = std::get_if<KindTarget>(&c.target);
            if (kt && kt->slot == 0 && kt->location) {
                // First completed geyser building that still has room.
                for (const auto& b : s.buildings) {
                    if (b.owner != p || b.base != *kt->location || !b.complete || !d.building(b.kind).geyser) continue;
                    int on = 0;
                    for (const auto& u : s.units)
                        if (u.owner == p && u.activity == Activity::GatheringGas && u.base == b.base &&
                            u.gas_slot == b.slot)
                            ++on;
                    if (on < d.constants().gas_workers_per_extractor) {
                        kt->slot = b.slot;
                        break;
                    }
                }
            }
            break;
        }
        case Verb::GatherMinerals: {
            rebind_unit_subject(c, s, p);
            if (const auto* kt = std::get_if<KindTarget>(&c.target); kt && kt->location) c.target = BaseId(*kt->location);
            if (std::holds_alternative<std::monostate>(c.target) && c.subject.location) c.target = *c.subject.location;
            break;
        }
    }
    return c;
}

namespace {

std::vector<EntityId> select_units(const WorldState& s, const Command& c, Player p) {
    std::vector<EntityId> out;
    if (!c.subject.location) return out;
    BaseId at = *c.subject.location;
    for (const auto& u : s.units) {
        if (u.owner != p || u.base != at || !stationary(u)) continue;
        bool match = std::visit(
            [&](const auto& k) {
                using T = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<T, UnitKind>) return u.kind == k;
                else if constexpr (std::is_same_v<T, GroupAlias>)
                    return k == GroupAlias::AllCombat && is_combat_role(*s.data, u.kind);
                else return false;
            },
            c.subject.kind);
        if (match) out.push_back(u.id);
    }
    return out;
}

// Dispatch attempt without queueing; Suspended carries no expiry yet.
Outcome evaluate(const Command& c, WorldState& s, Player p) {
    const GameData& d = *s.data;
    switch (c.verb) {
        case Verb::Build:
        case Verb::Train:
        case Verb::Morph:
        case Verb::Research: {
            const auto* kt = std::get_if<KindTarget>(&c.target);
            if (!kt) return Rejected{c.verb == Verb::Research ? "unknown-research" : "bad-target"};
            bool ok_kind = (c.verb == Verb::Build && std::holds_alternative<BuildingKind>(kt->kind)) ||
                           ((c.verb == Verb::Train || c.verb == Verb::Morph) &&
                            std::holds_alternative<UnitKind>(kt->kind)) ||
                           (c.verb == Verb::Research && std::holds_alternative<ResearchId>(kt->kind));
            if (!ok_kind) return Rejected{c.verb == Verb::Research ? "unknown-research" : "bad-target"};
            if (std::holds_alternative<GroupAlias>(c.subject.kind) &&
                std::get<GroupAlias>(c.subject.kind) == GroupAlias::AllCombat)
                return Rejected{"bad-subject"};
            std::optional<BaseId> loc;
            std::optional<BaseId> builder;
            if (c.verb == Verb::Build) {
                loc = kt->location;
                if (std::holds_alternative<UnitKind>(c.subject.kind)) builder = c.subject.location;
            } else if (c.verb != Verb::Research) {
                loc = c.subject.location;
            }
            if (c.verb != Verb::Research && !loc) return Rejected{"no-location"};
            Feasibility f = check_prerequisites(s, kt->kind, p, loc, builder);
            if (std::holds_alternative<Ready>(f)) {
                BaseId at = loc.value_or(s.map->home(p));
                return Dispatched{{spawn_order(s, p, kt->kind, at, builder)}};
            }
            if (const auto* imp = std::get_if<Impossible>(&f)) return Rejected{imp->reason};
            return Suspended{f, 0};
        }
        case Verb::Move:
        case Verb::Attack:
        case Verb::Scout: {
            const auto* dest = std::get_if<BaseId>(&c.target);
            if (!dest) return Rejected{"no-target"};
            if (!std::holds_alternative<UnitKind>(c.subject.kind) &&
                !(std::holds_alternative<GroupAlias>(c.subject.kind) &&
                  std::get<GroupAlias>(c.subject.kind) == GroupAlias::AllCombat))
                return Rejected{"not-a-unit"};
            auto ids = select_units(s, c, p);
            if (ids.empty()) return Rejected{"no-units"};
            if (c.verb == Verb::Scout) ids.resize(1);
            const Unit* first = s.find_unit(ids.front());
            if (c.verb != Verb::Attack && d.unit(first->kind).role == UnitRole::Worker && has_hall(s, p, *dest))
                return Dispatched{{GatherOrder{ids, *dest, 0}}};
            MoveMode mode = c.verb == Verb::Attack ? MoveMode::AttackMove : MoveMode::Move;
            return Dispatched{{MoveOrder{ids, *dest, mode}}};
        }
        case Verb::GatherGas: {
            const auto* kt = std::get_if<KindTarget>(&c.target);
            if (!kt || !kt->location) return Rejected{"bad-target"};
            const auto* bk = std::get_if<BuildingKind>(&kt->kind);
            if (!bk || !d.building(*bk).geyser) return Rejected{"bad-target"};
            const Building* geyser = nullptr;
            for (const auto& b : s.buildings)
                if (b.owner == p && b.base == *kt->location && d.building(b.kind).geyser && b.complete &&
                    (kt->slot == 0 || b.slot == kt->slot)) {
                    geyser = &b;
                    break;
                }
            if (!geyser) return Suspended{Blocked{{*bk}}, 0};
            int on = 0;
            for (const auto& u : s.units)
                if (u.owner == p && u.base == geyser->base && u.activity == Activity::GatheringGas &&
                    u.gas_slot == geyser->slot)
                    ++on;
            int need = d.constants().gas_workers_per_extractor - on;
            if (need <= 0) return Rejected{"saturated"};
            std::vector<EntityId> ids;
            for (const auto& u : s.units) {
                if (static_cast<int>(ids.size()) >= need) break;
                if (u.owner == p && u.kind == worker_of(p) && c.subject.location && u.base == *c.subject.location &&
                    stationary(u) && (u.activity == Activity::GatheringMinerals || u.activity == Activity::Idle))
                    ids.push_back(u.id);
            }
            if (ids.empty()) return Rejected{"no-units"};
            return Dispatched{{GatherOrder{ids, geyser->base, geyser->slot}}};
        }
        case Verb::GatherMinerals: {
            const auto* dest = std::get_if<BaseId>(&c.target);
            if (!dest || !c.subject.location) return Rejected{"bad-target"};
            std::vector<EntityId> idle, gathering;
            for (const auto& u : s.units) {
                if (u.owner != p || u.kind != worker_of(p) || u.base != *c.subject.location || !stationary(u)) continue;
                if (u.activity == Activity::Idle || u.activity == Activity::Fleeing) idle.push_back(u.id);
                else if (u.activity == Activity::GatheringMinerals) gathering.push_back(u.id);
            }
            if (idle.empty() && *dest != *c.subject.location) {
                // Transfer half of the mineral line to the new base.
                gathering.resize(gathering.size() / 2);
                idle = gathering;
            }
            if (idle.empty()) return Rejected{"no-units"};
            return Dispatched{{GatherOrder{idle, *dest, 0}}};
        }
    }
    return Rejected{"unhandled"};
}

}  // namespace

Outcome verify_and_dispatch(const Command& cmd, WorldState& s, SuspendQueue& queue, int now, Player p) {
    Outcome o = evaluate(cmd, s, p);
    if (auto* sus = std::get_if<Suspended>(&o)) {
        sus->expiry_tick = now + queue.expiry_window();
        queue.push({cmd, sus->reason, now, sus->expiry_tick});
    }
    return o;
}

std::vector<QueueEvent> process_suspended(WorldState& s, SuspendQueue& queue, int now, Player p) {
    std::vector<QueueEvent> events;
    auto& entries = queue.mutable_entries();
    for (auto it = entries.begin(); it != entries.end();) {
        if (now >= it->expiry_tick) {
            events.push_back({it->command, "expired", it->enqueued_tick, {}});
            it = entries.erase(it);
            continue;
        }
        Outcome o = evaluate(it->command, s, p);
        if (auto* d = std::get_if<Dispatched>(&o)) {
            events.push_back({it->command, "dispatched", it->enqueued_tick, d->orders});
            it = entries.erase(it);
        } else if (auto* r = std::get_if<Rejected>(&o)) {
            events.push_back({it->command, "rejected " + r->reason, it->enqueued_tick, {}});
            it = entries.erase(it);
        } else {
            it->reason = std::get<Suspended>(o).reason;
            ++it;
        }
    }
    return events;
}

std::vector<LineOutcome> process_command_list(const std::vector<std::string>& lines, WorldState& s,
                                              SuspendQueue& queue, int now, Player p) {
    std::vector<LineOutcome> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        LineOutcome lo;
        lo.index = i;
        lo.raw = lines[i];
        try {
            lo.parsed = parse_command(lines[i]);
            lo.repaired = repair_command(*lo.parsed, s, p);
            lo.canonical = render_command(*lo.repaired);
            lo.outcome = verify_and_dispatch(*lo.repaired, s, queue, now, p);
        } catch (const Error& e) {
            lo.error_code = e.code();
        }
        out.push_back(std::move(lo));
    }
    return out;
}

}  // namespace swarm
