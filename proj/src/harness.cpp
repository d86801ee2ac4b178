#include "swarm/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "swarm/command_center.hpp"
#include "swarm/error.hpp"
#include "swarm/io.hpp"
#include "swarm/observation.hpp"
#include "swarm/perception.hpp"
#include "swarm/reflexnet.hpp"
#include "swarm/replay.hpp"

namespace swarm {

std::string_view match_result_name(MatchResult r) {
    switch (r) {
        case MatchResult::Win: return "win";
        case MatchResult::Loss: return "loss";
        case MatchResult::Draw: return "draw";
        case MatchResult::Timeout: return "timeout";
        case MatchResult::Aborted: return "aborted";
    }
    return "?";
}

namespace {

using nlohmann::json;

json event_json(const CriticalEvent& e) {
    return {{"kind", event_kind_name(e.kind)}, {"base", e.location.str()}, {"enemies", e.enemy_combat_units}};
}

int zerg_workers(const WorldState& s) { return count_units(s, Player::Zerg, UnitKind::Drone); }

// Mutable state of one running match.
class Match {
public:
    explicit Match(const MatchConfig& c)
        : config_(c),
          map_(c.map_file.empty() ? build_default_matrix() : load_map_file(c.map_file)),
          state_(new_match_state(GameData::builtin(), map_, c.seed)),
          terran_(c.difficulty, c.seed),
          memory_(c.memory_capacity),
          matrix_text_(render_prompt_matrix(map_)) {
        if (c.max_ticks < 0) throw Error("bad-config", "max_ticks must be non-negative");
        if (c.brain_enabled) brain_ = make_brain(c.brain, c.model, c.timeout_ms);
        stats_.seed = c.seed;
        replay_.header({{"seed", c.seed},
                        {"difficulty", difficulty_name(c.difficulty)},
                        {"brain", c.brain_enabled ? brain_->describe() : "none"},
                        {"latency", {c.latency.overmind_ticks, c.latency.critical_ticks, c.latency.translator_ticks}},
                        {"max_ticks", c.max_ticks}});
    }

    MatchRun run() {
        while (!state_.loser && !state_.draw && state_.tick < config_.max_ticks && !aborted_) step();
        finish();
        return {stats_, replay_.text()};
    }

private:
    void step() {
        const int now = state_.tick;
        json rec;
        Observation obs = observe(state_, Player::Zerg);
        auto events = detect_critical_events(obs, have_prev_ ? &prev_obs_ : nullptr);
        for (const auto& e : events) {
            pending_events_.push_back(e);
            rec["events"].push_back(event_json(e));
        }

        std::vector<EngineOrder> orders;
        std::optional<std::string> translation;
        if (brain_) {
            try {
                translation = brain_phase(now, rec);
            } catch (const Error& e) {
                if (e.code() != "brain-unavailable") throw;
                aborted_ = true;
                stats_.abort_reason = e.code();
                rec["abort"] = e.what();
                replay_.tick(now, rec);
                return;
            }
        }

        for (auto& qe : process_suspended(state_, queue_, now)) {
            json j = {{"canonical", render_command(qe.command)}, {"event", qe.what}};
            rec["queue"].push_back(j);
            if (qe.what == "dispatched") note_dispatch(now, qe.orders, orders);
        }
        if (translation) handle_translation(now, *translation, rec, orders);

        auto terran = terran_.step(state_);
        orders.insert(orders.end(), terran.begin(), terran.end());

        if (config_.reflex_enabled) {
            ReflexResult rr = reflex_step(obs);
            for (const auto& t : rr.transitions) {
                // Kind from the observation: a builder Drone may already be
                // gone from the state by now.
                auto u = std::find_if(obs.own_units.begin(), obs.own_units.end(),
                                      [&](const Unit& x) { return x.id == t.unit; });
                std::string kind = u != obs.own_units.end() ? std::string(identifier(u->kind)) : "?";
                ++stats_.transition_counts[kind + " " + std::string(reflex_mode_name(t.from)) + "->" +
                                           std::string(reflex_mode_name(t.to))];
                rec["transitions"].push_back({{"unit", t.unit},
                                              {"kind", kind},
                                              {"from", reflex_mode_name(t.from)},
                                              {"to", reflex_mode_name(t.to)},
                                              {"condition", std::string(1, t.condition)}});
            }
            orders.insert(orders.end(), rr.orders.begin(), rr.orders.end());
        }

        for (const auto& o : orders)
            if (!std::holds_alternative<StanceOrder>(o) && !std::holds_alternative<InjectOrder>(o))
                rec["orders"].push_back(describe(o));
        TickEvents ev = advance_tick(state_, orders);
        for (const auto& c : ev.casualties)
            rec["casualties"].push_back(
                {{"id", c.id}, {"kind", c.kind}, {"owner", player_name(c.owner)}, {"base", c.base.str()}});
        for (const auto& c : ev.completed) rec["completed"].push_back(c);
        replay_.tick(now, rec);

        prev_obs_ = std::move(obs);
        have_prev_ = true;
    }

    // Collects due replies and issues the next requests. Returns translator
    // output that became due this tick.
    std::optional<std::string> brain_phase(int now, json& rec) {
        std::optional<std::string> translation;
        if (auto done = translator_.collect(now)) {
            rec["brain"].push_back({{"role", "translator"}, {"event", "response"}, {"issued", done->issued_tick}});
            translation = done->response;
        }
        if (auto done = overmind_.collect(now)) {
            stats_.plan_delivery_ticks.push_back(now);
            try {
                ActionPlan plan = parse_action_plan(done->response);
                plan.issued_tick = done->issued_tick;
                ++stats_.plans_parsed;
                plan = dedup_filter(plan, memory_);
                rec["brain"].push_back({{"role", "overmind"}, {"event", "response"}, {"entries", plan.entries.size()}});
                if (!plan.entries.empty()) backlog_ = std::move(plan);
            } catch (const Error& e) {
                if (e.code() != "unparseable-plan") throw;
                ++stats_.parse_failures;
                rec["brain"].push_back({{"role", "overmind"}, {"event", "unparseable-plan"}});
            }
        }
        if (backlog_ && !translator_.busy()) {
            translating_ = std::move(*backlog_);
            backlog_.reset();
            translator_.request(*brain_, BrainRole::Translator, PromptMode::Normal,
                                assemble_translation_prompt(render_plan(translating_)), now,
                                config_.latency.ticks_for(BrainRole::Translator, PromptMode::Normal));
            rec["brain"].push_back({{"role", "translator"}, {"event", "request"},
                                    {"ready", translator_.pending()->ready_tick}});
        }
        if (!overmind_.busy()) {
            PromptMode mode = pending_events_.empty() ? PromptMode::Normal : PromptMode::Critical;
            Observation obs = observe(state_, Player::Zerg);
            std::string prompt = assemble_overmind_prompt(mode, matrix_text_, memory_.render_text(),
                                                          render_situation_report(obs), pending_events_);
            overmind_.request(*brain_, BrainRole::Overmind, mode, std::move(prompt), now,
                              config_.latency.ticks_for(BrainRole::Overmind, mode));
            pending_events_.clear();
            ++stats_.plans_requested;
            if (mode == PromptMode::Critical) ++stats_.critical_requests;
            stats_.plan_request_ticks.push_back(now);
            rec["brain"].push_back({{"role", "overmind"},
                                    {"event", "request"},
                                    {"mode", mode == PromptMode::Critical ? "critical" : "normal"},
                                    {"ready", overmind_.pending()->ready_tick}});
        }
        return translation;
    }

    void handle_translation(int now, const std::string& text, json& rec, std::vector<EngineOrder>& orders) {
        auto lines = extract_command_lines(text);
        auto outcomes = process_command_list(lines, state_, queue_, now);
        std::vector<std::string> canonical;
        for (const auto& o : outcomes) {
            json j = {{"raw", o.raw}};
            if (!o.canonical.empty()) {
                j["canonical"] = o.canonical;
                canonical.push_back(o.canonical);
                ++stats_.commands_parsed;
                if (auto key = frequency_key(*o.repaired)) ++stats_.command_counts[*key];
            }
            if (!o.error_code.empty()) j["error"] = o.error_code;
            if (o.outcome) {
                j["outcome"] = describe(*o.outcome);
                if (const auto* d = std::get_if<Dispatched>(&*o.outcome)) note_dispatch(now, d->orders, orders);
            }
            rec["commands"].push_back(j);
        }
        memory_.record_round(now, translating_, std::move(canonical));
    }

    void note_dispatch(int now, const std::vector<EngineOrder>& dispatched, std::vector<EngineOrder>& orders) {
        ++stats_.commands_dispatched;
        if (!stats_.first_dispatch_tick) stats_.first_dispatch_tick = now;
        orders.insert(orders.end(), dispatched.begin(), dispatched.end());
    }

    void finish() {
        stats_.duration_ticks = state_.tick;
        if (aborted_) stats_.result = MatchResult::Aborted;
        else if (state_.draw) stats_.result = MatchResult::Draw;
        else if (state_.loser == Player::Terran) stats_.result = MatchResult::Win;
        else if (state_.loser == Player::Zerg) stats_.result = MatchResult::Loss;
        else stats_.result = MatchResult::Timeout;
        if (stats_.result == MatchResult::Loss) {
            if (stats_.parse_failures > 0) stats_.loss_cause = "parse-failure";
            else if (zerg_workers(state_) < 6) stats_.loss_cause = "economic-collapse";
            else stats_.loss_cause = "army-loss";
        }
        json counts = stats_.command_counts;
        replay_.result({{"result", match_result_name(stats_.result)},
                        {"duration", stats_.duration_ticks},
                        {"loss_cause", stats_.loss_cause},
                        {"command_counts", counts},
                        {"state_digest", hex64(state_digest(state_))}});
        stats_.replay_hash = replay_.hash();
    }

    MatchConfig config_;
    MapMatrix map_;
    WorldState state_;
    TerranPolicy terran_;
    StrategyMemory memory_;
    std::string matrix_text_;
    std::unique_ptr<Brain> brain_;
    Mailbox overmind_, translator_;
    std::optional<ActionPlan> backlog_;
    ActionPlan translating_;
    SuspendQueue queue_;
    std::vector<CriticalEvent> pending_events_;
    Observation prev_obs_;
    bool have_prev_ = false;
    bool aborted_ = false;
    MatchStats stats_;
    ReplayWriter replay_;
};

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<std::string> all_keys(const SeriesReport& r) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : r.command_totals) keys.push_back(k);
    return keys;
}

}  // namespace

MatchRun run_match(const MatchConfig& config) {
    Match m(config);
    MatchRun run = m.run();
    if (!config.out_dir.empty())
        export_replay(run.replay, config.out_dir + "/replay_" + std::to_string(config.seed) + ".jsonl");
    return run;
}

SeriesReport run_series(const MatchConfig& config, int n, std::vector<std::string>* replays) {
    if (n < 1) throw Error("bad-config", "a series needs at least one match");
    SeriesReport r;
    r.config = config;
    long long total_duration = 0;
    for (int i = 0; i < n; ++i) {
        MatchConfig c = config;
        c.seed = config.seed + static_cast<std::uint64_t>(i);
        MatchRun run = run_match(c);
        if (run.stats.result == MatchResult::Win) ++r.wins;
        total_duration += run.stats.duration_ticks;
        for (const auto& [k, v] : run.stats.command_counts) r.command_totals[k] += v;
        r.matches.push_back(std::move(run.stats));
        if (replays) replays->push_back(std::move(run.replay));
    }
    r.win_rate = static_cast<double>(r.wins) / n;
    r.mean_duration_ticks = static_cast<double>(total_duration) / n;
    long long all = 0;
    for (const auto& [k, v] : r.command_totals) all += v;
    for (const auto& [k, v] : r.command_totals) r.command_percent[k] = all ? 100.0 * v / all : 0.0;
    return r;
}

std::string series_csv(const SeriesReport& r) {
    auto keys = all_keys(r);
    std::string out = "seed,result,duration,loss_cause";
    for (const auto& k : keys) out += "," + k;
    out += "\n";
    for (const auto& m : r.matches) {
        out += std::to_string(m.seed) + "," + std::string(match_result_name(m.result)) + "," +
               std::to_string(m.duration_ticks) + "," + m.loss_cause;
        for (const auto& k : keys) {
            auto it = m.command_counts.find(k);
            out += "," + std::to_string(it == m.command_counts.end() ? 0 : it->second);
        }
        out += "\n";
    }
    out += "total,wins=" + std::to_string(r.wins) + "/" + std::to_string(r.matches.size()) + "," +
           fixed(r.mean_duration_ticks, 1) + ",";
    for (const auto& k : keys) out += "," + std::to_string(r.command_totals.at(k));
    out += "\npercent,win_rate=" + fixed(100.0 * r.win_rate, 1) + ",,";
    for (const auto& k : keys) out += "," + fixed(r.command_percent.at(k), 2);
    out += "\n";
    return out;
}

std::string series_json(const SeriesReport& r) {
    json j;
    j["difficulty"] = difficulty_name(r.config.difficulty);
    j["brain"] = r.config.brain;
    j["matches"] = r.matches.size();
    j["wins"] = r.wins;
    j["win_rate"] = r.win_rate;
    j["mean_duration_ticks"] = r.mean_duration_ticks;
    j["command_totals"] = r.command_totals;
    j["command_percent"] = r.command_percent;
    for (const auto& m : r.matches)
        j["per_match"].push_back({{"seed", m.seed},
                                  {"result", match_result_name(m.result)},
                                  {"duration", m.duration_ticks},
                                  {"loss_cause", m.loss_cause},
                                  {"plans_requested", m.plans_requested},
                                  {"parse_failures", m.parse_failures},
                                  {"commands_dispatched", m.commands_dispatched},
                                  {"replay_hash", hex64(m.replay_hash)}});
    return j.dump(2) + "\n";
}

std::string frequency_table(const SeriesReport& r) {
    std::string out = "command,count,percent\n";
    for (const auto& [k, v] : r.command_totals)
        out += k + "," + std::to_string(v) + "," + fixed(r.command_percent.at(k), 2) + "\n";
    return out;
}

void export_series(const SeriesReport& r, const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error("io", "cannot create " + dir + ": " + ec.message());
    write_text_file(dir + "/stats.csv", series_csv(r));
    write_text_file(dir + "/report.json", series_json(r));
    write_text_file(dir + "/frequency.csv", frequency_table(r));
}

void export_replay(const std::string& replay, const std::string& path) {
    auto parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    if (ec) throw Error("io", "cannot create " + parent.string() + ": " + ec.message());
    write_text_file(path, replay);
}

}  // namespace swarm
