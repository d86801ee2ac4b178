#include "swarm/overmind.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "swarm/error.hpp"
#include "swarm/io.hpp"

namespace swarm {

namespace {

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Straight and typographic quote marks (UTF-8 encoded).
constexpr std::string_view kQuotes[] = {"'", "\"", "\xE2\x80\x98", "\xE2\x80\x99", "\xE2\x80\x9C", "\xE2\x80\x9D"};

std::size_t quote_at(std::string_view s, std::size_t i) {
    for (auto q : kQuotes)
        if (s.substr(i, q.size()) == q) return q.size();
    return 0;
}

std::size_t quote_before(std::string_view s, std::size_t end) {
    for (auto q : kQuotes)
        if (end >= q.size() && s.substr(end - q.size(), q.size()) == q) return q.size();
    return 0;
}

struct KeyHit {
    std::size_t begin = 0;  // first byte of the key token
    std::size_t value = 0;  // first byte after the colon
    long key = 0;
};

// Keys are digits, optionally quoted, followed by ':'. An unquoted key must
// start a line or follow '{' or ','.
std::vector<KeyHit> find_keys(std::string_view body) {
    std::vector<KeyHit> hits;
    std::size_t i = 0;
    while (i < body.size()) {
        std::size_t start = i;
        std::size_t q = quote_at(body, i);
        std::size_t d = i + q;
        std::size_t e = d;
        while (e < body.size() && std::isdigit(static_cast<unsigned char>(body[e]))) ++e;
        if (e == d || e - d > 6) {
            i += q ? q : 1;
            continue;
        }
        std::size_t after = e;
        std::size_t q2 = quote_at(body, after);
        if (q && !q2) {
            i = e;
            continue;
        }
        after += q2;
        while (after < body.size() && body[after] == ' ') ++after;
        if (after >= body.size() || body[after] != ':') {
            i = e;
            continue;
        }
        if (!q) {
            std::size_t p = start;
            while (p > 0 && (body[p - 1] == ' ' || body[p - 1] == '\t')) --p;
            if (p > 0 && body[p - 1] != '\n' && body[p - 1] != '{' && body[p - 1] != ',') {
                i = e;
                continue;
            }
        } else if (start > 0 && std::isalnum(static_cast<unsigned char>(body[start - 1]))) {
            i = e;
            continue;
        }
        long key = 0;
        std::from_chars(body.data() + d, body.data() + e, key);
        hits.push_back({start, after + 1, key});
        i = after + 1;
    }
    return hits;
}

std::string clean_value(std::string_view v) {
    v = trim_view(v);
    while (!v.empty() && (v.back() == ',' || v.back() == ';')) v = trim_view(v.substr(0, v.size() - 1));
    std::size_t lq = quote_at(v, 0);
    std::size_t rq = quote_before(v, v.size());
    if (lq && rq && lq + rq <= v.size()) v = trim_view(v.substr(lq, v.size() - lq - rq));
    std::string out;
    bool space = false;
    for (char c : v) {
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
        if (c == ' ') {
            space = true;
            continue;
        }
        if (space && !out.empty()) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

std::optional<ActionPlan> plan_from_body(std::string_view body) {
    auto keys = find_keys(body);
    if (keys.empty()) return std::nullopt;
    std::vector<std::pair<long, std::string>> entries;
    for (std::size_t k = 0; k < keys.size(); ++k) {
        std::size_t end = k + 1 < keys.size() ? keys[k + 1].begin : body.size();
        entries.emplace_back(keys[k].key, clean_value(body.substr(keys[k].value, end - keys[k].value)));
    }
    std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ActionPlan plan;
    for (auto& [key, text] : entries)
        if (!text.empty()) plan.entries.push_back(std::move(text));
    if (plan.entries.empty()) return std::nullopt;
    return plan;
}

}  // namespace

ActionPlan parse_action_plan(std::string_view response) {
    // Candidate maps from the last closing brace backwards.
    std::size_t close = response.rfind('}');
    while (close != std::string_view::npos) {
        std::size_t open = response.rfind('{', close);
        if (open == std::string_view::npos) break;
        if (auto plan = plan_from_body(response.substr(open + 1, close - open - 1))) return *plan;
        if (open == 0) break;
        close = response.rfind('}', open - 1);
    }
    throw Error("unparseable-plan", "no order-keyed map in the response");
}

std::string render_plan(const ActionPlan& plan) {
    std::string out;
    for (std::size_t i = 0; i < plan.entries.size(); ++i) {
        if (i) out += ",\n";
        out += "'" + std::to_string(i) + "': " + plan.entries[i];
    }
    return out;
}

std::string normalize_decision(std::string_view decision) {
    std::string out;
    bool space = false;
    for (char c : trim_view(decision)) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            space = true;
            continue;
        }
        if (space) out += ' ';
        space = false;
        out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    while (!out.empty() && (out.back() == ',' || out.back() == '.')) out.pop_back();
    return out;
}

bool is_one_shot(std::string_view decision) {
    std::string n = normalize_decision(decision);
    return n.starts_with("build ") || n.starts_with("research ");
}

StrategyMemory::StrategyMemory(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw Error("bad-capacity", "memory capacity must be at least 1");
}

void StrategyMemory::record_round(int tick, ActionPlan plan, std::vector<std::string> commands) {
    rounds_.push_back({tick, std::move(plan), std::move(commands)});
    while (rounds_.size() > capacity_) rounds_.pop_front();
}

std::string StrategyMemory::render_text() const {
    if (rounds_.empty()) return std::string(kEmptyMemory);
    std::string out;
    for (const auto& r : rounds_) {
        if (!out.empty()) out += "\n";
        out += render_plan(r.plan);
    }
    return out;
}

ActionPlan dedup_filter(const ActionPlan& plan, const StrategyMemory& memory) {
    std::vector<std::string> seen;
    for (const auto& r : memory.rounds())
        for (const auto& e : r.plan.entries)
            if (is_one_shot(e)) seen.push_back(normalize_decision(e));
    ActionPlan out;
    out.issued_tick = plan.issued_tick;
    for (const auto& e : plan.entries) {
        if (is_one_shot(e) && std::find(seen.begin(), seen.end(), normalize_decision(e)) != seen.end()) continue;
        out.entries.push_back(e);
    }
    return out;
}

std::string_view brain_role_name(BrainRole r) { return r == BrainRole::Overmind ? "overmind" : "translator"; }

int LatencyProfile::ticks_for(BrainRole role, PromptMode mode) const {
    if (role == BrainRole::Translator) return translator_ticks;
    return mode == PromptMode::Critical ? critical_ticks : overmind_ticks;
}

LatencyProfile LatencyProfile::parse(std::string_view spec) {
    std::string s(trim_view(spec));
    std::string lower;
    for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "gpt-3.5" || lower == "gpt-3.5-turbo") return {"gpt-3.5", 10, 5, 5};
    if (lower == "gpt-4") return {"gpt-4", 20, 10, 5};
    int n = -1;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || p != s.data() + s.size() || n < 0)
        throw Error("bad-latency", "latency must be gpt-3.5, gpt-4 or a tick count, got '" + s + "'");
    return {s, n, n / 2, n / 2};
}

const PendingRequest& Mailbox::request(Brain& brain, BrainRole role, PromptMode mode, std::string prompt, int now,
                                       int latency_ticks) {
    if (pending_) throw Error("busy", "a request is already outstanding");
    BrainReply reply = brain.respond(role, prompt);
    int latency = reply.measured_latency_ticks.value_or(latency_ticks);
    pending_ = PendingRequest{role, mode, now, now + std::max(0, latency), std::move(prompt), std::move(reply.text)};
    return *pending_;
}

std::optional<PendingRequest> Mailbox::collect(int now) {
    if (!pending_ || now < pending_->ready_tick) return std::nullopt;
    std::optional<PendingRequest> out = std::move(pending_);
    pending_.reset();
    return out;
}

BrainRole role_of_prompt(std::string_view prompt) {
    return prompt.find("Your current thoughts:") != std::string_view::npos ? BrainRole::Translator
                                                                             : BrainRole::Overmind;
}

std::unique_ptr<Brain> make_brain(std::string_view spec, const std::string& model, int timeout_ms) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) throw Error("bad-brain", "brain spec must be kind:argument");
    std::string_view kind = spec.substr(0, colon);
    std::string arg(spec.substr(colon + 1));
    if (kind == "scripted") return scripted_brain(arg);
    if (kind == "replay") return replay_brain(read_text_file(arg));
    if (kind == "remote") return remote_brain(arg, model, timeout_ms);
    throw Error("bad-brain", "unknown brain kind '" + std::string(kind) + "'");
}

}  // namespace swarm
