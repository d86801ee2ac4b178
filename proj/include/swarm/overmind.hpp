#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swarm/perception.hpp"

namespace swarm {

// Order-keyed natural-language decisions. Keys are dense from "0"; index i
// holds key std::to_string(i).
struct ActionPlan {
    std::vector<std::string> entries;
    int issued_tick = 0;

    bool operator==(const ActionPlan&) const = default;
};

// Extracts the last brace-delimited, digit-keyed map in `response`. Prose
// around it is ignored; keys are sorted numerically then renumbered dense.
// Throws Error("unparseable-plan").
ActionPlan parse_action_plan(std::string_view response);

// "'0': text,\n'1': text" (the response format, ASCII quotes).
std::string render_plan(const ActionPlan& plan);

// Build and Research decisions are one-shot; everything else repeats.
bool is_one_shot(std::string_view decision);
// Lower case with runs of whitespace collapsed; the dedup equality.
std::string normalize_decision(std::string_view decision);

struct MemoryRound {
    int tick = 0;
    ActionPlan plan;
    std::vector<std::string> commands;
};

class StrategyMemory {
public:
    explicit StrategyMemory(std::size_t capacity = 1);

    void record_round(int tick, ActionPlan plan, std::vector<std::string> commands);
    const std::deque<MemoryRound>& rounds() const { return rounds_; }
    std::size_t capacity() const { return capacity_; }
    bool empty() const { return rounds_.empty(); }
    // Retained plans, oldest first, one decision per line; kEmptyMemory when empty.
    std::string render_text() const;

private:
    std::size_t capacity_;
    std::deque<MemoryRound> rounds_;
};

// Drops one-shot decisions already present in memory. Idempotent.
ActionPlan dedup_filter(const ActionPlan& plan, const StrategyMemory& memory);

// ---- brains ----------------------------------------------------------------

enum class BrainRole : std::uint8_t { Overmind, Translator };
std::string_view brain_role_name(BrainRole r);

struct BrainReply {
    std::string text;
    // Set by brains that measure their own latency; overrides the profile.
    std::optional<int> measured_latency_ticks;
};

class Brain {
public:
    virtual ~Brain() = default;
    virtual BrainReply respond(BrainRole role, const std::string& prompt) = 0;
    virtual std::string describe() const = 0;
};

// Ticks between request and delivery. One tick is one game second.
struct LatencyProfile {
    std::string name = "0";
    int overmind_ticks = 0;
    int critical_ticks = 0;
    int translator_ticks = 0;

    int ticks_for(BrainRole role, PromptMode mode) const;
    // "gpt-3.5" -> 10/5/5, "gpt-4" -> 20/10/5, "<n>" -> n/(n/2)/(n/2).
    // Throws Error("bad-latency").
    static LatencyProfile parse(std::string_view spec);
};

struct PendingRequest {
    BrainRole role{};
    PromptMode mode{};
    int issued_tick = 0;
    int ready_tick = 0;
    std::string prompt;
    std::string response;
};

// At most one outstanding request. The brain is asked immediately but the
// reply is withheld until ready_tick.
class Mailbox {
public:
    // Throws Error("busy") while a request is outstanding.
    const PendingRequest& request(Brain& brain, BrainRole role, PromptMode mode, std::string prompt, int now,
                                  int latency_ticks);
    bool busy() const { return pending_.has_value(); }
    const std::optional<PendingRequest>& pending() const { return pending_; }
    // The pending request once now >= ready_tick; the mailbox is then free.
    std::optional<PendingRequest> collect(int now);

private:
    std::optional<PendingRequest> pending_;
};

// Deterministic stand-ins that read the situation blocks from the prompt.
// Policies: rush, macro, turtle. Throws Error("unknown-policy").
std::unique_ptr<Brain> scripted_brain(std::string_view policy_id);
// Replays {"overmind": [...], "translator": [...]} transcripts in order,
// repeating the last entry once exhausted. Throws Error("bad-transcript").
std::unique_ptr<Brain> replay_brain(std::string_view transcript_json);
// Chat-completion endpoint. Throws Error("brain-unavailable") from respond()
// on timeout or transport failure.
std::unique_ptr<Brain> remote_brain(std::string endpoint, std::string model, int timeout_ms,
                                    double seconds_per_tick = 1.0);

// "scripted:rush", "replay:<file>", "remote:<url>". Throws Error("bad-brain").
std::unique_ptr<Brain> make_brain(std::string_view spec, const std::string& model = "gpt-3.5-turbo",
                                  int timeout_ms = 30000);

// Which role a prompt addresses: translator prompts carry the thoughts block.
BrainRole role_of_prompt(std::string_view prompt);

}  // namespace swarm
