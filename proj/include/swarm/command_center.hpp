#pragma once

#include <deque>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "swarm/command.hpp"
#include "swarm/world.hpp"

namespace swarm {

inline constexpr int kSuspendExpiryTicks = 120;

struct Dispatched {
    std::vector<EngineOrder> orders;
};
struct Suspended {
    Feasibility reason;
    int expiry_tick = 0;
};
struct Rejected {
    std::string reason;
};
using Outcome = std::variant<Dispatched, Suspended, Rejected>;

std::string describe(const Outcome& o);

struct SuspendedCommand {
    Command command;
    Feasibility reason;
    int enqueued_tick = 0;
    int expiry_tick = 0;
};

// FIFO of commands waiting for prerequisites. Nothing is reserved while an
// entry waits.
class SuspendQueue {
public:
    explicit SuspendQueue(int expiry_window = kSuspendExpiryTicks) : expiry_window_(expiry_window) {}

    int expiry_window() const { return expiry_window_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const std::deque<SuspendedCommand>& entries() const { return entries_; }

    void push(SuspendedCommand c) { entries_.push_back(std::move(c)); }
    std::deque<SuspendedCommand>& mutable_entries() { return entries_; }

private:
    int expiry_window_;
    std::deque<SuspendedCommand> entries_;
};

// Fixes the recurring translator slips (see implementation for the rules).
// Throws Error("unresolvable-target").
Command repair_command(const Command& cmd, const WorldState& s, Player p = Player::Zerg);

// Consults check_prerequisites for production verbs and dispatches
// movement verbs as one group order. Suspended outcomes are queued.
Outcome verify_and_dispatch(const Command& cmd, WorldState& s, SuspendQueue& queue, int now,
                            Player p = Player::Zerg);

struct QueueEvent {
    Command command;
    std::string what;  // "dispatched", "expired"
    int enqueued_tick = 0;
    std::vector<EngineOrder> orders;
};

// Re-verifies every waiting entry in FIFO order; dispatches the ready ones
// and drops the expired ones.
std::vector<QueueEvent> process_suspended(WorldState& s, SuspendQueue& queue, int now, Player p = Player::Zerg);

struct LineOutcome {
    std::size_t index = 0;
    std::string raw;
    std::optional<Command> parsed;
    std::optional<Command> repaired;
    std::string canonical;   // render of the repaired command, or empty
    std::string error_code;  // parse or repair failure
    std::optional<Outcome> outcome;
};

std::vector<LineOutcome> process_command_list(const std::vector<std::string>& lines, WorldState& s,
                                              SuspendQueue& queue, int now, Player p = Player::Zerg);

std::string describe(const LineOutcome& o);

}  // namespace swarm
