#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "swarm/kinds.hpp"
#include "swarm/map.hpp"

namespace swarm {

enum class Verb : std::uint8_t { Move, Attack, Build, Train, Morph, Research, GatherGas, GatherMinerals, Scout };
std::string_view verb_name(Verb v);  // canonical spelling used in rendered lines

// Subjects that stand for several kinds: "Zerg units" (every combat unit at
// the location) and "Larva" (the town hall's larva).
enum class GroupAlias : std::uint8_t { AllCombat, Larva };

using SubjectKind = std::variant<UnitKind, BuildingKind, GroupAlias>;

struct Subject {
    SubjectKind kind;
    std::optional<BaseId> location;
    bool operator==(const Subject&) const = default;
};

// A kind, optionally numbered (Extractor2) and placed (A1). Research
// targets use this with a ResearchId and no location.
struct KindTarget {
    Producible kind;
    int slot = 0;
    std::optional<BaseId> location;
    bool operator==(const KindTarget&) const = default;
};

struct FreeText {
    std::string text;
    bool operator==(const FreeText&) const = default;
};

using Target = std::variant<std::monostate, BaseId, KindTarget, FreeText>;

struct Command {
    Subject subject;
    Verb verb = Verb::Move;
    Target target;
    bool operator==(const Command&) const = default;
};

// Verb synonyms, folded to lower case with single spaces.
class VerbTable {
public:
    static const VerbTable& builtin();
    static VerbTable from_json(std::string_view json_text);

    std::optional<Verb> lookup(std::string_view phrase) const;
    const std::map<std::string, Verb>& entries() const { return table_; }

private:
    std::map<std::string, Verb> table_;
};

// Errors: "malformed-line", "unknown-kind", "unknown-verb".
Command parse_command(std::string_view line, const VerbTable& verbs = VerbTable::builtin());
std::string render_command(const Command& cmd);
// "Zergling", "Zerg units", "Larva".
std::string subject_kind_name(const SubjectKind& k);
// Command-frequency bucket: "Train <target kind>" or "Attack <subject kind>";
// nullopt for every other verb.
std::optional<std::string> frequency_key(const Command& cmd);

// Pulls "(...)->(...)" lines out of a translator response: one per line,
// tolerating "'3': ..." keys, quotes, trailing commas and // comments.
std::vector<std::string> extract_command_lines(std::string_view response);

}  // namespace swarm
