#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace padfuse {

// The three admissible (liveness, identity) events of an access trial.
// A spoof presented by an authorized user has no enumerator: it cannot occur.
enum class ScoreClass {
    Genuine,             // live sample, authorized user
    ZeroEffort,          // live sample, impostor
    PresentationAttack,  // spoof sample, impostor
};

inline constexpr ScoreClass kAllClasses[] = {
    ScoreClass::Genuine, ScoreClass::ZeroEffort, ScoreClass::PresentationAttack};

// File/wire spelling: genuine, zero_effort, presentation_attack.
std::string_view to_string(ScoreClass klass);
std::optional<ScoreClass> parse_score_class(std::string_view text);

inline bool is_live(ScoreClass klass) { return klass != ScoreClass::PresentationAttack; }

// Scores are oriented so that higher means "more live" / "better match".
struct ScoreRecord {
    ScoreClass klass;
    double liveness_score;
    double match_score;

    bool operator==(const ScoreRecord&) const = default;
};

struct ClassCounts {
    std::size_t genuine = 0;
    std::size_t zero_effort = 0;
    std::size_t presentation_attack = 0;

    std::size_t of(ScoreClass klass) const;
    std::size_t live() const { return genuine + zero_effort; }
    std::size_t total() const { return genuine + zero_effort + presentation_attack; }

    bool operator==(const ClassCounts&) const = default;
};

class ScoreDataset {
public:
    ScoreDataset() = default;
    // Throws DomainError if any score is not finite.
    ScoreDataset(std::string name, std::vector<ScoreRecord> records);

    const std::string& name() const { return name_; }
    std::span<const ScoreRecord> records() const { return records_; }
    std::size_t size() const { return records_.size(); }
    const ClassCounts& counts() const { return counts_; }

    bool operator==(const ScoreDataset&) const = default;

private:
    std::string name_;
    std::vector<ScoreRecord> records_;
    ClassCounts counts_;
};

// Throws EmptyClass naming `klass` if the dataset holds none of it.
void require_class(const ScoreDataset& data, ScoreClass klass);

}  // namespace padfuse
