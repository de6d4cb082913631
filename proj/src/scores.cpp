#include "padfuse/scores.hpp"

#include <cmath>

#include "padfuse/errors.hpp"

namespace padfuse {

std::string_view to_string(ScoreClass klass) {
    switch (klass) {
        case ScoreClass::Genuine: return "genuine";
        case ScoreClass::ZeroEffort: return "zero_effort";
        case ScoreClass::PresentationAttack: return "presentation_attack";
    }
    return "?";
}

std::optional<ScoreClass> parse_score_class(std::string_view text) {
    for (ScoreClass klass : kAllClasses) {
        if (text == to_string(klass)) return klass;
    }
    return std::nullopt;
}

std::size_t ClassCounts::of(ScoreClass klass) const {
    switch (klass) {
        case ScoreClass::Genuine: return genuine;
        case ScoreClass::ZeroEffort: return zero_effort;
        case ScoreClass::PresentationAttack: return presentation_attack;
    }
    return 0;
}

ScoreDataset::ScoreDataset(std::string name, std::vector<ScoreRecord> records)
    : name_(std::move(name)), records_(std::move(records)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (!std::isfinite(r.liveness_score) || !std::isfinite(r.match_score)) {
            throw Error(ErrorCode::DomainError,
                        "record " + std::to_string(i) + " has a non-finite score");
        }
        switch (r.klass) {
            case ScoreClass::Genuine: ++counts_.genuine; break;
            case ScoreClass::ZeroEffort: ++counts_.zero_effort; break;
            case ScoreClass::PresentationAttack: ++counts_.presentation_attack; break;
        }
    }
}

void require_class(const ScoreDataset& data, ScoreClass klass) {
    if (data.counts().of(klass) == 0) {
        throw Error(ErrorCode::EmptyClass, "dataset '" + data.name() + "' has no " +
                                               std::string(to_string(klass)) + " records");
    }
}

}  // namespace padfuse
