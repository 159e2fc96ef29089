#include "legmoment/op_counter.hpp"

namespace legmoment {

OpTally& OpCounter::slot(std::string_view stage) {
    auto it = stages_.find(stage);
    if (it == stages_.end()) it = stages_.emplace(std::string(stage), OpTally{}).first;
    return it->second;
}

void OpCounter::add(std::string_view stage, std::uint64_t n) {
    slot(stage).additions += n;
    total_.additions += n;
}

void OpCounter::mul(std::string_view stage, std::uint64_t n) {
    slot(stage).multiplications += n;
    total_.multiplications += n;
}

void OpCounter::pow(std::string_view stage, std::uint64_t n) {
    slot(stage).power_evals += n;
    total_.power_evals += n;
}

void OpCounter::merge(const OpCounter& other) {
    for (const auto& [name, tally] : other.stages_) slot(name) += tally;
    total_ += other.total_;
}

void OpCounter::merge_prefixed(const OpCounter& other, std::string_view prefix) {
    std::string name(prefix);
    for (const auto& [label, tally] : other.stages_) {
        name.resize(prefix.size());
        name += label;
        slot(name) += tally;
    }
    total_ += other.total_;
}

void OpCounter::reset() {
    stages_.clear();
    total_ = {};
}

OpTally OpCounter::stage(std::string_view name) const {
    auto it = stages_.find(name);
    return it == stages_.end() ? OpTally{} : it->second;
}

OpTally OpCounter::prefix_total(std::string_view prefix) const {
    OpTally sum;
    for (auto it = stages_.lower_bound(prefix); it != stages_.end(); ++it) {
        if (!std::string_view(it->first).starts_with(prefix)) break;
        sum += it->second;
    }
    return sum;
}

} // namespace legmoment
