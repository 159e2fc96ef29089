#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace legmoment {

struct OpTally {
    std::uint64_t additions = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t power_evals = 0;

    OpTally& operator+=(const OpTally& o) {
        additions += o.additions;
        multiplications += o.multiplications;
        power_evals += o.power_evals;
        return *this;
    }
    friend bool operator==(const OpTally&, const OpTally&) = default;
};

/// Arithmetic tallies keyed by stage label.
///
/// Kernels report work in bulk (trip count of the loop they just ran), so a
/// counted call costs one map lookup rather than one increment per scalar
/// operation. Every stage increment also lands in the running total; the
/// total is therefore always the sum of the stages.
///
/// Not thread-safe. Parallel code gives each worker its own counter and
/// merges them afterwards.
class OpCounter {
public:
    void add(std::string_view stage, std::uint64_t n);
    void mul(std::string_view stage, std::uint64_t n);
    void pow(std::string_view stage, std::uint64_t n);

    void merge(const OpCounter& other);
    /// Merge with every stage label prefixed, e.g. "rows." + "fold".
    void merge_prefixed(const OpCounter& other, std::string_view prefix);
    void reset();

    const OpTally& total() const { return total_; }
    OpTally stage(std::string_view name) const;
    const std::map<std::string, OpTally, std::less<>>& stages() const { return stages_; }

    /// Sum of every stage whose label starts with `prefix`.
    OpTally prefix_total(std::string_view prefix) const;

private:
    OpTally& slot(std::string_view stage);

    std::map<std::string, OpTally, std::less<>> stages_;
    OpTally total_;
};

// Null-tolerant helpers; passing nullptr disables counting.
inline void count_add(OpCounter* c, std::string_view stage, std::uint64_t n) {
    if (c) c->add(stage, n);
}
inline void count_mul(OpCounter* c, std::string_view stage, std::uint64_t n) {
    if (c) c->mul(stage, n);
}
inline void count_pow(OpCounter* c, std::string_view stage, std::uint64_t n) {
    if (c) c->pow(stage, n);
}

} // namespace legmoment
