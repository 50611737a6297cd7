#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace polling {

// Upper limit on poll sizes; tails are computed by direct summation.
inline constexpr int kMaxPollSize = 64;

// One (m,d) update rule: poll m peers, flip if at least d of them disagree.
struct PollingRule {
    int m = 1;  // poll size
    int d = 1;  // disagreement threshold

    bool strict_majority() const { return 2 * d > m; }
    bool operator==(const PollingRule&) const = default;
};

struct WeightedRule {
    PollingRule rule;
    double weight = 1.0;
};

// Finite probability distribution over polling rules. A single entry with
// weight 1 reproduces the deterministic (m,d) algorithm exactly.
class RuleDistribution {
public:
    explicit RuleDistribution(std::vector<WeightedRule> entries);

    static RuleDistribution single(PollingRule rule);

    const std::vector<WeightedRule>& entries() const { return entries_; }
    bool is_degenerate() const { return entries_.size() == 1; }

    // True when every rule satisfies 2d > m (strict super-majority).
    bool strict_majority_all() const;

    int max_poll_size() const;

    // E[p2] = E P(Z_{M,x} >= D): probability that a polled 0-node flips,
    // binomial (with-replacement) sampling.
    double expected_up_tail(double x) const;

    // E[p1] = E P(Z_{M,x} <= M-D): probability that a polled 1-node flips.
    double expected_down_tail(double x) const;

    // Accepts either a single record {"m":..,"d":..[,"weight":..]} or a list
    // of such records. A missing weight on a lone record means weight 1.
    static RuleDistribution from_json(const nlohmann::json& j);
    static RuleDistribution load_file(const std::string& path);

    // "m:d" or "m:d@w,m:d@w,..." (weights normalized to sum 1 is not implied;
    // they must sum to 1 already).
    static RuleDistribution parse(const std::string& text);

    nlohmann::json to_json() const;
    std::string describe() const;

private:
    std::vector<WeightedRule> entries_;
};

enum class SamplingMode { WithReplacement, WithoutReplacement };

std::string to_string(SamplingMode mode);
SamplingMode sampling_mode_from_string(const std::string& s);

}  // namespace polling
