#include "polling/rules.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "polling/tails.hpp"

namespace polling {

namespace {
constexpr double kWeightTol = 1e-12;

void validate_rule(const PollingRule& r) {
    if (r.d < 1 || r.m < r.d)
        throw std::invalid_argument("polling rule requires 1 <= d <= m, got (" +
                                    std::to_string(r.m) + "," + std::to_string(r.d) + ")");
    if (r.m > kMaxPollSize)
        throw std::invalid_argument("poll size m exceeds cap " + std::to_string(kMaxPollSize));
}
}  // namespace

RuleDistribution::RuleDistribution(std::vector<WeightedRule> entries)
    : entries_(std::move(entries)) {
    if (entries_.empty())
        throw std::invalid_argument("rule distribution must have at least one entry");
    double total = 0.0;
    for (const auto& e : entries_) {
        validate_rule(e.rule);
        if (!(e.weight > 0.0))
            throw std::invalid_argument("rule weights must be strictly positive");
        total += e.weight;
    }
    if (std::abs(total - 1.0) > kWeightTol)
        throw std::invalid_argument("rule weights must sum to 1 (got " +
                                    std::to_string(total) + ")");
}

RuleDistribution RuleDistribution::single(PollingRule rule) {
    return RuleDistribution({{rule, 1.0}});
}

bool RuleDistribution::strict_majority_all() const {
    for (const auto& e : entries_)
        if (!e.rule.strict_majority()) return false;
    return true;
}

int RuleDistribution::max_poll_size() const {
    int m = 0;
    for (const auto& e : entries_) m = std::max(m, e.rule.m);
    return m;
}

double RuleDistribution::expected_up_tail(double x) const {
    double s = 0.0;
    for (const auto& e : entries_)
        s += e.weight * binomial_tail_ge(e.rule.m, x, e.rule.d);
    return s;
}

double RuleDistribution::expected_down_tail(double x) const {
    double s = 0.0;
    for (const auto& e : entries_)
        s += e.weight * binomial_tail_le(e.rule.m, x, e.rule.m - e.rule.d);
    return s;
}

RuleDistribution RuleDistribution::from_json(const nlohmann::json& j) {
    auto parse_record = [](const nlohmann::json& rec, bool weight_required) {
        WeightedRule wr;
        wr.rule.m = rec.at("m").get<int>();
        wr.rule.d = rec.at("d").get<int>();
        if (rec.contains("weight"))
            wr.weight = rec.at("weight").get<double>();
        else if (weight_required)
            throw std::invalid_argument("rule record missing 'weight'");
        return wr;
    };
    if (j.is_object()) return RuleDistribution({parse_record(j, false)});
    if (j.is_array()) {
        if (j.size() == 1) return RuleDistribution({parse_record(j[0], false)});
        std::vector<WeightedRule> entries;
        for (const auto& rec : j) entries.push_back(parse_record(rec, true));
        return RuleDistribution(std::move(entries));
    }
    throw std::invalid_argument("rules JSON must be an object or array of {m,d[,weight]}");
}

RuleDistribution RuleDistribution::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rules file: " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

RuleDistribution RuleDistribution::parse(const std::string& text) {
    std::vector<WeightedRule> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        WeightedRule wr;
        const auto at = item.find('@');
        std::string md = item.substr(0, at);
        if (at != std::string::npos) wr.weight = std::stod(item.substr(at + 1));
        const auto colon = md.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("rule spec must look like m:d, got '" + item + "'");
        wr.rule.m = std::stoi(md.substr(0, colon));
        wr.rule.d = std::stoi(md.substr(colon + 1));
        entries.push_back(wr);
    }
    return RuleDistribution(std::move(entries));
}

nlohmann::json RuleDistribution::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries_)
        arr.push_back({{"m", e.rule.m}, {"d", e.rule.d}, {"weight", e.weight}});
    return arr;
}

std::string RuleDistribution::describe() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) os << ",";
        os << entries_[i].rule.m << ":" << entries_[i].rule.d;
        if (entries_.size() > 1) os << "@" << entries_[i].weight;
    }
    return os.str();
}

std::string to_string(SamplingMode mode) {
    return mode == SamplingMode::WithReplacement ? "with" : "without";
}

SamplingMode sampling_mode_from_string(const std::string& s) {
    if (s == "with" || s == "with-replacement") return SamplingMode::WithReplacement;
    if (s == "without" || s == "without-replacement") return SamplingMode::WithoutReplacement;
    throw std::invalid_argument("sampling mode must be 'with' or 'without', got '" + s + "'");
}

}  // namespace polling
