#include "toxspan/agreement.hpp"

#include <map>
#include <set>

namespace toxspan {

namespace {

// sample_id -> rater_id -> labels, keeping sample first-appearance order
struct Grouped {
    std::vector<std::string> sample_order;
    std::map<std::string, std::map<std::string, const RaterTokenLabels*>> by_sample;
    std::set<std::string> raters;
};

Grouped group(std::span<const RaterTokenLabels> per_sample) {
    Grouped g;
    for (const auto& r : per_sample) {
        auto [it, inserted] = g.by_sample.try_emplace(r.sample_id);
        if (inserted) g.sample_order.push_back(r.sample_id);
        if (!it->second.emplace(r.rater_id, &r).second)
            throw AgreementDataError("duplicate rating of sample '" + r.sample_id +
                                     "' by rater '" + r.rater_id + "'");
        g.raters.insert(r.rater_id);
    }
    if (g.raters.size() != 2)
        throw AgreementDataError("expected exactly two raters, got " +
                                 std::to_string(g.raters.size()));
    return g;
}

}  // namespace

MergedRatings merge_rater_arrays(std::span<const RaterTokenLabels> per_sample) {
    const Grouped g = group(per_sample);
    auto it = g.raters.begin();
    MergedRatings merged;
    merged.rater_a = *it++;
    merged.rater_b = *it;

    for (const auto& sid : g.sample_order) {
        const auto& ratings = g.by_sample.at(sid);
        if (ratings.size() != 2)
            throw AgreementDataError("sample '" + sid + "' is missing a rating");
        const auto& la = ratings.at(merged.rater_a)->labels;
        const auto& lb = ratings.at(merged.rater_b)->labels;
        if (la.size() != lb.size())
            throw AgreementDataError("label length mismatch in sample '" + sid + "': " +
                                     std::to_string(la.size()) + " vs " +
                                     std::to_string(lb.size()));
        merged.a.insert(merged.a.end(), la.begin(), la.end());
        merged.b.insert(merged.b.end(), lb.begin(), lb.end());
    }
    return merged;
}

AgreementResult krippendorff_alpha_nominal(std::span<const std::uint8_t> a,
                                           std::span<const std::uint8_t> b) {
    if (a.size() != b.size())
        throw AgreementDataError("rater sequences differ in length");
    if (a.size() < 2)
        throw AgreementDataError("need at least two paired ratings");

    const std::size_t n = a.size();
    const double N = 2.0 * static_cast<double>(n);

    // coincidence matrix for binary values: each unit contributes both
    // ordered pairs (a_i,b_i) and (b_i,a_i)
    std::size_t disagreements = 0;
    std::size_t ones = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] != b[i]) ++disagreements;
        ones += a[i] + b[i];
    }
    const double n1 = static_cast<double>(ones);
    const double n0 = N - n1;

    AgreementResult res;
    res.n_ratings = 2 * n;
    res.observed_disagreement = 2.0 * static_cast<double>(disagreements) / N;
    res.expected_disagreement = 2.0 * n0 * n1 / (N * (N - 1.0));

    if (res.expected_disagreement == 0.0) {
        // all ratings share a single value; chance correction is undefined
        res.status = AgreementResult::Status::undefined_no_variation;
        res.alpha = 0.0;
        return res;
    }
    res.status = AgreementResult::Status::ok;
    res.alpha = 1.0 - res.observed_disagreement / res.expected_disagreement;
    return res;
}

std::vector<std::string> find_conflicts(std::span<const RaterTokenLabels> per_sample) {
    const Grouped g = group(per_sample);
    auto it = g.raters.begin();
    const std::string rater_a = *it++;
    const std::string rater_b = *it;

    std::vector<std::string> conflicts;
    for (const auto& sid : g.sample_order) {
        const auto& ratings = g.by_sample.at(sid);
        if (ratings.size() != 2)
            throw AgreementDataError("sample '" + sid + "' is missing a rating");
        const auto& la = ratings.at(rater_a)->labels;
        const auto& lb = ratings.at(rater_b)->labels;
        if (la.size() != lb.size())
            throw AgreementDataError("label length mismatch in sample '" + sid + "': " +
                                     std::to_string(la.size()) + " vs " +
                                     std::to_string(lb.size()));
        if (la != lb) conflicts.push_back(sid);
    }
    return conflicts;
}

}  // namespace toxspan
