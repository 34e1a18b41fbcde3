#include "netstrata/heavytail.hpp"

#include <algorithm>
#include <cmath>

#include "netstrata/error.hpp"

namespace netstrata::ht {

LrOutcome likelihood_ratio(const FitResult& fit1, const FitResult& fit2,
                           const DegreeSample& sample) {
    double common = std::max(fit1.x_min, fit2.x_min);
    // Same parameters conditioned on the shared support: every candidate
    // family is closed under raising x_min.
    FitResult a = fit1;
    FitResult b = fit2;
    a.x_min = common;
    b.x_min = common;
    std::vector<double> diffs;
    for (double v : sample.values)
        if (v >= common) diffs.push_back(log_density(a, v) - log_density(b, v));
    if (diffs.empty())
        fail("heavytail.lr", "no sample values on the common support of the two fits");
    LrOutcome out;
    out.n = diffs.size();
    double sum = 0.0;
    for (double d : diffs) sum += d;
    out.r_statistic = sum;
    double mean = sum / static_cast<double>(out.n);
    double var = 0.0;
    for (double d : diffs) var += (d - mean) * (d - mean);
    var /= static_cast<double>(out.n);
    if (var <= 0.0) {
        out.p_value = 1.0;  // identical densities at every point
        return out;
    }
    out.p_value =
        std::erfc(std::fabs(out.r_statistic) / std::sqrt(2.0 * static_cast<double>(out.n) * var));
    return out;
}

SelectionResult selection_score(const std::vector<FitResult>& fits, const DegreeSample& sample) {
    if (fits.size() < 2) fail("heavytail.selection", "selection needs at least two fits");
    SelectionResult out;
    for (const auto& f : fits) {
        if (out.scores.count(f.kind))
            fail("heavytail.selection", std::string("duplicate candidate: ") + to_string(f.kind));
        out.scores[f.kind] = 0.0;
    }
    // One test per unordered pair, mirrored for exact antisymmetry.
    for (std::size_t i = 0; i < fits.size(); ++i) {
        for (std::size_t j = i + 1; j < fits.size(); ++j) {
            LrOutcome lr = likelihood_ratio(fits[i], fits[j], sample);
            LrOutcome rev = lr;
            rev.r_statistic = -lr.r_statistic;
            out.pairs.push_back({fits[i].kind, fits[j].kind, lr});
            out.pairs.push_back({fits[j].kind, fits[i].kind, rev});
            if (lr.p_value <= 0.05) {
                out.scores[fits[i].kind] += lr.r_statistic;
                out.scores[fits[j].kind] -= lr.r_statistic;
            }
        }
    }
    // scores is keyed by enum, so iteration order is the tie-break order and
    // the strict > keeps the earlier kind on equal scores.
    bool first = true;
    double best = 0.0;
    for (const auto& [kind, score] : out.scores) {
        if (first || score > best) {
            out.winner = kind;
            best = score;
            out.tie = false;
            first = false;
        } else if (score == best) {
            out.tie = true;
        }
    }
    return out;
}

}  // namespace netstrata::ht
