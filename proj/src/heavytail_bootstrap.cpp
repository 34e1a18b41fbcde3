#include "netstrata/heavytail.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "netstrata/error.hpp"
#include "netstrata/specfun.hpp"

namespace netstrata::ht {

namespace {

// A single rejection chain may legitimately run long; past this it is a
// pathological acceptance rate, not bad luck.
constexpr std::size_t kMaxRejectionAttempts = 2'000'000;

double draw_truncated_power_law(double alpha, double lambda, double x_min, Rng& rng) {
    if (!(alpha > 0.0))
        fail("heavytail.draw", "truncated power law sampling needs alpha > 0");
    for (std::size_t attempt = 0; attempt < kMaxRejectionAttempts; ++attempt) {
        if (alpha > 1.0) {
            // Power-law proposal, thinned by the exponential factor.
            double y = x_min * std::pow(rng.uniform_pos(), -1.0 / (alpha - 1.0));
            if (rng.uniform() < std::exp(-lambda * (y - x_min))) return y;
        } else {
            // Exponential proposal, thinned by the power factor (alpha <= 1).
            double y = x_min - std::log(rng.uniform_pos()) / lambda;
            if (rng.uniform() < std::pow(y / x_min, -alpha)) return y;
        }
    }
    fail("heavytail.draw",
         "rejection acceptance rate below 1e-6; pathological lambda * x_min combination");
}

}  // namespace

double draw_one(const FitResult& fit, Rng& rng) {
    double xm = fit.x_min;
    switch (fit.kind) {
        case CandidateKind::power_law:
            return xm * std::pow(rng.uniform_pos(), -1.0 / (fit.param("alpha") - 1.0));
        case CandidateKind::exponential:
            return xm - std::log(rng.uniform_pos()) / fit.param("lambda");
        case CandidateKind::lognormal: {
            double mu = fit.param("mu");
            double sigma = fit.param("sigma");
            double tail0 = std::exp(specfun::log_norm_tail((std::log(xm) - mu) / sigma));
            double u = rng.uniform_pos();
            return std::exp(mu - sigma * specfun::norm_quantile(tail0 * u));
        }
        case CandidateKind::truncated_power_law:
            return draw_truncated_power_law(fit.param("alpha"), fit.param("lambda"), xm, rng);
    }
    fail("heavytail.kind", "unknown candidate kind");
}

std::vector<double> sample_from(const FitResult& fit, std::size_t n, std::uint64_t seed) {
    if (n < 1) fail("heavytail.draw", "sample size must be at least 1");
    Rng rng(seed);
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(draw_one(fit, rng));
    return out;
}

BootstrapReport bootstrap_gof(CandidateKind kind, const DegreeSample& sample,
                              const BootstrapOptions& options) {
    if (options.b_iterations < 100)
        fail("heavytail.bootstrap", "bootstrap needs at least 100 iterations");
    if (!(options.significance > 0.0 && options.significance < 1.0))
        fail("heavytail.bootstrap", "significance must lie strictly between 0 and 1");

    BootstrapReport report;
    report.b_requested = options.b_iterations;
    report.seed = options.seed;
    report.significance = options.significance;

    if (options.tail_only) {
        report.empirical_fit = estimate_xmin(kind, sample);
    } else {
        double lo = *std::min_element(sample.values.begin(), sample.values.end());
        report.empirical_fit = fit_mle(kind, sample, lo);
    }
    report.empirical_ks = report.empirical_fit.ks_distance;
    report.thin_tail = report.empirical_fit.thin_tail;

    std::vector<double> below;
    for (double v : sample.values)
        if (v < report.empirical_fit.x_min) below.push_back(v);
    std::size_t n = sample.values.size();
    double p_model = static_cast<double>(report.empirical_fit.n_tail) / static_cast<double>(n);

    const std::size_t b_total = options.b_iterations;
    std::vector<char> ok(b_total, 0);
    std::vector<double> ks(b_total, 0.0);
    std::vector<std::map<std::string, double>> params(b_total);
    std::vector<double> xmins(b_total, 0.0);

    auto run_iteration = [&](std::size_t b) {
        Rng rng = Rng::derive(options.seed, b);
        DegreeSample synthetic;
        synthetic.scale = sample.scale;
        synthetic.direction = sample.direction;
        synthetic.layer = sample.layer;
        synthetic.level = sample.level;
        synthetic.values.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (below.empty() || rng.uniform() < p_model)
                synthetic.values.push_back(draw_one(report.empirical_fit, rng));
            else
                synthetic.values.push_back(below[rng.below(below.size())]);
        }
        try {
            FitResult refit = options.tail_only
                                  ? estimate_xmin(kind, synthetic)
                                  : fit_mle(kind, synthetic, report.empirical_fit.x_min);
            ks[b] = refit.ks_distance;
            params[b] = refit.params;
            xmins[b] = refit.x_min;
            ok[b] = 1;
        } catch (const Error&) {
            ok[b] = 0;
        }
    };

    int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (std::size_t b = 0; b < b_total; ++b) run_iteration(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t b = next.fetch_add(1); b < b_total; b = next.fetch_add(1))
                    run_iteration(b);
            });
        for (auto& th : pool) th.join();
    }

    std::size_t at_or_above = 0;
    for (std::size_t b = 0; b < b_total; ++b) {
        if (!ok[b]) continue;
        report.bootstrap_ks.push_back(ks[b]);
        report.bootstrap_params.push_back(params[b]);
        if (options.tail_only) report.bootstrap_xmin.push_back(xmins[b]);
        if (ks[b] >= report.empirical_ks) ++at_or_above;
    }
    report.b_effective = report.bootstrap_ks.size();
    if (static_cast<double>(report.b_effective) <
        0.9 * static_cast<double>(options.b_iterations))
        fail("heavytail.bootstrap",
             "only " + std::to_string(report.b_effective) + " of " +
                 std::to_string(options.b_iterations) + " bootstrap refits succeeded");
    report.p_value =
        static_cast<double>(at_or_above) / static_cast<double>(report.b_effective);
    report.reject_h0 = report.p_value < options.significance;
    return report;
}

}  // namespace netstrata::ht
