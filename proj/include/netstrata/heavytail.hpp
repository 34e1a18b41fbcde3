#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netstrata/network.hpp"
#include "netstrata/rng.hpp"

namespace netstrata::ht {

// Declaration order doubles as the deterministic tie-break order.
enum class CandidateKind { power_law, truncated_power_law, lognormal, exponential };

const char* to_string(CandidateKind kind);
std::optional<CandidateKind> parse_kind(const std::string& s);
const std::vector<CandidateKind>& all_kinds();

enum class Direction { in, out };
const char* to_string(Direction direction);
std::optional<Direction> parse_direction(const std::string& s);

// Exposure totals in units of `scale` EUR. Layer and level tag where the
// values came from; free-standing samples leave the layer empty.
struct DegreeSample {
    std::vector<double> values;  // positive, finite, non-empty
    double scale = 1e7;
    Direction direction = Direction::in;
    std::string layer;
    net::Level level = net::Level::entity;
};

struct FitResult {
    CandidateKind kind = CandidateKind::power_law;
    std::map<std::string, double> params;  // alpha / lambda / mu / sigma as applicable
    double x_min = 0.0;
    std::size_t n_tail = 0;
    double log_likelihood = 0.0;
    double ks_distance = 0.0;
    bool thin_tail = false;  // fewer than 50 tail points

    double param(const std::string& name) const;  // throws on missing key
};

struct LrOutcome {
    double r_statistic = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
};

// Per-node sum of incident edge weights in the given direction, in units of
// scale; zero-strength nodes drop out. Undirected layers ignore direction.
// With weighted = false, plain degree counts are produced instead.
DegreeSample weighted_degree_sample(const net::MultiLayerNetwork& network, net::LayerName name,
                                    Direction direction, double scale = 1e7,
                                    bool weighted = true);

// Conditional log-density and CDF of a fitted candidate on [x_min, inf).
double log_density(const FitResult& fit, double x);
double model_cdf(const FitResult& fit, double x);

// Continuous-domain maximum likelihood on the values at or above x_min.
// Power law and exponential use their closed forms; the two-parameter
// candidates run a Nelder-Mead maximization of the log-likelihood.
FitResult fit_mle(CandidateKind kind, const DegreeSample& sample, double x_min);

// Clauset-style cut-off search: scan the distinct sample values keeping at
// least 10 tail points, fit at each, keep the KS-minimizing cut (ties to the
// smaller x_min).
FitResult estimate_xmin(CandidateKind kind, const DegreeSample& sample);

// Max deviation between the tail empirical CDF and the fitted CDF, checking
// both step sides at every sample point.
double ks_distance(const FitResult& fit, const DegreeSample& sample);

struct BinnedPoint {
    double center = 0.0;   // geometric mean of the bin edges
    double density = 0.0;  // count / (n * bin width)
    std::size_t count = 0;
};

// Geometric binning of the sample between its extremes; empty bins omitted.
std::vector<BinnedPoint> log_binned_pdf(const DegreeSample& sample, int bins_per_decade);

// Normalized log-likelihood-ratio test between two candidates on the common
// tail (x_min = the larger of the two cut-offs, parameters kept, densities
// renormalized). Positive r favors fit1.
LrOutcome likelihood_ratio(const FitResult& fit1, const FitResult& fit2,
                           const DegreeSample& sample);

struct PairOutcome {
    CandidateKind first;
    CandidateKind second;
    LrOutcome lr;
};

struct SelectionResult {
    std::map<CandidateKind, double> scores;
    CandidateKind winner = CandidateKind::power_law;
    bool tie = false;  // winner chosen by enum order among equal scores
    std::vector<PairOutcome> pairs;  // all ordered pairs
};

// Score g(k) = sum over rivals of the significant (p <= 0.05) ratio terms;
// highest score wins.
SelectionResult selection_score(const std::vector<FitResult>& fits, const DegreeSample& sample);

// One draw from the fitted distribution above x_min. Inverse transform
// except for the truncated power law, which rejects from a power-law (or,
// for alpha <= 1, exponential) proposal.
double draw_one(const FitResult& fit, Rng& rng);
std::vector<double> sample_from(const FitResult& fit, std::size_t n, std::uint64_t seed);

struct BootstrapOptions {
    std::size_t b_iterations = 200;  // >= 100
    bool tail_only = true;
    double significance = 0.10;
    std::uint64_t seed = 1;
    int threads = 1;
};

struct BootstrapReport {
    FitResult empirical_fit;
    double empirical_ks = 0.0;
    std::vector<double> bootstrap_ks;  // successful iterations only
    std::vector<std::map<std::string, double>> bootstrap_params;
    std::vector<double> bootstrap_xmin;  // filled in tail-only mode
    double p_value = 1.0;
    bool reject_h0 = false;
    std::size_t b_requested = 0;
    std::size_t b_effective = 0;
    std::uint64_t seed = 0;
    double significance = 0.10;
    bool thin_tail = false;
};

// Semi-parametric bootstrap goodness-of-fit: each synthetic point is a model
// draw above x_min with probability n_tail/n, otherwise an empirical
// resample from below; the p-value is the share of bootstrap KS distances at
// or above the empirical one. Iterations derive independent streams from
// (seed, b), so thread count never changes the result.
BootstrapReport bootstrap_gof(CandidateKind kind, const DegreeSample& sample,
                              const BootstrapOptions& options);

// Zeta-normalized discrete power law over integer-valued data, kept for
// parity with discrete-domain conventions. Values must be whole numbers.
FitResult fit_discrete_power_law(const DegreeSample& sample, double x_min);

}  // namespace netstrata::ht
