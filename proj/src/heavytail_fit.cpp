#include "netstrata/heavytail.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "netstrata/error.hpp"
#include "netstrata/optimize.hpp"
#include "netstrata/specfun.hpp"

namespace netstrata::ht {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kHalfLog2Pi = 0.9189385332046727;

// Sufficient statistics of one tail; everything the four likelihoods need.
struct TailStats {
    std::size_t n = 0;
    double x_min = 0.0;
    double sum_x = 0.0;
    double sum_logx = 0.0;
    double sum_logx2 = 0.0;
    double min_value = 0.0;
    double max_value = 0.0;
};

TailStats tail_stats(const double* begin, const double* end, double x_min) {
    TailStats s;
    s.x_min = x_min;
    s.n = static_cast<std::size_t>(end - begin);
    if (s.n > 0) {
        s.min_value = *begin;
        s.max_value = *(end - 1);
    }
    for (const double* p = begin; p != end; ++p) {
        double lx = std::log(*p);
        s.sum_x += *p;
        s.sum_logx += lx;
        s.sum_logx2 += lx * lx;
    }
    return s;
}

void check_sample(const DegreeSample& sample) {
    if (sample.values.empty()) fail("heavytail.sample", "sample is empty");
    for (double v : sample.values)
        if (!(v > 0.0) || !std::isfinite(v))
            fail("heavytail.sample", "sample values must be positive and finite");
}

double n_d(std::size_t n) { return static_cast<double>(n); }

// --- per-kind log-likelihoods over tail statistics ---

double ll_power_law(double alpha, const TailStats& s) {
    if (!(alpha > 1.0)) return kNegInf;
    return n_d(s.n) * (std::log(alpha - 1.0) + (alpha - 1.0) * std::log(s.x_min)) -
           alpha * s.sum_logx;
}

double ll_exponential(double lambda, const TailStats& s) {
    if (!(lambda > 0.0)) return kNegInf;
    return n_d(s.n) * std::log(lambda) - lambda * (s.sum_x - n_d(s.n) * s.x_min);
}

double ll_truncated(double alpha, double log_lambda, const TailStats& s) {
    if (alpha < -10.0 || alpha > 60.0 || log_lambda < -400.0 || log_lambda > 30.0)
        return kNegInf;
    double lambda = std::exp(log_lambda);
    double lg = specfun::log_upper_gamma(1.0 - alpha, lambda * s.x_min);
    double ll = n_d(s.n) * ((1.0 - alpha) * log_lambda - lg) - alpha * s.sum_logx -
                lambda * s.sum_x;
    return std::isfinite(ll) ? ll : kNegInf;
}

double ll_lognormal(double mu, double log_sigma, const TailStats& s) {
    if (log_sigma < -20.0 || log_sigma > 20.0 || std::fabs(mu) > 1e6) return kNegInf;
    double sigma = std::exp(log_sigma);
    double z0 = (std::log(s.x_min) - mu) / sigma;
    double sq = s.sum_logx2 - 2.0 * mu * s.sum_logx + n_d(s.n) * mu * mu;
    double ll = -s.sum_logx - n_d(s.n) * (log_sigma + kHalfLog2Pi) -
                sq / (2.0 * sigma * sigma) - n_d(s.n) * specfun::log_norm_tail(z0);
    return std::isfinite(ll) ? ll : kNegInf;
}

struct TailFit {
    std::map<std::string, double> params;
    double log_likelihood = kNegInf;
    bool ok = false;
    std::string trace;  // filled on failure
};

// Nelder-Mead over the given starts; NM runs either from every start
// (thorough) or only from the most promising one (scan mode).
TailFit maximize2(const std::function<double(double, double)>& ll,
                  const std::vector<std::array<double, 2>>& starts, bool thorough,
                  const char* n0, const char* n1) {
    auto objective = [&](const std::vector<double>& v) { return ll(v[0], v[1]); };
    std::vector<std::array<double, 2>> chosen;
    if (thorough) {
        chosen = starts;
    } else {
        double best = kNegInf;
        std::array<double, 2> pick = starts.front();
        for (const auto& st : starts) {
            double f = ll(st[0], st[1]);
            if (f > best) {
                best = f;
                pick = st;
            }
        }
        chosen.push_back(pick);
    }
    TailFit out;
    std::ostringstream trace;
    for (const auto& st : chosen) {
        if (!std::isfinite(ll(st[0], st[1]))) continue;
        auto r = optimize::nelder_mead_max(objective, {st[0], st[1]}, {0.5, 0.5}, 1e-10, 20000);
        trace << "start (" << st[0] << ", " << st[1] << "): f = " << r.f << " after "
              << r.evaluations << " evaluations" << (r.converged ? "" : " (not converged)")
              << "; ";
        if (r.converged && r.f > out.log_likelihood) {
            out.log_likelihood = r.f;
            out.params = {{n0, r.x[0]}, {n1, r.x[1]}};
            out.ok = true;
        }
    }
    out.trace = trace.str();
    return out;
}

TailFit fit_from_stats(CandidateKind kind, const TailStats& s,
                       const std::map<std::string, double>* hint, bool thorough) {
    TailFit out;
    if (s.n < 2) {
        out.trace = "fewer than two tail values";
        return out;
    }
    if (s.min_value == s.max_value) {
        out.trace = "degenerate sample: all tail values equal";
        return out;
    }
    double mean = s.sum_x / n_d(s.n);
    double lambda_exp = 1.0 / (mean - s.x_min);
    double alpha_pl = 1.0 + n_d(s.n) / (s.sum_logx - n_d(s.n) * std::log(s.x_min));
    switch (kind) {
        case CandidateKind::power_law: {
            double denom = s.sum_logx - n_d(s.n) * std::log(s.x_min);
            if (!(denom > 0.0)) {
                out.trace = "zero log-spread above x_min";
                return out;
            }
            double alpha = 1.0 + n_d(s.n) / denom;
            out.params = {{"alpha", alpha}};
            out.log_likelihood = ll_power_law(alpha, s);
            out.ok = true;
            return out;
        }
        case CandidateKind::exponential: {
            if (!(mean > s.x_min)) {
                out.trace = "mean does not exceed x_min";
                return out;
            }
            out.params = {{"lambda", lambda_exp}};
            out.log_likelihood = ll_exponential(lambda_exp, s);
            out.ok = true;
            return out;
        }
        case CandidateKind::truncated_power_law: {
            if (!std::isfinite(alpha_pl)) alpha_pl = 2.0;
            if (!(lambda_exp > 0.0) || !std::isfinite(lambda_exp)) lambda_exp = 1.0;
            std::vector<std::array<double, 2>> starts = {
                {alpha_pl, std::log(lambda_exp / 2.0)},
                {alpha_pl - 0.3, std::log(lambda_exp / 10.0)},
                {1.5, std::log(lambda_exp)},
            };
            if (hint && hint->count("alpha") && hint->count("lambda"))
                starts.insert(starts.begin(),
                              {hint->at("alpha"), std::log(hint->at("lambda"))});
            auto ll = [&](double a, double ll_) { return ll_truncated(a, ll_, s); };
            auto r = maximize2(ll, starts, thorough, "alpha", "log_lambda");
            if (r.ok) {
                r.params = {{"alpha", r.params.at("alpha")},
                            {"lambda", std::exp(r.params.at("log_lambda"))}};
            }
            return r;
        }
        case CandidateKind::lognormal: {
            double m = s.sum_logx / n_d(s.n);
            double var = std::max(s.sum_logx2 / n_d(s.n) - m * m, 1e-12);
            double sd = std::sqrt(var);
            std::vector<std::array<double, 2>> starts = {
                {m, std::log(sd)},
                {m - sd, std::log(1.5 * sd)},
                {std::log(s.x_min), std::log(2.0 * sd)},
            };
            if (hint && hint->count("mu") && hint->count("sigma"))
                starts.insert(starts.begin(), {hint->at("mu"), std::log(hint->at("sigma"))});
            auto ll = [&](double mu, double lsig) { return ll_lognormal(mu, lsig, s); };
            auto r = maximize2(ll, starts, thorough, "mu", "log_sigma");
            if (r.ok) {
                r.params = {{"mu", r.params.at("mu")},
                            {"sigma", std::exp(r.params.at("log_sigma"))}};
            }
            return r;
        }
    }
    out.trace = "unknown candidate kind";
    return out;
}

double ks_over_sorted_tail(const FitResult& fit, const double* begin, const double* end) {
    std::size_t m = static_cast<std::size_t>(end - begin);
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double f = model_cdf(fit, begin[i]);
        double hi = n_d(i + 1) / n_d(m);
        double lo = n_d(i) / n_d(m);
        worst = std::max({worst, std::fabs(f - hi), std::fabs(f - lo)});
    }
    return worst;
}

FitResult assemble(CandidateKind kind, const TailFit& tf, const TailStats& s,
                   const double* begin, const double* end) {
    FitResult fit;
    fit.kind = kind;
    fit.params = tf.params;
    fit.x_min = s.x_min;
    fit.n_tail = s.n;
    fit.log_likelihood = tf.log_likelihood;
    fit.thin_tail = s.n < 50;
    fit.ks_distance = ks_over_sorted_tail(fit, begin, end);
    return fit;
}

}  // namespace

const char* to_string(CandidateKind kind) {
    switch (kind) {
        case CandidateKind::power_law: return "power_law";
        case CandidateKind::truncated_power_law: return "truncated_power_law";
        case CandidateKind::lognormal: return "lognormal";
        case CandidateKind::exponential: return "exponential";
    }
    return "power_law";
}

std::optional<CandidateKind> parse_kind(const std::string& s) {
    for (auto k : all_kinds())
        if (s == to_string(k)) return k;
    return std::nullopt;
}

const std::vector<CandidateKind>& all_kinds() {
    static const std::vector<CandidateKind> v{
        CandidateKind::power_law, CandidateKind::truncated_power_law, CandidateKind::lognormal,
        CandidateKind::exponential};
    return v;
}

const char* to_string(Direction direction) { return direction == Direction::in ? "in" : "out"; }

std::optional<Direction> parse_direction(const std::string& s) {
    if (s == "in") return Direction::in;
    if (s == "out") return Direction::out;
    return std::nullopt;
}

double FitResult::param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end())
        fail("heavytail.param", std::string(to_string(kind)) + " has no parameter " + name);
    return it->second;
}

DegreeSample weighted_degree_sample(const net::MultiLayerNetwork& network, net::LayerName name,
                                    Direction direction, double scale, bool weighted) {
    if (!(scale > 0.0)) fail("heavytail.scale", "scale must be positive");
    const auto& layer = network.layer(name);
    std::vector<double> strength(network.nodes.size(), 0.0);
    for (const auto& [key, w] : layer.edges) {
        double inc = weighted ? w : 1.0;
        if (!layer.directed) {
            strength[key.first] += inc;
            strength[key.second] += inc;
        } else if (direction == Direction::out) {
            strength[key.first] += inc;
        } else {
            strength[key.second] += inc;
        }
    }
    DegreeSample sample;
    sample.scale = weighted ? scale : 1.0;
    sample.direction = direction;
    sample.layer = net::to_string(name);
    sample.level = network.level;
    for (double s : strength)
        if (s > 0.0) sample.values.push_back(s / sample.scale);
    if (sample.values.empty())
        fail("heavytail.sample_empty",
             std::string("no active nodes in layer ") + net::to_string(name));
    return sample;
}

double log_density(const FitResult& fit, double x) {
    double xm = fit.x_min;
    switch (fit.kind) {
        case CandidateKind::power_law: {
            double a = fit.param("alpha");
            return std::log(a - 1.0) - std::log(xm) - a * std::log(x / xm);
        }
        case CandidateKind::exponential: {
            double l = fit.param("lambda");
            return std::log(l) - l * (x - xm);
        }
        case CandidateKind::truncated_power_law: {
            double a = fit.param("alpha");
            double l = fit.param("lambda");
            return (1.0 - a) * std::log(l) - specfun::log_upper_gamma(1.0 - a, l * xm) -
                   a * std::log(x) - l * x;
        }
        case CandidateKind::lognormal: {
            double mu = fit.param("mu");
            double sigma = fit.param("sigma");
            double z = (std::log(x) - mu) / sigma;
            double z0 = (std::log(xm) - mu) / sigma;
            return -std::log(x) - std::log(sigma) - kHalfLog2Pi - 0.5 * z * z -
                   specfun::log_norm_tail(z0);
        }
    }
    fail("heavytail.kind", "unknown candidate kind");
}

double model_cdf(const FitResult& fit, double x) {
    double xm = fit.x_min;
    if (x <= xm) return 0.0;
    switch (fit.kind) {
        case CandidateKind::power_law:
            return 1.0 - std::pow(x / xm, 1.0 - fit.param("alpha"));
        case CandidateKind::exponential:
            return 1.0 - std::exp(-fit.param("lambda") * (x - xm));
        case CandidateKind::truncated_power_law: {
            double a = fit.param("alpha");
            double l = fit.param("lambda");
            double t = specfun::log_upper_gamma(1.0 - a, l * x) -
                       specfun::log_upper_gamma(1.0 - a, l * xm);
            return 1.0 - std::exp(t);
        }
        case CandidateKind::lognormal: {
            double mu = fit.param("mu");
            double sigma = fit.param("sigma");
            double z = (std::log(x) - mu) / sigma;
            double z0 = (std::log(xm) - mu) / sigma;
            return 1.0 - std::exp(specfun::log_norm_tail(z) - specfun::log_norm_tail(z0));
        }
    }
    fail("heavytail.kind", "unknown candidate kind");
}

FitResult fit_mle(CandidateKind kind, const DegreeSample& sample, double x_min) {
    check_sample(sample);
    if (!(x_min > 0.0) || !std::isfinite(x_min))
        fail("heavytail.xmin", "x_min must be positive and finite");
    std::vector<double> tail;
    for (double v : sample.values)
        if (v >= x_min) tail.push_back(v);
    if (tail.size() < 2) fail("heavytail.tail", "fewer than two values at or above x_min");
    std::sort(tail.begin(), tail.end());
    if (tail.front() == tail.back())
        fail("heavytail.degenerate", "degenerate sample: all tail values are equal");
    TailStats s = tail_stats(tail.data(), tail.data() + tail.size(), x_min);
    TailFit tf = fit_from_stats(kind, s, nullptr, /*thorough=*/true);
    if (!tf.ok)
        fail("heavytail.fit", std::string("maximization failed for ") + to_string(kind) + ": " +
                                  tf.trace);
    return assemble(kind, tf, s, tail.data(), tail.data() + tail.size());
}

FitResult estimate_xmin(CandidateKind kind, const DegreeSample& sample) {
    check_sample(sample);
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> distinct = sorted;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 10)
        fail("heavytail.xmin_scan", "x_min scan needs at least 10 distinct values");

    std::size_t n = sorted.size();
    // Suffix sums make every candidate's statistics O(1).
    std::vector<double> sx(n + 1, 0.0), slx(n + 1, 0.0), slx2(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double lx = std::log(sorted[i]);
        sx[i] = sx[i + 1] + sorted[i];
        slx[i] = slx[i + 1] + lx;
        slx2[i] = slx2[i + 1] + lx * lx;
    }

    bool have_best = false;
    FitResult best;
    std::map<std::string, double> warm;
    for (double v : distinct) {
        std::size_t i = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
        std::size_t n_tail = n - i;
        if (n_tail < 10) break;
        TailStats s;
        s.n = n_tail;
        s.x_min = v;
        s.sum_x = sx[i];
        s.sum_logx = slx[i];
        s.sum_logx2 = slx2[i];
        s.min_value = sorted[i];
        s.max_value = sorted[n - 1];
        if (s.min_value == s.max_value) continue;
        TailFit tf = fit_from_stats(kind, s, warm.empty() ? nullptr : &warm,
                                    /*thorough=*/false);
        if (!tf.ok) continue;
        warm = tf.params;
        FitResult fit = assemble(kind, tf, s, sorted.data() + i, sorted.data() + n);
        if (!have_best || fit.ks_distance < best.ks_distance) {
            best = fit;
            have_best = true;
        }
    }
    if (!have_best)
        fail("heavytail.xmin_scan",
             std::string("no x_min candidate admitted a ") + to_string(kind) + " fit");
    return best;
}

double ks_distance(const FitResult& fit, const DegreeSample& sample) {
    check_sample(sample);
    std::vector<double> tail;
    for (double v : sample.values)
        if (v >= fit.x_min) tail.push_back(v);
    if (tail.empty()) fail("heavytail.tail", "no values at or above the fit's x_min");
    std::sort(tail.begin(), tail.end());
    return ks_over_sorted_tail(fit, tail.data(), tail.data() + tail.size());
}

std::vector<BinnedPoint> log_binned_pdf(const DegreeSample& sample, int bins_per_decade) {
    check_sample(sample);
    if (bins_per_decade < 1) fail("heavytail.bins", "bins_per_decade must be positive");
    double lo = *std::min_element(sample.values.begin(), sample.values.end());
    double hi = *std::max_element(sample.values.begin(), sample.values.end());
    double log_ratio = std::log(10.0) / bins_per_decade;
    std::size_t k = 1;
    if (hi > lo)
        k = static_cast<std::size_t>(std::floor(std::log(hi / lo) / log_ratio)) + 1;
    std::vector<std::size_t> counts(k, 0);
    for (double v : sample.values) {
        auto b = static_cast<std::size_t>(
            std::max(0.0, std::floor(std::log(v / lo) / log_ratio)));
        ++counts[std::min(b, k - 1)];
    }
    std::vector<BinnedPoint> out;
    double n = n_d(sample.values.size());
    for (std::size_t b = 0; b < k; ++b) {
        if (counts[b] == 0) continue;
        double left = lo * std::exp(log_ratio * n_d(b));
        double right = lo * std::exp(log_ratio * n_d(b + 1));
        BinnedPoint p;
        p.center = std::sqrt(left * right);
        p.density = n_d(counts[b]) / (n * (right - left));
        p.count = counts[b];
        out.push_back(p);
    }
    return out;
}

FitResult fit_discrete_power_law(const DegreeSample& sample, double x_min) {
    check_sample(sample);
    if (!(x_min >= 1.0)) fail("heavytail.xmin", "discrete fit needs x_min >= 1");
    std::vector<double> tail;
    for (double v : sample.values) {
        if (v < x_min) continue;
        if (v != std::floor(v))
            fail("heavytail.discrete", "discrete fit needs whole-number values");
        tail.push_back(v);
    }
    if (tail.size() < 2) fail("heavytail.tail", "fewer than two values at or above x_min");
    std::sort(tail.begin(), tail.end());
    if (tail.front() == tail.back())
        fail("heavytail.degenerate", "degenerate sample: all tail values are equal");
    double sum_logx = 0.0;
    for (double v : tail) sum_logx += std::log(v);
    double n = n_d(tail.size());
    auto ll = [&](double alpha) {
        return -n * std::log(specfun::hurwitz_zeta(alpha, x_min)) - alpha * sum_logx;
    };
    auto r = optimize::golden_section_max(ll, 1.0 + 1e-8, 24.0, 1e-12);
    FitResult fit;
    fit.kind = CandidateKind::power_law;
    fit.params = {{"alpha", r.x[0]}};
    fit.x_min = x_min;
    fit.n_tail = tail.size();
    fit.log_likelihood = r.f;
    fit.thin_tail = tail.size() < 50;
    // KS against the zeta-normalized discrete CDF.
    double zeta0 = specfun::hurwitz_zeta(r.x[0], x_min);
    double worst = 0.0;
    std::size_t m = tail.size();
    for (std::size_t i = 0; i < m; ++i) {
        double f = 1.0 - specfun::hurwitz_zeta(r.x[0], tail[i] + 1.0) / zeta0;
        worst = std::max({worst, std::fabs(f - n_d(i + 1) / n_d(m)),
                          std::fabs(f - n_d(i) / n_d(m))});
    }
    fit.ks_distance = worst;
    return fit;
}

}  // namespace netstrata::ht
