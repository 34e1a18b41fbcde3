#include "netstrata/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace netstrata::optimize {

MaxResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double x_tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    int evals = 2;
    while (b - a > x_tol * (std::fabs(a) + std::fabs(b) + 1.0)) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
        if (++evals > 500) break;
    }
    double xm = 0.5 * (a + b);
    return {{xm}, f(xm), evals + 1, true};
}

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

Vertex run_simplex(const std::function<double(const std::vector<double>&)>& f,
                   const std::vector<double>& start, const std::vector<double>& step,
                   double rel_tol, int max_iter, int& evals, bool& converged) {
    const std::size_t n = start.size();
    std::vector<Vertex> simplex(n + 1);
    simplex[0] = {start, f(start)};
    for (std::size_t i = 0; i < n; ++i) {
        auto x = start;
        x[i] += step[i];
        simplex[i + 1] = {x, f(x)};
    }
    evals += static_cast<int>(n) + 1;

    auto by_f = [](const Vertex& a, const Vertex& b) { return a.f > b.f; };
    converged = false;
    for (int it = 0; it < max_iter; ++it) {
        std::sort(simplex.begin(), simplex.end(), by_f);
        double best = simplex.front().f, worst = simplex.back().f;
        if (std::isfinite(best) && std::isfinite(worst) &&
            best - worst <= rel_tol * (std::fabs(best) + 1e-12)) {
            converged = true;
            break;
        }
        // Centroid of all but the worst vertex.
        std::vector<double> c(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t d = 0; d < n; ++d) c[d] += simplex[i].x[d] / double(n);

        auto at = [&](double coef) {
            std::vector<double> x(n);
            for (std::size_t d = 0; d < n; ++d)
                x[d] = c[d] + coef * (simplex.back().x[d] - c[d]);
            return x;
        };

        auto xr = at(-1.0);
        double fr = f(xr);
        ++evals;
        if (fr > simplex[0].f) {
            auto xe = at(-2.0);
            double fe = f(xe);
            ++evals;
            simplex.back() = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
        } else if (fr > simplex[n - 1].f) {
            simplex.back() = {xr, fr};
        } else {
            auto xc = at(0.5);
            double fc = f(xc);
            ++evals;
            if (fc > simplex.back().f) {
                simplex.back() = {xc, fc};
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t d = 0; d < n; ++d)
                        simplex[i].x[d] = simplex[0].x[d] + 0.5 * (simplex[i].x[d] - simplex[0].x[d]);
                    simplex[i].f = f(simplex[i].x);
                }
                evals += static_cast<int>(n);
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(), by_f);
    return simplex.front();
}

}  // namespace

MaxResult nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start, std::vector<double> step,
                          double rel_tol, int max_iter) {
    MaxResult out;
    out.evaluations = 0;
    bool conv = false;
    Vertex v = run_simplex(f, start, step, rel_tol, max_iter, out.evaluations, conv);
    // Restart once from the optimum with shrunken steps; guards against
    // premature simplex collapse.
    std::vector<double> step2(step.size());
    for (std::size_t i = 0; i < step.size(); ++i) step2[i] = 0.1 * step[i];
    bool conv2 = false;
    Vertex v2 = run_simplex(f, v.x, step2, rel_tol, max_iter, out.evaluations, conv2);
    if (v2.f >= v.f) v = v2;
    out.x = v.x;
    out.f = v.f;
    out.converged = conv && conv2;
    return out;
}

}  // namespace netstrata::optimize
