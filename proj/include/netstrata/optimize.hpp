#pragma once

#include <functional>
#include <vector>

namespace netstrata::optimize {

struct MaxResult {
    std::vector<double> x;
    double f = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Golden-section search for a maximum of a unimodal function on [lo, hi].
MaxResult golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double x_tol = 1e-10);

// Nelder-Mead maximization with restarts, converged when the relative spread
// of simplex values drops below rel_tol. The objective may return -inf to
// reject out-of-bounds points.
MaxResult nelder_mead_max(const std::function<double(const std::vector<double>&)>& f,
                          std::vector<double> start, std::vector<double> step,
                          double rel_tol = 1e-10, int max_iter = 20000);

}  // namespace netstrata::optimize
