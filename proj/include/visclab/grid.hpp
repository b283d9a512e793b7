#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "visclab/problem.hpp"

namespace visclab {

// Cell-centered field values; Dirichlet ghosts are zero by convention.
using GridFunction = std::vector<double>;

struct Grid {
    std::size_t n_cells = 0;
    double h = 0.0;
    std::vector<double> centers;

    static Grid uniform(const Interval& domain, std::size_t n_cells) {
        if (n_cells < 8) throw std::invalid_argument("Grid: n_cells must be >= 8");
        Grid g;
        g.n_cells = n_cells;
        g.h = domain.length() / static_cast<double>(n_cells);
        g.centers.resize(n_cells);
        for (std::size_t i = 0; i < n_cells; ++i)
            g.centers[i] = domain.lo + (static_cast<double>(i) + 0.5) * g.h;
        return g;
    }
};

GridFunction sample_initial(const ProblemSpec& spec, const Grid& grid);

// Per-step scalar series and running accumulators, filled by the solvers.
struct DiagnosticsSeries {
    std::vector<double> times;
    std::vector<double> linf;
    std::vector<double> l2;
    std::vector<double> tv;
    // Running sum of dt * sum_faces B_f |du/dx|^2 h (B-weighted) and the
    // unweighted variant, evaluated on the post-step state.
    std::vector<double> grad_l2_acc_b;
    std::vector<double> grad_l2_acc;
    // Running sum of dt * sum_i h |u^{n+1}_i - u^n_i| / dt.
    std::vector<double> ut_l1_acc;

    std::size_t steps() const { return times.empty() ? 0 : times.size() - 1; }
};

struct Trajectory {
    Grid grid;
    double eps = 0.0;
    std::string scheme;
    std::vector<double> times;
    std::vector<GridFunction> states;
    std::size_t clip_count = 0;  // states clipped to I before flux evaluation

    const GridFunction& final_state() const { return states.back(); }
};

}  // namespace visclab
