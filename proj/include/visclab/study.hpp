#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "visclab/config.hpp"
#include "visclab/estimates.hpp"
#include "visclab/problem.hpp"

namespace visclab {

struct StudyConfig {
    ProblemSpec problem;
    std::vector<double> eps_list;  // strictly decreasing
    std::size_t n_cells = 512;
    std::string solver = "fd";  // fd | galerkin
    std::size_t galerkin_m = 32;
    int n_k = 9;
    int n_phi = 12;
    std::filesystem::path output_dir;
    std::uint64_t seed = 0;
    int workers = 1;
    double cfl = 0.4;

    void validate() const;
};

StudyConfig study_from_config(const Config& cfg);

struct StudyRow {
    double eps = 0.0;
    double l1_error = 0.0;
    double tv_final = 0.0;
    double linf_max = 0.0;
    double min_entropy_residual = 0.0;
    double eps_grad_l2 = 0.0;
    double wall_time = 0.0;
    bool ok = false;
    std::string note;
    std::vector<EstimateVerdict> verdicts;
};

struct StudyTable {
    std::vector<StudyRow> rows;
    std::optional<double> rate;       // fitted slope of log error vs log eps
    std::optional<double> intercept;  // natural-log intercept
};

// Least squares on (log eps, log error); values must be positive.
std::pair<double, double> rate_fit(const std::vector<std::pair<double, double>>& points);

StudyTable run_study(const StudyConfig& config);

// Writes study.csv (deterministic columns; wall times go to stdout),
// per-row verdict CSVs, and the log-log SVG when a rate was fitted.
void write_study_outputs(const StudyConfig& config, const StudyTable& table);

}  // namespace visclab
