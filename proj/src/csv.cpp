#include "visclab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace visclab::io {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
    return out;
}

// strtod-based: std::stod rejects subnormals with out_of_range.
double parse_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) throw std::runtime_error("not a number: " + s);
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_snapshot(const std::filesystem::path& file, const Grid& grid, const GridFunction& u) {
    auto out = open_out(file);
    out << "x,u\n";
    for (std::size_t i = 0; i < u.size(); ++i)
        out << format_double(grid.centers[i]) << ',' << format_double(u[i]) << '\n';
}

GridFunction read_snapshot(const std::filesystem::path& file, std::vector<double>* xs) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open snapshot: " + file.string());
    std::string line;
    std::getline(in, line);  // header
    GridFunction u;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() != 2) throw std::runtime_error("bad snapshot row: " + line);
        if (xs) xs->push_back(parse_double(cells[0]));
        u.push_back(parse_double(cells[1]));
    }
    return u;
}

void write_trajectory(const std::filesystem::path& dir, const std::string& stem,
                      const Trajectory& traj, const std::string& provenance) {
    std::filesystem::create_directories(dir);
    auto manifest = open_out(dir / (stem + "_manifest.csv"));
    manifest << (provenance.empty() ? "step,time,file" : "step,time,file,provenance") << '\n';
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        char name[64];
        std::snprintf(name, sizeof(name), "%s_%05zu.csv", stem.c_str(), s);
        write_snapshot(dir / name, traj.grid, traj.states[s]);
        manifest << s << ',' << format_double(traj.times[s]) << ',' << name;
        if (!provenance.empty()) manifest << ',' << provenance;
        manifest << '\n';
    }
}

Trajectory read_trajectory(const std::filesystem::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot open manifest: " + manifest.string());
    const auto dir = manifest.parent_path();
    Trajectory traj;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() < 3) throw std::runtime_error("bad manifest row: " + line);
        traj.times.push_back(parse_double(cells[1]));
        std::vector<double> xs;
        traj.states.push_back(read_snapshot(dir / cells[2], &xs));
        if (traj.grid.n_cells == 0 && xs.size() >= 2) {
            traj.grid.n_cells = xs.size();
            traj.grid.h = xs[1] - xs[0];
            traj.grid.centers = xs;
        }
    }
    if (traj.states.empty()) throw std::runtime_error("empty trajectory: " + manifest.string());
    return traj;
}

void write_verdicts(const std::filesystem::path& file, const std::vector<EstimateVerdict>& vs) {
    auto out = open_out(file);
    out << "check,bound,measured,slack,pass\n";
    for (const auto& v : vs)
        out << v.name << ',' << format_double(v.bound_value) << ','
            << format_double(v.measured_value) << ',' << format_double(v.slack) << ','
            << (v.pass ? 1 : 0) << '\n';
}

void write_diagnostics(const std::filesystem::path& file, const DiagnosticsSeries& diag) {
    auto out = open_out(file);
    out << "time,linf,l2,tv,grad_l2_acc_b,grad_l2_acc,ut_l1_acc\n";
    for (std::size_t i = 0; i < diag.times.size(); ++i)
        out << format_double(diag.times[i]) << ',' << format_double(diag.linf[i]) << ','
            << format_double(diag.l2[i]) << ',' << format_double(diag.tv[i]) << ','
            << format_double(diag.grad_l2_acc_b[i]) << ',' << format_double(diag.grad_l2_acc[i])
            << ',' << format_double(diag.ut_l1_acc[i]) << '\n';
}

void write_entropy_report(const std::filesystem::path& file,
                          const std::vector<EntropyProbe>& probes,
                          const std::vector<double>& residuals) {
    auto out = open_out(file);
    out << "k,phi_id,residual\n";
    for (std::size_t i = 0; i < probes.size(); ++i)
        out << format_double(probes[i].k) << ',' << probes[i].phi_id << ','
            << format_double(residuals[i]) << '\n';
}

void write_trace(const std::filesystem::path& file, const BoundaryTrace& trace) {
    auto out = open_out(file);
    out << "time,left,right\n";
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        out << format_double(trace.times[i]) << ',' << format_double(trace.left[i]) << ','
            << format_double(trace.right[i]) << '\n';
}

void write_coefficient_history(const std::filesystem::path& file, const GalerkinTrajectory& gt) {
    auto out = open_out(file);
    out << "time";
    for (std::size_t k = 1; k <= gt.m; ++k) out << ",c" << k;
    out << '\n';
    for (std::size_t s = 0; s < gt.times.size(); ++s) {
        out << format_double(gt.times[s]);
        for (std::size_t k = 0; k < gt.m; ++k) out << ',' << format_double(gt.coeffs[s][k]);
        out << '\n';
    }
}

void write_loglog_svg(const std::filesystem::path& file, const std::vector<double>& xs,
                      const std::vector<double>& ys, double slope, double intercept,
                      const std::string& xlabel, const std::string& ylabel) {
    const int W = 560, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    double lx0 = 0, lx1 = 0, ly0 = 0, ly1 = 0;
    bool first = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
        const double lx = std::log10(xs[i]), ly = std::log10(ys[i]);
        if (first) {
            lx0 = lx1 = lx;
            ly0 = ly1 = ly;
            first = false;
        }
        lx0 = std::min(lx0, lx);
        lx1 = std::max(lx1, lx);
        ly0 = std::min(ly0, ly);
        ly1 = std::max(ly1, ly);
    }
    if (first) {
        lx0 = ly0 = -1;
        lx1 = ly1 = 1;
    }
    const double padx = 0.1 * std::max(lx1 - lx0, 0.5), pady = 0.1 * std::max(ly1 - ly0, 0.5);
    lx0 -= padx;
    lx1 += padx;
    ly0 -= pady;
    ly1 += pady;
    auto X = [&](double lx) { return ml + (lx - lx0) / (lx1 - lx0) * (W - ml - mr); };
    auto Y = [&](double ly) { return H - mb - (ly - ly0) / (ly1 - ly0) * (H - mt - mb); };

    auto out = open_out(file);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr
        << "\" height=\"" << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
    // fitted line log10(y) = slope*log10(x) + intercept/ln(10) adjustments are
    // done by the caller: here intercept is already in natural-log form.
    const double la = slope, lb = intercept / std::log(10.0);
    out << "<line x1=\"" << X(lx0 + padx) << "\" y1=\"" << Y(la * (lx0 + padx) + lb)
        << "\" x2=\"" << X(lx1 - padx) << "\" y2=\"" << Y(la * (lx1 - padx) + lb)
        << "\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) continue;
        out << "<circle cx=\"" << X(std::log10(xs[i])) << "\" cy=\"" << Y(std::log10(ys[i]))
            << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
    }
    out << "<text x=\"" << (W / 2) << "\" y=\"" << (H - 12)
        << "\" text-anchor=\"middle\" font-size=\"14\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << (H / 2)
        << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 16 " << (H / 2)
        << ")\">" << ylabel << "</text>\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "slope %.3f", slope);
    out << "<text x=\"" << (ml + 10) << "\" y=\"" << (mt + 18) << "\" font-size=\"13\">" << buf
        << "</text>\n";
    out << "</svg>\n";
}

}  // namespace visclab::io
