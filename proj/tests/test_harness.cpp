#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "visclab/cli.hpp"
#include "visclab/csv.hpp"
#include "visclab/study.hpp"

using namespace visclab;
namespace fs = std::filesystem;

namespace {

const char* kConfigText = R"(
# study configuration
[problem]
flux = burgers
diffusion = constant(1.0)
initial = compact_bump(0.4, 0.2, 0.8)
domain = (0, 1)
horizon = 0.25
class = A

[study]
eps_list = 2e-2, 1e-2
n_cells = 128
solver = fd
seed = 7

[probes]
n_k = 3
n_phi = 4
)";

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("config parsing") {
    const Config cfg = Config::parse_string(kConfigText);
    const ProblemSpec spec = problem_from_config(cfg);
    CHECK(spec.flux.kind == FluxKind::Burgers);
    CHECK(spec.initial.height == doctest::Approx(0.8));
    CHECK(spec.domain.hi == 1.0);
    CHECK(spec.horizon == doctest::Approx(0.25));

    const StudyConfig sc = study_from_config(cfg);
    CHECK(sc.eps_list.size() == 2);
    CHECK(sc.n_cells == 128);
    CHECK(sc.seed == 7);

    CHECK_THROWS_AS(Config::parse_file("definitely_missing.toml"), ConfigError);
    CHECK_THROWS_AS(problem_from_config(Config::parse_string("[problem]\nflux = warp_drive\n")),
                    ConfigError);
    CHECK_THROWS_AS(problem_from_config(Config::parse_string("[problem]\nflux = burgers\n")),
                    ConfigError);
}

TEST_CASE("rate fit") {
    SUBCASE("two-point line") {
        const auto [slope, intercept] = rate_fit({{1e-2, 1e-1}, {1e-4, 1e-2}});
        CHECK(slope == doctest::Approx(0.5).epsilon(1e-12));
        (void)intercept;
    }
    SUBCASE("constant errors give slope zero") {
        const auto [slope, _] = rate_fit({{1e-1, 0.5}, {1e-2, 0.5}, {1e-3, 0.5}});
        CHECK(slope == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    }
    SUBCASE("jittered sqrt data") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> jit(-0.05, 0.05);
        std::vector<std::pair<double, double>> pts;
        for (double eps : {1e-1, 3e-2, 1e-2, 3e-3, 1e-3})
            pts.emplace_back(eps, std::sqrt(eps) * (1.0 + jit(rng)));
        const auto [slope, _] = rate_fit(pts);
        CHECK(slope == doctest::Approx(0.5).epsilon(0.1));
    }
    SUBCASE("nonpositive values are rejected") {
        CHECK_THROWS_AS(rate_fit({{1e-2, 0.0}, {1e-3, 1.0}}), std::invalid_argument);
    }
}

TEST_CASE("single-entry study produces one row and no rate") {
    const Config cfg = Config::parse_string(kConfigText);
    StudyConfig sc = study_from_config(cfg);
    sc.eps_list = {1e-2};
    sc.output_dir = temp_dir("visclab_study_single");
    const StudyTable table = run_study(sc);
    CHECK(table.rows.size() == 1);
    CHECK(table.rows[0].ok);
    CHECK(!table.rate.has_value());
    fs::remove_all(sc.output_dir);
}

TEST_CASE("study outputs are byte-identical across runs and row subsets") {
    const Config cfg = Config::parse_string(kConfigText);
    StudyConfig a = study_from_config(cfg);
    a.output_dir = temp_dir("visclab_study_a");
    StudyConfig b = a;
    b.output_dir = temp_dir("visclab_study_b");
    b.workers = 2;  // worker count must not change a single byte

    const StudyTable ta = run_study(a);
    const StudyTable tb = run_study(b);
    write_study_outputs(a, ta);
    write_study_outputs(b, tb);
    CHECK(slurp(a.output_dir / "study.csv") == slurp(b.output_dir / "study.csv"));

    // dropping the leading row leaves the shared row's values unchanged
    StudyConfig c = a;
    c.eps_list = {1e-2};
    const StudyTable tc = run_study(c);
    CHECK(tc.rows[0].l1_error == ta.rows[1].l1_error);
    CHECK(tc.rows[0].min_entropy_residual == ta.rows[1].min_entropy_residual);
    CHECK(tc.rows[0].eps_grad_l2 == ta.rows[1].eps_grad_l2);

    fs::remove_all(a.output_dir);
    fs::remove_all(b.output_dir);
}

TEST_CASE("class B and C studies run the regularized pipelines") {
    const char* text = R"(
[problem]
flux = burgers
diffusion = constant(1.0)
initial = mollified_riemann(1.0, 0.0, 0.5, 0.04)
domain = (0, 1)
horizon = 0.2
class = B

[study]
eps_list = 2e-2, 1e-2
n_cells = 128
)";
    StudyConfig sc = study_from_config(Config::parse_string(text));
    const StudyTable tb = run_study(sc);
    for (const auto& row : tb.rows) {
        CHECK(row.ok);
        bool has_ut = false;
        for (const auto& v : row.verdicts) {
            CHECK(v.pass);
            has_ut = has_ut || v.name == "ut_l1";
        }
        CHECK(has_ut);  // class B rows carry the u_t bound verdict
    }

    const char* text_c = R"(
[problem]
flux = burgers
diffusion = constant(1.0)
initial = sine_pocket(0.8)
domain = (0, 1)
horizon = 0.2
class = C

[study]
eps_list = 2e-2, 1e-2
n_cells = 128
)";
    StudyConfig sc_c = study_from_config(Config::parse_string(text_c));
    const StudyTable tc = run_study(sc_c);
    for (const auto& row : tc.rows) {
        CHECK(row.ok);
        for (const auto& v : row.verdicts) CHECK(v.pass);
    }

    // spectral rows are limited to the unregularized class A setup
    StudyConfig bad = sc;
    bad.solver = "galerkin";
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("galerkin study rows") {
    const Config cfg = Config::parse_string(kConfigText);
    StudyConfig sc = study_from_config(cfg);
    sc.solver = "galerkin";
    sc.galerkin_m = 12;
    sc.eps_list = {2e-2};
    sc.n_cells = 64;
    const StudyTable table = run_study(sc);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].ok);
    for (const auto& v : table.rows[0].verdicts) CHECK(v.pass);
}

TEST_CASE("cli exit codes") {
    SUBCASE("missing config file") {
        CHECK(cli_main({"visclab", "study", "--config", "missing.toml"}) == 2);
    }
    SUBCASE("unknown flag") {
        CHECK(cli_main({"visclab", "solve", "--config", "x.toml", "--warp", "9"}) == 2);
    }
    SUBCASE("solve, verify-entropy, and the spike fixture") {
        const fs::path dir = temp_dir("visclab_cli");
        const fs::path cfg_path = dir / "problem.toml";
        {
            std::ofstream out(cfg_path);
            out << kConfigText;
        }
        const std::string cfg_s = cfg_path.string();
        const std::string out_s = (dir / "run").string();
        CHECK(cli_main({"visclab", "solve", "--config", cfg_s.c_str(), "--out", out_s.c_str(),
                        "--eps", "0.0", "--n-cells", "256"}) == 0);

        const std::string manifest = (dir / "run" / "solve_manifest.csv").string();
        CHECK(cli_main({"visclab", "verify-entropy", "--config", cfg_s.c_str(), "--traj",
                        manifest.c_str()}) == 0);

        // corrupt the tail of the trajectory with a standing spike
        Trajectory traj = io::read_trajectory(manifest);
        for (std::size_t k = traj.states.size() / 2; k < traj.states.size(); ++k) {
            char name[64];
            std::snprintf(name, sizeof(name), "solve_%05zu.csv", k);
            GridFunction u = traj.states[k];
            for (std::size_t i = u.size() / 2; i < u.size() / 2 + 6 && i < u.size(); ++i)
                u[i] += 2.0;
            io::write_snapshot(dir / "run" / name, traj.grid, u);
        }
        CHECK(cli_main({"visclab", "verify-entropy", "--config", cfg_s.c_str(), "--traj",
                        manifest.c_str()}) == 1);

        const std::string gal_out = (dir / "gal").string();
        CHECK(cli_main({"visclab", "solve", "--config", cfg_s.c_str(), "--out",
                        gal_out.c_str(), "--eps", "2e-2", "--solver", "galerkin", "--m",
                        "8"}) == 0);
        CHECK(fs::exists(dir / "gal" / "coefficients.csv"));

        const std::string god_out = (dir / "god").string();
        CHECK(cli_main({"visclab", "solve", "--config", cfg_s.c_str(), "--out",
                        god_out.c_str(), "--solver", "godunov", "--n-cells", "256"}) == 0);
        CHECK(fs::exists(dir / "god" / "reference_manifest.csv"));
        {
            std::ifstream mf(dir / "god" / "reference_manifest.csv");
            std::string header;
            std::getline(mf, header);
            CHECK(header == "step,time,file,provenance");
        }
        fs::remove_all(dir);
    }
}
