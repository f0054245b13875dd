#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli_app.hpp"
#include "dunkl/csv_io.hpp"
#include "dunkl/errors.hpp"
#include "dunkl/profiles.hpp"

using namespace dunkl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("dunkl_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
    std::ostringstream out, err;
    args.insert(args.begin(), "dunkl_cli");
    const int rc = cli::run(args, out, err);
    if (out_text) *out_text = out.str() + err.str();
    return rc;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(is), {});
}

std::vector<fs::path> csv_files(const fs::path& dir) {
    std::vector<fs::path> v;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv") v.push_back(e.path());
    std::sort(v.begin(), v.end());
    return v;
}

// value of column `col` in the first data row of a schema=1 CSV
std::string first_row_field(const fs::path& p, const std::string& col) {
    std::ifstream is(p);
    std::string line, header;
    std::getline(is, line);
    std::getline(is, header);
    std::getline(is, line);
    auto split = [](const std::string& s) {
        std::vector<std::string> v;
        std::stringstream ss(s);
        for (std::string x; std::getline(ss, x, ',');) v.push_back(x);
        return v;
    };
    const auto h = split(header), r = split(line);
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] == col) return r.at(i);
    return {};
}

}  // namespace

TEST_SUITE("io_cli") {

TEST_CASE("profile CSV round trip is exact") {
    const auto dim = EffectiveDimension::from_N(3.5);
    const auto tr = RadialTransform::make_default(dim);
    for (const auto& np : schwartz_suite(7, 4)) {
        const auto f = sample(tr.physical(), np.f);
        std::stringstream ss;
        write_profile(ss, f);
        CHECK(ss.str().rfind("# schema=1\n", 0) == 0);
        const auto g = read_profile(ss, tr.physical());
        REQUIRE(g.size() == f.size());
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(g.values[i] == f.values[i]);
    }
    const auto F = tr.forward(sample(tr.physical(), [](double r) { return cplx(std::exp(-0.5 * r * r)); }));
    std::stringstream ss;
    write_profile(ss, F);
    const auto raw = read_profile_raw(ss);
    CHECK(raw.N == 3.5);
    CHECK(raw.space == Space::Frequency);
    CHECK(raw.r == F.grid->nodes);
    // nodes are checked against the caller's grid
    std::stringstream again;
    write_profile(again, F);
    CHECK_THROWS_AS(read_profile(again, make_grid(dim, 10.0, 8)), DomainError);
    std::stringstream junk("r,value_re,value_im\n1,2,3\n");
    CHECK_THROWS_AS(read_profile_raw(junk), DomainError);
}

TEST_CASE("kernel command") {
    TempDir d("kernel");
    std::string msg;
    CHECK(run_cli({"kernel", "--phase", "wave", "--N", "3", "--j", "0", "--t", "10", "--s-grid", "auto", "--out",
               d.path.string()},
              &msg) == 0);
    const auto files = csv_files(d.path);
    REQUIRE(files.size() == 1);
    std::ifstream is(files[0]);
    std::string line;
    std::getline(is, line);
    CHECK(line == "# schema=1");
    std::getline(is, line);
    CHECK(line == "phase,N,t,j,s,re,im,abs,err_est");
    int rows = 0;
    double worst = 0.0;
    while (std::getline(is, line)) {
        ++rows;
        worst = std::max(worst, std::stod(line.substr(line.rfind(',') + 1)));
    }
    CHECK(rows >= 400);
    CHECK(worst <= 1e-10);

    TempDir lo("kernel_low");
    CHECK(run_cli({"kernel", "--phase", "kg", "--N", "3", "--low", "--t", "100", "--out", lo.path.string()}) == 0);
    const auto lf = csv_files(lo.path);
    REQUIRE(lf.size() == 1);
    CHECK(lf[0].filename().string().find("S0") != std::string::npos);
    CHECK(first_row_field(lf[0], "j") == "S0");
}

TEST_CASE("exit codes") {
    TempDir d("codes");
    const auto out = d.path.string();
    CHECK(run_cli({"kernel", "--phase", "wave", "--N", "0.5", "--t", "10", "--out", out}) == cli::kUsage);
    CHECK(run_cli({"kernel", "--phase", "nonsense", "--N", "3", "--t", "10", "--out", out}) == cli::kUsage);
    CHECK(run_cli({"kernel", "--phase", "wave", "--N", "3", "--t", "10", "--frobnicate", "--out", out}) == cli::kUsage);
    CHECK(run_cli({"decay", "--phase", "wave", "--N", "3", "--regime", "sideways", "--out", out}) == cli::kUsage);
    {
        const auto cfg = d.path / "bad.ini";
        std::ofstream(cfg) << "bogus=1\n";
        CHECK(run_cli({"--config", cfg.string(), "kernel", "--phase", "wave", "--N", "3", "--t", "10", "--out", out}) ==
              cli::kUsage);
    }
    {
        const auto cfg = d.path / "good.ini";
        std::ofstream(cfg) << "[kernel]\nphase=wave\nN=3\nt=10\ns-grid=0:5:11\n";
        CHECK(run_cli({"--config", cfg.string(), "kernel", "--out", out}) == cli::kPass);
    }
    CHECK(run_cli({"kernel", "--phase", "schrodinger", "--N", "3", "--j", "6", "--t", "1e8", "--s-grid", "0:10:3",
               "--out", out}) == cli::kAccuracy);
}

TEST_CASE("decay reports carry the predicted exponent") {
    struct Case {
        std::string phase, regime, pred;
    };
    for (const auto& c : {Case{"schrodinger", "high", "1.5"}, Case{"beam", "low", "0.75"}, Case{"wave", "high", "1"}}) {
        TempDir d("decay_" + c.phase);
        const int rc = run_cli({"decay", "--phase", c.phase, "--N", "3", "--regime", c.regime, "--out", d.path.string()});
        INFO(c.phase);
        CHECK(rc == 0);
        fs::path report;
        for (const auto& f : csv_files(d.path))
            if (f.filename().string().find("_samples") == std::string::npos) report = f;
        REQUIRE_FALSE(report.empty());
        CHECK(std::stod(first_row_field(report, "theta_pred")) == std::stod(c.pred));
        CHECK(first_row_field(report, "pass") == "true");
        CHECK(csv_files(d.path).size() == 2);  // report + samples
    }
}

TEST_CASE("evolve writes snapshots that read back") {
    TempDir d("evolve");
    std::string msg;
    CHECK(run_cli({"evolve", "--phase", "schrodinger", "--N", "3", "--t", "1", "--data", "gaussian", "--out",
               d.path.string()},
              &msg) == 0);
    CHECK(msg.find("mass drift") != std::string::npos);
    const auto idx = d.path / "evolve_schrodinger_index.csv";
    REQUIRE(fs::exists(idx));
    CHECK(slurp(idx).rfind("# schema=1\nt,file,mass,energy\n", 0) == 0);
    const auto snap = d.path / first_row_field(idx, "file");
    std::ifstream is(snap);
    const auto raw = read_profile_raw(is);
    CHECK(raw.N == 3.0);
    CHECK(raw.r.size() == raw.values.size());
    double m2 = 0.0;  // mass from the snapshot, by the trapezoid rule on the stored nodes
    for (std::size_t i = 1; i < raw.r.size(); ++i)
        m2 += 0.5 * (raw.r[i] - raw.r[i - 1]) *
              (std::norm(raw.values[i]) * raw.r[i] * raw.r[i] + std::norm(raw.values[i - 1]) * raw.r[i - 1] * raw.r[i - 1]);
    CHECK(std::sqrt(m2) == doctest::Approx(std::stod(first_row_field(idx, "mass"))).epsilon(1e-3));
}

TEST_CASE("outputs are deterministic") {
    TempDir a("det_a"), b("det_b");
    for (const auto* dir : {&a, &b}) {
        CHECK(run_cli({"kernel", "--phase", "kg", "--N", "2.5", "--j", "1", "--t", "30", "--threads", dir == &a ? "1" : "4",
                   "--out", dir->path.string()}) == 0);
        CHECK(run_cli({"evolve", "--phase", "beam", "--N", "3", "--t", "0.5", "--data", "chirp", "--seed", "11", "--out",
                   dir->path.string()}) == 0);
    }
    const auto fa = csv_files(a.path), fb = csv_files(b.path);
    REQUIRE(fa.size() == fb.size());
    REQUIRE(fa.size() >= 3);
    for (std::size_t i = 0; i < fa.size(); ++i) {
        CHECK(fa[i].filename() == fb[i].filename());
        CHECK(slurp(fa[i]) == slurp(fb[i]));
        CHECK(slurp(fa[i]).rfind("# schema=1\n", 0) == 0);
    }
}

TEST_CASE("output directory from the environment") {
    TempDir d("env");
    ::setenv("DUNKL_OUTPUT_DIR", d.path.string().c_str(), 1);
    CHECK(run_cli({"kernel", "--phase", "wave", "--N", "3", "--t", "5", "--s-grid", "0:4:9"}) == 0);
    ::unsetenv("DUNKL_OUTPUT_DIR");
    CHECK(csv_files(d.path).size() == 1);
}

TEST_CASE("solve command") {
    TempDir d("solve");
    std::string msg;
    CHECK(run_cli({"solve", "--eq", "kg", "--N", "3", "--alpha", "2", "--delta", "1e-3", "--T", "2", "--dt", "0.1",
               "--snapshot-every", "10", "--out", d.path.string()},
              &msg) == 0);
    CHECK(fs::exists(d.path / "solve_kg_report.txt"));
    CHECK(slurp(d.path / "solve_kg_report.txt").find("converged: yes") != std::string::npos);
    const auto idx = d.path / "solve_kg_index.csv";
    REQUIRE(fs::exists(idx));
    CHECK(slurp(idx).rfind("# schema=1\nt,file,mass,energy\n", 0) == 0);
    CHECK(run_cli({"solve", "--eq", "schrodinger", "--N", "3", "--out", d.path.string()}) == cli::kUsage);
}

}
