#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"
#include "ptf/sector.hpp"

namespace fs = std::filesystem;
using ptf::cli::run;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("ptf_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args, const ptf::cli::Hooks& hooks = {}) {
    std::ostringstream out, err;
    const int code = run(args, out, err, hooks);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("sweep2d at infinite temperature") {
    TempDir d("hot");
    const Result r = call({"sweep2d", "--N", "20", "--betas", "0", "--eta_min", "0", "--eta_max", "1", "--eta_step",
                           "0.5", "--xi_min", "0", "--xi_max", "1", "--xi_step", "0.5", "--output", d.str()});
    REQUIRE(r.code == 0);
    const auto rows = lines(slurp(d.path / "sweep2d.csv"));
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == "eta,xi,beta,F,log_F,im_residual,broken_sectors,error");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].find(",0,1,0,") != std::string::npos);
    CHECK(fs::exists(d.path / "sweep2d.json"));
    CHECK(fs::exists(d.path / "sweep2d.gp"));
    const auto side = nlohmann::json::parse(slurp(d.path / "sweep2d.json"));
    CHECK(side["config"]["N"] == 20);
}

TEST_CASE("configuration files and errors") {
    TempDir d("cfg");
    {
        std::ofstream(d.path / "good.conf") << "# comment\nN = 8\nbetas = 0.5, 1:2:0.5\neta_min = 0.2\neta_max = 0.3\n"
                                               "eta_step = 0.1\nxi_min = 0\nxi_max = 0\nxi_step = 1\nplot = false\n";
        std::ofstream(d.path / "bad.conf") << "N = 8\nbogus_key = 3\n";
    }
    Result r = call({"sweep2d", "--config", (d.path / "good.conf").string(), "--output", d.str()});
    REQUIRE(r.code == 0);
    CHECK(lines(slurp(d.path / "sweep2d.csv")).size() == 1 + 4 * 2);
    CHECK_FALSE(fs::exists(d.path / "sweep2d.gp"));

    r = call({"sweep2d", "--config", (d.path / "bad.conf").string(), "--output", d.str()});
    CHECK(r.code == 2);
    CHECK(r.err.find("bogus_key") != std::string::npos);

    CHECK(call({"sweep2d", "--nonsense", "1"}).code == 2);
    CHECK(call({"sweep2d", "--N", "7", "--output", d.str()}).code == 2);
    CHECK(call({"sweep2d", "--betas", "1:x:2", "--output", d.str()}).code == 2);
    CHECK(call({"sweep2d", "--config", (d.path / "missing.conf").string()}).code == 3);
    CHECK(call({"--help"}).code == 0);
    CHECK(call({}).code == 2);
}

TEST_CASE("fit reports a missing column") {
    TempDir d("fitcol");
    std::ofstream(d.path / "in.csv") << "phi,beta,F\n0,1,0.5\n0,2,0.25\n";
    const Result r = call({"fit", "--input", (d.path / "in.csv").string(), "--output", d.str()});
    CHECK(r.code == 3);
    CHECK(r.err.find("log_F") != std::string::npos);
    CHECK(call({"fit", "--input", (d.path / "none.csv").string(), "--output", d.str()}).code == 3);
}

TEST_CASE("fit on synthetic data") {
    TempDir d("fit");
    {
        std::ofstream f(d.path / "in.csv");
        f << "phi,beta,log_F\n";
        for (double phi : {0.1, 0.7, 1.3, 2.0})
            for (int b = 1; b <= 6; ++b) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g\n", phi, b, -(3 + 2 * std::cos(2 * phi)) * b - 0.1);
                f << buf;
            }
    }
    const Result r = call({"fit", "--input", (d.path / "in.csv").string(), "--output", d.str()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(d.path / "fit.json"));
    CHECK(j["fits"].size() == 4);
    CHECK(j["gamma_harmonic"]["a0"].get<double>() == doctest::Approx(-3).epsilon(1e-10));
    CHECK(j["gamma_harmonic"]["a2"].get<double>() == doctest::Approx(-2).epsilon(1e-10));
    CHECK(j["lnA_harmonic"]["a0"].get<double>() == doctest::Approx(-0.1).epsilon(1e-10));
}

TEST_CASE("validate command and the mutation fixture") {
    TempDir d("val");
    Result r = call({"validate", "--checks", "biorthogonal,jw", "--samples", "30", "--output", d.str()});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS  biorthonormality") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(d.path / "validate.json"));
    CHECK(j["passed"] == true);

    ptf::cli::Hooks hooks;
    hooks.provider = [](double k, const ptf::CouplingParams& p) {
        ptf::BiorthogonalEigensystem es = ptf::sector_eigensystem(k, p);
        for (std::size_t c = 0; c < 16; ++c) es.left(0, c) = -es.left(0, c);
        return es;
    };
    r = call({"validate", "--checks", "biorthogonal", "--samples", "10", "--output", d.str()}, hooks);
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL  biorthonormality") != std::string::npos);

    r = call({"validate", "--checks", "biorthogonal", "--samples", "10", "--tolerance", "1e-15", "--output",
              d.str()});
    CHECK(r.code == 1);
    CHECK(call({"validate", "--checks", "nope", "--output", d.str()}).code == 2);
}

TEST_CASE("sweep output does not depend on the thread count") {
    TempDir a("t1"), b("t2");
    const std::vector<std::string> base{"sweep2d", "--N",      "40",  "--betas",  "1,3",  "--eta_min", "0.5",
                                        "--eta_max", "1.1",    "--eta_step", "0.2", "--xi_min", "0.2", "--xi_max",
                                        "0.6",     "--xi_step", "0.2"};
    auto with = [&](const TempDir& d, const std::string& threads) {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--threads", threads, "--output", d.str()});
        return call(args).code;
    };
    REQUIRE(with(a, "1") == 0);
    REQUIRE(with(b, "2") == 0);
    const std::string one = slurp(a.path / "sweep2d.csv"), two = slurp(b.path / "sweep2d.csv");
    CHECK(one == two);
    // Values survive a text round trip exactly.
    const auto row = lines(one)[5];
    const double F = std::stod(row.substr(row.find(',', row.find(',', row.find(',') + 1) + 1) + 1));
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", F);
    CHECK(row.find(std::string(",") + buf + ",") != std::string::npos);
}

TEST_CASE("scan locates the dip on the unit circle") {
    TempDir d("scan");
    const Result r = call({"scan", "--xi", "0.4", "--N", "300", "--betas", "20", "--eta_min", "0.85", "--eta_max",
                           "1.0", "--eta_step", "0.005", "--output", d.str()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(d.path / "scan.json"));
    const double star = j["minima"][0]["eta_star"].get<double>();
    CHECK(std::abs(star - std::sqrt(1 - 0.16)) < 0.02);
    CHECK(j["circle_eta"].get<double>() == doctest::Approx(std::sqrt(0.84)));
}

TEST_CASE("temperature scan followed by a fit") {
    TempDir d("tscan");
    Result r = call({"temp-scan", "--phis", "0,0.8", "--N", "300", "--dr", "0.01", "--betas", "5:40:5", "--output",
                     d.str()});
    REQUIRE(r.code == 0);
    CHECK(lines(slurp(d.path / "temp_scan.csv")).size() == 1 + 2 * 8);
    r = call({"fit", "--input", (d.path / "temp_scan.csv").string(), "--output", d.str()});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(d.path / "fit.json"));
    for (const auto& f : j["fits"]) {
        CHECK(f["gamma"].get<double>() < 0);
        CHECK(f["r_squared"].get<double>() > 0.99);
    }
    CHECK(call({"temp-scan", "--dr", "0", "--output", d.str()}).code == 2);
}
