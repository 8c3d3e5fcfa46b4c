#include "app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "ptf/analysis.hpp"
#include "ptf/errors.hpp"
#include "ptf/fidelity.hpp"

namespace ptf::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Every recognised key with its default value.
const std::vector<std::pair<std::string, std::string>>& known_keys() {
    static const std::vector<std::pair<std::string, std::string>> keys{
        {"N", "300"},          {"J", "1"},           {"betas", "1"},        {"eta_min", "0"},
        {"eta_max", "1.5"},    {"eta_step", "0.015"}, {"xi_min", "0"},       {"xi_max", "1.5"},
        {"xi_step", "0.015"},  {"xi", "0"},           {"displacement", "cartesian"},
        {"d_eta", "0.01"},     {"d_xi", "0.01"},      {"dr", "0.01"},        {"phis", "0"},
        {"tolerance", ""},     {"output", "."},       {"threads", ""},       {"seed", "20240611"},
        {"samples", "200"},    {"checks", "all"},     {"input", ""},         {"plot", "true"},
    };
    return keys;
}

using Settings = std::map<std::string, std::string>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

bool is_known(const std::string& key) {
    const auto& k = known_keys();
    return std::any_of(k.begin(), k.end(), [&](const auto& kv) { return kv.first == key; });
}

void load_config_file(const std::string& path, Settings& s) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::string line;
    for (int no = 1; std::getline(in, line); ++no) {
        const std::string body = trim(line.substr(0, line.find('#')));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(no) + ": expected key = value");
        const std::string key = trim(body.substr(0, eq));
        if (!is_known(key)) throw ConfigError("unknown configuration key '" + key + "'");
        s[key] = trim(body.substr(eq + 1));
    }
}

double to_double(const Settings& s, const std::string& key) {
    const std::string& v = s.at(key);
    std::size_t used = 0;
    double d = 0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || trim(v.substr(used)) != "" || !std::isfinite(d))
        throw ConfigError("key '" + key + "': '" + v + "' is not a finite number");
    return d;
}

long long to_integer(const Settings& s, const std::string& key) {
    const double d = to_double(s, key);
    if (d != std::floor(d) || std::abs(d) > 9e15) throw ConfigError("key '" + key + "' must be an integer");
    return static_cast<long long>(d);
}

bool to_bool(const Settings& s, const std::string& key) {
    const std::string& v = s.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "' must be true or false");
}

// Comma separated numbers; an item a:b:c expands to the inclusive grid from a to b in steps of c.
std::vector<double> to_list(const Settings& s, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(s.at(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::vector<double> parts;
        std::stringstream is(item);
        std::string part;
        while (std::getline(is, part, ':')) {
            Settings tmp{{key, trim(part)}};
            parts.push_back(to_double(tmp, key));
        }
        if (parts.size() == 1) {
            out.push_back(parts[0]);
        } else if (parts.size() == 3) {
            try {
                const std::vector<double> g = grid_axis(parts[0], parts[1], parts[2]);
                out.insert(out.end(), g.begin(), g.end());
            } catch (const Error& e) {
                throw ConfigError("key '" + key + "': " + e.what());
            }
        } else {
            throw ConfigError("key '" + key + "': ranges are written start:stop:step");
        }
    }
    if (out.empty()) throw ConfigError("key '" + key + "' is empty");
    return out;
}

unsigned default_threads() {
    if (const char* env = std::getenv("PTF_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

struct RunConfig {
    SweepConfig sweep;
    double xi = 0;
    std::vector<double> phis;
    std::optional<double> tolerance;
    fs::path output;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<std::string> checks;
    std::string input;
    bool plot = true;
};

RunConfig typed(const Settings& s) {
    RunConfig c;
    const long long n = to_integer(s, "N");
    if (n < 2 || n > 1'000'000) throw ConfigError("key 'N' must lie in [2, 1000000]");
    c.sweep.N = static_cast<int>(n);
    c.sweep.J = to_double(s, "J");
    c.sweep.betas = to_list(s, "betas");
    c.sweep.eta_min = to_double(s, "eta_min");
    c.sweep.eta_max = to_double(s, "eta_max");
    c.sweep.eta_step = to_double(s, "eta_step");
    c.sweep.xi_min = to_double(s, "xi_min");
    c.sweep.xi_max = to_double(s, "xi_max");
    c.sweep.xi_step = to_double(s, "xi_step");
    const std::string& mode = s.at("displacement");
    if (mode == "cartesian")
        c.sweep.displacement.mode = Displacement::Mode::cartesian;
    else if (mode == "radial")
        c.sweep.displacement.mode = Displacement::Mode::radial;
    else
        throw ConfigError("key 'displacement' must be cartesian or radial");
    c.sweep.displacement.d_eta = to_double(s, "d_eta");
    c.sweep.displacement.d_xi = to_double(s, "d_xi");
    c.sweep.displacement.dr = to_double(s, "dr");
    c.xi = to_double(s, "xi");
    c.phis = to_list(s, "phis");
    if (!s.at("tolerance").empty()) c.tolerance = to_double(s, "tolerance");
    c.output = s.at("output");
    if (s.at("threads").empty()) {
        c.threads = default_threads();
    } else {
        const long long t = to_integer(s, "threads");
        if (t < 1 || t > 1024) throw ConfigError("key 'threads' must lie in [1, 1024]");
        c.threads = static_cast<unsigned>(t);
    }
    const long long seed = to_integer(s, "seed");
    if (seed < 0) throw ConfigError("key 'seed' must be non-negative");
    c.seed = static_cast<std::uint64_t>(seed);
    const long long samples = to_integer(s, "samples");
    if (samples < 1 || samples > 1'000'000) throw ConfigError("key 'samples' must lie in [1, 1000000]");
    c.samples = static_cast<std::size_t>(samples);
    if (s.at("checks") != "all") {
        std::stringstream ss(s.at("checks"));
        std::string g;
        while (std::getline(ss, g, ','))
            if (!trim(g).empty()) c.checks.push_back(trim(g));
        for (const std::string& name : c.checks)
            if (std::find(validation_groups().begin(), validation_groups().end(), name) == validation_groups().end())
                throw ConfigError("key 'checks': unknown check group '" + name + "'");
    }
    c.input = s.at("input");
    c.plot = to_bool(s, "plot");
    return c;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cur += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

class OutputDir {
public:
    explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_)) throw IoError("cannot create output directory '" + dir_.string() + "'");
    }

    fs::path write(const std::string& name, const std::string& content) const {
        const fs::path p = dir_ / name;
        std::ofstream f(p, std::ios::binary);
        f << content;
        f.close();
        if (!f) throw IoError("cannot write '" + p.string() + "'");
        return p;
    }

private:
    fs::path dir_;
};

const char* kSweepHeader = "eta,xi,beta,F,log_F,im_residual,broken_sectors,error\n";

std::string sweep_csv(const std::vector<FidelityPoint>& pts) {
    std::string s = kSweepHeader;
    for (const FidelityPoint& p : pts) {
        s += num(p.eta) + ',' + num(p.xi) + ',' + num(p.beta) + ',' + num(p.F) + ',' + num(p.log_F) + ',' +
             num(p.im_residual) + ',' + std::to_string(p.broken_sectors) + ',' + csv_field(p.error) + '\n';
    }
    return s;
}

json sweep_json(const SweepConfig& c) {
    return {{"N", c.N},
            {"J", c.J},
            {"betas", c.betas},
            {"eta", {c.eta_min, c.eta_max, c.eta_step}},
            {"xi", {c.xi_min, c.xi_max, c.xi_step}},
            {"displacement", c.displacement.mode == Displacement::Mode::cartesian ? "cartesian" : "radial"},
            {"d_eta", c.displacement.d_eta},
            {"d_xi", c.displacement.d_xi},
            {"dr", c.displacement.dr}};
}

ProgressFn progress_to(std::ostream& err) {
    auto last = std::make_shared<std::size_t>(0);
    return [&err, last](std::size_t done, std::size_t total) {
        if (total < 200) return;
        const std::size_t pct = done * 10 / total;
        if (pct > *last || done == total) {
            *last = pct;
            err << "progress " << done << "/" << total << '\n';
        }
    };
}

int cmd_validate(const RunConfig& c, std::ostream& out, const Hooks& hooks) {
    ValidationOptions opts;
    opts.seed = c.seed;
    opts.samples = c.samples;
    opts.tolerance = c.tolerance;
    opts.provider = hooks.provider;
    opts.groups = c.checks;
    const ValidationReport rep = run_validation(opts);
    json checks = json::array();
    std::vector<std::string> failed;
    for (const CheckResult& r : rep.checks) {
        char line[256];
        std::snprintf(line, sizeof line, "%s  %-22s residual=%-12.3e tol=%-9.1e ", r.passed ? "PASS" : "FAIL",
                      r.name.c_str(), r.residual, r.tolerance);
        out << line << r.detail << '\n';
        if (!r.passed) failed.push_back(r.name);
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"residual", std::isfinite(r.residual) ? json(r.residual) : json(nullptr)},
                          {"tolerance", r.tolerance},
                          {"detail", r.detail}});
    }
    if (failed.empty()) {
        out << "validation passed (" << rep.checks.size() << " checks)\n";
    } else {
        out << "validation FAILED:";
        for (const auto& n : failed) out << ' ' << n;
        out << '\n';
    }
    OutputDir(c.output).write("validate.json",
                              json{{"seed", c.seed}, {"passed", failed.empty()}, {"checks", checks}}.dump(2) + "\n");
    return failed.empty() ? ok : validation_failure;
}

std::string sweep_plot(const std::vector<double>& betas) {
    std::string s =
        "# gnuplot: heightmaps of F over (eta, xi), one per beta\n"
        "set datafile separator ','\nset terminal pngcairo size 900,800\n"
        "set xlabel 'eta'\nset ylabel 'xi'\nset view map\nset palette rgb 33,13,10\n";
    for (std::size_t i = 0; i < betas.size(); ++i) {
        s += "set output 'sweep2d_" + std::to_string(i) + ".png'\nset title 'F, beta = " + num(betas[i]) +
             "'\nsplot 'sweep2d.csv' every ::1 using 1:2:($3 == " + num(betas[i]) +
             " ? $4 : 1/0) with points pt 5 ps 0.5 palette notitle\n";
    }
    return s;
}

int cmd_sweep2d(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        c.sweep.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    const OutputDir dir(c.output);
    const std::vector<FidelityPoint> pts = sweep2d(c.sweep, c.threads, progress_to(err));
    std::size_t failed = 0;
    json per_beta = json::array();
    for (double b : c.sweep.betas) {
        double mn = std::numeric_limits<double>::infinity();
        for (const FidelityPoint& p : pts)
            if (p.beta == b && p.error.empty()) mn = std::min(mn, p.F);
        per_beta.push_back({{"beta", b}, {"min_F", std::isfinite(mn) ? json(mn) : json(nullptr)}});
    }
    for (const FidelityPoint& p : pts) failed += !p.error.empty();
    const fs::path csv = dir.write("sweep2d.csv", sweep_csv(pts));
    json side{{"command", "sweep2d"}, {"config", sweep_json(c.sweep)}, {"rows", pts.size()},
              {"failed_points", failed}, {"summary", per_beta}};
    dir.write("sweep2d.json", side.dump(2) + "\n");
    if (c.plot) dir.write("sweep2d.gp", sweep_plot(c.sweep.betas));
    out << "wrote " << csv.string() << " (" << pts.size() << " rows, " << failed << " failed)\n";
    return ok;
}

int cmd_scan(const RunConfig& c, std::ostream& out, std::ostream& err) {
    SweepConfig sc = c.sweep;
    sc.xi_min = sc.xi_max = c.xi;
    sc.xi_step = 1.0;
    try {
        sc.validate();
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    const OutputDir dir(c.output);
    const std::vector<FidelityPoint> pts = sweep2d(sc, c.threads, progress_to(err));
    json minima = json::array();
    for (double b : sc.betas) {
        std::vector<ScanSample> row;
        for (const FidelityPoint& p : pts)
            if (p.beta == b && p.error.empty()) row.push_back({p.eta, p.F});
        json m{{"beta", b}};
        try {
            m["eta_star"] = locate_minima(row);
        } catch (const Error& e) {
            m["error"] = e.what();
        }
        minima.push_back(m);
    }
    json side{{"command", "scan"}, {"xi", c.xi}, {"config", sweep_json(sc)}, {"minima", minima}};
    if (std::abs(c.xi) < 1) side["circle_eta"] = std::sqrt(1 - c.xi * c.xi);
    const fs::path csv = dir.write("scan.csv", sweep_csv(pts));
    dir.write("scan.json", side.dump(2) + "\n");
    if (c.plot) {
        std::string gp =
            "# gnuplot: F against eta at fixed xi, one curve per beta\n"
            "set datafile separator ','\nset terminal pngcairo size 900,600\nset output 'scan.png'\n"
            "set xlabel 'eta'\nset ylabel 'F'\nset key bottom left\nplot ";
        for (std::size_t i = 0; i < sc.betas.size(); ++i) {
            gp += (i ? ", \\\n     " : "") + std::string("'scan.csv' every ::1 using 1:($3 == ") + num(sc.betas[i]) +
                  " ? $4 : 1/0) with linespoints title 'beta = " + num(sc.betas[i]) + "'";
        }
        dir.write("scan.gp", gp + "\n");
    }
    out << "wrote " << csv.string() << '\n' << side["minima"].dump() << '\n';
    return ok;
}

int cmd_temp_scan(const RunConfig& c, std::ostream& out) {
    if (!(c.sweep.displacement.dr > 0) || c.sweep.displacement.dr >= 1)
        throw ConfigError("key 'dr' must lie in (0, 1) for a temperature scan");
    for (double b : c.sweep.betas)
        if (b < 0) throw ConfigError("key 'betas' must be non-negative");
    const OutputDir dir(c.output);
    std::string csv = "phi,beta,F,log_F,im_residual,broken_sectors,error\n";
    for (double phi : c.phis) {
        const std::vector<FidelityPoint> pts =
            temp_scan(phi, c.sweep.displacement.dr, c.sweep.betas, c.sweep.N, c.sweep.J);
        for (const FidelityPoint& p : pts)
            csv += num(phi) + ',' + num(p.beta) + ',' + num(p.F) + ',' + num(p.log_F) + ',' + num(p.im_residual) +
                   ',' + std::to_string(p.broken_sectors) + ',' + csv_field(p.error) + '\n';
    }
    const fs::path p = dir.write("temp_scan.csv", csv);
    json side{{"command", "temp-scan"}, {"N", c.sweep.N}, {"J", c.sweep.J}, {"dr", c.sweep.displacement.dr},
              {"phis", c.phis}, {"betas", c.sweep.betas}};
    dir.write("temp_scan.json", side.dump(2) + "\n");
    if (c.plot) {
        std::string gp =
            "# gnuplot: ln F against beta, one curve per angle\n"
            "set datafile separator ','\nset terminal pngcairo size 900,600\nset output 'temp_scan.png'\n"
            "set xlabel 'beta'\nset ylabel 'ln F'\nset key bottom left\nplot ";
        for (std::size_t i = 0; i < c.phis.size(); ++i) {
            gp += (i ? ", \\\n     " : "") + std::string("'temp_scan.csv' every ::1 using 2:($1 == ") +
                  num(c.phis[i]) + " ? $4 : 1/0) with linespoints title 'phi = " + num(c.phis[i]) + "'";
        }
        dir.write("temp_scan.gp", gp + "\n");
    }
    out << "wrote " << p.string() << '\n';
    return ok;
}

int cmd_fit(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.input.empty()) throw ConfigError("key 'input' is required for fit");
    std::ifstream in(c.input);
    if (!in) throw IoError("cannot read input '" + c.input + "'");
    std::string line;
    if (!std::getline(in, line)) throw IoError("input '" + c.input + "' is empty");
    const std::vector<std::string> header = split_csv_line(line);
    auto column = [&](const std::string& name) -> std::optional<std::size_t> {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<std::size_t>(it - header.begin());
    };
    const auto cb = column("beta"), cl = column("log_F"), cp = column("phi"), ce = column("error");
    if (!cb) throw IoError("input '" + c.input + "' has no 'beta' column");
    if (!cl) throw IoError("input '" + c.input + "' has no 'log_F' column");

    std::map<double, std::pair<std::vector<double>, std::vector<double>>> series;
    for (int no = 2; std::getline(in, line); ++no) {
        if (trim(line).empty()) continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != header.size())
            throw IoError(c.input + ":" + std::to_string(no) + ": expected " + std::to_string(header.size()) +
                          " fields");
        if (ce && !f[*ce].empty()) continue;
        auto parse = [&](std::size_t i) {
            Settings tmp{{header[i], f[i]}};
            try {
                return to_double(tmp, header[i]);
            } catch (const ConfigError&) {
                if (f[i] == "nan" || f[i] == "-inf" || f[i] == "inf")
                    return std::stod(f[i]);
                throw IoError(c.input + ":" + std::to_string(no) + ": bad value in column '" + header[i] + "'");
            }
        };
        auto& [b, l] = series[cp ? parse(*cp) : 0.0];
        b.push_back(parse(*cb));
        l.push_back(parse(*cl));
    }

    json result{{"command", "fit"}, {"input", c.input}};
    json fits = json::array();
    std::vector<double> phis, gammas, lnas;
    int status = ok;
    for (const auto& [phi, data] : series) {
        json f;
        if (cp) f["phi"] = phi;
        try {
            const FitResult r = fit_exponential(data.first, data.second);
            f.update({{"gamma", r.gamma}, {"lnA", r.lnA}, {"r_squared", r.r_squared},
                      {"window", {r.window_lo, r.window_hi}}, {"n_points", r.n_points}});
            phis.push_back(phi);
            gammas.push_back(r.gamma);
            lnas.push_back(r.lnA);
        } catch (const Error& e) {
            f["error"] = e.what();
            err << "fit";
            if (cp) err << " at phi = " << phi;
            err << ": " << e.what() << '\n';
            status = validation_failure;
        }
        fits.push_back(f);
    }
    result["fits"] = fits;
    if (cp && phis.size() >= 2) {
        auto harmonic = [&](const std::vector<double>& v, HarmonicOrder order) {
            try {
                const HarmonicFit h = fit_harmonic(phis, v, order);
                json j{{"a0", h.a0}, {"a2", h.a2}};
                if (order == HarmonicOrder::two_four) j["a4"] = h.a4;
                j["relative_residual"] = h.residual;
                return j;
            } catch (const Error& e) {
                err << "harmonic fit: " << e.what() << '\n';
                status = validation_failure;
                return json{{"error", e.what()}};
            }
        };
        result["gamma_harmonic"] = harmonic(gammas, HarmonicOrder::two);
        if (phis.size() >= 3) result["lnA_harmonic"] = harmonic(lnas, HarmonicOrder::two_four);
    }
    const fs::path p = OutputDir(c.output).write("fit.json", result.dump(2) + "\n");
    out << result.dump(2) << '\n' << "wrote " << p.string() << '\n';
    return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    CLI::App app{"Thermal-state fidelity of the non-Hermitian transverse-field Ising ring", "ptfid"};
    app.require_subcommand(1, 1);
    std::string config_path;
    std::map<std::string, std::string> flags;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"validate", "run the oracle and invariant checks"},
        {"sweep2d", "fidelity over an (eta, xi) grid"},
        {"scan", "fidelity along eta at fixed xi, with the dip location"},
        {"temp-scan", "ln F against beta on the critical circle"},
        {"fit", "exponential and harmonic fits of a temperature scan CSV"}};
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "flat key = value configuration file");
        for (const auto& [key, def] : known_keys())
            sub->add_option("--" + key, flags[key], "default: " + (def.empty() ? std::string("unset") : def));
    }

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return config_error;
    }

    try {
        Settings s(known_keys().begin(), known_keys().end());
        if (!config_path.empty()) load_config_file(config_path, s);
        for (const auto& [name, help] : commands) {
            const CLI::App* sub = app.get_subcommand(name);
            if (!sub->parsed()) continue;
            for (const auto& [key, def] : known_keys())
                if (sub->count("--" + key)) s[key] = flags[key];
        }
        const RunConfig cfg = typed(s);
        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "validate") return cmd_validate(cfg, out, hooks);
        if (cmd == "sweep2d") return cmd_sweep2d(cfg, out, err);
        if (cmd == "scan") return cmd_scan(cfg, out, err);
        if (cmd == "temp-scan") return cmd_temp_scan(cfg, out);
        return cmd_fit(cfg, out, err);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return config_error;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return io_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return validation_failure;
    }
}

}  // namespace ptf::cli
