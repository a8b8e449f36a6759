// qlight-cli: steady-state sweeps, time evolution, dark-state tables and
// cat-state scans on top of the qlight C API.
//
// Config files are flat key = value lines with dotted keys and JSON
// values, e.g.
//
//   params.g = 10
//   params.omega23 = 3
//   sweep.axis1.name = "delta12"
//   sweep.axis1.min = -10
//   sweep.axis1.max = 10
//   sweep.axis1.count = 41
//
// Output is CSV with '#' metadata lines carrying the resolved config.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <qlight/qlight.h>

namespace {

using json = nlohmann::json;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shortest decimal representation that round-trips.
std::string fmt(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string fmt(int v) { return std::to_string(v); }

using Config = std::map<std::string, json>;

Config load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    Config cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const size_t a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const size_t b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string raw = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) +
                                           ": empty key");
        json value;
        try {
            value = json::parse(raw);
        } catch (const json::exception&) {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": invalid JSON value '" + raw + "'");
        }
        cfg[key] = value;
    }
    return cfg;
}

double number_at(const Config& cfg, const std::string& key, double fallback) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) return fallback;
    if (!it->second.is_number())
        throw ConfigError(key + " must be a number");
    return it->second.get<double>();
}

qlight_params params_from(const Config& cfg) {
    static const std::set<std::string> known = {
        "params.g",       "params.omega12", "params.omega23",
        "params.delta12", "params.delta23", "params.delta",
        "params.kappa",   "params.gamma31", "params.gamma32",
        "params.n_max"};
    for (const auto& [key, value] : cfg)
        if (key.rfind("params.", 0) == 0 && !known.count(key))
            throw ConfigError("unknown config key: " + key);

    qlight_params p = qlight_params_default();
    p.g = number_at(cfg, "params.g", 0.0);
    p.omega12 = number_at(cfg, "params.omega12", 0.0);
    p.omega23 = number_at(cfg, "params.omega23", 0.0);
    p.delta12 = number_at(cfg, "params.delta12", 0.0);
    p.delta23 = number_at(cfg, "params.delta23", 0.0);
    p.kappa = number_at(cfg, "params.kappa", 1.0);
    p.gamma31 = number_at(cfg, "params.gamma31", 0.0);
    p.gamma32 = number_at(cfg, "params.gamma32", 0.0);
    if (const auto it = cfg.find("params.delta"); it != cfg.end()) {
        if (it->second.is_string() && it->second == "auto")
            p.delta = std::nan("");
        else if (it->second.is_number())
            p.delta = it->second.get<double>();
        else
            throw ConfigError("params.delta must be a number or \"auto\"");
    }
    if (const auto it = cfg.find("params.n_max"); it != cfg.end()) {
        if (it->second.is_string() && it->second == "auto")
            p.n_max = 0;
        else if (it->second.is_number_integer())
            p.n_max = it->second.get<int>();
        else
            throw ConfigError("params.n_max must be an integer or \"auto\"");
    }
    return p;
}

void apply_overrides(qlight_params& p, const std::string& n_max_flag,
                     const std::string& delta_flag) {
    if (!n_max_flag.empty()) {
        if (n_max_flag == "auto") {
            p.n_max = 0;
        } else {
            try {
                p.n_max = std::stoi(n_max_flag);
            } catch (const std::exception&) {
                throw ConfigError("--n-max expects an integer or 'auto'");
            }
        }
    }
    if (!delta_flag.empty()) {
        if (delta_flag == "auto") {
            p.delta = std::nan("");
        } else {
            try {
                p.delta = std::stod(delta_flag);
            } catch (const std::exception&) {
                throw ConfigError("--delta expects a number or 'auto'");
            }
        }
    }
}

void describe_params(std::ostream& out, const qlight_params& p) {
    out << "# params.g=" << fmt(p.g) << "\n"
        << "# params.omega12=" << fmt(p.omega12) << "\n"
        << "# params.omega23=" << fmt(p.omega23) << "\n"
        << "# params.delta12=" << fmt(p.delta12) << "\n"
        << "# params.delta23=" << fmt(p.delta23) << "\n"
        << "# params.delta="
        << (std::isnan(p.delta) ? std::string("auto") : fmt(p.delta)) << "\n"
        << "# params.kappa=" << fmt(p.kappa) << "\n"
        << "# params.gamma31=" << fmt(p.gamma31) << "\n"
        << "# params.gamma32=" << fmt(p.gamma32) << "\n"
        << "# params.n_max="
        << (p.n_max == 0 ? std::string("auto") : fmt(p.n_max)) << "\n";
}

std::ofstream open_output(const Config& cfg, const std::string& out_flag) {
    std::string path = out_flag;
    if (path.empty()) {
        const auto it = cfg.find("out");
        if (it != cfg.end() && it->second.is_string())
            path = it->second.get<std::string>();
    }
    if (path.empty()) throw ConfigError("no output path (--out or out = ...)");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + path);
    return out;
}

// ---- sweep ----

struct AxisSpec {
    std::string name;
    double min = 0.0, max = 0.0;
    int count = 0;
    bool log = false;

    std::vector<double> grid() const {
        std::vector<double> v(static_cast<size_t>(count), 0.0);
        for (int i = 0; i < count; ++i) {
            const double f = double(i) / (count - 1);
            v[size_t(i)] = log ? std::pow(10.0, std::log10(min) +
                                                    f * (std::log10(max) -
                                                         std::log10(min)))
                               : min + f * (max - min);
        }
        return v;
    }
};

const std::set<std::string> kAxisNames = {"delta12", "delta23", "omega12",
                                          "omega23", "g"};

AxisSpec axis_from(const Config& cfg, const std::string& prefix) {
    AxisSpec ax;
    const auto name = cfg.find(prefix + ".name");
    if (name == cfg.end() || !name->second.is_string())
        throw ConfigError(prefix + ".name missing");
    ax.name = name->second.get<std::string>();
    if (!kAxisNames.count(ax.name))
        throw ConfigError(prefix + ".name: unknown axis '" + ax.name + "'");
    ax.min = number_at(cfg, prefix + ".min",
                       std::numeric_limits<double>::quiet_NaN());
    ax.max = number_at(cfg, prefix + ".max",
                       std::numeric_limits<double>::quiet_NaN());
    if (std::isnan(ax.min) || std::isnan(ax.max))
        throw ConfigError(prefix + ": min and max required");
    const double count = number_at(cfg, prefix + ".count", 0.0);
    if (count != std::floor(count) || count < 2)
        throw ConfigError(prefix + ".count must be an integer >= 2");
    ax.count = int(count);
    if (!(ax.max > ax.min))
        throw ConfigError(prefix + ": max must exceed min");
    if (const auto it = cfg.find(prefix + ".scale"); it != cfg.end()) {
        if (it->second == "log")
            ax.log = true;
        else if (it->second != "linear")
            throw ConfigError(prefix + ".scale must be linear or log");
    }
    if (ax.log && ax.min <= 0.0)
        throw ConfigError(prefix + ": log scale requires min > 0");
    return ax;
}

void set_axis(qlight_params& p, const std::string& name, double value) {
    if (name == "delta12")
        p.delta12 = value;
    else if (name == "delta23")
        p.delta23 = value;
    else if (name == "omega12")
        p.omega12 = value;
    else if (name == "omega23")
        p.omega23 = value;
    else if (name == "g")
        p.g = value;
}

const std::vector<std::string> kObservables = {
    "concurrence", "concurrence_trace", "g2_zero", "n_photon", "p33", "ratio"};

std::vector<std::string> outputs_from(const Config& cfg) {
    const auto it = cfg.find("outputs");
    if (it == cfg.end()) return kObservables;
    if (!it->second.is_array()) throw ConfigError("outputs must be an array");
    std::vector<std::string> names;
    for (const auto& entry : it->second) {
        if (!entry.is_string() ||
            std::find(kObservables.begin(), kObservables.end(),
                      entry.get<std::string>()) == kObservables.end())
            throw ConfigError("outputs: unknown observable " + entry.dump());
        names.push_back(entry.get<std::string>());
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    if (names.empty()) throw ConfigError("outputs must not be empty");
    return names;
}

std::string observable_cell(const qlight_observables& obs,
                            const std::string& name) {
    if (name == "concurrence") return fmt(obs.concurrence);
    if (name == "concurrence_trace") return fmt(obs.concurrence_trace);
    if (name == "g2_zero") return obs.g2_defined ? fmt(obs.g2_zero) : "";
    if (name == "n_photon") return fmt(obs.n_photon);
    if (name == "p33") return fmt(obs.p33);
    if (name == "ratio") return obs.ratio_defined ? fmt(obs.ratio) : "";
    return "";
}

int run_sweep(const Config& cfg, const qlight_params& base,
              std::ofstream& out, int workers) {
    std::vector<AxisSpec> axes;
    axes.push_back(axis_from(cfg, "sweep.axis1"));
    if (cfg.count("sweep.axis2.name"))
        axes.push_back(axis_from(cfg, "sweep.axis2"));
    const std::vector<std::string> names = outputs_from(cfg);

    std::vector<std::vector<double>> grids;
    size_t total = 1;
    for (const auto& ax : axes) {
        grids.push_back(ax.grid());
        total *= size_t(ax.count);
    }

    std::vector<std::string> rows(total);
    std::atomic<size_t> cursor{0};
    std::atomic<int> failures{0};

    auto worker = [&] {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= total) return;
            std::vector<double> point(axes.size());
            size_t rem = i;
            for (size_t a = axes.size(); a-- > 0;) {
                point[a] = grids[a][rem % size_t(axes[a].count)];
                rem /= size_t(axes[a].count);
            }
            qlight_params p = base;
            for (size_t a = 0; a < axes.size(); ++a)
                set_axis(p, axes[a].name, point[a]);

            std::string row;
            for (const double v : point) row += fmt(v) + ",";
            qlight_state* state = nullptr;
            qlight_status st = qlight_steady_state(&p, &state);
            qlight_observables obs{};
            if (st == QLIGHT_OK) st = qlight_observe(state, &obs);
            qlight_state_free(state);
            if (st == QLIGHT_OK) {
                for (const auto& name : names)
                    row += observable_cell(obs, name) + ",";
                row += "";  // empty error cell
            } else {
                for (size_t k = 0; k < names.size(); ++k) row += ",";
                row += qlight_strerror(st);
                failures.fetch_add(1);
            }
            rows[i] = std::move(row);
        }
    };

    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    out << "# qlight sweep\n";
    describe_params(out, base);
    for (size_t a = 0; a < axes.size(); ++a)
        out << "# sweep.axis" << a + 1 << "=" << axes[a].name << " "
            << (axes[a].log ? "log" : "linear") << " [" << fmt(axes[a].min)
            << "," << fmt(axes[a].max) << "] count=" << axes[a].count << "\n";
    for (const auto& ax : axes) out << ax.name << ",";
    for (const auto& name : names) out << name << ",";
    out << "error\n";
    for (const auto& row : rows) out << row << "\n";
    return failures.load() > 0 ? 2 : 0;
}

// ---- timeevo ----

int run_timeevo(const Config& cfg, const qlight_params& base,
                std::ofstream& out) {
    const double t0 = number_at(cfg, "time.t0", 0.0);
    const double t1 = number_at(cfg, "time.t1",
                                std::numeric_limits<double>::quiet_NaN());
    const double steps_d = number_at(cfg, "time.steps", 200.0);
    if (std::isnan(t1)) throw ConfigError("time.t1 required");
    if (steps_d != std::floor(steps_d) || steps_d < 1)
        throw ConfigError("time.steps must be an integer >= 1");
    const int steps = int(steps_d);
    const int level = int(number_at(cfg, "initial.level", 1.0));
    const int photons = int(number_at(cfg, "initial.photons", 0.0));
    const int dark_upto = int(number_at(cfg, "dark.n_upto", 3.0));
    bool strong = false;
    if (const auto it = cfg.find("strong"); it != cfg.end()) {
        if (!it->second.is_boolean())
            throw ConfigError("strong must be a boolean");
        strong = it->second.get<bool>();
    }
    if (dark_upto < 0) throw ConfigError("dark.n_upto must be >= 0");

    qlight_state* init = nullptr;
    qlight_status st = qlight_basis_state(&base, level, photons, &init);
    if (st != QLIGHT_OK) throw ConfigError(qlight_strerror(st));

    std::vector<qlight_state*> states(size_t(steps) + 1, nullptr);
    st = qlight_evolve(&base, init, t0, t1, steps, states.data());
    qlight_state_free(init);
    if (st != QLIGHT_OK) {
        for (auto* s : states) qlight_state_free(s);
        std::cerr << "timeevo: " << qlight_strerror(st) << "\n";
        return 2;
    }

    out << "# qlight timeevo\n";
    describe_params(out, base);
    out << "# time=[" << fmt(t0) << "," << fmt(t1) << "] steps=" << steps
        << "\n# initial=|" << level << "," << photons << ">\n";
    out << "t,n_photon,p33";
    for (int n = 0; n <= dark_upto; ++n) out << ",dark_p" << n;
    if (strong) out << ",cat_fidelity";
    out << "\n";

    int code = 0;
    std::vector<double> pops(size_t(dark_upto) + 1);
    for (int i = 0; i <= steps; ++i) {
        const double t = t0 + (t1 - t0) * double(i) / steps;
        qlight_observables obs{};
        st = qlight_observe(states[size_t(i)], &obs);
        if (st == QLIGHT_OK)
            st = qlight_dark_populations(states[size_t(i)], &base, dark_upto,
                                         pops.data());
        double fid = 0.0;
        if (st == QLIGHT_OK && strong)
            st = qlight_cat_fidelity(&base, states[size_t(i)], t, 1, &fid);
        if (st != QLIGHT_OK) {
            out << fmt(t) << ",error:" << qlight_strerror(st) << "\n";
            code = 2;
            continue;
        }
        out << fmt(t) << "," << fmt(obs.n_photon) << "," << fmt(obs.p33);
        for (const double p : pops) out << "," << fmt(p);
        if (strong) out << "," << fmt(fid);
        out << "\n";
    }
    for (auto* s : states) qlight_state_free(s);
    return code;
}

// ---- darkstates ----

int run_darkstates(const Config&, const qlight_params& base,
                   std::ofstream& out) {
    int n_max = base.n_max;
    if (n_max == 0) {
        const qlight_status st = qlight_resolve_n_max(&base, &n_max);
        if (st != QLIGHT_OK) throw ConfigError(qlight_strerror(st));
    }
    out << "# qlight darkstates\n";
    describe_params(out, base);
    out << "n,q,r,decay,e_plus,e_minus,coupling_next\n";
    for (int n = 0; n <= n_max; ++n) {
        qlight_dark_row row{};
        const qlight_status st = qlight_dark_report(&base, n, &row);
        if (st != QLIGHT_OK) throw ConfigError(qlight_strerror(st));
        out << n << "," << fmt(row.q) << "," << fmt(row.r) << ","
            << fmt(row.decay) << "," << fmt(row.e_plus) << ","
            << fmt(row.e_minus) << ","
            << (n == n_max ? std::string() : fmt(row.coupling_next)) << "\n";
    }
    return 0;
}

// ---- catscan ----

// Closed system only: decay is forced off, the state is evolved from
// |1,0> under the full Hamiltonian and compared to the analytic cat.
int run_catscan(const Config& cfg, qlight_params base, std::ofstream& out) {
    if (base.omega12 <= 0.0 || base.g <= 0.0)
        throw ConfigError("catscan requires params.omega12 > 0 and g > 0");
    const double theta_max = number_at(cfg, "catscan.theta_max", M_PI);
    const double count_d = number_at(cfg, "catscan.count", 32.0);
    if (!(theta_max > 0.0)) throw ConfigError("catscan.theta_max must be > 0");
    if (count_d != std::floor(count_d) || count_d < 1)
        throw ConfigError("catscan.count must be an integer >= 1");
    const int count = int(count_d);

    base.kappa = 0.0;
    base.gamma31 = 0.0;
    base.gamma32 = 0.0;
    if (base.n_max == 0) base.n_max = 12;
    const double t_max = theta_max * 2.0 * base.omega12 / (base.g * base.g);

    qlight_state* init = nullptr;
    qlight_status st = qlight_basis_state(&base, 1, 0, &init);
    if (st != QLIGHT_OK) throw ConfigError(qlight_strerror(st));
    std::vector<qlight_state*> states(size_t(count) + 1, nullptr);
    st = qlight_evolve(&base, init, 0.0, t_max, count, states.data());
    qlight_state_free(init);
    if (st != QLIGHT_OK) {
        for (auto* s : states) qlight_state_free(s);
        std::cerr << "catscan: " << qlight_strerror(st) << "\n";
        return 2;
    }

    out << "# qlight catscan\n";
    describe_params(out, base);
    out << "# catscan theta_max=" << fmt(theta_max) << " count=" << count
        << "\n";
    out << "theta_rot,t,phi,alpha_plus_re,alpha_plus_im,alpha_minus_re,"
           "alpha_minus_im,fidelity\n";
    int code = 0;
    for (int i = 0; i <= count; ++i) {
        const double t = t_max * double(i) / count;
        const double theta = theta_max * double(i) / count;
        qlight_cat cat{};
        double fid = 0.0;
        st = qlight_cat_state(&base, t, &cat);
        if (st == QLIGHT_OK)
            st = qlight_cat_fidelity(&base, states[size_t(i)], t, 1, &fid);
        if (st != QLIGHT_OK) {
            out << fmt(theta) << ",error:" << qlight_strerror(st) << "\n";
            code = 2;
            continue;
        }
        out << fmt(theta) << "," << fmt(t) << "," << fmt(cat.phi) << ","
            << fmt(cat.alpha_plus_re) << "," << fmt(cat.alpha_plus_im) << ","
            << fmt(cat.alpha_minus_re) << "," << fmt(cat.alpha_minus_im)
            << "," << fmt(fid) << "\n";
    }
    for (auto* s : states) qlight_state_free(s);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cavity QED wave-mixing toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, n_max_flag, delta_flag;
    int workers = 1;
    for (const char* name : {"sweep", "timeevo", "darkstates", "catscan"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "config file")->required();
        sub->add_option("--out", out_path, "output CSV path");
        sub->add_option("--workers", workers, "worker thread count");
        sub->add_option("--n-max", n_max_flag, "Fock truncation or 'auto'");
        sub->add_option("--delta", delta_flag, "cavity detuning or 'auto'");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string mode = app.get_subcommands().front()->get_name();

    try {
        if (workers < 1) throw ConfigError("--workers must be >= 1");
        const Config cfg = load_config(config_path);
        qlight_params base = params_from(cfg);
        apply_overrides(base, n_max_flag, delta_flag);
        std::ofstream out = open_output(cfg, out_path);
        if (mode == "sweep") return run_sweep(cfg, base, out, workers);
        if (mode == "timeevo") return run_timeevo(cfg, base, out);
        if (mode == "darkstates") return run_darkstates(cfg, base, out);
        return run_catscan(cfg, base, out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
