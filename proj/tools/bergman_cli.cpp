#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "bergman/acceptance.hpp"
#include "bergman/asymptotics.hpp"
#include "bergman/errors.hpp"
#include "bergman/svg.hpp"
#include "bergman/zeros.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace bergman;

namespace {

struct Options {
    std::string family = "cassini";
    std::optional<double> R, S, s, x0, y0;
    int n_max = 40;
    int precision_bits = 512;
    std::uint64_t seed = 0;
    int jobs = 0;
    std::string out = "out";
    std::vector<int> ns;                  // zeros: which p_n
    int resolution = 81;                  // regions
    std::vector<double> bbox;             // regions: x0 x1 y0 y1
    int n_lo = 10, n_hi = 0;              // asymptotics
    int probes = 10;                      // asymptotics
    std::vector<std::string> only;        // verify
};

int env_default_bits() {
    if (const char* v = std::getenv("BERGMAN_PRECISION_BITS")) {
        int bits = std::atoi(v);
        if (bits > 0) return bits;
    }
    return 512;
}

// --config JSON supplies defaults; explicit flags still win because CLI11
// only overwrites bound variables when the flag is present
void apply_config(Options& o, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not readable: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    auto num = [&](const char* k, auto& target) {
        if (j.contains(k)) target = j[k].template get<std::decay_t<decltype(target)>>();
    };
    if (j.contains("family")) o.family = j["family"].get<std::string>();
    for (auto [k, slot] : {std::pair<const char*, std::optional<double>*>{"R", &o.R},
                           {"S", &o.S}, {"s", &o.s}, {"x0", &o.x0}, {"y0", &o.y0}})
        if (j.contains(k)) *slot = j[k].get<double>();
    num("n_max", o.n_max);
    num("precision_bits", o.precision_bits);
    num("seed", o.seed);
    num("jobs", o.jobs);
    num("resolution", o.resolution);
    num("n_lo", o.n_lo);
    num("n_hi", o.n_hi);
    num("probes", o.probes);
    if (j.contains("out")) o.out = j["out"].get<std::string>();
    if (j.contains("n")) o.ns = j["n"].get<std::vector<int>>();
    if (j.contains("bbox")) o.bbox = j["bbox"].get<std::vector<double>>();
    if (j.contains("only")) o.only = j["only"].get<std::vector<std::string>>();
}

JordanDomain make_domain(const Options& o) {
    Family f = family_from_name(o.family);
    switch (f) {
        case Family::disk:
            return JordanDomain::disk(o.x0.value_or(0), o.y0.value_or(0),
                                      o.s.value_or(1));
        case Family::ellipse:
            return JordanDomain::ellipse(o.S.value_or(2.0));
        case Family::cassini:
            return JordanDomain::cassini(o.R.value_or(0.8926));
        case Family::joukowsky:
            return JordanDomain::joukowsky(o.R.value_or(2.5));
    }
    throw ConfigError("unknown family");
}

fs::path out_dir(const Options& o, const char* command) {
    fs::path dir = fs::path(o.out) / o.family / command;
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw Error("could not write " + p.string());
    std::cout << "wrote " << p.string() << "\n";
}

BBox default_bbox(const JordanDomain& d) {
    auto curve = level_curve(d, Real(1), 256);
    double x0 = 1e30, x1 = -1e30, y0 = 1e30, y1 = -1e30;
    for (const Cx& z : curve) {
        double x = static_cast<double>(z.re), y = static_cast<double>(z.im);
        x0 = std::min(x0, x); x1 = std::max(x1, x);
        y0 = std::min(y0, y); y1 = std::max(y1, y);
    }
    double mx = 0.06 * (x1 - x0), my = 0.06 * (y1 - y0);
    return BBox{x0 - mx, x1 + mx, y0 - my, y1 + my};
}

// run fn(i) for i in [0, count) on a small worker pool
void parallel_for(int count, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
            sync_thread_precision();
            for (int i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

int cmd_basis(const Options& o) {
    JordanDomain d = make_domain(o);
    OrthoBasis b =
        compute_basis(d, o.n_max, PrecisionConfig::with_bits(o.precision_bits));
    fs::path dir = out_dir(o, "basis");
    write_file(dir / "basis.json", basis_to_json(b));
    write_file(dir / "basis.csv", basis_to_csv(b));
    std::cout << "orthonormality residual: "
              << static_cast<double>(gram_residual(b)) << "\n";
    return 0;
}

int cmd_zeros(const Options& o) {
    JordanDomain d = make_domain(o);
    OrthoBasis b =
        compute_basis(d, o.n_max, PrecisionConfig::with_bits(o.precision_bits));
    std::vector<int> ns = o.ns.empty() ? std::vector<int>{o.n_max} : o.ns;
    for (int n : ns)
        if (n < 1 || n > o.n_max)
            throw ConfigError("zeros: n must be in 1..n_max");
    std::vector<std::vector<RootAtom>> roots(ns.size());
    parallel_for(static_cast<int>(ns.size()), o.jobs,
                 [&](int i) { roots[i] = find_zeros(b, ns[i], o.seed); });
    fs::path dir = out_dir(o, "zeros");
    std::string csv;
    for (size_t i = 0; i < ns.size(); ++i) {
        std::string one = roots_to_csv(ns[i], roots[i]);
        csv += i == 0 ? one : one.substr(one.find('\n') + 1);
        write_file(dir / ("zeros_" + std::to_string(ns[i]) + ".svg"),
                   svg_zero_scatter(d, roots[i], ns[i]));
    }
    write_file(dir / "roots.csv", csv);
    return 0;
}

int cmd_regions(const Options& o) {
    JordanDomain d = make_domain(o);
    BBox box;
    if (o.bbox.empty()) {
        box = default_bbox(d);
    } else if (o.bbox.size() == 4) {
        box = BBox{o.bbox[0], o.bbox[1], o.bbox[2], o.bbox[3]};
    } else {
        throw ConfigError("bbox needs exactly four numbers: x0 x1 y0 y1");
    }
    RegionMap m = region_map(d, box, o.resolution);
    fs::path dir = out_dir(o, "regions");
    write_file(dir / "regions.csv", region_map_to_csv(m));
    write_file(dir / "regions.svg", svg_region_map(m));
    if (d.family() == Family::cassini)
        write_file(dir / "gamma.svg", svg_gamma_curve(d, 400));
    return 0;
}

int cmd_asymptotics(const Options& o) {
    JordanDomain d = make_domain(o);
    OrthoBasis b =
        compute_basis(d, o.n_max, PrecisionConfig::with_bits(o.precision_bits));
    int n_hi = o.n_hi > 0 ? o.n_hi : o.n_max;
    if (o.n_lo < 0 || o.n_lo > n_hi || n_hi > o.n_max)
        throw ConfigError("asymptotics: need 0 <= n_lo <= n_hi <= n_max");

    // Sigma_1 probes: Schwarz reflections of outer level-curve samples
    std::vector<RegionSample> probes;
    for (double r : {1.04, 1.09, 1.15}) {
        for (int k = 0; k < 12 && static_cast<int>(probes.size()) < o.probes;
             ++k) {
            Cx z = schwarz_reflect(
                d, psi_eval(d, polar(Real(r), 2 * pi() * k / 12 + Real(0.15))));
            if (!contains(d, z)) continue;
            RegionSample s = classify(d, z);
            if (s.label == 1) probes.push_back(s);
        }
    }
    if (probes.empty()) throw ConfigError("asymptotics: no Sigma_1 probes");

    std::ostringstream csv;
    csv << "re(z),im(z),n,re(resid),im(resid),abs(resid)\n";
    json rates = json::array();
    for (const RegionSample& s : probes) {
        std::vector<int> ns;
        std::vector<Real> rs;
        for (int n = o.n_lo; n <= n_hi; ++n) {
            Cx h = strong_residual(b, s, n);
            csv << to_string(s.z.re) << "," << to_string(s.z.im) << "," << n
                << "," << to_string(h.re) << "," << to_string(h.im) << ","
                << to_string(abs(h)) << "\n";
            ns.push_back(n);
            rs.push_back(abs(h));
        }
        json entry = json::parse(ratefit_to_json(fit_decay_slope(ns, rs)));
        entry["z"] = {to_string(s.z.re), to_string(s.z.im)};
        rates.push_back(entry);
    }
    fs::path dir = out_dir(o, "asymptotics");
    write_file(dir / "residuals.csv", csv.str());
    write_file(dir / "rates.json", rates.dump(2));
    return 0;
}

int cmd_verify(const Options& o) {
    auto results = run_acceptance(o.only);
    fs::path dir = fs::path(o.out) / "verify";
    fs::create_directories(dir);
    write_file(dir / "report.json", acceptance_to_json(results));
    return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"area-orthonormal polynomials over analytic Jordan curves"};
    app.require_subcommand(1);

    Options o;
    o.precision_bits = env_default_bits();
    // config defaults must land before flag parsing; scan for it up front
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config(o, argv[i + 1]);
            } catch (const ConfigError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
        }

    std::string config_path;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config with defaults");
        cmd->add_option("--family", o.family,
                        "disk | ellipse | cassini | joukowsky");
        cmd->add_option("--R", o.R, "cassini (0<R<1) / joukowsky (R>2) size");
        cmd->add_option("--S", o.S, "ellipse parameter S>1");
        cmd->add_option("--s", o.s, "disk radius");
        cmd->add_option("--x0", o.x0, "disk center, real part");
        cmd->add_option("--y0", o.y0, "disk center, imaginary part");
        cmd->add_option("--n-max", o.n_max, "highest polynomial degree");
        cmd->add_option("--precision-bits", o.precision_bits,
                        "working precision");
        cmd->add_option("--seed", o.seed, "root-finder jitter seed");
        cmd->add_option("--jobs", o.jobs, "worker threads (0 = auto)");
        cmd->add_option("--out", o.out, "output directory root");
    };

    CLI::App* basis = app.add_subcommand("basis", "orthonormal coefficients");
    add_common(basis);
    CLI::App* zeros = app.add_subcommand("zeros", "roots of p_n");
    add_common(zeros);
    zeros->add_option("--n", o.ns, "degrees to solve (default: n-max)");
    CLI::App* regions =
        app.add_subcommand("regions", "Sigma_0/1/2 classification map");
    add_common(regions);
    regions->add_option("--resolution", o.resolution, "lattice points per axis");
    regions->add_option("--bbox", o.bbox, "x0 x1 y0 y1")->expected(4);
    CLI::App* asym =
        app.add_subcommand("asymptotics", "strong residual decay tables");
    add_common(asym);
    asym->add_option("--n-lo", o.n_lo, "lowest degree");
    asym->add_option("--n-hi", o.n_hi, "highest degree (default: n-max)");
    asym->add_option("--probes", o.probes, "number of Sigma_1 probe points");
    CLI::App* verify = app.add_subcommand("verify", "acceptance criteria");
    add_common(verify);
    verify->add_option("--only", o.only, "run criteria whose name matches");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (o.precision_bits < 128 || o.precision_bits % 64 != 0)
            throw ConfigError(
                "precision_bits must be a multiple of 64, at least 128");
        set_precision_bits(o.precision_bits);
        if (basis->parsed()) return cmd_basis(o);
        if (zeros->parsed()) return cmd_zeros(o);
        if (regions->parsed()) return cmd_regions(o);
        if (asym->parsed()) return cmd_asymptotics(o);
        if (verify->parsed()) return cmd_verify(o);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
