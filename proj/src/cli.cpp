#include "horn/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "horn/analytic.hpp"
#include "horn/experiment.hpp"
#include "horn/sampling.hpp"
#include "horn/support.hpp"
#include "horn/types.hpp"

namespace horn {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSuite = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw UsageError("bad number in list: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty number list");
    return out;
}

EnsembleKind parse_ensemble(const std::string& name) {
    if (name == "hermitian") return EnsembleKind::HermitianU;
    if (name == "symmetric") return EnsembleKind::SymmetricO;
    if (name == "skew-o") return EnsembleKind::SkewO;
    if (name == "skew-so") return EnsembleKind::SkewSO;
    throw UsageError("unknown ensemble '" + name +
                     "' (expected hermitian|symmetric|skew-o|skew-so)");
}

SkewGroup skew_group_for(EnsembleKind kind, int n) {
    const bool special = kind == EnsembleKind::SkewSO;
    if (n % 2 == 0) return special ? SkewGroup::SO_even : SkewGroup::O_even;
    return special ? SkewGroup::SO_odd : SkewGroup::O_odd;
}

/// Common flag bundle shared by the data-producing subcommands.
struct CommonArgs {
    std::string ensemble = "hermitian";
    int n = 0;
    std::string alpha_str, beta_str;
    std::uint64_t n_samples = 100000;
    std::uint64_t seed = 0;
    int grid = 100;
    std::string out;
    std::string format = "csv";
    std::string config_file;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_samples) {
    cmd->add_option("--ensemble", a.ensemble, "hermitian|symmetric|skew-o|skew-so");
    cmd->add_option("-n", a.n, "ambient matrix size");
    cmd->add_option("--alpha", a.alpha_str, "comma-separated spectrum");
    cmd->add_option("--beta", a.beta_str, "comma-separated spectrum");
    if (with_samples) {
        cmd->add_option("-N,--samples", a.n_samples, "Monte-Carlo sample count");
        cmd->add_option("--seed", a.seed, "RNG seed");
    }
    cmd->add_option("--grid", a.grid, "bins per axis");
    cmd->add_option("--out", a.out, "output path prefix");
    cmd->add_option("--format", a.format, "csv|json|svg");
}

RunConfig build_config(const CommonArgs& a) {
    if (a.alpha_str.empty()) throw UsageError("missing --alpha");
    if (a.beta_str.empty()) throw UsageError("missing --beta");
    const EnsembleKind kind = parse_ensemble(a.ensemble);
    const std::vector<double> av = parse_list(a.alpha_str);
    const std::vector<double> bv = parse_list(a.beta_str);

    std::optional<RunConfig> cfg;
    if (kind == EnsembleKind::HermitianU || kind == EnsembleKind::SymmetricO) {
        const int n = a.n > 0 ? a.n : static_cast<int>(av.size());
        if (static_cast<int>(av.size()) != n || static_cast<int>(bv.size()) != n)
            throw UsageError("spectrum length does not match -n " + std::to_string(n));
        RunConfig c;
        c.ensemble = Ensemble(kind, n);
        c.alpha = Spectrum(av);
        c.beta = Spectrum(bv);
        cfg = std::move(c);
    } else {
        const int n = a.n > 0 ? a.n : 2 * static_cast<int>(av.size());
        const int m = n / 2;
        if (static_cast<int>(av.size()) != m || static_cast<int>(bv.size()) != m)
            throw UsageError("skew spectrum must list the m = floor(n/2) block values");
        const SkewGroup g = skew_group_for(kind, n);
        RunConfig c;
        c.ensemble = Ensemble(kind, n);
        c.skew_alpha = SkewSpectrum(av, g);
        c.skew_beta = SkewSpectrum(bv, g);
        cfg = std::move(c);
    }
    cfg->n_samples = a.n_samples;
    cfg->seed = a.seed;
    return *std::move(cfg);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    return os;
}

std::string format_full(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

std::string format_human(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

// ---------------------------------------------------------------------------
// SVG heatmap (rects + polyline overlays, linear color map)

std::string color_for(double t) {
    // two-stop gradient, dark blue to yellow
    t = std::clamp(t, 0.0, 1.0);
    const int r = static_cast<int>(20 + t * (250 - 20));
    const int g = static_cast<int>(20 + t * (220 - 20));
    const int b = static_cast<int>(90 + t * (50 - 90));
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

struct SvgMap {
    GridSpec grid;
    double px = 560.0, pad = 20.0;

    double sx(double x) const {
        return pad + (x - grid.xmin) / (grid.xmax - grid.xmin) * px;
    }
    double sy(double y) const {
        return pad + (grid.ymax - y) / (grid.ymax - grid.ymin) * px;
    }
};

void write_svg_heatmap(std::ostream& os, const GridSpec& grid,
                       const std::vector<double>& values,
                       const std::vector<std::vector<std::array<double, 2>>>& overlays) {
    const SvgMap m{grid};
    double vmax = 0.0;
    for (double v : values)
        if (std::isfinite(v)) vmax = std::max(vmax, v);
    if (vmax <= 0.0) vmax = 1.0;
    const double side = m.px + 2 * m.pad;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << side << "\" height=\"" << side
       << "\">\n";
    const double bw = m.px / grid.nx, bh = m.px / grid.ny;
    for (int iy = 0; iy < grid.ny; ++iy) {
        for (int ix = 0; ix < grid.nx; ++ix) {
            const double v = values[static_cast<size_t>(iy) * grid.nx + ix];
            // non-finite markers clip to the top color
            const double t = std::isfinite(v) ? v / vmax : 1.0;
            os << "<rect x=\"" << m.pad + ix * bw << "\" y=\"" << m.pad + (grid.ny - 1 - iy) * bh
               << "\" width=\"" << bw + 0.5 << "\" height=\"" << bh + 0.5 << "\" fill=\""
               << color_for(t) << "\"/>\n";
        }
    }
    for (const auto& poly : overlays) {
        if (poly.size() < 2) continue;
        os << "<polyline fill=\"none\" stroke=\"white\" stroke-width=\"1.5\" points=\"";
        for (const auto& p : poly) os << m.sx(p[0]) << "," << m.sy(p[1]) << " ";
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

std::vector<std::vector<std::array<double, 2>>> overlays_for(const RunConfig& cfg) {
    std::vector<std::vector<std::array<double, 2>>> out;
    if (cfg.ensemble.kind == EnsembleKind::HermitianU && cfg.ensemble.n == 3) {
        const PolygonN3 poly = polygon_n3(*cfg.alpha, *cfg.beta);
        auto ring = poly.vertices;
        if (!ring.empty()) ring.push_back(ring.front());
        out.push_back(std::move(ring));
    }
    if (cfg.ensemble.kind == EnsembleKind::SymmetricO && cfg.ensemble.n == 3) {
        const PolygonN3 poly = polygon_n3(*cfg.alpha, *cfg.beta);
        auto ring = poly.vertices;
        if (!ring.empty()) ring.push_back(ring.front());
        out.push_back(std::move(ring));
        for (const Segment& seg : enhancement_lines_n3(*cfg.alpha, *cfg.beta))
            out.push_back({seg.a, seg.b});
    }
    return out;
}

// ---------------------------------------------------------------------------
// pdf

int cmd_pdf(const CommonArgs& args) {
    RunConfig cfg = build_config(args);

    if ((cfg.ensemble.kind == EnsembleKind::SkewO || cfg.ensemble.kind == EnsembleKind::SkewSO) &&
        cfg.ensemble.n == 2) {
        // pure-point law: emit the atom list instead of a grid
        const auto atoms = skew_atoms_n2(*cfg.skew_alpha, *cfg.skew_beta);
        const std::string path = (args.out.empty() ? "pdf" : args.out) + "_atoms.csv";
        auto os = open_out(path);
        os << "location,weight\n";
        for (const Atom& a : atoms)
            os << format_full(a.location) << "," << format_full(a.weight) << "\n";
        std::cout << "wrote " << path << " (" << atoms.size() << " atoms)\n";
        return kExitOk;
    }

    Density2D pdf;
    try {
        pdf = analytic_density_for(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "out of scope: " << e.what()
                  << "\nno analytic density here; use `sample` (Monte-Carlo) instead\n";
        return kExitUsage;
    }

    cfg.grid = support_window(cfg, args.grid, args.grid);
    const GridSpec& g = cfg.grid;
    std::vector<double> values(static_cast<size_t>(g.nx) * g.ny, 0.0);
    for (int iy = 0; iy < g.ny; ++iy) {
        const double y = g.ymin + (iy + 0.5) * g.bin_width_y();
        for (int ix = 0; ix < g.nx; ++ix) {
            const double x = g.xmin + (ix + 0.5) * g.bin_width_x();
            values[static_cast<size_t>(iy) * g.nx + ix] = pdf(x, y);
        }
    }

    const std::string prefix = args.out.empty() ? "pdf" : args.out;
    {
        auto os = open_out(prefix + ".csv");
        os << "x,y,density\n";
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                os << format_full(g.xmin + (ix + 0.5) * g.bin_width_x()) << ","
                   << format_full(g.ymin + (iy + 0.5) * g.bin_width_y()) << ","
                   << format_full(values[static_cast<size_t>(iy) * g.nx + ix]) << "\n";
        std::cout << "wrote " << prefix << ".csv\n";
    }
    if (args.format == "svg") {
        auto os = open_out(prefix + ".svg");
        write_svg_heatmap(os, g, values, overlays_for(cfg));
        std::cout << "wrote " << prefix << ".svg\n";
    } else if (args.format == "json") {
        json j;
        j["grid"] = {{"xmin", g.xmin}, {"xmax", g.xmax}, {"nx", g.nx},
                     {"ymin", g.ymin}, {"ymax", g.ymax}, {"ny", g.ny}};
        j["density"] = values;
        auto os = open_out(prefix + ".json");
        os << j.dump(1) << "\n";
        std::cout << "wrote " << prefix << ".json\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// sample

int run_one_sample(RunConfig cfg, int grid_bins, const std::string& out,
                   const std::string& format) {
    cfg.grid = support_window(cfg, grid_bins, grid_bins);
    const HistogramGrid hist = run_mc(cfg);
    const std::string prefix = out.empty() ? "sample" : out;
    {
        auto os = open_out(prefix + ".csv");
        write_histogram_csv(os, hist);
        std::cout << "wrote " << prefix << ".csv (" << hist.total << " samples, "
                  << hist.overflow << " overflow, " << hist.degenerate_samples
                  << " degenerate)\n";
    }
    if (format == "svg") {
        std::vector<double> values(hist.counts.size());
        for (size_t i = 0; i < values.size(); ++i) values[i] = static_cast<double>(hist.counts[i]);
        auto os = open_out(prefix + ".svg");
        write_svg_heatmap(os, hist.grid, values, overlays_for(cfg));
        std::cout << "wrote " << prefix << ".svg\n";
    }
    return kExitOk;
}

/// Batch config: blank-line-separated blocks of "key value" lines with keys
/// ensemble, n, alpha, beta, samples, seed, grid, out.
int run_batch(const std::string& path, const std::string& format) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot read config '" + path + "'");
    std::vector<std::map<std::string, std::string>> blocks(1);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') {
            if (!blocks.back().empty()) blocks.emplace_back();
            continue;
        }
        std::istringstream ls(line);
        std::string key, value;
        ls >> key;
        std::getline(ls, value);
        const size_t start = value.find_first_not_of(" \t");
        blocks.back()[key] = start == std::string::npos ? "" : value.substr(start);
    }
    int index = 0;
    for (const auto& block : blocks) {
        if (block.empty()) continue;
        CommonArgs a;
        auto get = [&](const char* key) {
            auto it = block.find(key);
            return it == block.end() ? std::string() : it->second;
        };
        if (!get("ensemble").empty()) a.ensemble = get("ensemble");
        if (!get("n").empty()) a.n = std::stoi(get("n"));
        a.alpha_str = get("alpha");
        a.beta_str = get("beta");
        if (!get("samples").empty()) a.n_samples = std::stoull(get("samples"));
        if (!get("seed").empty()) a.seed = std::stoull(get("seed"));
        if (!get("grid").empty()) a.grid = std::stoi(get("grid"));
        a.out = get("out").empty() ? "sample_" + std::to_string(index) : get("out");
        const int rc = run_one_sample(build_config(a), a.grid, a.out, format);
        if (rc != kExitOk) return rc;
        ++index;
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

RunConfig config_from_histogram(const HistogramGrid& hist) {
    CommonArgs a;
    a.ensemble = hist.ensemble;
    a.n = hist.n;
    auto join = [](const std::vector<double>& v) {
        std::string s;
        for (double x : v) {
            if (!s.empty()) s += ",";
            s += format_full(x);
        }
        return s;
    };
    a.alpha_str = join(hist.alpha);
    a.beta_str = join(hist.beta);
    a.n_samples = hist.total;
    a.seed = hist.seed;
    RunConfig cfg = build_config(a);
    cfg.grid = hist.grid;
    return cfg;
}

int cmd_compare(const std::string& in_path, const CommonArgs& args) {
    if (in_path.empty()) throw UsageError("compare: missing --in histogram file");
    std::ifstream is(in_path);
    if (!is) throw IoError("cannot read '" + in_path + "'");
    const HistogramGrid hist = read_histogram_csv(is);

    if (!args.ensemble.empty() && args.ensemble != "hermitian" &&
        args.ensemble != hist.ensemble) {
        std::cerr << "compare: --ensemble " << args.ensemble
                  << " does not match histogram metadata (" << hist.ensemble << ")\n";
        return kExitUsage;
    }
    RunConfig cfg = config_from_histogram(hist);
    if (args.n > 0 && args.n != cfg.ensemble.n) {
        std::cerr << "compare: -n " << args.n << " does not match histogram metadata (n = "
                  << cfg.ensemble.n << ")\n";
        return kExitUsage;
    }

    Density2D pdf;
    try {
        pdf = analytic_density_for(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "out of scope: " << e.what() << "\n";
        return kExitUsage;
    }
    const ComparisonReport rep = compare(hist, pdf);
    json j;
    j["l1_distance"] = rep.l1_distance;
    j["chi_square"] = rep.chi_square;
    j["dof"] = rep.dof;
    j["chi_square_p"] = rep.chi_square_p;
    j["max_cell_deviation"] = rep.max_cell_deviation;
    j["bins_used"] = rep.bins_used;
    std::cout << "L1 distance        " << format_human(rep.l1_distance) << "\n"
              << "chi-square         " << format_human(rep.chi_square) << " (" << rep.dof
              << " dof, p = " << format_human(rep.chi_square_p) << ")\n"
              << "max cell deviation " << format_human(rep.max_cell_deviation) << " sigma over "
              << rep.bins_used << " bins\n";
    if (!args.out.empty()) {
        auto os = open_out(args.out);
        os << j.dump(1) << "\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// check (invariant suite)

struct SuiteResult {
    std::string name;
    bool pass;
    std::string detail;
};

void suite_normalization(std::vector<SuiteResult>& results) {
    RngStream rng(2024, 0);
    auto random_spectrum = [&](int n) {
        std::vector<double> v(static_cast<size_t>(n));
        for (double& x : v) x = 4.0 * rng.uniform() - 2.0;
        std::sort(v.begin(), v.end(), std::greater<double>());
        for (int i = 1; i < n; ++i)
            if (v[static_cast<size_t>(i - 1)] - v[static_cast<size_t>(i)] < 0.15)
                v[static_cast<size_t>(i)] = v[static_cast<size_t>(i - 1)] - 0.15;
        return Spectrum(v);
    };
    const double targets[3] = {1.0, 0.5, 1.0 / 12.0};
    const double tols[3] = {1e-8, 1e-6, 1e-4};
    for (int n = 2; n <= 4; ++n) {
        const Spectrum a = random_spectrum(n), b = random_spectrum(n);
        const double value = normalization_check(a, b);
        const double err = std::abs(value - targets[n - 2]);
        results.push_back({"normalization n=" + std::to_string(n), err < tols[n - 2],
                           format_human(value) + " (target " + format_human(targets[n - 2]) +
                               ", err " + format_human(err) + ")"});
    }
}

void suite_spline(std::vector<SuiteResult>& results) {
    RngStream rng(7, 0);
    auto random_spectrum = [&](int n) {
        std::vector<double> v(static_cast<size_t>(n));
        for (double& x : v) x = 4.0 * rng.uniform() - 2.0;
        std::sort(v.begin(), v.end(), std::greater<double>());
        for (int i = 1; i < n; ++i)
            if (v[static_cast<size_t>(i - 1)] - v[static_cast<size_t>(i)] < 0.1)
                v[static_cast<size_t>(i)] = v[static_cast<size_t>(i - 1)] - 0.1;
        return Spectrum(v);
    };
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Spectrum a = random_spectrum(3), b = random_spectrum(3);
        const double s = a.sum() + b.sum();
        const double g1 = a[0] + b[0] - 3.0 * rng.uniform();
        const double g2 = g1 - 0.01 - 2.0 * rng.uniform();
        const double g3 = s - g1 - g2;
        if (!(g2 > g3 + 0.01)) continue;
        const Spectrum g = Spectrum::unchecked({g1, g2, g3});
        const double spline = j3_signed_sum(a, b, g);
        const auto [lo, hi] = xi_interval(a, b, g);
        worst = std::max(worst, std::abs(spline - std::max(hi - lo, 0.0)));
    }
    results.push_back({"spline vs honeycomb n=3", worst < 1e-10,
                       "max |J3 - xi length| = " + format_human(worst)});
}

void suite_hciz(std::vector<SuiteResult>& results) {
    // MC estimate of E[e^{i tr(x U a U*)}] vs the closed form, 5-sigma gate
    RngStream spectra_rng(11, 0);
    bool all_pass = true;
    std::string detail;
    for (int n = 2; n <= 3; ++n) {
        std::vector<double> av(static_cast<size_t>(n)), xv(static_cast<size_t>(n));
        for (double& v : av) v = 2.0 * spectra_rng.uniform() - 1.0;
        for (double& v : xv) v = 2.0 * spectra_rng.uniform() - 1.0;
        std::sort(av.begin(), av.end(), std::greater<double>());
        std::sort(xv.begin(), xv.end(), std::greater<double>());
        for (int i = 1; i < n; ++i) {
            if (av[static_cast<size_t>(i - 1)] - av[static_cast<size_t>(i)] < 0.2)
                av[static_cast<size_t>(i)] = av[static_cast<size_t>(i - 1)] - 0.2;
            if (xv[static_cast<size_t>(i - 1)] - xv[static_cast<size_t>(i)] < 0.2)
                xv[static_cast<size_t>(i)] = xv[static_cast<size_t>(i - 1)] - 0.2;
        }
        const Spectrum alpha(av);
        const std::complex<double> exact = hciz_unitary(alpha, xv);
        const int n_mc = 200000;
        std::complex<double> sum = 0.0, sum_sq = 0.0;
        Eigen::MatrixXcd da = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) da(i, i) = av[static_cast<size_t>(i)];
        for (int k = 0; k < n_mc; ++k) {
            RngStream rng(99, static_cast<std::uint64_t>(k));
            const Eigen::MatrixXcd u = haar_unitary(n, rng);
            const Eigen::MatrixXcd m = u * da * u.adjoint();
            std::complex<double> tr = 0.0;
            for (int i = 0; i < n; ++i) tr += xv[static_cast<size_t>(i)] * m(i, i);
            const std::complex<double> val = std::exp(std::complex<double>(0.0, 1.0) * tr);
            sum += val;
            sum_sq += std::complex<double>(val.real() * val.real(), val.imag() * val.imag());
        }
        const std::complex<double> mean = sum / static_cast<double>(n_mc);
        auto se = [&](double m2, double m1) {
            return std::sqrt(std::max(m2 / n_mc - m1 * m1, 0.0) / n_mc);
        };
        const double se_re = se(sum_sq.real(), mean.real());
        const double se_im = se(sum_sq.imag(), mean.imag());
        const bool ok = std::abs(mean.real() - exact.real()) < 5.0 * se_re + 1e-12 &&
                        std::abs(mean.imag() - exact.imag()) < 5.0 * se_im + 1e-12;
        all_pass = all_pass && ok;
        detail += "n=" + std::to_string(n) + (ok ? " ok " : " FAIL ");
    }
    results.push_back({"HCIZ vs MC", all_pass, detail});
}

void suite_support(std::vector<SuiteResult>& results) {
    bool all_pass = true;
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
        std::vector<double> av, bv;
        for (int i = 0; i < n; ++i) {
            av.push_back(static_cast<double>(n - i) * 0.7);
            bv.push_back(static_cast<double>(n - i) * 0.4 - 0.3);
        }
        const Spectrum alpha(av), beta(bv);
        for (int k = 0; k < 2000; ++k) {
            RngStream rng(5, static_cast<std::uint64_t>(k));
            const Spectrum g = sample_gamma_hermitian(alpha, beta, rng);
            const SupportVerdict v = check_horn(alpha, beta, g);
            if (!v.inside) worst = std::min(worst, v.margin);
            all_pass = all_pass && (v.inside || v.margin > -1e-8);
        }
    }
    results.push_back({"MC samples inside Horn support", all_pass,
                       "worst outside margin " + format_human(worst)});
}

int cmd_check(const std::string& suite) {
    std::vector<SuiteResult> results;
    if (suite == "all" || suite == "normalization") suite_normalization(results);
    if (suite == "all" || suite == "spline") suite_spline(results);
    if (suite == "all" || suite == "hciz") suite_hciz(results);
    if (suite == "all" || suite == "support") suite_support(results);
    if (results.empty()) throw UsageError("unknown suite '" + suite + "'");
    bool all_pass = true;
    for (const SuiteResult& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  " << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitSuite;
}

// ---------------------------------------------------------------------------
// hciz / support

int cmd_hciz(const CommonArgs& args, const std::string& x_str) {
    const EnsembleKind kind = parse_ensemble(args.ensemble);
    if (kind == EnsembleKind::HermitianU) {
        if (args.alpha_str.empty() || x_str.empty())
            throw UsageError("hciz: need --alpha and --x");
        const Spectrum alpha(parse_list(args.alpha_str));
        std::vector<double> x = parse_list(x_str);
        const std::complex<double> v = hciz_unitary(alpha, x);
        std::cout << format_full(v.real()) << (v.imag() < 0 ? " - " : " + ")
                  << format_full(std::abs(v.imag())) << "i\n";
        return kExitOk;
    }
    if (kind == EnsembleKind::SkewO || kind == EnsembleKind::SkewSO) {
        RunConfig cfg = build_config(args);
        std::cout << format_full(hc_orthogonal(*cfg.skew_alpha, *cfg.skew_beta)) << "\n";
        return kExitOk;
    }
    std::cerr << "out of scope: no closed-form orbital integral for the symmetric ensemble\n";
    return kExitUsage;
}

int cmd_support(const CommonArgs& args, const std::string& gamma_str, bool emit_polygon) {
    RunConfig cfg = build_config(args);
    if (cfg.ensemble.kind != EnsembleKind::HermitianU &&
        cfg.ensemble.kind != EnsembleKind::SymmetricO)
        throw UsageError("support: Horn inequalities apply to the hermitian/symmetric cases");

    if (emit_polygon) {
        if (cfg.ensemble.n != 3) throw UsageError("support: --polygon needs -n 3");
        const PolygonN3 poly = polygon_n3(*cfg.alpha, *cfg.beta);
        const std::string path = (args.out.empty() ? "support_polygon" : args.out) + ".csv";
        auto os = open_out(path);
        os << polygon_csv(poly);
        std::cout << "wrote " << path << " (" << poly.vertices.size() << " vertices, area "
                  << format_human(poly.area()) << ")\n";
        if (gamma_str.empty()) return kExitOk;
    }
    if (gamma_str.empty()) throw UsageError("support: missing --gamma");
    const Spectrum gamma(parse_list(gamma_str));
    const SupportVerdict v = check_horn(*cfg.alpha, *cfg.beta, gamma);
    std::cout << (v.inside ? "inside" : "outside") << "  margin " << format_full(v.margin)
              << "\n";
    for (const std::string& name : v.active) std::cout << "active: " << name << "\n";
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Eigenvalue densities of sums of random matrices with fixed spectra"};
    app.require_subcommand(1);

    CommonArgs pdf_args, sample_args, compare_args, hciz_args, support_args;
    std::string compare_in, check_suite = "all", hciz_x, support_gamma;
    bool support_polygon = false;

    CLI::App* pdf_cmd = app.add_subcommand("pdf", "evaluate the analytic density on a grid");
    add_common(pdf_cmd, pdf_args, false);

    CLI::App* sample_cmd = app.add_subcommand("sample", "Monte-Carlo histogram of C = A + B");
    add_common(sample_cmd, sample_args, true);
    sample_cmd->add_option("--config", sample_args.config_file, "batch run config file");

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "compare a sampled histogram with the analytic density");
    add_common(compare_cmd, compare_args, false);
    compare_cmd->add_option("--in", compare_in, "histogram CSV from `sample`");

    CLI::App* check_cmd = app.add_subcommand("check", "run the invariant suite");
    check_cmd->add_option("--suite", check_suite, "all|normalization|spline|hciz|support");

    CLI::App* hciz_cmd = app.add_subcommand("hciz", "evaluate the orbital integral");
    add_common(hciz_cmd, hciz_args, false);
    hciz_cmd->add_option("--x", hciz_x, "comma-separated evaluation point");

    CLI::App* support_cmd = app.add_subcommand("support", "Horn support membership / polygon");
    add_common(support_cmd, support_args, false);
    support_cmd->add_option("--gamma", support_gamma, "comma-separated candidate spectrum");
    support_cmd->add_flag("--polygon", support_polygon, "emit the n=3 support polygon CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (pdf_cmd->parsed()) return cmd_pdf(pdf_args);
        if (sample_cmd->parsed()) {
            if (!sample_args.config_file.empty())
                return run_batch(sample_args.config_file, sample_args.format);
            return run_one_sample(build_config(sample_args), sample_args.grid, sample_args.out,
                                  sample_args.format);
        }
        if (compare_cmd->parsed()) return cmd_compare(compare_in, compare_args);
        if (check_cmd->parsed()) return cmd_check(check_suite);
        if (hciz_cmd->parsed()) return cmd_hciz(hciz_args, hciz_x);
        if (support_cmd->parsed()) return cmd_support(support_args, support_gamma, support_polygon);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid request: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}

}  // namespace horn
