#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "horn/experiment.hpp"

using namespace horn;

namespace {

RunConfig hermitian_config(const Spectrum& alpha, const Spectrum& beta, std::uint64_t samples,
                           std::uint64_t seed, int bins) {
    RunConfig cfg;
    cfg.ensemble = Ensemble(EnsembleKind::HermitianU, alpha.n());
    cfg.alpha = alpha;
    cfg.beta = beta;
    cfg.n_samples = samples;
    cfg.seed = seed;
    cfg.grid = support_window(cfg, bins, bins);
    return cfg;
}

}  // namespace

TEST_CASE("quadrature helpers") {
    CHECK(integrate_1d([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    // integrable endpoint behavior through interior-node rule
    CHECK(integrate_1d([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 48) ==
          doctest::Approx(2.0).epsilon(1e-6));
    CHECK(integrate_triangle([](double, double) { return 1.0; }, {0.0, 0.0}, {1.0, 0.0},
                             {0.0, 1.0}, 1e-12) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(integrate_triangle([](double x, double y) { return x + y; }, {0.0, 0.0}, {1.0, 0.0},
                             {0.0, 1.0}, 1e-12) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("run_mc is reproducible and thread-count independent") {
    const RunConfig base =
        hermitian_config(Spectrum({1.0, 0.0, -1.0}), Spectrum({1.0, 0.0, -1.0}), 20000, 5, 40);
    const HistogramGrid h1 = run_mc(base);
    const HistogramGrid h2 = run_mc(base);
    CHECK(h1 == h2);

    RunConfig serial = base;
    serial.threads = 1;
    RunConfig wide = base;
    wide.threads = 7;
    CHECK(run_mc(serial).counts == run_mc(wide).counts);
    CHECK(run_mc(serial).overflow == run_mc(wide).overflow);
}

TEST_CASE("run_mc rejects an empty request") {
    RunConfig cfg =
        hermitian_config(Spectrum({1.0, 0.0}), Spectrum({1.0, 0.0}), 1, 0, 10);
    cfg.n_samples = 0;
    CHECK_THROWS_AS(run_mc(cfg), std::invalid_argument);
}

TEST_CASE("SO(2) histogram is a single cell at alpha + beta") {
    RunConfig cfg;
    cfg.ensemble = Ensemble(EnsembleKind::SkewSO, 2);
    cfg.skew_alpha = SkewSpectrum({1.25}, SkewGroup::SO_even);
    cfg.skew_beta = SkewSpectrum({0.75}, SkewGroup::SO_even);
    cfg.n_samples = 5000;
    cfg.seed = 3;
    cfg.grid = support_window(cfg, 50, 1);
    const HistogramGrid hist = run_mc(cfg);
    CHECK(hist.overflow == 0);
    int occupied = 0;
    for (std::uint64_t c : hist.counts)
        if (c > 0) ++occupied;
    CHECK(occupied == 1);
}

TEST_CASE("support window covers the n=3 polygon with margin") {
    const Spectrum alpha({1.5, 1.0, -2.0}), beta({2.0, 1.5, -3.5});
    const RunConfig cfg = hermitian_config(alpha, beta, 1, 0, 10);
    const auto bb = polygon_n3(alpha, beta).bounding_box();
    CHECK(cfg.grid.xmin < bb[0]);
    CHECK(cfg.grid.xmax > bb[1]);
    CHECK(cfg.grid.ymin < bb[2]);
    CHECK(cfg.grid.ymax > bb[3]);
}

TEST_CASE("matched n=2 comparison passes, perturbed spectra fail loudly") {
    const Spectrum alpha({1.0, 0.0}), beta({2.0, 0.0});
    const RunConfig cfg = hermitian_config(alpha, beta, 200000, 11, 40);
    const HistogramGrid hist = run_mc(cfg);

    const ComparisonReport good = compare(hist, analytic_density_for(cfg));
    CHECK(good.l1_distance < 0.03);
    CHECK(good.chi_square_p > 1e-4);
    CHECK(good.max_cell_deviation < 5.0);

    RunConfig wrong = cfg;
    wrong.beta = Spectrum({2.5, 0.0});
    const ComparisonReport bad = compare(hist, analytic_density_for(wrong));
    CHECK(bad.chi_square_p < 1e-6);
}

TEST_CASE("matched n=3 comparison passes") {
    const RunConfig cfg = hermitian_config(Spectrum({1.0, 0.0, -1.0}),
                                           Spectrum({1.0, 0.0, -1.0}), 200000, 13, 20);
    const HistogramGrid hist = run_mc(cfg);
    const ComparisonReport rep = compare(hist, analytic_density_for(cfg));
    CHECK(rep.l1_distance < 0.05);
    CHECK(rep.max_cell_deviation < 5.0);
    CHECK(rep.bins_used > 50);
}

TEST_CASE("disjoint support gives total-variation distance 2") {
    const Spectrum alpha({1.0, 0.0}), beta({2.0, 0.0});
    RunConfig cfg = hermitian_config(alpha, beta, 10000, 17, 20);
    // move the window entirely off the support
    cfg.grid.xmin = 10.0;
    cfg.grid.xmax = 11.0;
    const HistogramGrid hist = run_mc(cfg);
    CHECK(hist.overflow == hist.total);
    const ComparisonReport rep = compare(hist, analytic_density_for(cfg));
    CHECK(rep.l1_distance == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("histogram CSV round trip is lossless") {
    const RunConfig cfg = hermitian_config(Spectrum({1.0, 0.0, -1.0}),
                                           Spectrum({1.0, 0.0, -1.0}), 5000, 19, 25);
    const HistogramGrid hist = run_mc(cfg);
    std::stringstream ss;
    write_histogram_csv(ss, hist);
    const HistogramGrid back = read_histogram_csv(ss);
    CHECK(back == hist);

    const ComparisonReport r1 = compare(hist, analytic_density_for(cfg));
    const ComparisonReport r2 = compare(back, analytic_density_for(cfg));
    CHECK(r1.l1_distance == r2.l1_distance);
    CHECK(r1.chi_square == r2.chi_square);
}

TEST_CASE("normalization quadratures hit the exact constants") {
    CHECK(normalization_check(Spectrum({1.0, 0.0}), Spectrum({2.0, 0.5})) ==
          doctest::Approx(1.0).epsilon(1e-8));
    CHECK(normalization_check(Spectrum({1.5, 1.0, -2.0}), Spectrum({2.0, 1.5, -3.5})) ==
          doctest::Approx(0.5).epsilon(1e-6));
    CHECK(normalization_check(Spectrum({2.0, 1.0, 0.0, -3.0}),
                              Spectrum({1.0, 0.2, -0.4, -0.8}), 1e-5) ==
          doctest::Approx(1.0 / 12.0).epsilon(1.2e-3));
}

TEST_CASE("symmetric n=2 normalization survives the edge singularities") {
    CHECK(symmetric_n2_normalization(Spectrum({1.0, 0.0}), Spectrum({2.0, 0.0})) ==
          doctest::Approx(1.0).epsilon(1e-8));
    // gmin = 0: singular only at the upper edge
    CHECK(symmetric_n2_normalization(Spectrum({0.5, -0.5}), Spectrum({0.5, -0.5})) ==
          doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("skew n=3 and SO(4) comparisons against the analytic forms") {
    RunConfig cfg;
    cfg.ensemble = Ensemble(EnsembleKind::SkewO, 3);
    cfg.skew_alpha = SkewSpectrum({1.0}, SkewGroup::O_odd);
    cfg.skew_beta = SkewSpectrum({2.0}, SkewGroup::O_odd);
    cfg.n_samples = 200000;
    cfg.seed = 23;
    cfg.grid = support_window(cfg, 40, 1);
    const ComparisonReport rep = compare(run_mc(cfg), analytic_density_for(cfg));
    CHECK(rep.l1_distance < 0.03);
    CHECK(rep.max_cell_deviation < 5.0);

    RunConfig so4;
    so4.ensemble = Ensemble(EnsembleKind::SkewSO, 4);
    so4.skew_alpha = SkewSpectrum({2.0, 1.0}, SkewGroup::SO_even);
    so4.skew_beta = SkewSpectrum({1.0, 0.5}, SkewGroup::SO_even);
    so4.n_samples = 200000;
    so4.seed = 29;
    so4.grid = support_window(so4, 20, 20);
    const ComparisonReport rep4 = compare(run_mc(so4), analytic_density_for(so4));
    CHECK(rep4.l1_distance < 0.06);
    CHECK(rep4.max_cell_deviation < 5.0);
}
