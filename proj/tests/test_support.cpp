#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "horn/rng.hpp"
#include "horn/sampling.hpp"
#include "horn/support.hpp"

using namespace horn;

TEST_CASE("n=2 interval verdicts") {
    const Spectrum alpha({1.0, 0.0}), beta({2.0, 0.0});
    CHECK(check_horn_n2(alpha, beta, 2.5).inside);
    CHECK_FALSE(check_horn_n2(alpha, beta, 0.5).inside);
    const SupportVerdict edge = check_horn_n2(alpha, beta, 3.0);
    CHECK(edge.inside);
    CHECK(std::abs(edge.margin) < 1e-9);
    CHECK_FALSE(edge.active.empty());
    // both signs of the gap are allowed
    CHECK(check_horn_n2(alpha, beta, -2.5).inside);
}

TEST_CASE("n=3 verdicts") {
    const Spectrum alpha({1.0, 0.0, -1.0}), beta({1.0, 0.0, -1.0});
    CHECK(check_horn_n3(alpha, beta, Spectrum({1.2, 0.3, -1.5})).inside);
    CHECK_FALSE(check_horn_n3(alpha, beta, Spectrum({2.5, 0.0, -2.5})).inside);
    const SupportVerdict corner = check_horn_n3(alpha, beta, Spectrum({2.0, 0.0, -2.0}));
    CHECK(corner.inside);
    CHECK(std::abs(corner.margin) < 1e-9);
    // broken trace identity is outside by definition
    CHECK_FALSE(check_horn_n3(alpha, beta, Spectrum({1.2, 0.3, -1.0})).inside);
}

TEST_CASE("n=4 verdicts and the inequality table") {
    const auto& table = horn_inequalities_n4();
    CHECK(table.size() == 41);
    int singles = 0, pairs = 0, triples = 0;
    for (const auto& iq : table) {
        REQUIRE(iq.gamma_idx.size() == iq.alpha_idx.size());
        REQUIRE(iq.gamma_idx.size() == iq.beta_idx.size());
        if (iq.gamma_idx.size() == 1) ++singles;
        if (iq.gamma_idx.size() == 2) ++pairs;
        if (iq.gamma_idx.size() == 3) ++triples;
    }
    CHECK(singles == 10);
    CHECK(pairs == 21);
    CHECK(triples == 10);

    const Spectrum alpha({4.0, 3.0, 2.0, 1.0}), beta({4.0, 3.0, 2.0, 1.0});
    CHECK(check_horn_n4(alpha, beta, Spectrum({8.0, 6.0, 4.0, 2.0})).inside);
    CHECK_FALSE(check_horn_n4(alpha, beta, Spectrum({8.1, 6.0, 4.0, 1.9})).inside);
}

TEST_CASE("n=4 MC samples satisfy all 41 inequalities") {
    const Spectrum alpha({2.0, 1.0, 0.0, -3.0}), beta({1.0, 0.0, -0.4, -0.6});
    for (int k = 0; k < 10000; ++k) {
        RngStream rng(41, static_cast<uint64_t>(k));
        const Spectrum g = sample_gamma_hermitian(alpha, beta, rng);
        const SupportVerdict v = check_horn_n4(alpha, beta, g);
        CHECK((v.inside || v.margin > -1e-8));
    }
}

TEST_CASE("polygon for the symmetric example") {
    const Spectrum alpha({1.0, 0.0, -1.0}), beta({1.0, 0.0, -1.0});
    const PolygonN3 poly = polygon_n3(alpha, beta);
    REQUIRE(poly.vertices.size() == 4);
    const std::vector<std::array<double, 2>> expected = {
        {2.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}, {2.0, -1.0}};
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& v : poly.vertices)
            found = found || (std::abs(v[0] - e[0]) < 1e-10 && std::abs(v[1] - e[1]) < 1e-10);
        CHECK(found);
    }
    CHECK(poly.area() == doctest::Approx(2.0));
}

TEST_CASE("polygon translation covariance") {
    const Spectrum alpha({1.3, 0.2, -0.9}), beta({0.8, 0.0, -0.6});
    const double c = 0.7;
    std::vector<double> shifted = alpha.values();
    for (double& v : shifted) v += c;
    const PolygonN3 p0 = polygon_n3(alpha, beta);
    const PolygonN3 p1 = polygon_n3(Spectrum(shifted), beta);
    REQUIRE(p0.vertices.size() == p1.vertices.size());
    CHECK(p1.area() == doctest::Approx(p0.area()).epsilon(1e-10));
    // vertex sets translate by (c, c) per gamma coordinate
    for (const auto& v : p0.vertices) {
        bool found = false;
        for (const auto& w : p1.vertices)
            found = found ||
                    (std::abs(w[0] - v[0] - c) < 1e-9 && std::abs(w[1] - v[1] - c) < 1e-9);
        CHECK(found);
    }
}

TEST_CASE("polygon area matches a rejection-sampling estimate") {
    const Spectrum alpha({1.5, 1.0, -2.0}), beta({2.0, 1.5, -3.5});
    const PolygonN3 poly = polygon_n3(alpha, beta);
    const auto bb = poly.bounding_box();
    RngStream rng(55, 0);
    const int n = 200000;
    int hits = 0;
    for (int i = 0; i < n; ++i) {
        const double x = bb[0] + (bb[1] - bb[0]) * rng.uniform();
        const double y = bb[2] + (bb[3] - bb[2]) * rng.uniform();
        if (poly.contains(x, y, 0.0)) ++hits;
    }
    const double box = (bb[1] - bb[0]) * (bb[3] - bb[2]);
    const double est = box * hits / n;
    const double se = box * std::sqrt(0.25 / n);
    CHECK(poly.area() > 0.0);
    CHECK(std::abs(est - poly.area()) < 5.0 * se);
}

TEST_CASE("xi interval at the reference boundary point") {
    const Spectrum alpha({1.0, 0.0, -1.0}), beta({1.0, 0.0, -1.0});
    const auto [lo, hi] = xi_interval(alpha, beta, Spectrum::unchecked({1.0, 1.0, -2.0}));
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("three support characterizations agree on the trace plane") {
    const Spectrum alpha({1.4, 0.3, -1.1}), beta({0.9, -0.1, -0.7});
    const PolygonN3 poly = polygon_n3(alpha, beta);
    const double s = alpha.sum() + beta.sum();
    RngStream rng(56, 0);
    int checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const double g1 = -3.0 + 6.0 * rng.uniform();
        const double g2 = g1 - 3.0 * rng.uniform();
        const double g3 = s - g1 - g2;
        if (!(g2 > g3 + 1e-6)) continue;
        const Spectrum g = Spectrum::unchecked({g1, g2, g3});
        const SupportVerdict v = check_horn_n3(alpha, beta, g);
        if (std::abs(v.margin) < 1e-9) continue;  // skip knife-edge points
        const bool in_poly = poly.contains(g1, g2, 0.0);
        const auto [lo, hi] = xi_interval(alpha, beta, g);
        CHECK(v.inside == in_poly);
        CHECK(v.inside == (hi - lo > 0.0));
        ++checked;
    }
    CHECK(checked > 2000);
}

TEST_CASE("swap symmetry and shift covariance of verdicts") {
    const Spectrum alpha({1.4, 0.3, -1.1}), beta({0.9, -0.1, -0.7});
    const double c = -0.4;
    std::vector<double> ash = alpha.values();
    for (double& v : ash) v += c;
    RngStream rng(57, 0);
    for (int i = 0; i < 2000; ++i) {
        const double g1 = -2.0 + 5.0 * rng.uniform();
        const double g2 = g1 - 2.5 * rng.uniform();
        const double g3 = alpha.sum() + beta.sum() - g1 - g2;
        if (!(g2 > g3 + 1e-6)) continue;
        const Spectrum g = Spectrum::unchecked({g1, g2, g3});
        const SupportVerdict v = check_horn_n3(alpha, beta, g);
        CHECK(check_horn_n3(beta, alpha, g).inside == v.inside);
        const Spectrum gsh = Spectrum::unchecked({g1 + c, g2 + c, g3 + c});
        CHECK(check_horn_n3(Spectrum(ash), beta, gsh).inside == v.inside);
    }
}

TEST_CASE("polygon CSV is a closed ring") {
    const Spectrum alpha({1.0, 0.0, -1.0}), beta({1.0, 0.0, -1.0});
    const std::string csv = polygon_csv(polygon_n3(alpha, beta));
    CHECK(csv.find("gamma1,gamma2") != std::string::npos);
    // first data row repeated at the end
    const size_t header_end = csv.find('\n');
    const size_t first_end = csv.find('\n', header_end + 1);
    const std::string first_row = csv.substr(header_end + 1, first_end - header_end - 1);
    CHECK(csv.rfind(first_row) > first_end);
}
