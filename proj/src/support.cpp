#include "horn/support.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace horn {

namespace {

constexpr double kDefaultTolFactor = 1e-9;

struct Constraint {
    // a1*g1 + a2*g2 <= c in the (gamma1, gamma2) plane
    double a1, a2, c;
    std::string name;
};

double scale3(const Spectrum& alpha, const Spectrum& beta) {
    return std::max(alpha.scale(), beta.scale());
}

SupportVerdict verdict_from_slacks(const std::vector<std::pair<std::string, double>>& slacks,
                                   double tol) {
    SupportVerdict v;
    v.margin = std::numeric_limits<double>::infinity();
    for (const auto& [name, slack] : slacks) {
        v.margin = std::min(v.margin, slack);
        if (std::abs(slack) <= tol) v.active.push_back(name);
    }
    v.inside = v.margin >= -tol;
    return v;
}

}  // namespace

double support_tolerance(double scale) { return kDefaultTolFactor * std::max(1.0, scale); }

SupportVerdict check_horn_n2(const Spectrum& alpha, const Spectrum& beta, double gamma12,
                             double tol) {
    if (alpha.n() != 2 || beta.n() != 2)
        throw std::invalid_argument("check_horn_n2: spectra must have n=2");
    if (tol < 0.0) tol = support_tolerance(scale3(alpha, beta));
    const double a12 = alpha[0] - alpha[1];
    const double b12 = beta[0] - beta[1];
    const double g = std::abs(gamma12);
    std::vector<std::pair<std::string, double>> slacks = {
        {"|g12| >= |a12-b12|", g - std::abs(a12 - b12)},
        {"|g12| <= a12+b12", a12 + b12 - g},
    };
    return verdict_from_slacks(slacks, tol);
}

SupportVerdict check_horn_n3(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma,
                             double tol) {
    if (alpha.n() != 3 || beta.n() != 3 || gamma.n() != 3)
        throw std::invalid_argument("check_horn_n3: spectra must have n=3");
    if (tol < 0.0) tol = support_tolerance(scale3(alpha, beta));
    const double trace_residual = gamma.sum() - alpha.sum() - beta.sum();
    if (std::abs(trace_residual) > tol) {
        SupportVerdict v;
        v.inside = false;
        v.margin = -std::abs(trace_residual);
        v.active = {"trace"};
        return v;
    }
    const double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
    const double b1 = beta[0], b2 = beta[1], b3 = beta[2];
    const double g1 = gamma[0], g2 = gamma[1], g3 = gamma[2];
    std::vector<std::pair<std::string, double>> slacks = {
        {"g1 >= g2", g1 - g2},
        {"g2 >= g3", g2 - g3},
        {"g1 <= a1+b1", a1 + b1 - g1},
        {"g1 >= a1+b3", g1 - (a1 + b3)},
        {"g1 >= a2+b2", g1 - (a2 + b2)},
        {"g1 >= a3+b1", g1 - (a3 + b1)},
        {"g2 <= a1+b2", a1 + b2 - g2},
        {"g2 <= a2+b1", a2 + b1 - g2},
        {"g2 >= a2+b3", g2 - (a2 + b3)},
        {"g2 >= a3+b2", g2 - (a3 + b2)},
        {"g3 >= a3+b3", g3 - (a3 + b3)},
        {"g3 <= a1+b3", a1 + b3 - g3},
        {"g3 <= a2+b2", a2 + b2 - g3},
        {"g3 <= a3+b1", a3 + b1 - g3},
    };
    return verdict_from_slacks(slacks, tol);
}

std::string HornInequality4::name() const {
    std::ostringstream os;
    os << "g{";
    for (int k : gamma_idx) os << k;
    os << "} <= a{";
    for (int i : alpha_idx) os << i;
    os << "}+b{";
    for (int j : beta_idx) os << j;
    os << "}";
    return os.str();
}

const std::vector<HornInequality4>& horn_inequalities_n4() {
    static const std::vector<HornInequality4> table = [] {
        std::vector<HornInequality4> t;
        auto add = [&](std::vector<int> k, std::vector<int> i, std::vector<int> j) {
            t.push_back({std::move(k), std::move(i), std::move(j)});
        };
        // |K| = |I| = |J| = 1 (10)
        add({1}, {1}, {1});
        add({2}, {1}, {2});
        add({3}, {1}, {3});
        add({4}, {1}, {4});
        add({2}, {2}, {1});
        add({3}, {2}, {2});
        add({4}, {2}, {3});
        add({3}, {3}, {1});
        add({4}, {3}, {2});
        add({4}, {4}, {1});
        // |K| = |I| = |J| = 2 (21)
        add({1, 2}, {1, 2}, {1, 2});
        add({1, 3}, {1, 2}, {1, 3});
        add({1, 4}, {1, 2}, {1, 4});
        add({2, 3}, {1, 2}, {2, 3});
        add({2, 4}, {1, 2}, {2, 4});
        add({3, 4}, {1, 2}, {3, 4});
        add({1, 3}, {1, 3}, {1, 2});
        add({1, 4}, {1, 3}, {1, 3});
        add({2, 3}, {1, 3}, {1, 3});
        add({2, 4}, {1, 3}, {1, 4});
        add({2, 4}, {1, 3}, {2, 3});
        add({3, 4}, {1, 3}, {2, 4});
        add({1, 4}, {1, 4}, {1, 2});
        add({2, 4}, {1, 4}, {1, 3});
        add({3, 4}, {1, 4}, {1, 4});
        add({2, 3}, {2, 3}, {1, 2});
        add({2, 4}, {2, 3}, {1, 3});
        add({3, 4}, {2, 3}, {2, 3});
        add({2, 4}, {2, 4}, {1, 2});
        add({3, 4}, {2, 4}, {1, 3});
        add({3, 4}, {3, 4}, {1, 2});
        // |K| = |I| = |J| = 3 (10)
        add({1, 2, 3}, {1, 2, 3}, {1, 2, 3});
        add({1, 2, 4}, {1, 2, 3}, {1, 2, 4});
        add({1, 3, 4}, {1, 2, 3}, {1, 3, 4});
        add({2, 3, 4}, {1, 2, 3}, {2, 3, 4});
        add({1, 2, 4}, {1, 2, 4}, {1, 2, 3});
        add({1, 3, 4}, {1, 2, 4}, {1, 2, 4});
        add({2, 3, 4}, {1, 2, 4}, {1, 3, 4});
        add({1, 3, 4}, {1, 3, 4}, {1, 2, 3});
        add({2, 3, 4}, {1, 3, 4}, {1, 2, 4});
        add({2, 3, 4}, {2, 3, 4}, {1, 2, 3});
        return t;
    }();
    return table;
}

SupportVerdict check_horn_n4(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma,
                             double tol) {
    if (alpha.n() != 4 || beta.n() != 4 || gamma.n() != 4)
        throw std::invalid_argument("check_horn_n4: spectra must have n=4");
    if (tol < 0.0) tol = support_tolerance(scale3(alpha, beta));
    const double trace_residual = gamma.sum() - alpha.sum() - beta.sum();
    if (std::abs(trace_residual) > tol) {
        SupportVerdict v;
        v.inside = false;
        v.margin = -std::abs(trace_residual);
        v.active = {"trace"};
        return v;
    }
    std::vector<std::pair<std::string, double>> slacks;
    for (int i = 0; i < 3; ++i)
        slacks.emplace_back("ordering", gamma[i] - gamma[i + 1]);
    for (const auto& ineq : horn_inequalities_n4()) {
        double rhs = 0.0, lhs = 0.0;
        for (int i : ineq.alpha_idx) rhs += alpha[i - 1];
        for (int j : ineq.beta_idx) rhs += beta[j - 1];
        for (int k : ineq.gamma_idx) lhs += gamma[k - 1];
        slacks.emplace_back(ineq.name(), rhs - lhs);
    }
    return verdict_from_slacks(slacks, tol);
}

SupportVerdict check_horn(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma,
                          double tol) {
    switch (alpha.n()) {
        case 2: {
            if (tol < 0.0) tol = support_tolerance(scale3(alpha, beta));
            const double trace_residual = gamma.sum() - alpha.sum() - beta.sum();
            if (std::abs(trace_residual) > tol) {
                SupportVerdict v;
                v.margin = -std::abs(trace_residual);
                v.active = {"trace"};
                return v;
            }
            return check_horn_n2(alpha, beta, gamma[0] - gamma[1], tol);
        }
        case 3: return check_horn_n3(alpha, beta, gamma, tol);
        case 4: return check_horn_n4(alpha, beta, gamma, tol);
        default: throw std::invalid_argument("check_horn: only n = 2, 3, 4 supported");
    }
}

bool PolygonN3::contains(double g1, double g2, double tol) const {
    const size_t nv = vertices.size();
    if (nv < 3) return false;
    for (size_t i = 0; i < nv; ++i) {
        const auto& p = vertices[i];
        const auto& q = vertices[(i + 1) % nv];
        const double cross = (q[0] - p[0]) * (g2 - p[1]) - (q[1] - p[1]) * (g1 - p[0]);
        const double len = std::hypot(q[0] - p[0], q[1] - p[1]);
        if (cross < -tol * std::max(len, 1.0)) return false;
    }
    return true;
}

double PolygonN3::area() const {
    double a = 0.0;
    const size_t nv = vertices.size();
    for (size_t i = 0; i < nv; ++i) {
        const auto& p = vertices[i];
        const auto& q = vertices[(i + 1) % nv];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

std::array<double, 4> PolygonN3::bounding_box() const {
    std::array<double, 4> bb = {vertices[0][0], vertices[0][0], vertices[0][1], vertices[0][1]};
    for (const auto& v : vertices) {
        bb[0] = std::min(bb[0], v[0]);
        bb[1] = std::max(bb[1], v[0]);
        bb[2] = std::min(bb[2], v[1]);
        bb[3] = std::max(bb[3], v[1]);
    }
    return bb;
}

PolygonN3 polygon_n3(const Spectrum& alpha, const Spectrum& beta) {
    if (alpha.n() != 3 || beta.n() != 3)
        throw std::invalid_argument("polygon_n3: spectra must have n=3");
    const double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
    const double b1 = beta[0], b2 = beta[1], b3 = beta[2];
    const double s = alpha.sum() + beta.sum();

    // Half-planes cut out by the Horn system with g3 = s - g1 - g2, plus the
    // ordering constraints g1 >= g2 >= g3.
    std::vector<Constraint> cs = {
        {1, 0, a1 + b1, "g1<=a1+b1"},
        {-1, 0, -(a1 + b3), "g1>=a1+b3"},
        {-1, 0, -(a2 + b2), "g1>=a2+b2"},
        {-1, 0, -(a3 + b1), "g1>=a3+b1"},
        {0, 1, a1 + b2, "g2<=a1+b2"},
        {0, 1, a2 + b1, "g2<=a2+b1"},
        {0, -1, -(a2 + b3), "g2>=a2+b3"},
        {0, -1, -(a3 + b2), "g2>=a3+b2"},
        {1, 1, s - (a3 + b3), "g3>=a3+b3"},
        {-1, -1, -(s - (a1 + b3)), "g3<=a1+b3"},
        {-1, -1, -(s - (a2 + b2)), "g3<=a2+b2"},
        {-1, -1, -(s - (a3 + b1)), "g3<=a3+b1"},
        {-1, 1, 0, "g1>=g2"},
        {-1, -2, -s, "g2>=g3"},
    };

    const double scale = scale3(alpha, beta);
    const double eps = 1e-9 * scale;

    auto feasible = [&](double x, double y) {
        for (const auto& c : cs)
            if (c.a1 * x + c.a2 * y > c.c + eps) return false;
        return true;
    };

    std::vector<std::array<double, 2>> pts;
    for (size_t i = 0; i < cs.size(); ++i) {
        for (size_t j = i + 1; j < cs.size(); ++j) {
            const double det = cs[i].a1 * cs[j].a2 - cs[j].a1 * cs[i].a2;
            if (std::abs(det) < 1e-14) continue;
            const double x = (cs[i].c * cs[j].a2 - cs[j].c * cs[i].a2) / det;
            const double y = (cs[i].a1 * cs[j].c - cs[j].a1 * cs[i].c) / det;
            if (feasible(x, y)) pts.push_back({x, y});
        }
    }
    // The componentwise sum gamma = alpha + beta always satisfies the system
    // (with equalities at the boundary).
    if (pts.empty()) throw std::logic_error("polygon_n3: no feasible vertex found");

    // Deduplicate and order counter-clockwise around the centroid.
    double cx = 0.0, cy = 0.0;
    for (const auto& p : pts) {
        cx += p[0];
        cy += p[1];
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const auto& p, const auto& q) {
        return std::atan2(p[1] - cy, p[0] - cx) < std::atan2(q[1] - cy, q[0] - cx);
    });
    PolygonN3 poly;
    for (const auto& p : pts) {
        if (!poly.vertices.empty()) {
            const auto& last = poly.vertices.back();
            if (std::hypot(p[0] - last[0], p[1] - last[1]) < 1e-7 * scale) continue;
        }
        poly.vertices.push_back(p);
    }
    while (poly.vertices.size() > 1) {
        const auto& first = poly.vertices.front();
        const auto& last = poly.vertices.back();
        if (std::hypot(first[0] - last[0], first[1] - last[1]) < 1e-7 * scale)
            poly.vertices.pop_back();
        else
            break;
    }
    // Name the constraint active along each edge (midpoint test).
    const size_t nv = poly.vertices.size();
    poly.edges.resize(nv);
    for (size_t i = 0; i < nv; ++i) {
        const auto& p = poly.vertices[i];
        const auto& q = poly.vertices[(i + 1) % nv];
        const double mx = 0.5 * (p[0] + q[0]);
        const double my = 0.5 * (p[1] + q[1]);
        double best = std::numeric_limits<double>::infinity();
        for (const auto& c : cs) {
            const double slack = c.c - (c.a1 * mx + c.a2 * my);
            const double norm = std::hypot(c.a1, c.a2);
            if (slack / norm < best) {
                best = slack / norm;
                poly.edges[i] = c.name;
            }
        }
    }
    return poly;
}

std::pair<double, double> xi_interval(const Spectrum& alpha, const Spectrum& beta,
                                      const Spectrum& gamma) {
    if (alpha.n() != 3 || beta.n() != 3 || gamma.n() != 3)
        throw std::invalid_argument("xi_interval: spectra must have n=3");
    const double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2];
    const double b1 = beta[0], b2 = beta[1], b3 = beta[2];
    const double g1 = gamma[0], g2 = gamma[1], g3 = gamma[2];
    const double lo = std::max({a1 - g1 + g2, g3 - b3, a2, -b2 + g2, a1 + a3 + b1 - g1,
                                a1 + a2 + b2 - g1});
    const double hi = std::min({a1, -b3 + g2, a1 + a2 + b1 - g1});
    return {lo, hi};
}

std::string polygon_csv(const PolygonN3& poly) {
    std::ostringstream os;
    os.precision(17);
    os << "gamma1,gamma2\n";
    for (const auto& v : poly.vertices) os << v[0] << "," << v[1] << "\n";
    if (!poly.vertices.empty()) os << poly.vertices[0][0] << "," << poly.vertices[0][1] << "\n";
    return os.str();
}

}  // namespace horn
