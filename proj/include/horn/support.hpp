#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "horn/types.hpp"

namespace horn {

/// Outcome of a support test. margin is the signed distance to the tightest
/// constraint (negative outside); active lists constraints with |slack| <= tol.
struct SupportVerdict {
    bool inside = false;
    double margin = 0.0;
    std::vector<std::string> active;
};

/// Default boundary tolerance, scaled to the spectra.
double support_tolerance(double scale);

/// n=2: inside iff |gamma12| in [|alpha12 - beta12|, alpha12 + beta12].
SupportVerdict check_horn_n2(const Spectrum& alpha, const Spectrum& beta, double gamma12,
                             double tol = -1.0);

/// n=3: trace identity, ordering, and the six min/max bounds.
SupportVerdict check_horn_n3(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma,
                             double tol = -1.0);

/// n=4: trace identity, ordering, and the 41 (*IJK) inequalities.
SupportVerdict check_horn_n4(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma,
                             double tol = -1.0);

/// Dispatch on n = 2, 3, 4 with gamma a full Spectrum (n=2 uses gamma1-gamma2
/// and checks the trace as well).
SupportVerdict check_horn(const Spectrum& alpha, const Spectrum& beta, const Spectrum& gamma,
                          double tol = -1.0);

/// One (*IJK) inequality: sum_{k in K} gamma_k <= sum_{i in I} alpha_i + sum_{j in J} beta_j.
struct HornInequality4 {
    std::vector<int> gamma_idx;  // K, 1-based
    std::vector<int> alpha_idx;  // I
    std::vector<int> beta_idx;   // J
    std::string name() const;
};

/// The 41 inequalities for n=4, transcribed as static index sets.
const std::vector<HornInequality4>& horn_inequalities_n4();

/// Support region in the (gamma1, gamma2) plane for n=3 with gamma3 fixed by
/// the trace identity. Convex, at most an octagon.
struct PolygonN3 {
    std::vector<std::array<double, 2>> vertices;  // counter-clockwise ring
    std::vector<std::string> edges;               // constraint active on edge i -> i+1

    bool contains(double g1, double g2, double tol) const;
    double area() const;
    std::array<double, 4> bounding_box() const;  // xmin, xmax, ymin, ymax
};

PolygonN3 polygon_n3(const Spectrum& alpha, const Spectrum& beta);

/// Knutson-Tao honeycomb bounds on the free parameter xi: (6-term max,
/// 3-term min). The interval may be empty (lo > hi) outside the support.
std::pair<double, double> xi_interval(const Spectrum& alpha, const Spectrum& beta,
                                      const Spectrum& gamma);

/// Closed-ring CSV export of the polygon vertices, for plotting overlays.
std::string polygon_csv(const PolygonN3& poly);

}  // namespace horn
