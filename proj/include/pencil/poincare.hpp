#pragma once

#include <vector>

#include "pencil/netgraph.hpp"
#include "pencil/space.hpp"

namespace pencil {

struct PiRatio {
    double lhs = 0; // mean oscillation of u over the ball
    double rhs = 0; // diam(B) times the mean pointwise Lip over the dilated ball
};

struct PointwisePi {
    double lhs = 0; // |u(t) - u(s)|
    double rhs = 0; // two-pole weighted integral of the pointwise Lip
    bool pass = false;
};

struct CutBridge {
    Rat cut_cap;
    double localized_integral = 0; // (1/r_n) * two-pole integral over the boundary region
    double ratio = 0;              // capacity / integral
    bool lip_support_contained = true; // Lemma-3 style containment of the Lip support
};

// One ball instance of the weak 1-Poincare inequality with p = 1 and
// rho = pointwise Lip: lhs is the mu-mean of |u - u_B| over B(center,r),
// rhs is 2r times the mu-mean of the Lip constant over B(center, lambda*r).
PiRatio pi_ratio(const Space& space, const std::vector<double>& u, int center,
                 double r, double lambda, double lip_radius);

// Two-point inequality |u(t)-u(s)| <= C0 * two-pole integral; the integral
// runs over the open ball B(s, C0 d(s,t)) minus {s,t}.
PointwisePi pointwise_pi_check(const Space& space, const std::vector<double>& u,
                               int s, int t, double c0, double lip_radius);

// Compares the cut capacity with the localized density integral over the
// 5 r_n neighbourhood of the cut boundary, and checks that the cut
// function's discrete Lip support stays inside that neighbourhood.
CutBridge cut_pi_bridge(const Space& space, const NetGraph& graph,
                        const std::vector<int>& cut_side, double lip_radius);

} // namespace pencil
