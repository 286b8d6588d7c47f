#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pencil/flow.hpp"
#include "pencil/space.hpp"

namespace pencil {

struct Segment {
    int a = -1; // point ids, canonical orientation a < b
    int b = -1;
    double length = 0;
    Rat weight; // signed flow along a -> b
};

// T = sum over edges of f(e) times the current of the geodesic segment
// between the endpoints. One entry per undirected edge with nonzero flow;
// the single-orientation convention makes the boundary of a flow-built
// current exactly ||f|| (delta_sink - delta_source), with no factor 2.
struct DiscreteCurrent {
    std::vector<Segment> segments;
    int source = -1;
    int sink = -1;
    double scale = 0;          // r_n of the generating net
    std::vector<int> vertices; // net vertices, for density evaluation
};

struct DensityEntry {
    int vertex = -1;
    double density = 0; // mass_on_ball / mu(ball) at radius r_n
    double bound = 0;   // 1/Th(s,d(s,y)) + 1/Th(t,d(t,y))
    double ratio = 0;
};

struct DensityReport {
    double max_ratio = 0;
    int argmax_vertex = -1;
    std::vector<int> flagged; // vertices whose ratio exceeds C0
    std::vector<DensityEntry> entries;
};

struct SupportReport {
    bool ok = false;
    double max_excess = 0; // max over endpoints of d(s,.) - (C0 d(s,t) + 5 r_n)
};

struct LipMassBound {
    double lhs = 0;
    double rhs = 0;
    bool pass = false;
};

DiscreteCurrent build_current(const Flow& flow, const Space& space);

// Signed boundary atoms; exact-zero atoms are dropped.
std::map<int, Rat> boundary(const DiscreteCurrent& current);

// Total variation of the boundary (sum of |atoms|).
Rat boundary_mass(const DiscreteCurrent& current);

double total_mass(const DiscreteCurrent& current);

// ||T||(B(center,r)): per segment, |weight| times the length of the part of
// the segment inside the ball. Exact chord clipping for coordinate spaces;
// for matrix metrics the inside fraction interpolates the endpoint
// distances linearly along the segment (error bounded by the net scale).
double mass_on_ball(const DiscreteCurrent& current, const Space& space, int center,
                    double r);

DensityReport density_check(const DiscreteCurrent& current, const Space& space,
                            double c0);

SupportReport support_check(const DiscreteCurrent& current, const Space& space,
                            double c0);

// T(f, pi) by midpoint quadrature per segment. If pi_lip is supplied, pi is
// validated to be Lipschitz with that constant.
double evaluate(const DiscreteCurrent& current, const Space& space,
                const std::vector<double>& f, const std::vector<double>& pi,
                std::optional<double> pi_lip = std::nullopt);

// |boundary(u)| <= integral of the pointwise Lipschitz constant against
// ||T||, with the integral bounded edge-wise by the endpoint max.
LipMassBound lip_mass_bound(const DiscreteCurrent& current, const Space& space,
                          const std::vector<double>& u, double lip_radius);

// Current with every weight multiplied by factor.
DiscreteCurrent scaled(const DiscreteCurrent& current, const Rat& factor);

} // namespace pencil
