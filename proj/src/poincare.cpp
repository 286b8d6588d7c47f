#include "pencil/poincare.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pencil {

PiRatio pi_ratio(const Space& space, const std::vector<double>& u, int center,
                 double r, double lambda, double lip_radius) {
    if (!(r > 0)) throw std::invalid_argument("pi_ratio: radius must be positive");
    if (!(lambda >= 1)) throw std::invalid_argument("pi_ratio: lambda must be >= 1");
    if (u.size() != static_cast<size_t>(space.size())) {
        throw std::invalid_argument("u must cover every point");
    }
    auto inner = ball(space, center, r);
    if (inner.empty()) throw std::invalid_argument("pi_ratio: empty ball");
    double mass = 0, mean = 0;
    for (int y : inner) {
        mass += space.weight(y);
        mean += space.weight(y) * u[y];
    }
    mean /= mass;
    PiRatio out;
    for (int y : inner) {
        out.lhs += space.weight(y) * std::abs(u[y] - mean);
    }
    out.lhs /= mass;

    auto outer = ball(space, center, lambda * r);
    double omass = 0, olip = 0;
    for (int y : outer) {
        omass += space.weight(y);
        olip += space.weight(y) * pointwise_lip(space, u, y, lip_radius);
    }
    out.rhs = 2 * r * olip / omass;
    return out;
}

PointwisePi pointwise_pi_check(const Space& space, const std::vector<double>& u,
                               int s, int t, double c0, double lip_radius) {
    space.check_point(s);
    space.check_point(t);
    if (s == t) throw std::invalid_argument("pointwise_pi_check: s and t must differ");
    if (u.size() != static_cast<size_t>(space.size())) {
        throw std::invalid_argument("u must cover every point");
    }
    PointwisePi out;
    out.lhs = std::abs(u[t] - u[s]);
    double radius = c0 * space.dist(s, t);
    for (int y = 0; y < space.size(); ++y) {
        if (y == s || y == t) continue;
        double ds = space.dist(s, y);
        if (!(ds < radius)) continue;
        double dt = space.dist(t, y);
        out.rhs += space.weight(y) * pointwise_lip(space, u, y, lip_radius) *
                   (1.0 / theta(space, s, ds) + 1.0 / theta(space, t, dt));
    }
    out.pass = out.lhs <= c0 * out.rhs;
    return out;
}

CutBridge cut_pi_bridge(const Space& space, const NetGraph& graph,
                        const std::vector<int>& cut_side, double lip_radius) {
    CutBridge out;
    out.cut_cap = cut_capacity(graph, cut_side);
    auto bd = cut_boundary(graph, cut_side);
    const Net& net = graph.net;
    const double reach = 5 * net.scale;

    auto in_region = [&](int y) {
        for (int x : bd) {
            if (space.dist(x, y) < reach) return true;
        }
        return false;
    };

    double integral = 0;
    for (int y = 0; y < space.size(); ++y) {
        if (y == net.source || y == net.sink) continue;
        if (!(space.dist(net.source, y) < net.domain_radius)) continue;
        if (!in_region(y)) continue;
        integral += space.weight(y) *
                    (1.0 / theta(space, net.source, space.dist(net.source, y)) +
                     1.0 / theta(space, net.sink, space.dist(net.sink, y)));
    }
    out.localized_integral = integral / net.scale;

    if (out.cut_cap == 0) out.ratio = 0;
    else if (out.localized_integral == 0) out.ratio = std::numeric_limits<double>::infinity();
    else out.ratio = rat_to_double(out.cut_cap) / out.localized_integral;

    auto cf = cut_function(graph, cut_side, space);
    out.lip_support_contained = true;
    for (int y = 0; y < space.size(); ++y) {
        if (!(space.dist(net.source, y) < net.domain_radius)) continue;
        if (pointwise_lip(space, cf.values, y, lip_radius) != 0 && !in_region(y)) {
            out.lip_support_contained = false;
            break;
        }
    }
    return out;
}

} // namespace pencil
