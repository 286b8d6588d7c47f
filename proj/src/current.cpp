#include "pencil/current.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pencil {

namespace {

// Fraction of the straight segment between coordinate rows pa, pb lying in
// the open ball of radius r around pc.
double clip_fraction(const std::vector<double>& pa, const std::vector<double>& pb,
                     const std::vector<double>& pc, double r) {
    double A = 0, B = 0, C = -r * r;
    for (size_t d = 0; d < pa.size(); ++d) {
        double dir = pb[d] - pa[d];
        double off = pa[d] - pc[d];
        A += dir * dir;
        B += 2 * dir * off;
        C += off * off;
    }
    if (A == 0) return C < 0 ? 1.0 : 0.0;
    double disc = B * B - 4 * A * C;
    if (disc <= 0) return 0.0;
    double sq = std::sqrt(disc);
    double t0 = (-B - sq) / (2 * A);
    double t1 = (-B + sq) / (2 * A);
    double lo = std::max(t0, 0.0), hi = std::min(t1, 1.0);
    return hi > lo ? hi - lo : 0.0;
}

// Linear-in-arclength model of the distance to the center, for matrix
// metrics where no embedding is available.
double fraction_by_endpoints(double d0, double d1, double r) {
    if (d0 == d1) return d0 < r ? 1.0 : 0.0;
    double cross = (r - d0) / (d1 - d0);
    if (d1 > d0) return std::clamp(cross, 0.0, 1.0);
    return std::clamp(1.0 - cross, 0.0, 1.0);
}

} // namespace

DiscreteCurrent build_current(const Flow& flow, const Space& space) {
    const NetGraph& g = *flow.graph;
    DiscreteCurrent T;
    T.source = g.net.source;
    T.sink = g.net.sink;
    T.scale = g.net.scale;
    T.vertices = g.net.vertices;
    for (size_t e = 0; e < g.edges.size(); ++e) {
        if (flow.value[e] == 0) continue;
        Segment seg;
        seg.a = g.edges[e].a;
        seg.b = g.edges[e].b;
        seg.length = space.dist(seg.a, seg.b);
        seg.weight = flow.value[e];
        T.segments.push_back(std::move(seg));
    }
    return T;
}

std::map<int, Rat> boundary(const DiscreteCurrent& current) {
    std::map<int, Rat> atoms;
    for (const auto& seg : current.segments) {
        atoms[seg.b] += seg.weight;
        atoms[seg.a] -= seg.weight;
    }
    for (auto it = atoms.begin(); it != atoms.end();) {
        if (it->second == 0) it = atoms.erase(it);
        else ++it;
    }
    return atoms;
}

Rat boundary_mass(const DiscreteCurrent& current) {
    Rat total = 0;
    for (const auto& [v, a] : boundary(current)) total += abs(a);
    return total;
}

double total_mass(const DiscreteCurrent& current) {
    double m = 0;
    for (const auto& seg : current.segments) {
        m += rat_to_double(abs(seg.weight)) * seg.length;
    }
    return m;
}

double mass_on_ball(const DiscreteCurrent& current, const Space& space, int center,
                    double r) {
    space.check_point(center);
    if (!(r > 0)) throw std::invalid_argument("ball radius must be positive");
    double m = 0;
    for (const auto& seg : current.segments) {
        double frac;
        if (space.metric() == Metric::euclidean) {
            frac = clip_fraction(space.coords()[seg.a], space.coords()[seg.b],
                                 space.coords()[center], r);
        } else {
            frac = fraction_by_endpoints(space.dist(center, seg.a),
                                         space.dist(center, seg.b), r);
        }
        m += rat_to_double(abs(seg.weight)) * seg.length * frac;
    }
    return m;
}

DensityReport density_check(const DiscreteCurrent& current, const Space& space,
                            double c0) {
    DensityReport report;
    for (int y : current.vertices) {
        if (y == current.source || y == current.sink) continue;
        DensityEntry entry;
        entry.vertex = y;
        entry.density = mass_on_ball(current, space, y, current.scale) /
                        ball_mass(space, y, current.scale);
        entry.bound = 1.0 / theta(space, current.source, space.dist(current.source, y)) +
                      1.0 / theta(space, current.sink, space.dist(current.sink, y));
        entry.ratio = entry.density / entry.bound;
        if (entry.ratio > report.max_ratio) {
            report.max_ratio = entry.ratio;
            report.argmax_vertex = y;
        }
        if (entry.ratio > c0) report.flagged.push_back(y);
        report.entries.push_back(entry);
    }
    return report;
}

SupportReport support_check(const DiscreteCurrent& current, const Space& space,
                            double c0) {
    double allowed = c0 * space.dist(current.source, current.sink) + 5 * current.scale;
    SupportReport rep;
    rep.max_excess = -allowed;
    for (const auto& seg : current.segments) {
        rep.max_excess = std::max(rep.max_excess,
                                  space.dist(current.source, seg.a) - allowed);
        rep.max_excess = std::max(rep.max_excess,
                                  space.dist(current.source, seg.b) - allowed);
    }
    rep.ok = rep.max_excess <= 0;
    return rep;
}

double evaluate(const DiscreteCurrent& current, const Space& space,
                const std::vector<double>& f, const std::vector<double>& pi,
                std::optional<double> pi_lip) {
    if (f.size() != static_cast<size_t>(space.size()) ||
        pi.size() != static_cast<size_t>(space.size())) {
        throw std::invalid_argument("function values must cover every point");
    }
    for (double v : f) {
        if (!std::isfinite(v)) throw std::invalid_argument("f must be bounded");
    }
    if (pi_lip) {
        for (int i = 0; i < space.size(); ++i) {
            for (int j = i + 1; j < space.size(); ++j) {
                double bound = *pi_lip * space.dist(i, j);
                if (std::abs(pi[i] - pi[j]) > bound + 1e-12 * (1.0 + bound)) {
                    throw std::invalid_argument("pi is not Lipschitz with the supplied constant");
                }
            }
        }
    }
    double total = 0;
    for (const auto& seg : current.segments) {
        total += rat_to_double(seg.weight) * 0.5 * (f[seg.a] + f[seg.b]) *
                 (pi[seg.b] - pi[seg.a]);
    }
    return total;
}

LipMassBound lip_mass_bound(const DiscreteCurrent& current, const Space& space,
                          const std::vector<double>& u, double lip_radius) {
    LipMassBound res;
    double lhs = 0;
    for (const auto& [v, atom] : boundary(current)) {
        lhs += rat_to_double(atom) * u[v];
    }
    res.lhs = std::abs(lhs);
    double rhs = 0;
    for (const auto& seg : current.segments) {
        double lip = std::max(pointwise_lip(space, u, seg.a, lip_radius),
                              pointwise_lip(space, u, seg.b, lip_radius));
        rhs += rat_to_double(abs(seg.weight)) * seg.length * lip;
    }
    res.rhs = rhs;
    res.pass = res.lhs <= res.rhs * (1 + 1e-9);
    return res;
}

DiscreteCurrent scaled(const DiscreteCurrent& current, const Rat& factor) {
    DiscreteCurrent out = current;
    for (auto& seg : out.segments) seg.weight *= factor;
    return out;
}

} // namespace pencil
