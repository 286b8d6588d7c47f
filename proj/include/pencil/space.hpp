#pragma once

#include <map>
#include <vector>

#include "pencil/rational.hpp"

namespace pencil {

enum class Metric { euclidean, matrix };

// Finite metric measure space: points with pairwise distances and strictly
// positive weights (the measure of each singleton). Distances come either
// from coordinate vectors (Euclidean) or from an explicit matrix. Immutable
// after construction; all queries are const and thread-safe.
class Space {
public:
    static Space from_points(std::vector<std::vector<double>> coords,
                             std::vector<double> weights);
    static Space from_matrix(const std::vector<std::vector<double>>& dist,
                             std::vector<double> weights);

    int size() const { return n_; }
    Metric metric() const { return metric_; }
    double dist(int i, int j) const { return dist_[static_cast<size_t>(i) * n_ + j]; }
    double weight(int i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }
    double total_mass() const { return total_mass_; }

    // Coordinate rows; empty in matrix mode.
    const std::vector<std::vector<double>>& coords() const { return coords_; }

    double diameter() const;

    // Max over points of the distance to the nearest other point (the
    // sampling resolution / mesh fill of the space).
    double resolution() const;

    // Measured sup of mu(B(x,2r)) / mu(B(x,r)) over all points and dyadic
    // radii. Reported, never enforced.
    double doubling_estimate() const;

    // Shortest-path closure of the metric over the symmetric k-nearest-
    // neighbour graph. Approximates the geodesic reduction; the result is a
    // matrix-metric space. Throws if the k-NN graph is disconnected.
    Space with_geodesic_metric(int k) const;

    void check_point(int i) const;

private:
    Space() = default;
    void finalize(); // validates metric + measure axioms, fills caches

    int n_ = 0;
    Metric metric_ = Metric::euclidean;
    std::vector<std::vector<double>> coords_; // n rows, euclidean mode only
    std::vector<double> dist_;                // n*n row-major
    std::vector<double> weights_;
    double total_mass_ = 0;
};

// An r_n-net over the space: pairwise separation >= scale, maximal within
// the open ball B(source, domain_radius), and containing source and sink.
struct Net {
    double scale = 0;         // r_n
    double domain_radius = 0; // radius of B_0 around the source
    std::vector<int> vertices; // point ids in insertion order: s, t, ascending
    int source = -1;
    int sink = -1;

    bool contains(int point_id) const;
};

// Open ball {y : dist(center,y) < r}, ascending point ids (includes center).
std::vector<int> ball(const Space& space, int center, double r);

// mu(B(center,r)) as a double, and exactly as a rational (weights converted
// bit-exactly, summed without rounding).
double ball_mass(const Space& space, int center, double r);
Rat ball_mass_exact(const Space& space, int center, double r);

// 1-dimensional density mu(B(center,r)) / r.
double theta(const Space& space, int center, double r);
Rat theta_exact(const Space& space, int center, double r);

// Deterministic greedy net: insert source, sink, then remaining points in
// ascending id order, accepting a point iff it keeps pairwise separation
// >= scale. Candidates are the points of the open ball B(source,
// domain_radius), plus the sink.
Net build_net(const Space& space, int source, int sink, double scale,
              double domain_radius);

// Discrete pointwise Lipschitz constant: max over y != x with
// dist(x,y) <= radius of |u(x)-u(y)| / dist(x,y); 0 when no such y.
double pointwise_lip(const Space& space, const std::vector<double>& u, int x,
                     double radius);

// McShane extension u(x) = min over assigned y of values(y) + L*dist(x,y).
// Throws if the assigned values are not L-Lipschitz on their domain.
std::vector<double> mcshane_extend(const Space& space,
                                   const std::map<int, double>& values,
                                   double lip_constant);

} // namespace pencil
