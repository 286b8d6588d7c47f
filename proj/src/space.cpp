#include "pencil/space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pencil/rng.hpp"

namespace pencil {

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t d = 0; d < a.size(); ++d) {
        double diff = a[d] - b[d];
        s += diff * diff;
    }
    return std::sqrt(s);
}

} // namespace

void Space::check_point(int i) const {
    if (i < 0 || i >= n_) {
        throw std::invalid_argument("unknown point id " + std::to_string(i));
    }
}

Space Space::from_points(std::vector<std::vector<double>> coords,
                         std::vector<double> weights) {
    Space s;
    s.n_ = static_cast<int>(coords.size());
    if (s.n_ == 0) throw std::invalid_argument("space needs at least one point");
    size_t dim = coords[0].size();
    for (const auto& row : coords) {
        if (row.size() != dim) {
            throw std::invalid_argument("inconsistent coordinate dimensions");
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw std::invalid_argument("non-finite coordinate");
        }
    }
    s.metric_ = Metric::euclidean;
    s.coords_ = std::move(coords);
    s.weights_ = std::move(weights);
    s.dist_.assign(static_cast<size_t>(s.n_) * s.n_, 0.0);
    for (int i = 0; i < s.n_; ++i) {
        for (int j = i + 1; j < s.n_; ++j) {
            double d = euclid(s.coords_[i], s.coords_[j]);
            s.dist_[static_cast<size_t>(i) * s.n_ + j] = d;
            s.dist_[static_cast<size_t>(j) * s.n_ + i] = d;
        }
    }
    s.finalize();
    return s;
}

Space Space::from_matrix(const std::vector<std::vector<double>>& dist,
                         std::vector<double> weights) {
    Space s;
    s.n_ = static_cast<int>(dist.size());
    if (s.n_ == 0) throw std::invalid_argument("space needs at least one point");
    s.metric_ = Metric::matrix;
    s.weights_ = std::move(weights);
    s.dist_.assign(static_cast<size_t>(s.n_) * s.n_, 0.0);
    for (int i = 0; i < s.n_; ++i) {
        if (static_cast<int>(dist[i].size()) != s.n_) {
            throw std::invalid_argument("distance matrix is not square");
        }
        for (int j = 0; j < s.n_; ++j) {
            s.dist_[static_cast<size_t>(i) * s.n_ + j] = dist[i][j];
        }
    }
    s.finalize();
    return s;
}

void Space::finalize() {
    if (weights_.size() != static_cast<size_t>(n_)) {
        throw std::invalid_argument("weights length must equal point count");
    }
    total_mass_ = 0;
    for (double w : weights_) {
        if (!(w > 0) || !std::isfinite(w)) {
            throw std::invalid_argument("all weights must be strictly positive and finite");
        }
        total_mass_ += w;
    }
    double maxd = 0;
    for (int i = 0; i < n_; ++i) {
        if (dist(i, i) != 0) {
            throw std::invalid_argument("distance matrix has a nonzero diagonal entry");
        }
        for (int j = i + 1; j < n_; ++j) {
            double d = dist(i, j);
            if (!std::isfinite(d)) throw std::invalid_argument("non-finite distance");
            if (d != dist(j, i)) {
                throw std::invalid_argument("distance matrix is not symmetric");
            }
            if (!(d > 0)) {
                throw std::invalid_argument("distinct points at zero distance");
            }
            maxd = std::max(maxd, d);
        }
    }
    // Triangle inequality: exhaustive for small spaces, sampled above.
    const double eps = 1e-12 * (1.0 + maxd);
    auto check_triple = [&](int i, int j, int k) {
        if (dist(i, k) > dist(i, j) + dist(j, k) + eps) {
            throw std::invalid_argument("triangle inequality violated at (" +
                                        std::to_string(i) + "," + std::to_string(j) + "," +
                                        std::to_string(k) + ")");
        }
    };
    if (n_ <= 200) {
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j)
                for (int k = 0; k < n_; ++k) check_triple(i, j, k);
    } else {
        Rng rng(0x5CA1AB1EULL);
        for (int it = 0; it < 2'000'000; ++it) {
            int i = static_cast<int>(rng.next_below(n_));
            int j = static_cast<int>(rng.next_below(n_));
            int k = static_cast<int>(rng.next_below(n_));
            check_triple(i, j, k);
        }
    }
}

double Space::diameter() const {
    double m = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) m = std::max(m, dist(i, j));
    return m;
}

double Space::resolution() const {
    if (n_ == 1) return 0;
    double worst = 0;
    for (int i = 0; i < n_; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n_; ++j) {
            if (j != i) nearest = std::min(nearest, dist(i, j));
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

double Space::doubling_estimate() const {
    double diam = diameter();
    if (diam == 0) return 1.0;
    double worst = 1.0;
    for (int i = 0; i < n_; ++i) {
        std::vector<double> row(static_cast<size_t>(n_));
        for (int j = 0; j < n_; ++j) row[j] = dist(i, j);
        std::vector<int> order(static_cast<size_t>(n_));
        for (int j = 0; j < n_; ++j) order[j] = j;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return row[a] < row[b]; });
        std::vector<double> prefix(static_cast<size_t>(n_));
        double acc = 0;
        for (int j = 0; j < n_; ++j) {
            acc += weights_[order[j]];
            prefix[j] = acc;
        }
        auto mass_below = [&](double r) {
            // mu of the open ball of radius r
            int lo = 0, hi = n_;
            while (lo < hi) {
                int mid = (lo + hi) / 2;
                if (row[order[mid]] < r) lo = mid + 1; else hi = mid;
            }
            return lo == 0 ? 0.0 : prefix[lo - 1];
        };
        for (int k = 1; k <= 8; ++k) {
            double r = diam / std::pow(2.0, k);
            double small = mass_below(r);
            if (small <= 0) continue;
            worst = std::max(worst, mass_below(2 * r) / small);
        }
    }
    return worst;
}

Space Space::with_geodesic_metric(int k) const {
    if (k < 1) throw std::invalid_argument("geodesic closure needs k >= 1");
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g(static_cast<size_t>(n_) * n_, inf);
    for (int i = 0; i < n_; ++i) g[static_cast<size_t>(i) * n_ + i] = 0;
    for (int i = 0; i < n_; ++i) {
        std::vector<int> order;
        order.reserve(static_cast<size_t>(n_) - 1);
        for (int j = 0; j < n_; ++j)
            if (j != i) order.push_back(j);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double da = dist(i, a), db = dist(i, b);
            return da != db ? da < db : a < b;
        });
        int m = std::min<int>(k, static_cast<int>(order.size()));
        for (int q = 0; q < m; ++q) {
            int j = order[q];
            double d = dist(i, j);
            g[static_cast<size_t>(i) * n_ + j] = std::min(g[static_cast<size_t>(i) * n_ + j], d);
            g[static_cast<size_t>(j) * n_ + i] = std::min(g[static_cast<size_t>(j) * n_ + i], d);
        }
    }
    for (int mid = 0; mid < n_; ++mid)
        for (int i = 0; i < n_; ++i) {
            double dim = g[static_cast<size_t>(i) * n_ + mid];
            if (dim == inf) continue;
            for (int j = 0; j < n_; ++j) {
                double cand = dim + g[static_cast<size_t>(mid) * n_ + j];
                if (cand < g[static_cast<size_t>(i) * n_ + j]) {
                    g[static_cast<size_t>(i) * n_ + j] = cand;
                }
            }
        }
    std::vector<std::vector<double>> rows(static_cast<size_t>(n_));
    for (int i = 0; i < n_; ++i) {
        rows[i].resize(static_cast<size_t>(n_));
        for (int j = 0; j < n_; ++j) {
            double d = g[static_cast<size_t>(i) * n_ + j];
            if (d == inf) {
                throw std::invalid_argument(
                    "geodesic closure: k-NN graph is disconnected (k=" + std::to_string(k) + ")");
            }
            rows[i][j] = d;
        }
    }
    return Space::from_matrix(rows, weights_);
}

bool Net::contains(int point_id) const {
    return std::find(vertices.begin(), vertices.end(), point_id) != vertices.end();
}

std::vector<int> ball(const Space& space, int center, double r) {
    space.check_point(center);
    if (!(r > 0)) throw std::invalid_argument("ball radius must be positive");
    std::vector<int> out;
    for (int j = 0; j < space.size(); ++j) {
        if (space.dist(center, j) < r) out.push_back(j);
    }
    return out;
}

double ball_mass(const Space& space, int center, double r) {
    space.check_point(center);
    if (!(r > 0)) throw std::invalid_argument("ball radius must be positive");
    double m = 0;
    for (int j = 0; j < space.size(); ++j) {
        if (space.dist(center, j) < r) m += space.weight(j);
    }
    return m;
}

Rat ball_mass_exact(const Space& space, int center, double r) {
    space.check_point(center);
    if (!(r > 0)) throw std::invalid_argument("ball radius must be positive");
    Rat m = 0;
    for (int j = 0; j < space.size(); ++j) {
        if (space.dist(center, j) < r) m += rat_from_double(space.weight(j));
    }
    return m;
}

double theta(const Space& space, int center, double r) {
    return ball_mass(space, center, r) / r;
}

Rat theta_exact(const Space& space, int center, double r) {
    return ball_mass_exact(space, center, r) / rat_from_double(r);
}

Net build_net(const Space& space, int source, int sink, double scale,
              double domain_radius) {
    space.check_point(source);
    space.check_point(sink);
    if (source == sink) throw std::invalid_argument("source and sink must be distinct");
    double dst = space.dist(source, sink);
    if (!(scale > 0)) throw std::invalid_argument("net scale must be positive");
    if (scale >= dst) {
        throw std::invalid_argument("net scale must be smaller than dist(source,sink)");
    }
    if (!(domain_radius > 0)) throw std::invalid_argument("domain radius must be positive");

    Net net;
    net.scale = scale;
    net.domain_radius = domain_radius;
    net.source = source;
    net.sink = sink;
    net.vertices.push_back(source);
    net.vertices.push_back(sink); // separation holds: dst > scale
    for (int p = 0; p < space.size(); ++p) {
        if (p == source || p == sink) continue;
        if (space.dist(source, p) >= domain_radius) continue;
        bool ok = true;
        for (int v : net.vertices) {
            if (space.dist(p, v) < scale) {
                ok = false;
                break;
            }
        }
        if (ok) net.vertices.push_back(p);
    }
    return net;
}

double pointwise_lip(const Space& space, const std::vector<double>& u, int x,
                     double radius) {
    space.check_point(x);
    if (u.size() != static_cast<size_t>(space.size())) {
        throw std::invalid_argument("function values must cover every point");
    }
    if (!(radius > 0)) throw std::invalid_argument("lip radius must be positive");
    double best = 0;
    for (int y = 0; y < space.size(); ++y) {
        if (y == x) continue;
        double d = space.dist(x, y);
        if (d <= radius) best = std::max(best, std::abs(u[x] - u[y]) / d);
    }
    return best;
}

std::vector<double> mcshane_extend(const Space& space,
                                   const std::map<int, double>& values,
                                   double lip_constant) {
    if (values.empty()) throw std::invalid_argument("mcshane_extend: empty domain");
    if (lip_constant < 0) throw std::invalid_argument("mcshane_extend: negative constant");
    for (const auto& [y, vy] : values) {
        space.check_point(y);
        for (const auto& [z, vz] : values) {
            if (z <= y) continue;
            double bound = lip_constant * space.dist(y, z);
            if (std::abs(vy - vz) > bound + 1e-12 * (1.0 + bound)) {
                throw std::invalid_argument(
                    "mcshane_extend: assigned values are not Lipschitz with the given constant");
            }
        }
    }
    std::vector<double> u(static_cast<size_t>(space.size()));
    for (int x = 0; x < space.size(); ++x) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [y, vy] : values) {
            best = std::min(best, vy + lip_constant * space.dist(x, y));
        }
        u[x] = best;
    }
    // Pin the assigned points so the float min cannot drift below them.
    for (const auto& [y, vy] : values) u[y] = vy;
    return u;
}

} // namespace pencil
