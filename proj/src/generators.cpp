#include "pencil/generators.hpp"

#include <cmath>
#include <stdexcept>

namespace pencil {

namespace {

int int_param(const std::vector<double>& params, size_t idx, const char* what,
              int min_value) {
    if (idx >= params.size()) {
        throw std::invalid_argument(std::string("missing parameter: ") + what);
    }
    double v = params[idx];
    int k = static_cast<int>(v);
    if (k != v || k < min_value) {
        throw std::invalid_argument(std::string("parameter ") + what +
                                    " must be an integer >= " + std::to_string(min_value));
    }
    return k;
}

Space make_line(int k) {
    std::vector<std::vector<double>> pts;
    double h = 1.0 / (k - 1);
    for (int i = 0; i < k; ++i) pts.push_back({i * h});
    return Space::from_points(std::move(pts), std::vector<double>(k, 1.0));
}

Space make_grid(int k) {
    std::vector<std::vector<double>> pts;
    double h = 1.0 / (k - 1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) pts.push_back({j * h, i * h});
    return Space::from_points(std::move(pts), std::vector<double>(k * k, 1.0));
}

Space make_circle(int k) {
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < k; ++i) {
        double a = 2 * M_PI * i / k;
        pts.push_back({std::cos(a), std::sin(a)});
    }
    return Space::from_points(std::move(pts), std::vector<double>(k, 1.0));
}

// Point order: left grid, neck chain, right grid — ids 0 and N-1 are the
// far corners, the natural source/sink pair.
Space make_dumbbell(int k, double neck_width, int neck_points) {
    if (!(neck_width > 0)) {
        throw std::invalid_argument("dumbbell neck_width must be positive");
    }
    std::vector<std::vector<double>> pts;
    std::vector<double> weights;
    double h = 1.0 / (k - 1);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            pts.push_back({j * h, i * h});
            weights.push_back(1.0);
        }
    for (int i = 0; i < neck_points; ++i) {
        pts.push_back({1.0 + (i + 1) * 1.0 / (neck_points + 1), 0.5});
        weights.push_back(neck_width);
    }
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            pts.push_back({2.0 + j * h, i * h});
            weights.push_back(1.0);
        }
    return Space::from_points(std::move(pts), std::move(weights));
}

// Two poles at (0,0) and (1,0) joined by a straight arc and two elliptic
// arcs bulging to either side. Ids: pole, middle, upper, lower, pole.
Space make_theta(int k) {
    std::vector<std::vector<double>> pts;
    pts.push_back({0.0, 0.0});
    for (int i = 1; i <= k; ++i) pts.push_back({static_cast<double>(i) / (k + 1), 0.0});
    for (int sign : {+1, -1}) {
        for (int i = 1; i <= k; ++i) {
            double a = M_PI * i / (k + 1);
            pts.push_back({(1 - std::cos(a)) / 2, sign * 0.4 * std::sin(a)});
        }
    }
    pts.push_back({1.0, 0.0});
    return Space::from_points(std::move(pts), std::vector<double>(pts.size(), 1.0));
}

} // namespace

Space generate(const std::string& name, const std::vector<double>& params) {
    if (name == "line") return make_line(int_param(params, 0, "k", 2));
    if (name == "grid2d") return make_grid(int_param(params, 0, "k", 2));
    if (name == "circle") return make_circle(int_param(params, 0, "k", 3));
    if (name == "dumbbell") {
        int k = int_param(params, 0, "k", 2);
        if (params.size() < 2) throw std::invalid_argument("missing parameter: neck_width");
        int m = int_param(params, 2, "neck_points", 1);
        return make_dumbbell(k, params[1], m);
    }
    if (name == "theta_graph") return make_theta(int_param(params, 0, "k", 1));
    throw std::invalid_argument("unknown generator: " + name);
}

} // namespace pencil
