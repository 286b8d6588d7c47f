#include "pencil/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace pencil {

double round12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return std::strtod(buf, nullptr);
}

json real(double x) {
    return json(round12(x));
}

json rational(const Rat& x) {
    return json(rat_to_string(x));
}

Space space_from_json(const json& doc) {
    bool has_points = doc.contains("points") && !doc["points"].is_null();
    bool has_matrix = doc.contains("dist_matrix") && !doc["dist_matrix"].is_null();
    if (has_points == has_matrix) {
        throw std::invalid_argument("space file must carry exactly one of points / dist_matrix");
    }
    std::vector<double> weights = doc.at("weights").get<std::vector<double>>();
    std::string metric = doc.value("metric", has_points ? "euclidean" : "matrix");
    if (has_points) {
        if (metric != "euclidean") {
            throw std::invalid_argument("points given but metric is not \"euclidean\"");
        }
        auto pts = doc["points"].get<std::vector<std::vector<double>>>();
        return Space::from_points(std::move(pts), std::move(weights));
    }
    if (metric != "matrix") {
        throw std::invalid_argument("dist_matrix given but metric is not \"matrix\"");
    }
    auto m = doc["dist_matrix"].get<std::vector<std::vector<double>>>();
    return Space::from_matrix(m, std::move(weights));
}

json space_to_json(const Space& space) {
    json doc;
    if (space.metric() == Metric::euclidean) {
        doc["points"] = space.coords();
        doc["dist_matrix"] = nullptr;
        doc["metric"] = "euclidean";
    } else {
        doc["points"] = nullptr;
        json rows = json::array();
        for (int i = 0; i < space.size(); ++i) {
            json row = json::array();
            for (int j = 0; j < space.size(); ++j) row.push_back(space.dist(i, j));
            rows.push_back(std::move(row));
        }
        doc["dist_matrix"] = std::move(rows);
        doc["metric"] = "matrix";
    }
    doc["weights"] = space.weights();
    return doc;
}

Space load_space_file(const std::string& path) {
    return space_from_json(load_json_file(path));
}

json graph_dump(const NetGraph& graph, const Space& space) {
    json doc;
    doc["scale"] = real(graph.net.scale);
    doc["source"] = graph.net.source;
    doc["sink"] = graph.net.sink;
    doc["max_degree"] = graph.max_degree;
    json verts = json::array();
    for (int v : graph.net.vertices) {
        json entry;
        entry["id"] = v;
        if (space.metric() == Metric::euclidean) entry["pos"] = space.coords()[v];
        else entry["pos"] = nullptr;
        verts.push_back(std::move(entry));
    }
    doc["vertices"] = std::move(verts);
    json edges = json::array();
    const BigInt i64_max = std::numeric_limits<std::int64_t>::max();
    for (const auto& e : graph.edges) {
        // capacities have denominator <= 10^6, so num/den fit plain integers
        if (numerator(e.capacity) > i64_max) {
            throw std::runtime_error("capacity numerator exceeds the dump integer range");
        }
        edges.push_back(json::array({e.a, e.b,
                                     static_cast<std::int64_t>(numerator(e.capacity)),
                                     static_cast<std::int64_t>(denominator(e.capacity)),
                                     round12(e.length)}));
    }
    doc["edges"] = std::move(edges);
    return doc;
}

json current_dump(const DiscreteCurrent& current) {
    json doc;
    doc["source"] = current.source;
    doc["sink"] = current.sink;
    doc["scale"] = real(current.scale);
    json segs = json::array();
    for (const auto& s : current.segments) {
        json entry;
        entry["x"] = s.a;
        entry["y"] = s.b;
        entry["length"] = real(s.length);
        entry["weight"] = rational(s.weight);
        segs.push_back(std::move(entry));
    }
    doc["segments"] = std::move(segs);
    return doc;
}

json boundary_dump(const std::map<int, Rat>& atoms) {
    json doc = json::object();
    for (const auto& [v, a] : atoms) doc[std::to_string(v)] = rational(a);
    return doc;
}

json pencil_dump(const Pencil& pencil) {
    json doc;
    json curves = json::array();
    for (const auto& c : pencil.curves) {
        json entry;
        entry["path"] = c.path;
        entry["weight_num"] = numerator(c.weight).str();
        entry["weight_den"] = denominator(c.weight).str();
        entry["length"] = real(c.length);
        curves.push_back(std::move(entry));
    }
    doc["curves"] = std::move(curves);
    doc["normalized"] = pencil.normalized;
    return doc;
}

Pencil pencil_from_json(const json& doc, const Space& space) {
    Pencil p;
    p.normalized = doc.at("normalized").get<bool>();
    p.total_weight = 0;
    for (const auto& entry : doc.at("curves")) {
        Curve c;
        c.path = entry.at("path").get<std::vector<int>>();
        if (c.path.size() < 2) throw std::invalid_argument("curve with fewer than two points");
        c.weight = Rat(BigInt(entry.at("weight_num").get<std::string>()),
                       BigInt(entry.at("weight_den").get<std::string>()));
        c.length = entry.at("length").get<double>();
        p.total_weight += c.weight;
        p.curves.push_back(std::move(c));
    }
    if (p.curves.empty()) throw std::invalid_argument("pencil file has no curves");
    p.source = p.curves.front().path.front();
    p.sink = p.curves.front().path.back();
    p.dist_st = space.dist(p.source, p.sink);
    for (const auto& c : p.curves) {
        if (c.path.front() != p.source || c.path.back() != p.sink) {
            throw std::invalid_argument("curves do not share endpoints");
        }
    }
    return p;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json doc;
    in >> doc;
    return doc;
}

void write_json_atomic(const json& doc, const std::string& path) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out << doc.dump(2) << "\n";
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
    }
}

} // namespace pencil
