#include "imin/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "imin/errors.hpp"

namespace imin {

namespace {

using nlohmann::json;

void require_keys(const json& object, const char* where,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {}) {
    if (!object.is_object()) throw Error(std::string(where) + " must be a JSON object");
    for (const char* key : required)
        if (!object.contains(key))
            throw Error(std::string(where) + " is missing key \"" + key + "\"");
    for (const auto& [key, value] : object.items()) {
        const auto known = [&](std::initializer_list<const char*> keys) {
            return std::any_of(keys.begin(), keys.end(),
                               [&](const char* k) { return key == k; });
        };
        if (!known(required) && !known(optional))
            throw Error(std::string(where) + " has unknown key \"" + key + "\"");
    }
}

SignalModel model_from_json(const json& j) {
    if (!j.contains("kind") || !j.at("kind").is_string())
        throw Error("model needs a string \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "pathloss") {
        require_keys(j, "model", {"kind", "alpha"});
        return PathLoss{j.at("alpha").get<double>()};
    }
    if (kind == "gain") {
        require_keys(j, "model", {"kind", "gain"});
        const json& rows = j.at("gain");
        if (!rows.is_array() || rows.empty()) throw Error("gain must be a non-empty matrix");
        const auto n = rows.size();
        Eigen::MatrixXd gain(n, n);
        for (size_t u = 0; u < n; ++u) {
            if (!rows[u].is_array() || rows[u].size() != n)
                throw Error("gain matrix must be square");
            for (size_t v = 0; v < n; ++v) gain(u, v) = rows[u][v].get<double>();
        }
        return ExplicitGain{std::move(gain)};
    }
    if (kind == "unitdisk") {
        require_keys(j, "model", {"kind"});
        return UnitDisk{};
    }
    throw Error("unknown model kind \"" + kind + "\"");
}

json model_to_json(const SignalModel& model) {
    json j;
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, PathLoss>) {
                j["kind"] = "pathloss";
                j["alpha"] = m.alpha;
            } else if constexpr (std::is_same_v<M, ExplicitGain>) {
                j["kind"] = "gain";
                json rows = json::array();
                for (Eigen::Index u = 0; u < m.gain.rows(); ++u) {
                    json row = json::array();
                    for (Eigen::Index v = 0; v < m.gain.cols(); ++v)
                        row.push_back(m.gain(u, v));
                    rows.push_back(std::move(row));
                }
                j["gain"] = std::move(rows);
            } else {
                j["kind"] = "unitdisk";
            }
        },
        model);
    return j;
}

}  // namespace

Instance instance_from_json(const json& j) {
    require_keys(j, "instance", {"beta", "model", "nodes"});
    const SignalModel model = model_from_json(j.at("model"));
    if (!j.at("nodes").is_array()) throw Error("nodes must be an array");

    std::vector<Node> nodes;
    for (const json& entry : j.at("nodes")) {
        require_keys(entry, "node", {"id", "xi_max"}, {"pos"});
        Node node;
        node.id = entry.at("id").get<int>();
        node.xi_max = entry.at("xi_max").get<double>();
        if (entry.contains("pos")) {
            const json& pos = entry.at("pos");
            if (!pos.is_array()) throw Error("pos must be an array of coordinates");
            Eigen::VectorXd point(pos.size());
            for (size_t k = 0; k < pos.size(); ++k) point[k] = pos[k].get<double>();
            node.position = std::move(point);
        }
        nodes.push_back(std::move(node));
    }
    std::sort(nodes.begin(), nodes.end(),
              [](const Node& a, const Node& b) { return a.id < b.id; });
    return Instance(std::move(nodes), model, j.at("beta").get<double>());
}

json instance_to_json(const Instance& inst) {
    json j;
    j["beta"] = inst.beta_acc();
    j["model"] = model_to_json(inst.signal());
    json nodes = json::array();
    for (const Node& node : inst.nodes()) {
        json entry;
        entry["id"] = node.id;
        entry["xi_max"] = node.xi_max;
        if (node.position) {
            json pos = json::array();
            for (Eigen::Index k = 0; k < node.position->size(); ++k)
                pos.push_back((*node.position)[k]);
            entry["pos"] = std::move(pos);
        }
        nodes.push_back(std::move(entry));
    }
    j["nodes"] = std::move(nodes);
    return j;
}

json solution_to_json(const Solution& solution) {
    json j;
    json edges = json::array();
    for (const Edge& e : solution.edges) edges.push_back(json::array({e.u, e.v}));
    j["edges"] = std::move(edges);
    j["powers"] = std::vector<double>(solution.powers.xi.begin(), solution.powers.xi.end());
    j["interference"] =
        std::vector<double>(solution.report.per_node.begin(), solution.report.per_node.end());
    j["max_interference"] = solution.report.max;
    json logs = json::array();
    for (const IterationLog& log : solution.logs) {
        json entry;
        entry["l"] = log.iteration;
        entry["components_before"] = log.components_before;
        entry["components_after"] = log.components_after;
        entry["h_size"] = log.h_size;
        entry["z_prime"] = log.z_prime;
        entry["sets_chosen"] = log.sets_chosen;
        entry["normalized_max_weight"] = log.normalized_max_weight;
        entry["raw_max_weight"] = log.raw_max_weight;
        entry["w_max"] = log.w_max;
        logs.push_back(std::move(entry));
    }
    j["iterations"] = std::move(logs);
    if (solution.opt_hint) j["opt_hint"] = *solution.opt_hint;
    return j;
}

Solution solution_from_json(const json& j) {
    require_keys(j, "result",
                 {"edges", "powers", "interference", "max_interference", "iterations"},
                 {"opt_hint"});
    Solution solution;
    for (const json& pair : j.at("edges")) {
        if (!pair.is_array() || pair.size() != 2) throw Error("edges must be [u, v] pairs");
        solution.edges.insert(Edge(pair[0].get<int>(), pair[1].get<int>()));
    }
    const auto powers = j.at("powers").get<std::vector<double>>();
    solution.powers.xi = Eigen::Map<const Eigen::VectorXd>(powers.data(), powers.size());
    const auto per_node = j.at("interference").get<std::vector<double>>();
    solution.report.per_node =
        Eigen::Map<const Eigen::VectorXd>(per_node.data(), per_node.size());
    solution.report.max = j.at("max_interference").get<double>();
    for (const json& entry : j.at("iterations")) {
        require_keys(entry, "iteration",
                     {"l", "components_before", "components_after", "h_size", "z_prime",
                      "sets_chosen", "normalized_max_weight", "raw_max_weight", "w_max"});
        IterationLog log;
        log.iteration = entry.at("l").get<int>();
        log.components_before = entry.at("components_before").get<int>();
        log.components_after = entry.at("components_after").get<int>();
        log.h_size = entry.at("h_size").get<int>();
        log.z_prime = entry.at("z_prime").get<double>();
        log.sets_chosen = entry.at("sets_chosen").get<int>();
        log.normalized_max_weight = entry.at("normalized_max_weight").get<double>();
        log.raw_max_weight = entry.at("raw_max_weight").get<double>();
        log.w_max = entry.at("w_max").get<double>();
        solution.logs.push_back(log);
    }
    if (j.contains("opt_hint")) solution.opt_hint = j.at("opt_hint").get<double>();
    return solution;
}

Instance read_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("cannot parse " + path + ": " + e.what());
    }
    return instance_from_json(j);
}

void write_instance_file(const std::string& path, const Instance& inst) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << instance_to_json(inst).dump(2) << '\n';
}

void write_solution_file(const std::string& path, const Solution& solution) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << solution_to_json(solution).dump(2) << '\n';
}

Solution read_solution_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error("cannot parse " + path + ": " + e.what());
    }
    return solution_from_json(j);
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

void write_iteration_csv(std::ostream& out, const std::vector<IterationLog>& logs) {
    out << "l,comps_before,comps_after,h_size,z_prime,raw_max_weight\n";
    for (const IterationLog& log : logs) {
        out << log.iteration << ',' << log.components_before << ','
            << log.components_after << ',' << log.h_size << ','
            << format_double(log.z_prime) << ',' << format_double(log.raw_max_weight)
            << '\n';
    }
}

}  // namespace imin
