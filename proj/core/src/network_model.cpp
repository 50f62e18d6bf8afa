#include "dmef/network_model.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace dmef {

namespace {

using nlohmann::json;

bool finite(const Eigen::MatrixXd& M) { return M.allFinite(); }

double min_eigenvalue(const Eigen::MatrixXd& S) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

// Positive definiteness with the relative tolerance used throughout the
// model layer: min eig > 1e-12 (1 + max |entry|).
bool positive_definite(const Eigen::MatrixXd& S) {
    const double scale = 1.0 + S.cwiseAbs().maxCoeff();
    return min_eigenvalue(S) > 1e-12 * scale;
}

}  // namespace

int NetworkModel::link_index(int to, int from) const {
    for (int l = 0; l < num_links(); ++l) {
        if (links[l].to == to && links[l].from == from) return l;
    }
    return -1;
}

NetworkModel build_network(PlantModel plant, std::vector<SensorSpec> sensors,
                           std::vector<LinkSpec> links) {
    const int n = plant.n();
    if (plant.A.rows() != plant.A.cols()) {
        throw DimensionMismatch("plant A must be square");
    }
    if (plant.B.rows() != n) {
        throw DimensionMismatch("plant B must have as many rows as A");
    }
    if (!finite(plant.A) || !finite(plant.B)) {
        throw DimensionMismatch("plant matrices must be finite");
    }
    if (sensors.empty()) {
        throw DimensionMismatch("at least one sensor node is required");
    }
    const int N = static_cast<int>(sensors.size());

    for (int i = 0; i < N; ++i) {
        SensorSpec& s = sensors[i];
        if (s.C.cols() != n) {
            throw DimensionMismatch("sensor " + std::to_string(i + 1) +
                                    ": C must have n columns");
        }
        if (s.D.rows() != s.C.rows()) {
            throw DimensionMismatch("sensor " + std::to_string(i + 1) +
                                    ": C and D must have the same row count");
        }
        if (!finite(s.C) || !finite(s.D)) {
            throw DimensionMismatch("sensor " + std::to_string(i + 1) +
                                    ": matrices must be finite");
        }
        s.E = s.D * s.D.transpose();
        if (!positive_definite(s.E)) {
            throw SingularNoiseMap("sensor " + std::to_string(i + 1) +
                                   ": E = D D' is not positive definite");
        }
    }

    std::set<std::pair<int, int>> seen;
    for (std::size_t l = 0; l < links.size(); ++l) {
        LinkSpec& lk = links[l];
        if (lk.to < 0 || lk.to >= N || lk.from < 0 || lk.from >= N) {
            throw UnknownNodeId("link " + std::to_string(l) + ": node id out of range");
        }
        if (lk.to == lk.from) {
            throw UnknownNodeId("link " + std::to_string(l) + ": self-loops are not allowed");
        }
        if (!seen.insert({lk.to, lk.from}).second) {
            throw DuplicateLink("duplicate link " + std::to_string(lk.from + 1) + " -> " +
                                std::to_string(lk.to + 1));
        }
        if (lk.W.cols() != n) {
            throw DimensionMismatch("link " + std::to_string(l) + ": W must have n columns");
        }
        if (lk.F.rows() != lk.W.rows()) {
            throw DimensionMismatch("link " + std::to_string(l) +
                                    ": W and F must have the same row count");
        }
        if (!finite(lk.W) || !finite(lk.F)) {
            throw DimensionMismatch("link " + std::to_string(l) + ": matrices must be finite");
        }
        lk.G = lk.F * lk.F.transpose();
        if (!positive_definite(lk.G)) {
            throw SingularNoiseMap("link " + std::to_string(l) +
                                   ": G = F F' is not positive definite");
        }
    }

    NetworkModel model;
    model.plant = std::move(plant);
    model.nodes = std::move(sensors);
    model.links = std::move(links);
    model.neighborhoods.assign(N, {});
    model.neighbor_links.assign(N, {});
    model.M.assign(N, 0);

    for (int i = 0; i < N; ++i) {
        std::vector<std::pair<int, int>> inbound;  // (from, link index)
        for (int l = 0; l < model.num_links(); ++l) {
            if (model.links[l].to == i) inbound.emplace_back(model.links[l].from, l);
        }
        std::sort(inbound.begin(), inbound.end());
        for (const auto& [from, l] : inbound) {
            model.neighborhoods[i].push_back(from);
            model.neighbor_links[i].push_back(l);
            model.M[i] += model.links[l].p();
        }
    }
    return model;
}

Eigen::MatrixXd graph_laplacian(const NetworkModel& model) {
    const int N = model.N();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        L(i, i) = static_cast<double>(model.degree(i));
        for (int j : model.neighborhoods[i]) L(i, j) -= 1.0;
    }
    return L;
}

Eigen::MatrixXd reversed_graph_laplacian(const NetworkModel& model) {
    const int N = model.N();
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < N; ++i) {
        for (int j : model.neighborhoods[i]) {
            // Edge j -> i reversed becomes i -> j: j receives from i.
            L(j, j) += 1.0;
            L(j, i) -= 1.0;
        }
    }
    return L;
}

DesignWeights consensus_weight(const NetworkModel& model, const Eigen::MatrixXd& P0) {
    const int n = model.n();
    if (P0.rows() != n || P0.cols() != n) {
        throw DimensionMismatch("P0 must be n x n");
    }
    const double scale = 1.0 + P0.cwiseAbs().maxCoeff();
    if ((P0 - P0.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw NonSymmetricWeight("P0 must be symmetric");
    }
    if (min_eigenvalue(P0) < -1e-10 * scale) {
        throw NonSymmetricWeight("P0 must be positive semidefinite");
    }
    const Eigen::MatrixXd Lsum = graph_laplacian(model) + reversed_graph_laplacian(model);

    DesignWeights w;
    const int N = model.N();
    w.P = Eigen::MatrixXd::Zero(n * N, n * N);
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            if (Lsum(i, j) != 0.0) w.P.block(i * n, j * n, n, n) = Lsum(i, j) * P0;
        }
    }
    w.X.assign(N, Eigen::MatrixXd::Identity(n, n));
    w.P0 = P0;
    return w;
}

BenchmarkCase parse_case(const std::string& name) {
    if (name == "sim1") return BenchmarkCase::sim1;
    if (name == "sim2") return BenchmarkCase::sim2;
    throw UnknownCase("unknown benchmark case '" + name + "' (expected sim1 or sim2)");
}

std::string to_string(BenchmarkCase c) {
    return c == BenchmarkCase::sim1 ? "sim1" : "sim2";
}

ChuaBenchmark chua_benchmark(BenchmarkCase c) {
    PlantModel plant;
    plant.A = Eigen::MatrixXd{{-3.2, 10.0, 0.0}, {1.0, -1.0, 1.0}, {0.0, -14.87, 0.0}};
    plant.B = Eigen::MatrixXd{{0.4}, {0.4}, {0.4}};

    Eigen::MatrixXd C14{{3.1923e-3, -4.6597e-3, 1.0e-3}};
    Eigen::MatrixXd C235{{-0.8986, 0.1312, -1.9703}};
    // D_i = 0.025 I_{1x3} read as the rectangular identity, so E_i = 6.25e-4.
    Eigen::MatrixXd D{{0.025, 0.0, 0.0}};

    std::vector<SensorSpec> sensors(5);
    for (int i = 0; i < 5; ++i) {
        sensors[i].C = (i == 0 || i == 3) ? C14 : C235;
        sensors[i].D = D;
    }

    const Eigen::MatrixXd W = Eigen::MatrixXd::Identity(3, 3);
    const Eigen::MatrixXd F = 0.5 * Eigen::MatrixXd::Identity(3, 3);
    // Directed edges (i, j): node i receives from node j; 1-based in the
    // listing, stored 0-based.
    const int edges[8][2] = {{1, 3}, {2, 3}, {3, 1}, {3, 2}, {3, 4}, {4, 3}, {4, 5}, {5, 4}};
    std::vector<LinkSpec> links(8);
    for (int l = 0; l < 8; ++l) {
        links[l].to = edges[l][0] - 1;
        links[l].from = edges[l][1] - 1;
        links[l].W = W;
        links[l].F = F;
    }

    ChuaBenchmark bench;
    bench.model = build_network(std::move(plant), std::move(sensors), std::move(links));
    bench.weights = consensus_weight(bench.model, Eigen::MatrixXd::Identity(3, 3));
    bench.zbar_min = (c == BenchmarkCase::sim2) ? 0.1 : 0.0;
    return bench;
}

// -- JSON IO ----------------------------------------------------------------

namespace {

void require_keys(const json& obj, const std::set<std::string>& allowed,
                  const std::string& context) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key())) {
            throw ParseError("unknown key '" + item.key() + "' in " + context);
        }
    }
}

Eigen::MatrixXd parse_matrix(const json& j, const std::string& context) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw ParseError(context + ": expected an array of rows");
    }
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j[0].size());
    Eigen::MatrixXd M(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) {
            throw ParseError(context + ": ragged rows");
        }
        for (int c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) {
                throw ParseError(context + ": non-numeric entry");
            }
            M(r, c) = j[r][c].get<double>();
        }
    }
    if (!M.allFinite()) throw ParseError(context + ": non-finite entry");
    return M;
}

json matrix_to_json(const Eigen::MatrixXd& M) {
    json rows = json::array();
    for (int r = 0; r < M.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < M.cols(); ++c) row.push_back(M(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

LoadedModel parse_model_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
    if (!doc.is_object()) throw ParseError("model file: expected a JSON object");
    require_keys(doc, {"plant", "nodes", "links", "weights"}, "model file");
    if (!doc.contains("plant") || !doc.contains("nodes")) {
        throw ParseError("model file: 'plant' and 'nodes' are required");
    }

    require_keys(doc["plant"], {"A", "B"}, "plant");
    PlantModel plant;
    plant.A = parse_matrix(doc["plant"].at("A"), "plant.A");
    plant.B = parse_matrix(doc["plant"].at("B"), "plant.B");

    std::vector<SensorSpec> sensors;
    for (const auto& nj : doc.at("nodes")) {
        require_keys(nj, {"C", "D"}, "node");
        SensorSpec s;
        s.C = parse_matrix(nj.at("C"), "node.C");
        s.D = parse_matrix(nj.at("D"), "node.D");
        sensors.push_back(std::move(s));
    }
    const int N = static_cast<int>(sensors.size());

    std::vector<LinkSpec> links;
    if (doc.contains("links")) {
        for (const auto& lj : doc["links"]) {
            require_keys(lj, {"from", "to", "W", "F"}, "link");
            LinkSpec lk;
            if (!lj.contains("from") || !lj.contains("to") ||
                !lj["from"].is_number_integer() || !lj["to"].is_number_integer()) {
                throw ParseError("link: integer 'from' and 'to' are required");
            }
            lk.from = lj["from"].get<int>() - 1;  // 1-based on disk
            lk.to = lj["to"].get<int>() - 1;
            lk.W = parse_matrix(lj.at("W"), "link.W");
            lk.F = parse_matrix(lj.at("F"), "link.F");
            links.push_back(std::move(lk));
        }
    }

    LoadedModel out;
    out.model = build_network(std::move(plant), std::move(sensors), std::move(links));

    Eigen::MatrixXd P0 = Eigen::MatrixXd::Identity(out.model.n(), out.model.n());
    if (doc.contains("weights")) {
        require_keys(doc["weights"], {"P0", "X"}, "weights");
        if (doc["weights"].contains("P0")) {
            P0 = parse_matrix(doc["weights"]["P0"], "weights.P0");
        }
    }
    out.weights = consensus_weight(out.model, P0);
    if (doc.contains("weights") && doc["weights"].contains("X")) {
        const auto& xs = doc["weights"]["X"];
        if (static_cast<int>(xs.size()) != N) {
            throw ParseError("weights.X: expected one matrix per node");
        }
        for (int i = 0; i < N; ++i) {
            Eigen::MatrixXd Xi = parse_matrix(xs[i], "weights.X");
            if (Xi.rows() != out.model.n() || Xi.cols() != out.model.n()) {
                throw ParseError("weights.X: matrices must be n x n");
            }
            out.weights.X[i] = std::move(Xi);
        }
    }
    return out;
}

LoadedModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model_json(buf.str());
}

void save_model(const NetworkModel& model, const DesignWeights& weights,
                const std::string& path) {
    json doc;
    doc["plant"]["A"] = matrix_to_json(model.plant.A);
    doc["plant"]["B"] = matrix_to_json(model.plant.B);
    doc["nodes"] = json::array();
    for (const auto& s : model.nodes) {
        doc["nodes"].push_back({{"C", matrix_to_json(s.C)}, {"D", matrix_to_json(s.D)}});
    }
    doc["links"] = json::array();
    for (const auto& lk : model.links) {
        doc["links"].push_back({{"from", lk.from + 1},
                                {"to", lk.to + 1},
                                {"W", matrix_to_json(lk.W)},
                                {"F", matrix_to_json(lk.F)}});
    }
    // The global weight is stored through P0 only when it matches the
    // consensus construction; per-node X is always written.
    doc["weights"]["X"] = json::array();
    for (const auto& Xi : weights.X) doc["weights"]["X"].push_back(matrix_to_json(Xi));

    std::ofstream out(path);
    if (!out) throw Error("cannot write model file '" + path + "'");
    out << doc.dump(2) << "\n";
}

}  // namespace dmef
