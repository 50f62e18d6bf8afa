#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "dmef/errors.hpp"

namespace dmef {

/// Linear plant  xdot = A x + B w.
struct PlantModel {
    Eigen::MatrixXd A;  // n x n state drift
    Eigen::MatrixXd B;  // n x m disturbance input map
    int n() const { return static_cast<int>(A.rows()); }
    int m() const { return static_cast<int>(B.cols()); }
};

/// Sensor at one node:  y_i = C_i x + D_i v_i,  with E_i = D_i D_i' > 0.
struct SensorSpec {
    Eigen::MatrixXd C;  // p_i x n output map
    Eigen::MatrixXd D;  // p_i x m_i noise map
    Eigen::MatrixXd E;  // p_i x p_i cached D D'
    int p() const { return static_cast<int>(C.rows()); }
    int noise_dim() const { return static_cast<int>(D.cols()); }
};

/// Directed communication link j -> i:  c_ij = W_ij xhat_j + F_ij eps_ij,
/// with G_ij = F_ij F_ij' > 0.
struct LinkSpec {
    int from = -1;      // sender node index j (0-based)
    int to = -1;        // receiver node index i (0-based)
    Eigen::MatrixXd W;  // p_ij x n
    Eigen::MatrixXd F;  // p_ij x m_ij
    Eigen::MatrixXd G;  // p_ij x p_ij cached F F'
    int p() const { return static_cast<int>(W.rows()); }
    int noise_dim() const { return static_cast<int>(F.cols()); }
};

/// Plant, sensor nodes, and the directed communication graph. Immutable
/// after build_network; safe to share across threads.
struct NetworkModel {
    PlantModel plant;
    std::vector<SensorSpec> nodes;
    std::vector<LinkSpec> links;
    // Receiving neighborhoods N_i = {j : j sends to i}, ascending node ids,
    // and the matching link indices (same order).
    std::vector<std::vector<int>> neighborhoods;
    std::vector<std::vector<int>> neighbor_links;
    std::vector<int> M;  // total communication row dimension per node

    int N() const { return static_cast<int>(nodes.size()); }
    int n() const { return plant.n(); }
    int m() const { return plant.m(); }
    int num_links() const { return static_cast<int>(links.size()); }
    int degree(int node) const { return static_cast<int>(neighborhoods[node].size()); }
    /// Index of the link j -> i, or -1 if absent.
    int link_index(int to, int from) const;
};

/// Performance weights: global error weight P (nN x nN, PSD) and per-node
/// initial-error weights X_i (n x n, PSD). P0 records the consensus
/// generator when P was produced by consensus_weight (empty otherwise).
struct DesignWeights {
    Eigen::MatrixXd P;
    std::vector<Eigen::MatrixXd> X;
    Eigen::MatrixXd P0;
};

/// Validates dimensions and noise maps, derives neighborhoods (ascending
/// node ids) and the per-node communication dimensions M_i.
NetworkModel build_network(PlantModel plant, std::vector<SensorSpec> sensors,
                           std::vector<LinkSpec> links);

/// Laplacian of the communication graph: row i has degree(i) on the
/// diagonal and -1 at each j in N_i.
Eigen::MatrixXd graph_laplacian(const NetworkModel& model);

/// Laplacian of the edge-reversed graph.
Eigen::MatrixXd reversed_graph_laplacian(const NetworkModel& model);

/// Consensus weight P = (L + L_rev) (x) P0 with identity initial-error
/// weights. P0 must be symmetric positive semidefinite n x n.
DesignWeights consensus_weight(const NetworkModel& model, const Eigen::MatrixXd& P0);

enum class BenchmarkCase { sim1, sim2 };

BenchmarkCase parse_case(const std::string& name);
std::string to_string(BenchmarkCase c);

struct ChuaBenchmark {
    NetworkModel model;
    DesignWeights weights;
    double zbar_min = 0.0;  // floor requested on the recovered Zbar (sim2)
};

/// Built-in five-node benchmark (a regime of the controlled Chua circuit
/// observed through three distinct output maps). sim2 additionally carries
/// the request Zbar_ij >= 0.1 I.
ChuaBenchmark chua_benchmark(BenchmarkCase c);

// -- model file IO --------------------------------------------------------

struct LoadedModel {
    NetworkModel model;
    DesignWeights weights;
};

/// Parses the JSON model format:
///   {"plant":{"A":[[...]],"B":[[...]]},
///    "nodes":[{"C":[[...]],"D":[[...]]}],
///    "links":[{"from":j,"to":i,"W":[[...]],"F":[[...]]}],
///    "weights":{"P0":[[...]],"X":[[[...]],...]}}
/// Node ids in the file are 1-based. Unknown keys are rejected.
LoadedModel parse_model_json(const std::string& text);
LoadedModel load_model(const std::string& path);
void save_model(const NetworkModel& model, const DesignWeights& weights,
                const std::string& path);

}  // namespace dmef
