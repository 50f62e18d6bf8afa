#include "dmef/svec.hpp"

#include <cmath>

#include "dmef/errors.hpp"

namespace dmef {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

int svec_size(int d) { return d * (d + 1) / 2; }

int svec_dim(int len) {
    // Solve d(d+1)/2 = len.
    int d = static_cast<int>(std::floor((std::sqrt(8.0 * len + 1.0) - 1.0) / 2.0));
    for (int cand = d - 1; cand <= d + 1; ++cand) {
        if (cand >= 0 && svec_size(cand) == len) return cand;
    }
    throw BadDimension("vector of length " + std::to_string(len) +
                       " is not a symmetric vectorization");
}

Eigen::VectorXd vectorize_sym(const Eigen::MatrixXd& A) {
    if (A.rows() != A.cols()) {
        throw BadDimension("vectorize_sym: matrix is not square (" + std::to_string(A.rows()) +
                           "x" + std::to_string(A.cols()) + ")");
    }
    const int d = static_cast<int>(A.rows());
    Eigen::VectorXd v(svec_size(d));
    int k = 0;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i <= j; ++i) {
            if (i == j) {
                v[k++] = A(i, j);
            } else {
                v[k++] = kSqrt2 * 0.5 * (A(i, j) + A(j, i));
            }
        }
    }
    return v;
}

Eigen::MatrixXd devectorize_sym(const Eigen::VectorXd& v, int d) {
    if (static_cast<int>(v.size()) != svec_size(d)) {
        throw BadDimension("devectorize_sym: expected length " + std::to_string(svec_size(d)) +
                           " for dimension " + std::to_string(d) + ", got " +
                           std::to_string(v.size()));
    }
    Eigen::MatrixXd A(d, d);
    int k = 0;
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i <= j; ++i) {
            if (i == j) {
                A(i, j) = v[k];
            } else {
                const double x = v[k] / kSqrt2;
                A(i, j) = x;
                A(j, i) = x;
            }
            ++k;
        }
    }
    return A;
}

}  // namespace dmef
