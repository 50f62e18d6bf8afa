#pragma once

#include <Eigen/Dense>

namespace dmef {

/// Length of the scaled symmetric vectorization of a d x d matrix: d(d+1)/2.
int svec_size(int d);

/// Matrix dimension whose svec has the given length; throws BadDimension if
/// the length is not triangular.
int svec_dim(int len);

/// Scaled symmetric vectorization. Off-diagonal entries are multiplied by
/// sqrt(2) so that Frobenius inner products are preserved:
///   <A, B>_F = vectorize_sym(A) . vectorize_sym(B).
/// Order is column-major over the upper triangle:
///   [[a, b], [b, c]] -> (a, sqrt(2) b, c).
Eigen::VectorXd vectorize_sym(const Eigen::MatrixXd& A);

/// Inverse of vectorize_sym.
Eigen::MatrixXd devectorize_sym(const Eigen::VectorXd& v, int d);

}  // namespace dmef
