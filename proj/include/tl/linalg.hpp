#pragma once

#include <vector>

#include "tl/scalar.hpp"

namespace tl {

using Mat = std::vector<std::vector<Scalar>>;

Mat mat_zero(const DomainPtr& dom, int rows, int cols);
Mat mat_identity(const DomainPtr& dom, int n);
Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
bool mat_equal(const Mat& a, const Mat& b);

// Kronecker product; the left factor owns the most significant index digit.
Mat mat_kron(const Mat& a, const Mat& b);

// Largest |entry| (1 in exact modes); the float pivot threshold scale.
double mat_scale(const Mat& a);

// Rank by Gaussian elimination: exact zero tests in exact modes, an
// eps*scale pivot threshold in float mode. In symbolic mode a rational
// specialization of lambda is tried first; a full-rank specialization
// certifies full symbolic rank, otherwise exact elimination runs.
int mat_rank(Mat a, const DomainPtr& dom);

// Symmetric positive-semidefiniteness via diagonal-pivot elimination
// (pivots must be positive; a zero diagonal with nonzero residual fails).
// Sets *rank_out to the number of positive pivots when non-null.
bool mat_psd(Mat a, const DomainPtr& dom, int* rank_out);

// Exact inverse (float: partial pivoting with threshold); throws if singular.
Mat mat_inverse(Mat a, const DomainPtr& dom);

// Gram-Schmidt in coordinates. Input: the Gram matrix of vectors v_1..v_k
// under a positive-semidefinite form. Output rows C_j express orthogonal
// vectors u_j = sum_i C_j[i] v_i with nonzero norms; dependent vectors are
// dropped. norms2 (optional) receives <u_j, u_j>.
std::vector<std::vector<Scalar>> orthogonalize_by_gram(const Mat& gram, const DomainPtr& dom,
                                                       std::vector<Scalar>* norms2);

}  // namespace tl
