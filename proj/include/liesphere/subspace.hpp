#pragma once

#include "liesphere/core.hpp"

#include <cmath>
#include <initializer_list>
#include <vector>

namespace liesphere {

struct Signature {
  int plus = 0;
  int minus = 0;
  int zero = 0;
  bool operator==(const Signature&) const = default;
};

using Basis = Eigen::Matrix<double, 6, Eigen::Dynamic>;

// Span of up to six LieVecs, stored with a Euclidean-orthonormal basis.
class Subspace {
 public:
  Subspace() = default;

  // Columns are orthonormalised by SVD; singular values below rank_tol
  // (relative to the largest) drop the dimension. Use span() to get an error instead.
  static Subspace from_columns(const Basis& cols, double rank_tol = 1e-10);

  int dim() const { return static_cast<int>(q_.cols()); }
  const Basis& basis() const { return q_; }
  LieVec vec(int k) const { return q_.col(k); }

  // metric Gram matrix Q^T G Q
  Eigen::MatrixXd gram() const;
  Signature signature() const { return sig_; }

  // Euclidean orthogonal projection onto the span.
  LieVec project(const LieVec& v) const { return q_ * (q_.transpose() * v); }
  // |v - project(v)| / |v|
  double membership_residual(const LieVec& v) const;

 private:
  Basis q_;
  Signature sig_;
};

Signature signature_of(const Eigen::MatrixXd& gram, double rel_zero = 1e-9);

// Throws RankDeficiencyError naming the dropped count when vs are dependent.
Subspace span(const std::vector<LieVec>& vs, double rank_tol = 1e-10);
Subspace span(std::initializer_list<LieVec> vs, double rank_tol = 1e-10);

// metric orthogonal complement, dim S + dim S^perp = 6
Subspace orth_complement(const Subspace& s);

Subspace subspace_intersect(const Subspace& a, const Subspace& b, double tol = 1e-9);

struct SubspaceComparison {
  bool equal = false;
  double residual = 0.0;  // sine of the largest principal angle
};
SubspaceComparison subspace_equal(const Subspace& a, const Subspace& b, double tol = 1e-8);

// max |(a_i, b_j)| over the orthonormal bases
double cross_inner(const Subspace& a, const Subspace& b);

// Pseudo-orthonormal (E1, E2, E3) of a (2,1) subspace, (E3,E3) = -1.
// The frame is canonical: it depends only on the span.
struct CircleFrame {
  LieVec e1, e2, e3;
  LieVec at(double theta) const { return std::cos(theta) * e1 + std::sin(theta) * e2 + e3; }
};
CircleFrame circle_frame(const Subspace& s);

// cos(theta) E1 + sin(theta) E2 + E3
LiePoint lightcone_circle(const Subspace& s, double theta);

}  // namespace liesphere
