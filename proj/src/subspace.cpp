#include "liesphere/subspace.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <sstream>

namespace liesphere {

namespace {

// first entry within 1e-9 of the largest magnitude is made positive
LieVec sign_normalise(const LieVec& v) {
  const double mx = v.cwiseAbs().maxCoeff();
  for (int i = 0; i < 6; ++i) {
    if (std::abs(v(i)) >= mx - 1e-9 * std::max(1.0, mx)) return v(i) < 0 ? LieVec(-v) : v;
  }
  return v;
}

}  // namespace

Signature signature_of(const Eigen::MatrixXd& gram, double rel_zero) {
  Signature s;
  if (gram.rows() == 0) return s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  const Eigen::VectorXd ev = es.eigenvalues();
  const double mx = ev.cwiseAbs().maxCoeff();
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) < rel_zero * mx || mx == 0.0)
      ++s.zero;
    else if (ev(i) > 0)
      ++s.plus;
    else
      ++s.minus;
  }
  return s;
}

Subspace Subspace::from_columns(const Basis& cols, double rank_tol) {
  Subspace s;
  if (cols.cols() == 0) {
    s.q_ = Basis(6, 0);
    return s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cols, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rank_tol * sv(0)) ++rank;
  s.q_ = svd.matrixU().leftCols(rank);
  s.sig_ = signature_of(s.gram());
  return s;
}

Eigen::MatrixXd Subspace::gram() const { return q_.transpose() * metric() * q_; }

double Subspace::membership_residual(const LieVec& v) const {
  const double n = v.norm();
  if (n == 0.0) return 0.0;
  return (v - project(v)).norm() / n;
}

Subspace span(const std::vector<LieVec>& vs, double rank_tol) {
  if (vs.empty() || vs.size() > 6)
    throw PreconditionError("span: need 1..6 vectors, got " + std::to_string(vs.size()));
  Basis cols(6, static_cast<Eigen::Index>(vs.size()));
  for (size_t k = 0; k < vs.size(); ++k) {
    const double n = vs[k].norm();
    if (n == 0.0) throw RankDeficiencyError("span: vector " + std::to_string(k) + " is zero");
    cols.col(static_cast<Eigen::Index>(k)) = vs[k] / n;
  }
  Subspace s = Subspace::from_columns(cols, rank_tol);
  if (s.dim() != static_cast<int>(vs.size())) {
    std::ostringstream os;
    os << "span: rank " << s.dim() << " from " << vs.size() << " vectors";
    throw RankDeficiencyError(os.str());
  }
  return s;
}

Subspace span(std::initializer_list<LieVec> vs, double rank_tol) {
  return span(std::vector<LieVec>(vs), rank_tol);
}

Subspace orth_complement(const Subspace& s) {
  if (s.dim() == 0) return Subspace::from_columns(Mat6::Identity());
  const Eigen::MatrixXd gq = metric() * s.basis();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gq, Eigen::ComputeFullU);
  // G is invertible, so G Q has full rank dim S
  const int k = s.dim();
  return Subspace::from_columns(svd.matrixU().rightCols(6 - k));
}

Subspace subspace_intersect(const Subspace& a, const Subspace& b, double tol) {
  const int ka = a.dim(), kb = b.dim();
  Eigen::MatrixXd m(6, ka + kb);
  m << a.basis(), -b.basis();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++rank;
  const int nnull = ka + kb - rank;
  if (nnull == 0) return Subspace::from_columns(Basis(6, 0));
  const Eigen::MatrixXd v = svd.matrixV().rightCols(nnull);
  return Subspace::from_columns(a.basis() * v.topRows(ka));
}

SubspaceComparison subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  SubspaceComparison out;
  if (a.dim() != b.dim()) {
    out.residual = 1.0;
    return out;
  }
  if (a.dim() == 0) {
    out.equal = true;
    return out;
  }
  const Mat6 pa = a.basis() * a.basis().transpose();
  const Mat6 pb = b.basis() * b.basis().transpose();
  const Eigen::MatrixXd ra = b.basis() - pa * b.basis();
  const Eigen::MatrixXd rb = a.basis() - pb * a.basis();
  Eigen::JacobiSVD<Eigen::MatrixXd> sa(ra), sb(rb);
  out.residual = std::max(sa.singularValues()(0), sb.singularValues()(0));
  out.equal = out.residual <= tol;
  return out;
}

double cross_inner(const Subspace& a, const Subspace& b) {
  if (a.dim() == 0 || b.dim() == 0) return 0.0;
  return (a.basis().transpose() * metric() * b.basis()).cwiseAbs().maxCoeff();
}

CircleFrame circle_frame(const Subspace& s) {
  if (s.dim() != 3 || !(s.signature() == Signature{2, 1, 0})) {
    std::ostringstream os;
    const Signature g = s.signature();
    os << "lightcone_circle: need signature (2,1,0), got (" << g.plus << "," << g.minus << ","
       << g.zero << ") in dimension " << s.dim();
    throw PreconditionError(os.str());
  }
  const Eigen::MatrixXd m = s.gram();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  // ascending: index 0 is the negative eigenvalue
  const Eigen::MatrixXd ev = es.eigenvectors();
  CircleFrame f;
  LieVec neg = s.basis() * ev.col(0);
  f.e3 = sign_normalise(neg / std::sqrt(-inner(neg, neg)));

  LieVec p1 = s.basis() * ev.col(1), p2 = s.basis() * ev.col(2);
  p1 /= std::sqrt(inner(p1, p1));
  p2 -= inner(p1, p2) * p1;
  p2 /= std::sqrt(inner(p2, p2));

  f.e1 = LieVec::Zero();
  for (int k = 1; k <= 6; ++k) {
    const LieVec e = basis(k);
    const LieVec pr = inner(e, p1) * p1 + inner(e, p2) * p2;
    const double n2 = inner(pr, pr);
    if (n2 > 1e-6) {
      f.e1 = pr / std::sqrt(n2);
      break;
    }
  }
  LieVec e2 = p2 - inner(p2, f.e1) * f.e1;
  if (inner(e2, e2) < 1e-6) e2 = p1 - inner(p1, f.e1) * f.e1;
  e2 /= std::sqrt(inner(e2, e2));
  f.e2 = sign_normalise(e2);
  return f;
}

LiePoint lightcone_circle(const Subspace& s, double theta) {
  return LiePoint(circle_frame(s).at(theta), 1e-10);
}

}  // namespace liesphere
