#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fabrics {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Raised when a metric, force, or energy turns non-finite (or otherwise
// unevaluable) at a concrete state. Carries that state for diagnostics.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, Vec position, Vec velocity)
      : std::runtime_error(what + " at " + describe(position, velocity)),
        position_(std::move(position)),
        velocity_(std::move(velocity)) {}

  const Vec& position() const { return position_; }
  const Vec& velocity() const { return velocity_; }

 private:
  static std::string describe(const Vec& x, const Vec& v) {
    std::ostringstream os;
    os << "x=[" << x.transpose() << "] xd=[" << v.transpose() << "]";
    return os.str();
  }

  Vec position_;
  Vec velocity_;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_dim(int got, int want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": dimension mismatch, got " +
                         std::to_string(got) + ", expected " +
                         std::to_string(want));
  }
}

inline bool all_finite(const Vec& v) { return v.allFinite(); }
inline bool all_finite(const Mat& m) { return m.allFinite(); }

inline Mat symmetrized(const Mat& m) { return 0.5 * (m + m.transpose()); }

inline double max_asymmetry(const Mat& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

struct SolveInfo {
  double condition = 0.0;   // eigenvalue ratio of the symmetrized metric
  bool regularized = false; // Tikhonov ridge engaged
  double asymmetry = 0.0;   // max |M - M^T| element seen before symmetrizing
};

// Symmetric solve M a = b with a condition-triggered ridge: when the spectrum
// ratio exceeds cond_cap (or the metric is outright singular), solve with
// (M + eps I), eps = 1e-10 tr(M)/dim. Well-posed systems are never perturbed.
inline Vec solve_metric(const Mat& metric, const Vec& rhs,
                        double cond_cap = 1e12, SolveInfo* info = nullptr) {
  const int n = static_cast<int>(rhs.size());
  require_dim(static_cast<int>(metric.rows()), n, "solve_metric");
  const double asym = max_asymmetry(metric);
  const Mat m = symmetrized(metric);

  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  const Vec& ev = es.eigenvalues();
  const double emax = ev.cwiseAbs().maxCoeff();
  const double emin = ev.cwiseAbs().minCoeff();
  const double cond = emin > 0.0 ? emax / emin
                                 : std::numeric_limits<double>::infinity();

  bool ridge = !(cond <= cond_cap);
  Vec x;
  if (!ridge) {
    x = es.eigenvectors() *
        (es.eigenvectors().transpose() * rhs).cwiseQuotient(ev);
  } else {
    const double eps = 1e-10 * m.trace() / n;
    x = (m + eps * Mat::Identity(n, n)).ldlt().solve(rhs);
  }
  if (info) {
    info->condition = cond;
    info->regularized = ridge;
    info->asymmetry = asym;
  }
  return x;
}

}  // namespace fabrics
