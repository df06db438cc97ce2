#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace qrat {

using Cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Raised when an algorithm cannot continue for numerical reasons: divergent
// series, truncation cap exceeded, singular resolvent, ill-conditioned solve.
// Structural misuse (bad dimensions, out-of-range parameters) throws
// std::invalid_argument instead.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Deformation parameter. Valid range is [0, 1]; operations built on infinite
// series or products additionally demand q < 1 and say so at the call site.
class QParam {
 public:
  explicit QParam(double q) : q_(q) {
    if (!(q >= 0.0 && q <= 1.0))
      throw std::invalid_argument("q parameter must lie in [0, 1]");
  }
  double value() const { return q_; }
  void require_below_one(const char* who) const {
    if (q_ >= 1.0)
      throw std::invalid_argument(std::string(who) + " requires q < 1");
  }

 private:
  double q_;
};

// Hard cap on series/product terms, overridable through QRAT_MAX_TERMS.
inline std::size_t series_term_cap() {
  if (const char* s = std::getenv("QRAT_MAX_TERMS")) {
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0)
      return static_cast<std::size_t>(v);
  }
  return 100000;
}

inline double spectral_radius(const CMat& A) {
  if (A.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<CMat> es(A, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success)
    throw numeric_error("eigenvalue computation failed");
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline double operator_norm(const CMat& A) {
  if (A.rows() == 0 || A.cols() == 0) return 0.0;
  Eigen::JacobiSVD<CMat> svd(A);
  return svd.singularValues()(0);
}

// Solves (I - z A) X = rhs, rejecting the call when 1/z is an eigenvalue of A
// within LU rank tolerance.
inline CMat resolvent_solve(const CMat& A, Cplx z, const CMat& rhs) {
  const Eigen::Index n = A.rows();
  CMat M = CMat::Identity(n, n) - z * A;
  Eigen::FullPivLU<CMat> lu(M);
  if (!lu.isInvertible())
    throw numeric_error("singular resolvent: 1/z is an eigenvalue of A");
  return lu.solve(rhs);
}

inline CMat hermitize(const CMat& G) { return 0.5 * (G + G.adjoint()); }

}  // namespace qrat
