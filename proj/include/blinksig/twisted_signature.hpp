#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "blinksig/substitution.hpp"

namespace blinksig {

inline constexpr double kInertiaTol = 1e-8;
inline constexpr double kRefineTol = 1e-12;

/// Requested configuration exists but is outside what the model covers.
class UnsupportedConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Hermitian matrix; the constructor stores (M + M^dag) / 2 so H = H^dag holds exactly.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const ComplexMatrix& m);
  const ComplexMatrix& matrix() const { return h_; }
  int size() const { return static_cast<int>(h_.rows()); }

 private:
  ComplexMatrix h_;
};

struct InertiaResult {
  int signature = 0;
  int nullity = 0;
  double tol_used = 0.0;
  /// Some eigenvalue lies in (tol/16, 16 tol): the count is sensitive to the threshold.
  bool ambiguous = false;
  /// Smallest |eigenvalue| and spectral norm, for reporting.
  double min_abs_eigenvalue = 0.0;
  double spectral_norm = 0.0;
};

/// Eigenvalues above tau, below -tau and in [-tau, tau], tau = tol_rel * ||H||_2
/// (tau = tol_rel for H = 0).
InertiaResult inertia(const HermitianMatrix& h, double tol_rel = kInertiaTol);

/// Block (i, j) = A_ij (x) (I - U_i^dag) + A_ji^T (x) (I - U_j) with A = A_q, in the
/// same (surface index outer, representation index inner) order as substitute().
/// At m = k = 1 this is the Levine-Tristram form (1 - conj w) A + (1 - w) A^T.
/// The convention only affects presentation matrices; the form does not depend on it.
/// Throws UnsupportedConfiguration when q is even.
HermitianMatrix twisted_form(const BoundaryLinkData& link, const UnitaryTuple& alpha);

/// inertia(twisted_form(link, alpha)).
InertiaResult rho_hat(const BoundaryLinkData& link, const UnitaryTuple& alpha, double tol_rel = kInertiaTol);

using Path = std::function<UnitaryTuple(double)>;

/// s -> base with U_r replaced by e^{2 pi i s} U_r.
Path circle_on_component(const UnitaryTuple& base, int component);

/// Closed loop s -> (B_j V_j diag(e^{2 pi i s n_ja}) V_j^dag)_j with Haar B_j, V_j and
/// integer winding numbers n_ja in {-2, -1, 1, 2}.
Path random_circle(int m, int k, Rng& rng);

struct ScanOptions {
  int samples = 1024;
  double refine_tol = kRefineTol;
  double inertia_tol = kInertiaTol;
  Convention convention = Convention::classical;
};

struct ScanSample {
  double s = 0.0;
  int signature = 0;
  int nullity = 0;
  bool ambiguous = false;
  double margin_h = 0.0;
  double margin_p = 0.0;  // minimum over discriminant levels
};

struct Jump {
  double s = 0.0;  // midpoint of the final bracket
  double bracket = 0.0;
  int before = 0;
  int after = 0;
  double margin_h = 0.0;
  std::vector<DiscriminantMargin> margins_p;
};

struct JumpReport {
  std::vector<ScanSample> samples;
  std::vector<Jump> jumps;
  int ambiguous_samples = 0;
};

/// Samples s_i = i / (N - 1), i = 0..N-1, and bisects every interval whose end
/// signatures differ down to refine_tol.
JumpReport scan_path(const BoundaryLinkData& link, const Path& path, const ScanOptions& options = {});

struct GridPoint {
  std::vector<double> angles;
  InertiaResult inertia;
  double margin_h = 0.0;
  double margin_p = 0.0;
};

/// k = 1 grid over angles 2 pi i / R for every component, row-major (component 1 slowest).
std::vector<GridPoint> torus_grid(const BoundaryLinkData& link, int resolution,
                                  Convention conv = Convention::classical, double inertia_tol = kInertiaTol);

}  // namespace blinksig
