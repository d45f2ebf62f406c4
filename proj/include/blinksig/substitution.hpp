#pragma once

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "blinksig/presentation.hpp"
#include "blinksig/random.hpp"
#include "blinksig/seifert.hpp"

namespace blinksig {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kUnitarityTol = 1e-10;
inline constexpr double kProjectionTol = 1e-6;
inline constexpr double kDiscriminantTol = 1e-8;

/// A point (U_1..U_m) of U(k)^m.
class UnitaryTuple {
 public:
  /// Accepts matrices within unitarity_tol of unitary as-is, projects those within
  /// kProjectionTol onto U(k) (polar factor), rejects the rest with ValidationError.
  UnitaryTuple(int k, std::vector<ComplexMatrix> unitaries, double unitarity_tol = kUnitarityTol);

  /// k = 1 point U_r = e^{i theta_r}.
  static UnitaryTuple from_angles(const std::vector<double>& angles);
  /// All U_r = I_k.
  static UnitaryTuple trivial(int m, int k);
  /// Haar-random point.
  static UnitaryTuple haar(int m, int k, Rng& rng);

  int k() const { return k_; }
  int m() const { return static_cast<int>(us_.size()); }
  const ComplexMatrix& operator[](int r) const { return us_.at(static_cast<std::size_t>(r)); }
  const std::vector<ComplexMatrix>& unitaries() const { return us_; }

  /// Same point with U_r replaced.
  UnitaryTuple with(int r, ComplexMatrix u) const;

 private:
  int k_;
  std::vector<ComplexMatrix> us_;
};

/// max |(U^dag U - I)_{ij}|.
double unitarity_defect(const ComplexMatrix& u);
/// Nearest unitary matrix (polar factor of the SVD).
ComplexMatrix polar_projection(const ComplexMatrix& u);
/// Haar-distributed element of U(k) (QR of a complex Ginibre matrix, phases fixed).
ComplexMatrix haar_unitary(int k, Rng& rng);

/// Replaces each entry sum_d c_d t_j^d by sum_d c_d U_j^d (scalars become c I_k).
/// Row r*k + a, column c*k + b holds entry (a, b) of the block for P(r, c).
/// Throws ValidationError on a variable-count mismatch or on monomials mixing
/// two variables (their image depends on an ordering of non-commuting U_j).
ComplexMatrix substitute(const PresentationLevel& p, const UnitaryTuple& alpha);

struct HadamardResult {
  Complex det;
  /// |det| / product of row 2-norms, in [0, 1]; 0 when a row vanishes, 1 for 0x0.
  double margin;
};

/// Determinant by partial-pivot LU together with the Hadamard-normalized margin.
HadamardResult hadamard(const ComplexMatrix& m);

struct DiscriminantMargin {
  int level = 0;
  Complex det_value;
  double margin = 1.0;
};

/// One entry per level in discriminant_levels(link).
std::vector<DiscriminantMargin> discriminant_margins(const BoundaryLinkData& link, const UnitaryTuple& alpha,
                                                     Convention conv);

struct DiscriminantMembership {
  bool member = false;
  std::vector<DiscriminantMargin> margins;
  double min_margin() const;
};

/// Member iff some level margin is below tol.
DiscriminantMembership in_discriminant(const BoundaryLinkData& link, const UnitaryTuple& alpha,
                                       double tol = kDiscriminantTol, Convention conv = Convention::classical);

}  // namespace blinksig
