#pragma once

#include <string>
#include <variant>
#include <vector>

#include "besseldelta/numeric.hpp"

namespace bdelta {

/// Order of a Bessel function. Only real orders and purely imaginary orders
/// are representable; those are the only ones the GL(2) kernels need.
class BesselOrder {
 public:
  static BesselOrder real(double nu) { return BesselOrder(nu, 0.0); }
  /// The order i * t.
  static BesselOrder imaginary(double t) { return BesselOrder(0.0, t); }

  bool is_real() const noexcept { return imag_ == 0.0; }
  double real_part() const noexcept { return real_; }
  double imag_part() const noexcept { return imag_; }
  cplx value() const noexcept { return {real_, imag_}; }
  BesselOrder negated() const noexcept { return BesselOrder(-real_, -imag_); }
  /// 4 nu^2, which is real for both representable families.
  double four_nu_squared() const noexcept { return 4.0 * (real_ * real_ - imag_ * imag_); }
  double magnitude() const noexcept { return real_ != 0.0 ? std::abs(real_) : std::abs(imag_); }

 private:
  BesselOrder(double re, double im) : real_(re), imag_(im) {}
  double real_;
  double imag_;
};

struct HolomorphicKernel {
  int kappa;
};

struct MaassKernel {
  double mu;
  int epsilon;  // reflection eigenvalue, +1 or -1
};

/// J_g / K_g kernel selector for a holomorphic form of weight kappa or a Maass
/// form with spectral parameter mu.
class BesselKernel {
 public:
  static BesselKernel holomorphic(int kappa);
  static BesselKernel maass(double mu, int epsilon = 1);
  /// Accepts "holo:<kappa>" and "maass:<mu>[:<+1|-1>]".
  static BesselKernel parse(const std::string& text);

  bool is_holomorphic() const noexcept { return std::holds_alternative<HolomorphicKernel>(kind_); }
  const HolomorphicKernel& holo() const { return std::get<HolomorphicKernel>(kind_); }
  const MaassKernel& maass_params() const { return std::get<MaassKernel>(kind_); }
  /// Order of the J-Bessel function(s) in J_g: kappa - 1, or 2 i mu.
  BesselOrder order() const;
  std::string to_string() const;

 private:
  explicit BesselKernel(std::variant<HolomorphicKernel, MaassKernel> k) : kind_(k) {}
  std::variant<HolomorphicKernel, MaassKernel> kind_;
};

/// Hankel's symbol (nu, j) = (4nu^2-1)(4nu^2-9)...(4nu^2-(2j-1)^2) / (2^{2j} j!),
/// evaluated as a product.
double hankel_symbol(double nu, int j);
double hankel_symbol(const BesselOrder& nu, int j);

enum class BesselBranch { series, series_wide, asymptotic, recurrence };

struct BesselEvaluation {
  cplx value;
  /// Estimated error relative to the local magnitude scale of J_nu (the
  /// envelope sqrt(2/(pi x)) * |e(-(2nu+1)/8)| on the oscillatory side).
  double error_estimate;
  BesselBranch branch;
};

inline constexpr double kBesselCrossover = 30.0;
inline constexpr double kBesselRelTol = 1e-12;

/// J_nu(x) for x > 0. Throws DomainError for x <= 0 and PrecisionLossError
/// when no branch reaches rel_tol.
BesselEvaluation bessel_j_eval(const BesselOrder& nu, double x, double rel_tol = kBesselRelTol);
cplx bessel_j(const BesselOrder& nu, double x);

/// K_{i t}(x) for real t and x > 0; real-valued.
double bessel_k_imaginary(double t, double x);

/// J_g(x) of the Voronoi formula.
cplx kernel_j_g(const BesselKernel& kernel, double x);
/// K_g(x); identically zero for holomorphic kernels.
double kernel_k_g(const BesselKernel& kernel, double x);

/// Coefficients of J_g(y) = sum_j (c_j e^{iy} + d_j e^{-iy}) y^{-j-1/2} + O(y^{-3/2-J}).
///
/// The j-th Hankel coefficients of J_nu are a_j = (nu,j) i^j 2^{-j} e(-(2nu+1)/8) / sqrt(2 pi)
/// and b_j = (nu,j) (-i)^j 2^{-j} e((2nu+1)/8) / sqrt(2 pi); c_j pairs with e(+y/2pi)
/// and d_j with e(-y/2pi). Maass coefficients are the prefactor -pi/sin(pi i mu)
/// applied to a_j(2i mu) - a_j(-2i mu), and likewise for d_j.
struct AsymptoticCoefficients {
  BesselKernel kernel;
  int j_max;
  std::vector<cplx> c;
  std::vector<cplx> d;

  /// Truncated expansion at y, using all j <= j_max.
  cplx evaluate(double y) const;
};

AsymptoticCoefficients asymptotic_kernel_expansion(const BesselKernel& kernel, int J);

/// Non-oscillatory envelopes with J_g(y) = e^{iy} plus + e^{-iy} minus.
struct KernelEnvelope {
  cplx plus;
  cplx minus;
  double rel_error;
};

/// The exponential split of J_g for large arguments: the Hankel expansion
/// summed until its terms stop decreasing or drop below double precision.
class KernelSplit {
 public:
  explicit KernelSplit(const BesselKernel& kernel, int max_terms = 60);

  KernelEnvelope at(double y) const;
  /// Smallest y >= kBesselCrossover (on a coarse grid) from which at(y) meets rel_tol.
  double min_argument(double rel_tol) const;
  const BesselKernel& kernel() const noexcept { return coeffs_.kernel; }

 private:
  AsymptoticCoefficients coeffs_;
};

namespace detail {
// Branch entry points, exposed for consistency testing.
BesselEvaluation bessel_j_series(const BesselOrder& nu, double x, bool wide);
BesselEvaluation bessel_j_asymptotic(const BesselOrder& nu, double x);
}  // namespace detail

}  // namespace bdelta
