#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <variant>

#include "gamow/common.hpp"

namespace gamow {

/// Space-time point or displacement, c = 1, metric (+,-,-,-).
struct FourVector {
  double t = 0.0;
  std::array<double, 3> x{0.0, 0.0, 0.0};

  /// t^2 - |x|^2.
  double interval() const { return t * t - (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

  Eigen::Vector4d to_eigen() const { return {t, x[0], x[1], x[2]}; }
  static FourVector from_eigen(const Eigen::Vector4d& v) { return FourVector{v[0], {v[1], v[2], v[3]}}; }

  FourVector operator+(const FourVector& o) const {
    return FourVector{t + o.t, {x[0] + o.x[0], x[1] + o.x[1], x[2] + o.x[2]}};
  }
};

/// t >= 0 and t^2 >= |x|^2.
bool in_forward_cone(const FourVector& v);

/// Minkowski metric diag(1, -1, -1, -1).
const Eigen::Matrix4d& minkowski_metric();

/// Proper orthochronous Lorentz transformation. The constructor checks
/// Lambda^T eta Lambda == eta (to 1e-12 relative to |Lambda|^2), Lambda00 >= 1
/// and det == +1, and throws PreconditionError otherwise.
class LorentzTransform {
 public:
  explicit LorentzTransform(const Eigen::Matrix4d& matrix);

  static LorentzTransform identity();
  /// Pure boost with velocity v, |v| < 1.
  static LorentzTransform boost(const Eigen::Vector3d& velocity);
  /// Active rotation by `angle` about `axis` (right-hand rule).
  static LorentzTransform rotation(const Eigen::Vector3d& axis, double angle);

  const Eigen::Matrix4d& matrix() const { return m_; }
  /// eta Lambda^T eta.
  LorentzTransform inverse() const;
  LorentzTransform operator*(const LorentzTransform& other) const;
  Eigen::Vector4d operator*(const Eigen::Vector4d& v) const { return m_ * v; }

  /// True when the transform leaves (1, 0, 0, 0) fixed to `tol`.
  bool is_rotation(double tol = 1e-10) const;

 private:
  Eigen::Matrix4d m_;
};

/// Real unit timelike 4-velocity (gamma, gamma v) for |v| < 1.
Eigen::Vector4d four_velocity(const Eigen::Vector3d& velocity);

/// Rotation-free boost L(p) with L(p) (1, 0, 0, 0) = p. Throws
/// NonTimelikeError unless p is future-pointing with p.p = 1.
LorentzTransform standard_boost(const Eigen::Vector4d& p_hat);

/// W = L^-1(Lambda p) Lambda L(p). Throws RotationCheckError if the result
/// moves (1, 0, 0, 0).
LorentzTransform wigner_rotation(const LorentzTransform& lambda, const Eigen::Vector4d& p_hat);

/// Non-negative half-integer, stored as 2j so it is always exact.
class Spin {
 public:
  explicit Spin(int twice_j);
  /// From j given as a number; rejects anything that is not a multiple of 1/2.
  static Spin from_value(double j);

  int twice_j() const { return twice_j_; }
  double value() const { return 0.5 * twice_j_; }
  int dimension() const { return twice_j_ + 1; }
  bool operator==(const Spin&) const = default;

 private:
  int twice_j_;
};

std::string to_string(Spin j);

/// z-y-z Euler angles: R = Rz(alpha) Ry(beta) Rz(gamma), beta in [0, pi].
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// At beta = 0 or pi the split between alpha and gamma is not unique; alpha
/// takes the whole angle and gamma = 0.
EulerAngles euler_zyz(const Eigen::Matrix3d& rotation);

/// Wigner small-d element d^j_{m' m}(beta), with m' and m given as 2m' and 2m.
double wigner_small_d(Spin j, int twice_m_prime, int twice_m, double beta);

/// D^j of the rotation with Condon-Shortley phases. Row and column index i
/// stand for m = j - i, i.e. descending m.
Eigen::MatrixXcd wigner_d(Spin j, const EulerAngles& angles);
Eigen::MatrixXcd wigner_d(Spin j, const LorentzTransform& rotation);

/// Label [j, s_R] p_hat j3 of a relativistic Gamow vector.
class GamowLabel {
 public:
  /// sqrt(s_R) = mass - i width / 2; p_hat = (gamma, gamma v).
  GamowLabel(Spin j, double mass, double width, const Eigen::Vector3d& velocity, int twice_j3);
  GamowLabel(Spin j, double mass, double width, const Eigen::Vector4d& p_hat, int twice_j3);

  Spin j() const { return j_; }
  int twice_j3() const { return twice_j3_; }
  Complex sqrt_s_r() const { return sqrt_s_r_; }
  Complex s_r() const { return sqrt_s_r_ * sqrt_s_r_; }
  const Eigen::Vector4d& p_hat() const { return p_hat_; }
  double gamma_factor() const { return p_hat_[0]; }
  Eigen::Vector3d velocity() const { return p_hat_.tail<3>() / p_hat_[0]; }

 private:
  Spin j_;
  Complex sqrt_s_r_;
  Eigen::Vector4d p_hat_;
  int twice_j3_;
};

struct TransformedState {
  Complex phase;                ///< e^{-i gamma sqrt(s_R) (t - x.v)}
  Eigen::VectorXcd components;  ///< column j3 of D^j(W(Lambda^-1, p_hat)), indexed by descending j3'
  Eigen::Vector4d new_p_hat;    ///< Lambda^-1 p_hat
};

/// The translation left the forward light cone, where the transformation is not defined.
struct CausalityRejection {
  FourVector x;
  std::string reason;
};

using TransformOutcome = std::variant<TransformedState, CausalityRejection>;

/// Applies (Lambda, x) to the Gamow vector with label `label`. Translations
/// outside the forward cone are rejected, not thrown.
TransformOutcome transform_gamow(const GamowLabel& label, const LorentzTransform& lambda, const FourVector& x);

}  // namespace gamow
