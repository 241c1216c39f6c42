#include "gamow/relativistic.hpp"

#include <cmath>

#include "gamow/error.hpp"

namespace gamow {

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double max_abs(const Eigen::Matrix4d& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

bool in_forward_cone(const FourVector& v) { return v.t >= 0.0 && v.interval() >= 0.0; }

const Eigen::Matrix4d& minkowski_metric() {
  static const Eigen::Matrix4d eta = Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
  return eta;
}

LorentzTransform::LorentzTransform(const Eigen::Matrix4d& matrix) : m_(matrix) {
  if (!m_.allFinite()) throw PreconditionError("Lorentz matrix has non-finite entries");
  const Eigen::Matrix4d& eta = minkowski_metric();
  const double scale = std::max(1.0, max_abs(m_) * max_abs(m_));
  if (max_abs(m_.transpose() * eta * m_ - eta) > 1e-12 * scale)
    throw PreconditionError("matrix does not preserve the Minkowski metric");
  if (m_(0, 0) < 1.0 - 1e-12 * scale) throw PreconditionError("Lorentz transformation is not orthochronous");
  if (m_.determinant() < 0.0) throw PreconditionError("Lorentz transformation is not proper");
}

LorentzTransform LorentzTransform::identity() { return LorentzTransform(Eigen::Matrix4d::Identity()); }

LorentzTransform LorentzTransform::boost(const Eigen::Vector3d& velocity) {
  return standard_boost(four_velocity(velocity));
}

LorentzTransform LorentzTransform::rotation(const Eigen::Vector3d& axis, double angle) {
  const double norm = axis.norm();
  if (!(norm > 0.0)) throw PreconditionError("rotation axis must be non-zero");
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.block<3, 3>(1, 1) = Eigen::AngleAxisd(angle, axis / norm).toRotationMatrix();
  return LorentzTransform(m);
}

LorentzTransform LorentzTransform::inverse() const {
  const Eigen::Matrix4d& eta = minkowski_metric();
  return LorentzTransform(eta * m_.transpose() * eta);
}

LorentzTransform LorentzTransform::operator*(const LorentzTransform& other) const {
  return LorentzTransform(m_ * other.m_);
}

bool LorentzTransform::is_rotation(double tol) const {
  return (m_.col(0) - Eigen::Vector4d::UnitX()).cwiseAbs().maxCoeff() <= tol &&
         (m_.row(0).transpose() - Eigen::Vector4d::UnitX()).cwiseAbs().maxCoeff() <= tol;
}

Eigen::Vector4d four_velocity(const Eigen::Vector3d& velocity) {
  const double v2 = velocity.squaredNorm();
  if (!(v2 < 1.0)) throw NonTimelikeError("speed must be below the speed of light");
  const double gamma = 1.0 / std::sqrt(1.0 - v2);
  Eigen::Vector4d p;
  p << gamma, gamma * velocity;
  return p;
}

LorentzTransform standard_boost(const Eigen::Vector4d& p_hat) {
  const double gamma = p_hat[0];
  const Eigen::Vector3d u = p_hat.tail<3>();
  if (!p_hat.allFinite() || !(gamma > 0.0)) throw NonTimelikeError("4-velocity must be future pointing");
  if (std::abs(gamma * gamma - u.squaredNorm() - 1.0) > 1e-12 * gamma * gamma)
    throw NonTimelikeError("4-velocity must satisfy p.p = 1");
  Eigen::Matrix4d m;
  m(0, 0) = gamma;
  m.block<1, 3>(0, 1) = u.transpose();
  m.block<3, 1>(1, 0) = u;
  m.block<3, 3>(1, 1) = Eigen::Matrix3d::Identity() + u * u.transpose() / (1.0 + gamma);
  return LorentzTransform(m);
}

LorentzTransform wigner_rotation(const LorentzTransform& lambda, const Eigen::Vector4d& p_hat) {
  Eigen::Vector4d moved = lambda * p_hat;
  // Strip the rounding drift of p.p before building the second boost.
  moved /= std::sqrt(moved.dot(minkowski_metric() * moved));
  const LorentzTransform w = standard_boost(moved).inverse() * lambda * standard_boost(p_hat);
  const double scale = std::max(1.0, max_abs(lambda.matrix()) * max_abs(lambda.matrix()));
  if (!w.is_rotation(1e-10 * scale)) throw RotationCheckError("Wigner rotation does not fix the rest frame");
  return w;
}

Spin::Spin(int twice_j) : twice_j_(twice_j) {
  if (twice_j < 0) throw PreconditionError("spin must be non-negative");
}

Spin Spin::from_value(double j) {
  const double twice = 2.0 * j;
  if (!(twice >= 0.0) || twice != std::round(twice) || twice > 1e6)
    throw PreconditionError("spin must be a non-negative multiple of 1/2");
  return Spin(static_cast<int>(twice));
}

std::string to_string(Spin j) {
  return j.twice_j() % 2 == 0 ? std::to_string(j.twice_j() / 2) : std::to_string(j.twice_j()) + "/2";
}

EulerAngles euler_zyz(const Eigen::Matrix3d& r) {
  EulerAngles a;
  const double sin_beta = std::hypot(r(0, 2), r(1, 2));
  a.beta = std::atan2(sin_beta, r(2, 2));
  if (sin_beta < 1e-12) {
    a.alpha = r(2, 2) > 0.0 ? std::atan2(r(1, 0), r(0, 0)) : std::atan2(-r(1, 0), -r(0, 0));
    a.beta = r(2, 2) > 0.0 ? 0.0 : kPi;
    a.gamma = 0.0;
    return a;
  }
  a.alpha = std::atan2(r(1, 2), r(0, 2));
  a.gamma = std::atan2(r(2, 1), -r(2, 0));
  return a;
}

double wigner_small_d(Spin j, int twice_m_prime, int twice_m, double beta) {
  const int tj = j.twice_j();
  if (std::abs(twice_m) > tj || std::abs(twice_m_prime) > tj || (tj - twice_m) % 2 != 0 ||
      (tj - twice_m_prime) % 2 != 0)
    throw PreconditionError("magnetic quantum number out of range for spin " + to_string(j));
  const int jpm = (tj + twice_m) / 2;
  const int jmm = (tj - twice_m) / 2;
  const int jpmp = (tj + twice_m_prime) / 2;
  const int jmmp = (tj - twice_m_prime) / 2;
  const int mp_minus_m = (twice_m_prime - twice_m) / 2;
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double prefactor = 0.5 * (log_factorial(jpm) + log_factorial(jmm) + log_factorial(jpmp) + log_factorial(jmmp));
  double sum = 0.0;
  for (int k = std::max(0, -mp_minus_m); k <= std::min(jpm, jmmp); ++k) {
    const double log_den = log_factorial(jpm - k) + log_factorial(k) + log_factorial(jmmp - k) +
                           log_factorial(k + mp_minus_m);
    const int cos_power = jpm + jmmp - 2 * k;
    const int sin_power = 2 * k + mp_minus_m;
    const double sign = (k + mp_minus_m) % 2 == 0 ? 1.0 : -1.0;
    sum += sign * std::exp(prefactor - log_den) * std::pow(c, cos_power) * std::pow(s, sin_power);
  }
  return sum;
}

Eigen::MatrixXcd wigner_d(Spin j, const EulerAngles& angles) {
  const int n = j.dimension();
  Eigen::MatrixXcd d(n, n);
  for (int row = 0; row < n; ++row) {
    const int twice_mp = j.twice_j() - 2 * row;
    for (int col = 0; col < n; ++col) {
      const int twice_m = j.twice_j() - 2 * col;
      const double phase = -0.5 * (twice_mp * angles.alpha + twice_m * angles.gamma);
      d(row, col) = wigner_small_d(j, twice_mp, twice_m, angles.beta) * std::exp(Complex{0.0, phase});
    }
  }
  return d;
}

Eigen::MatrixXcd wigner_d(Spin j, const LorentzTransform& rotation) {
  if (!rotation.is_rotation(1e-9)) throw PreconditionError("D^j needs a pure rotation");
  return wigner_d(j, euler_zyz(rotation.matrix().block<3, 3>(1, 1)));
}

GamowLabel::GamowLabel(Spin j, double mass, double width, const Eigen::Vector3d& velocity, int twice_j3)
    : GamowLabel(j, mass, width, four_velocity(velocity), twice_j3) {}

GamowLabel::GamowLabel(Spin j, double mass, double width, const Eigen::Vector4d& p_hat, int twice_j3)
    : j_(j), sqrt_s_r_(mass, -0.5 * width), p_hat_(p_hat), twice_j3_(twice_j3) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw PreconditionError("mass must be positive");
  if (!(width >= 0.0) || !std::isfinite(width)) throw PreconditionError("width must be non-negative");
  if (std::abs(twice_j3) > j.twice_j() || (j.twice_j() - twice_j3) % 2 != 0)
    throw PreconditionError("j3 must be one of -j, -j+1, ..., j");
  const double gamma = p_hat[0];
  if (!p_hat.allFinite() || !(gamma > 0.0) ||
      std::abs(gamma * gamma - p_hat.tail<3>().squaredNorm() - 1.0) > 1e-12 * gamma * gamma)
    throw NonTimelikeError("p_hat must be a real unit timelike 4-velocity");
}

TransformOutcome transform_gamow(const GamowLabel& label, const LorentzTransform& lambda, const FourVector& x) {
  if (!in_forward_cone(x)) {
    return CausalityRejection{x, x.t < 0.0 ? "translation into the past" : "spacelike translation"};
  }
  const Eigen::Vector3d v = label.velocity();
  const double proper = x.t - (x.x[0] * v[0] + x.x[1] * v[1] + x.x[2] * v[2]);
  TransformedState state;
  state.phase = std::exp(-kI * label.gamma_factor() * label.sqrt_s_r() * proper);

  const LorentzTransform inverse = lambda.inverse();
  const LorentzTransform w = wigner_rotation(inverse, label.p_hat());
  const int column = (label.j().twice_j() - label.twice_j3()) / 2;
  state.components = wigner_d(label.j(), w).col(column);
  state.new_p_hat = inverse * label.p_hat();
  return state;
}

}  // namespace gamow
