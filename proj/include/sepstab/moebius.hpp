#pragma once

// PSL(2,C) acting on the Riemann sphere and, by Poincare extension, on the
// upper half-space model of hyperbolic 3-space.

#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <vector>

#include "sepstab/error.hpp"

namespace sepstab {

using Complex = std::complex<double>;

namespace tolerance {
inline constexpr double equality = 1e-9;
inline constexpr double determinant = 1e-12;
inline constexpr double parabolic = 1e-9;
}  // namespace tolerance

/// A point of C u {infinity}.
struct RiemannPoint {
  Complex z{0.0, 0.0};
  bool infinite = false;

  static RiemannPoint infinity() { return {Complex{}, true}; }
  static RiemannPoint finite(Complex z) { return {z, false}; }

  friend bool operator==(const RiemannPoint&, const RiemannPoint&) = default;
};

inline bool near(const RiemannPoint& p, const RiemannPoint& q, double tol) {
  if (p.infinite || q.infinite) return p.infinite == q.infinite;
  return std::abs(p.z - q.z) <= tol * std::max(1.0, std::abs(p.z));
}

/// Point of upper half-space: horizontal coordinate in C, height > 0.
struct H3Point {
  Complex horizontal{0.0, 0.0};
  double height = 1.0;
};

class MoebiusMap {
 public:
  MoebiusMap() = default;
  MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}

  static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static MoebiusMap diagonal(Complex lambda) { return {lambda, 0.0, 0.0, 1.0 / lambda}; }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex det() const { return a_ * d_ - b_ * c_; }
  Complex trace() const { return a_ + d_; }

  /// Rescales to determinant 1. Throws for singular matrices.
  MoebiusMap normalized() const {
    Complex dt = det();
    if (std::abs(dt) == 0.0 || !std::isfinite(std::abs(dt))) {
      throw Error(ErrorCode::InvalidParameter, "singular matrix cannot be normalized");
    }
    Complex s = std::sqrt(dt);
    return {a_ / s, b_ / s, c_ / s, d_ / s};
  }

  /// Periodic renormalisation for long products: rescales only when the
  /// determinant can be computed accurately. For large entries ad - bc
  /// cancels catastrophically and rescaling by it would add error, not
  /// remove it.
  MoebiusMap renormalized() const {
    double size = std::abs(a_ * d_) + std::abs(b_ * c_);
    if (!(size < 1e4)) return *this;
    return normalized();
  }

  MoebiusMap inverse() const { return {d_, -b_, -c_, a_}; }

  friend MoebiusMap operator*(const MoebiusMap& m, const MoebiusMap& n) {
    return {m.a_ * n.a_ + m.b_ * n.c_, m.a_ * n.b_ + m.b_ * n.d_,
            m.c_ * n.a_ + m.d_ * n.c_, m.c_ * n.b_ + m.d_ * n.d_};
  }

  RiemannPoint operator()(const RiemannPoint& p) const {
    if (p.infinite) {
      if (c_ == Complex{}) return RiemannPoint::infinity();
      return RiemannPoint::finite(a_ / c_);
    }
    Complex den = c_ * p.z + d_;
    if (den == Complex{}) return RiemannPoint::infinity();
    return RiemannPoint::finite((a_ * p.z + b_) / den);
  }

  /// Largest absolute entry difference to n, minimised over the sign of n.
  double distance_up_to_sign(const MoebiusMap& n) const {
    auto diff = [&](double s) {
      return std::max({std::abs(a_ - s * n.a_), std::abs(b_ - s * n.b_), std::abs(c_ - s * n.c_), std::abs(d_ - s * n.d_)});
    };
    return std::min(diff(1.0), diff(-1.0));
  }

  bool approx_equal(const MoebiusMap& n, double tol = tolerance::equality) const {
    return distance_up_to_sign(n) <= tol;
  }

  bool is_identity(double tol = tolerance::equality) const { return approx_equal(identity(), tol); }

  friend std::ostream& operator<<(std::ostream& os, const MoebiusMap& m) {
    return os << "(" << m.a_ << ", " << m.b_ << "; " << m.c_ << ", " << m.d_ << ")";
  }

 private:
  Complex a_{1.0, 0.0}, b_{0.0, 0.0}, c_{0.0, 0.0}, d_{1.0, 0.0};
};

/// Spectral-norm distance of m from the nearer of +I and -I.
inline double distance_from_identity(const MoebiusMap& m) {
  auto spectral = [](Complex a, Complex b, Complex c, Complex d) {
    double fro2 = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
    double det = std::abs(a * d - b * c);
    double disc = std::max(0.0, fro2 * fro2 - 4.0 * det * det);
    return std::sqrt(0.5 * (fro2 + std::sqrt(disc)));
  };
  double plus = spectral(m.a() - 1.0, m.b(), m.c(), m.d() - 1.0);
  double minus = spectral(m.a() + 1.0, m.b(), m.c(), m.d() + 1.0);
  return std::min(plus, minus);
}

enum class MapClass { Identity, Elliptic, Parabolic, Loxodromic };

inline const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::Identity: return "identity";
    case MapClass::Elliptic: return "elliptic";
    case MapClass::Parabolic: return "parabolic";
    case MapClass::Loxodromic: return "loxodromic";
  }
  return "?";
}

inline Complex trace_squared(const MoebiusMap& m) {
  Complex t = m.trace();
  return t * t;
}

/// Trace classification with absolute tolerance 1e-9 on |tr^2 - 4|.
inline MapClass classify(const MoebiusMap& m) {
  if (m.is_identity()) return MapClass::Identity;
  Complex t2 = trace_squared(m);
  if (std::abs(t2 - 4.0) <= tolerance::parabolic) return MapClass::Parabolic;
  if (std::abs(t2.imag()) <= tolerance::parabolic && t2.real() >= 0.0 && t2.real() < 4.0) return MapClass::Elliptic;
  return MapClass::Loxodromic;
}

/// Eigenvalue of modulus >= 1.
inline Complex dominant_eigenvalue(const MoebiusMap& m) {
  Complex t = m.trace();
  Complex s = std::sqrt(t * t - 4.0);
  // Pick the sign that avoids cancellation.
  Complex lam = std::abs(t + s) >= std::abs(t - s) ? (t + s) / 2.0 : (t - s) / 2.0;
  return lam;
}

/// Real translation length 2 log|lambda| of a loxodromic, else 0.
inline double translation_length(const MoebiusMap& m) {
  if (classify(m) != MapClass::Loxodromic) return 0.0;
  return 2.0 * std::log(std::abs(dominant_eigenvalue(m)));
}

struct FixedPoints {
  std::vector<RiemannPoint> points;  // one (parabolic) or two
  std::optional<RiemannPoint> attracting;
  std::optional<RiemannPoint> repelling;
};

inline FixedPoints fixed_points(const MoebiusMap& m) {
  if (m.is_identity()) throw Error(ErrorCode::IdentityMap, "every point is fixed by the identity");
  const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
  FixedPoints out;
  // Solve c z^2 + (d - a) z - b = 0.
  if (c == Complex{}) {
    out.points.push_back(RiemannPoint::infinity());
    if (d - a != Complex{}) {
      RiemannPoint z = RiemannPoint::finite(b / (d - a));
      out.points.push_back(z);
      if (classify(m) == MapClass::Loxodromic) {
        bool inf_attracting = std::abs(a) > std::abs(d);
        out.attracting = inf_attracting ? RiemannPoint::infinity() : z;
        out.repelling = inf_attracting ? z : RiemannPoint::infinity();
      }
    }
    return out;
  }
  const Complex B = d - a;
  const Complex root = std::sqrt(B * B + 4.0 * b * c);
  const Complex q = std::abs(B + root) >= std::abs(B - root) ? -(B + root) / 2.0 : -(B - root) / 2.0;
  if (q == Complex{}) {
    out.points.push_back(RiemannPoint::finite((a - d) / (2.0 * c)));
    return out;
  }
  RiemannPoint z1 = RiemannPoint::finite(q / c);
  RiemannPoint z2 = RiemannPoint::finite(-b / q);
  if (classify(m) == MapClass::Parabolic) {
    out.points.push_back(RiemannPoint::finite((a - d) / (2.0 * c)));
    return out;
  }
  out.points = {z1, z2};
  if (classify(m) == MapClass::Loxodromic) {
    double deriv1 = 1.0 / std::norm(c * z1.z + d);
    bool first_attracting = deriv1 < 1.0;
    out.attracting = first_attracting ? z1 : z2;
    out.repelling = first_attracting ? z2 : z1;
  }
  return out;
}

/// Hyperbolic distance in upper half-space.
inline double dist(const H3Point& p, const H3Point& q) {
  double num = std::norm(p.horizontal - q.horizontal) + (p.height - q.height) * (p.height - q.height);
  return 2.0 * std::asinh(std::sqrt(num) / (2.0 * std::sqrt(p.height * q.height)));
}

/// dist(x, m x), computed from the Frobenius norm of m conjugated to act at
/// (0, 1), with scaling so that very large displacements do not overflow.
inline double displacement(const MoebiusMap& m, const H3Point& x) {
  // x = h (0,1) with h = (sqrt(t), z / sqrt(t); 0, 1 / sqrt(t)).
  const double st = std::sqrt(x.height);
  const MoebiusMap h(st, x.horizontal / st, 0.0, 1.0 / st);
  const MoebiusMap hinv(1.0 / st, -x.horizontal / st, 0.0, st);
  const MoebiusMap n = hinv * m * h;
  const double scale = std::max({std::abs(n.a()), std::abs(n.b()), std::abs(n.c()), std::abs(n.d())});
  if (scale == 0.0 || !std::isfinite(scale)) return INFINITY;
  const double rel = (std::norm(n.a() / scale) + std::norm(n.b() / scale) + std::norm(n.c() / scale) +
                      std::norm(n.d() / scale));
  const double log_f2 = 2.0 * std::log(scale) + std::log(rel);  // log of the squared Frobenius norm
  if (log_f2 < 40.0) {
    const double y = std::max(1.0, 0.5 * std::exp(log_f2));  // cosh d
    return std::acosh(y);
  }
  // acosh(y) = log(2y) + log1p(-1 / (4y^2)) + ..., negligible here.
  return log_f2;
}

/// Poincare extension of m applied to p (determinant assumed 1).
inline H3Point apply(const MoebiusMap& m, const H3Point& p) {
  const Complex z = p.horizontal;
  const double h = p.height;
  const Complex cz_d = m.c() * z + m.d();
  const double den = std::norm(cz_d) + std::norm(m.c()) * h * h;
  const Complex num = (m.a() * z + m.b()) * std::conj(cz_d) + m.a() * std::conj(m.c()) * h * h;
  return {num / den, h / den};
}

}  // namespace sepstab
