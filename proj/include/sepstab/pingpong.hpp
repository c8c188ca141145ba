#pragma once

// Round-disk ping-pong (Klein combination) certificates.
//
// Every factor owns a ping-pong set X_f on the Riemann sphere:
//   * a free letter t owns X_t = D(t) u D(T), two round regions, and must
//     map the complement of D(T) into D(t);
//   * a surface factor owns X_f = complement of a "home" region B_f, and B_f
//     must lie strictly inside the Dirichlet region of the factor centred at
//     a basepoint O, so that g(B_f) misses B_f for every nontrivial g.
// The X_f are pairwise disjoint. Together with relator residuals below 1e-8
// (the factor is Fuchsian by construction) this is the classical criterion
// for the generated group to be discrete and the free product of its
// factors.

#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sepstab/representation.hpp"

namespace sepstab {

struct Circle {
  Complex center{0.0, 0.0};
  double radius = 1.0;
};

/// Open round disk (exterior == false) or the open complement of a closed
/// round disk (exterior == true, contains infinity).
struct RoundRegion {
  Circle circle;
  bool exterior = false;

  /// Signed clearance of p: positive inside, measured in Euclidean distance
  /// to the boundary circle (infinity counts as +inf for exterior regions).
  double clearance(const RiemannPoint& p) const {
    if (p.infinite) return exterior ? INFINITY : -INFINITY;
    double r = std::abs(p.z - circle.center);
    return exterior ? r - circle.radius : circle.radius - r;
  }
  bool contains(const RiemannPoint& p, double tol = 0.0) const { return clearance(p) > tol; }

  RoundRegion complement() const { return {circle, !exterior}; }
};

struct LetterDisk {
  Letter letter;  // D(letter) contains the attracting fixed point of letter
  RoundRegion region;
};

struct SurfaceHome {
  std::size_t factor = 0;
  RoundRegion home;
  H3Point basepoint;
};

struct PingPongDisks {
  std::vector<LetterDisk> letters;
  std::vector<SurfaceHome> surfaces;

  const RoundRegion* letter_region(Letter l) const {
    for (const LetterDisk& d : letters) {
      if (d.letter == l) return &d.region;
    }
    return nullptr;
  }
  const SurfaceHome* surface_home(std::size_t factor) const {
    for (const SurfaceHome& s : surfaces) {
      if (s.factor == factor) return &s;
    }
    return nullptr;
  }
};

struct PingPongCertificate {
  bool verified = false;
  std::vector<std::string> failures;

  explicit operator bool() const { return verified; }
};

namespace pingpong {

inline constexpr double margin = 1e-6;
inline constexpr int boundary_samples = 256;
inline constexpr double residual_limit = 1e-8;
inline constexpr std::size_t dirichlet_depth = 2;

/// Exact clearance of `inner` inside `outer`: positive iff inner is
/// contained in outer with that much room.
inline double containment_clearance(const RoundRegion& inner, const RoundRegion& outer) {
  const double dc = std::abs(inner.circle.center - outer.circle.center);
  const double ri = inner.circle.radius;
  const double ro = outer.circle.radius;
  if (!inner.exterior && !outer.exterior) return ro - dc - ri;
  if (!inner.exterior && outer.exterior) return dc - ri - ro;
  if (inner.exterior && outer.exterior) return ri - dc - ro;
  return -INFINITY;
}

inline double disjointness_clearance(const RoundRegion& x, const RoundRegion& y) {
  return containment_clearance(x, y.complement());
}

inline Complex boundary_point(const Circle& c, int k) {
  double theta = 2.0 * std::numbers::pi * k / boundary_samples;
  return c.center + std::polar(c.radius, theta);
}

/// Image of a round region under m; nullopt when the pole of m lies on the
/// boundary circle (the image is a half-plane).
inline std::optional<RoundRegion> image(const MoebiusMap& m, const RoundRegion& r) {
  const Complex c0 = r.circle.center;
  const double rad = r.circle.radius;
  if (m.c() == Complex{}) {
    // Affine map z -> (a z + b) / d.
    return RoundRegion{{(m.a() * c0 + m.b()) / m.d(), rad * std::abs(m.a() / m.d())}, r.exterior};
  }
  const Complex pole = -m.d() / m.c();
  const double pole_offset = std::abs(pole - c0);
  if (std::abs(pole_offset - rad) <= 1e-14 * std::max(1.0, rad)) return std::nullopt;
  // The centre of the image circle is the image of the reflection of the pole.
  RiemannPoint mirror = pole_offset == 0.0 ? RiemannPoint::infinity()
                                           : RiemannPoint::finite(c0 + rad * rad / std::conj(pole - c0));
  RiemannPoint centre = m(mirror);
  RiemannPoint on = m(RiemannPoint::finite(c0 + rad));
  RoundRegion out;
  out.circle = {centre.z, std::abs(on.z - centre.z)};
  bool pole_inside = r.exterior ? pole_offset > rad : pole_offset < rad;
  out.exterior = pole_inside;
  return out;
}

/// Busemann comparison: positive when z is strictly nearer (in horofunction
/// sense) to o than to q.
inline double dirichlet_side(const RiemannPoint& z, const H3Point& o, const H3Point& q) {
  if (z.infinite) return std::log(q.height / o.height);
  double po = o.height / (std::norm(z.z - o.horizontal) + o.height * o.height);
  double pq = q.height / (std::norm(z.z - q.horizontal) + q.height * q.height);
  return std::log(po / pq);
}

/// Exact minimum over the region of the Dirichlet quadratic
/// Q(z) = h_o(|z - q|^2 + h_q^2) - h_q(|z - o|^2 + h_o^2), whose positive set
/// is the side of the bisector containing o.
inline double dirichlet_min(const RoundRegion& r, const H3Point& o, const H3Point& q) {
  const double ho = o.height, hq = q.height;
  const Complex zo = o.horizontal, zq = q.horizontal;
  const double A = ho - hq;
  const Complex beta = hq * zo - ho * zq;  // Q = A|z|^2 + 2 Re(conj(beta) z) + C
  const double C = ho * (std::norm(zq) + hq * hq) - hq * (std::norm(zo) + ho * ho);
  const Complex c0 = r.circle.center;
  const double rad = r.circle.radius;
  if (std::abs(A) < 1e-15) {
    double lin = 2.0 * std::real(std::conj(beta) * c0) + C;
    if (r.exterior) return std::abs(beta) == 0.0 ? C : -INFINITY;
    return lin - 2.0 * std::abs(beta) * rad;
  }
  const Complex star = -beta / A;  // vertex of the paraboloid
  const double K = C - std::norm(beta) / A;
  const double off = std::abs(c0 - star);
  if (A > 0.0) {
    if (!r.exterior) {
      double gap = std::max(0.0, off - rad);
      return A * gap * gap + K;
    }
    double gap = std::max(0.0, rad - off);
    return A * gap * gap + K;
  }
  if (r.exterior) return -INFINITY;
  double far = off + rad;
  return A * far * far + K;
}

inline std::string describe(const Letter& l, const GroupSpec& g) { return g.spell(l); }

}  // namespace pingpong

/// Checks disjointness of all ping-pong sets and every mapping inequality,
/// both in closed form and on 256 boundary samples per circle, with margin
/// 1e-6.
inline PingPongCertificate ping_pong_verify(const Representation& rho, const PingPongDisks& disks) {
  using namespace pingpong;
  const GroupSpec& g = rho.group();
  PingPongCertificate cert;
  auto fail = [&](const std::string& msg) { cert.failures.push_back(msg); };

  // One disk per free letter and inverse, one home per surface factor.
  std::size_t expected_letters = 2 * g.free_rank();
  if (disks.letters.size() != expected_letters || disks.surfaces.size() != g.surface_count()) {
    throw Error(ErrorCode::DiskCountMismatch,
                "expected " + std::to_string(expected_letters) + " letter disks and " +
                    std::to_string(g.surface_count()) + " surface homes");
  }
  struct Owned {
    std::size_t factor;
    std::string name;
    RoundRegion region;
  };
  std::vector<Owned> sets;
  for (const FactorSpec& f : g.factors()) {
    if (f.is_surface()) {
      const SurfaceHome* home = disks.surface_home(f.id);
      if (!home) throw Error(ErrorCode::DiskCountMismatch, "missing home region for surface factor");
      sets.push_back({f.id, "X(S" + std::to_string(f.ordinal) + ")", home->home.complement()});
    } else {
      for (bool inv : {false, true}) {
        Letter l(f.first_generator, inv);
        const RoundRegion* r = disks.letter_region(l);
        if (!r) throw Error(ErrorCode::DiskCountMismatch, "missing disk for letter " + g.spell(l));
        sets.push_back({f.id, "D(" + g.spell(l) + ")", *r});
      }
    }
  }

  // Pairwise disjointness.
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      double exact = disjointness_clearance(sets[i].region, sets[j].region);
      bool sampled_ok = true;
      for (int k = 0; k < boundary_samples && sampled_ok; ++k) {
        RiemannPoint p = RiemannPoint::finite(boundary_point(sets[i].region.circle, k));
        sampled_ok = !sets[j].region.contains(p, -margin);
      }
      if (!(exact >= margin) || !sampled_ok) fail(sets[i].name + " and " + sets[j].name + " overlap");
    }
  }

  // Mapping inequalities.
  for (const FactorSpec& f : g.factors()) {
    if (f.is_surface()) {
      double residual = distance_from_identity(rho.evaluate(g.relator(f.id)));
      if (!(residual < residual_limit)) {
        std::ostringstream os;
        os << "relator residual of S" << f.ordinal << " is " << residual;
        fail(os.str());
      }
      const SurfaceHome& home = *disks.surface_home(f.id);
      const H3Point o = home.basepoint;
      // Every nontrivial element of Dehn length <= dirichlet_depth.
      std::vector<Word> frontier{Word{}};
      std::vector<Word> seen;
      for (std::size_t len = 1; len <= dirichlet_depth; ++len) {
        std::vector<Word> next;
        for (const Word& w : frontier) {
          for (std::size_t gen = 0; gen < f.generator_count; ++gen) {
            for (bool inv : {false, true}) {
              Letter l(f.first_generator + gen, inv);
              if (!w.empty() && w.back() == l.inverse()) continue;
              Word x = w;
              x.push_back(l);
              next.push_back(x);
            }
          }
        }
        for (const Word& w : next) {
          Word red = dehn_reduce(w, g, f.id);
          if (red.empty()) continue;
          H3Point q = apply(rho.evaluate(red), o);
          double exact = dirichlet_min(home.home, o, q);
          bool sampled_ok = true;
          for (int k = 0; k < boundary_samples && sampled_ok; ++k) {
            RiemannPoint p = RiemannPoint::finite(boundary_point(home.home.circle, k));
            sampled_ok = dirichlet_side(p, o, q) > margin;
          }
          if (!(exact > 0.0) || !sampled_ok) {
            fail("home region of S" + std::to_string(f.ordinal) + " crosses the bisector for " + g.spell(red));
          }
        }
        frontier = std::move(next);
      }
    } else {
      for (bool inv : {false, true}) {
        Letter l(f.first_generator, inv);
        const RoundRegion& target = *disks.letter_region(l);
        const RoundRegion source = disks.letter_region(l.inverse())->complement();
        const MoebiusMap& m = rho.image(l);
        std::optional<RoundRegion> img = image(m, source);
        double exact = img ? containment_clearance(*img, target) : -INFINITY;
        bool sampled_ok = true;
        for (int k = 0; k < boundary_samples && sampled_ok; ++k) {
          RiemannPoint p = m(RiemannPoint::finite(boundary_point(source.circle, k)));
          sampled_ok = target.contains(p, margin);
        }
        if (!(exact >= margin) || !sampled_ok) {
          fail(g.spell(l) + " does not map the complement of D(" + g.spell(l.inverse()) + ") into D(" + g.spell(l) + ")");
        }
      }
    }
  }
  cert.verified = cert.failures.empty();
  return cert;
}

}  // namespace sepstab
