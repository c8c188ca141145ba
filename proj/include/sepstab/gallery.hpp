#pragma once

// Built-in reference representations.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sepstab/repfile.hpp"

namespace sepstab {

namespace gallery {

/// Side pairings of the regular hyperbolic octagon with interior angles
/// pi/4, as Fuchsian generators a1 b1 a2 b2 acting on the upper half-plane.
/// The octagon is centred at i.
inline std::array<MoebiusMap, 4> octagon_generators() {
  using namespace std::complex_literals;
  const double r = std::pow(2.0, -0.25);
  std::array<Complex, 8> v;
  for (int k = 0; k < 8; ++k) v[static_cast<std::size_t>(k)] = std::polar(r, std::numbers::pi / 8.0 + k * std::numbers::pi / 4.0);

  // Disk isometry z -> (z - p) / (1 - conj(p) z).
  auto to_origin = [](Complex p) {
    double s = std::sqrt(1.0 - std::norm(p));
    return MoebiusMap(1.0 / s, -p / s, -std::conj(p) / s, 1.0 / s);
  };
  auto apply_disk = [](const MoebiusMap& m, Complex z) { return (m.a() * z + m.b()) / (m.c() * z + m.d()); };
  // Orientation-preserving isometry taking v[j] -> v[i+1] and v[j+1] -> v[i].
  auto pairing = [&](std::size_t i, std::size_t j) {
    MoebiusMap m1 = to_origin(v[j]);
    MoebiusMap m2 = to_origin(v[(i + 1) % 8]);
    Complex u1 = apply_disk(m1, v[(j + 1) % 8]);
    Complex u2 = apply_disk(m2, v[i]);
    double theta = std::arg(u2 / u1);
    MoebiusMap rot(std::polar(1.0, theta / 2.0), 0.0, 0.0, std::polar(1.0, -theta / 2.0));
    MoebiusMap disk = m2.inverse() * rot * m1;
    // Conjugate into the upper half-plane: C(z) = (z - i) / (z + i).
    MoebiusMap c(1.0, -1.0i, 1.0, 1.0i);
    return (c.normalized().inverse() * disk * c.normalized()).normalized();
  };
  return {pairing(0, 2), pairing(1, 3).inverse(), pairing(4, 6), pairing(5, 7).inverse()};
}

/// Loxodromic with attracting fixed point p, repelling q and multiplier k^2.
inline MoebiusMap loxodromic(Complex attracting, Complex repelling, double k) {
  MoebiusMap a(attracting, repelling, 1.0, 1.0);
  MoebiusMap an = a.normalized();
  return (an * MoebiusMap::diagonal(k) * an.inverse()).normalized();
}

inline MoebiusMap schottky_b() {
  const double k = 10.0;
  const double p = 0.5 * (k + 1.0 / k), q = 0.5 * (k - 1.0 / k);
  return MoebiusMap(p, q, q, p);
}

inline PingPongDisks schottky_disks() {
  PingPongDisks d;
  d.letters.push_back({Letter(0, false), {{{0.0, 0.0}, 2.0}, true}});
  d.letters.push_back({Letter(0, true), {{{0.0, 0.0}, 0.5}, false}});
  const double c = 101.0 / 99.0;
  d.letters.push_back({Letter(1, false), {{{c, 0.0}, 0.25}, false}});
  d.letters.push_back({Letter(1, true), {{{-c, 0.0}, 0.25}, false}});
  return d;
}

inline RepFile schottky2() {
  GroupSpec g = GroupSpec::free(2);
  Representation rho(g, {MoebiusMap::diagonal(10.0), schottky_b()});
  return {rho, schottky_disks(), {{"name", "schottky2"}}};
}

inline RepFile pinched_a() {
  GroupSpec g = GroupSpec::free(2);
  Representation rho(g, {MoebiusMap(1.0, 1.0, 0.0, 1.0), schottky_b()});
  return {rho, schottky_disks(), {{"name", "pinched-a"}}};
}

/// Home region of the octagon group: the hyperbolic disc of radius 1 about
/// i, seen as a round disc in C.
inline SurfaceHome octagon_home(std::size_t factor) {
  return {factor, {{{0.0, std::cosh(1.0)}, std::sinh(1.0)}, false}, H3Point{{0.0, 0.0}, 1.0}};
}

inline std::vector<MoebiusMap> octagon_images() {
  auto oct = octagon_generators();
  return {oct.begin(), oct.end()};
}

/// The octagon group with the free letter sent to the identity, so only the
/// surface factor is faithful.
inline RepFile fuchsian_genus2() {
  GroupSpec g = GroupSpec::parse("S2*Z");
  std::vector<MoebiusMap> images = octagon_images();
  images.push_back(MoebiusMap::identity());
  return {Representation(g, images), std::nullopt, {{"name", "fuchsian-genus2"}}};
}

inline RepFile s2_times_z() {
  GroupSpec g = GroupSpec::parse("S2*Z");
  const Complex centre{0.0, std::cosh(1.0)};
  const Complex ct = centre + 0.55, cT = centre - 0.55;
  std::vector<MoebiusMap> images = octagon_images();
  images.push_back(loxodromic(ct, cT, 20.0));
  PingPongDisks d;
  d.letters.push_back({Letter(4, false), {{ct, 0.35}, false}});
  d.letters.push_back({Letter(4, true), {{cT, 0.35}, false}});
  d.surfaces.push_back(octagon_home(0));
  return {Representation(g, images), d, {{"name", "s2-times-z"}}};
}

struct Entry {
  const char* name;
  RepFile (*build)();
  const char* description;
};

inline const std::vector<Entry>& entries() {
  static const std::vector<Entry> all = {
      {"schottky2", &schottky2, "rank-2 Schottky group with verified disks"},
      {"fuchsian-genus2", &fuchsian_genus2, "regular-octagon genus-2 group, free letter sent to the identity"},
      {"s2-times-z", &s2_times_z, "octagon group combined with a loxodromic free letter"},
      {"pinched-a", &pinched_a, "schottky2 with a replaced by a parabolic"},
  };
  return all;
}

inline const Entry* find(std::string_view name) {
  for (const Entry& e : entries()) {
    if (name == e.name) return &e;
  }
  return nullptr;
}

}  // namespace gallery

}  // namespace sepstab
