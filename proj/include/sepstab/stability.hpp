#pragma once

// Depth-bounded separable-stability checks.
//
// For every conjugacy class up to cyclic length L that is not certified
// non-separable, the image under rho is classified, its translation length
// per letter is recorded, and the orbit of the basepoint along the letter
// path of g^N is tested for quasi-geodesic quality on windows of W steps.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sepstab/group.hpp"
#include "sepstab/moebius.hpp"
#include "sepstab/representation.hpp"
#include "sepstab/separability.hpp"

namespace sepstab {

struct StabilityParams {
  std::size_t depth = 8;
  std::size_t powers = 16;
  std::size_t window = 24;
  double margin = 0.02;
  double k_max = 100.0;
  double a_max = 50.0;
  H3Point basepoint{};

  /// Defaults with depth 8 for free groups and 5 once surface factors occur.
  static StabilityParams defaults_for(const GroupSpec& g) {
    StabilityParams p;
    p.depth = g.purely_free() ? 8 : 5;
    return p;
  }

  void validate() const {
    if (depth < 1) throw Error(ErrorCode::InvalidParameter, "depth must be >= 1");
    if (powers < 2) throw Error(ErrorCode::InvalidParameter, "powers must be >= 2");
    if (window < 2) throw Error(ErrorCode::InvalidParameter, "window must be >= 2");
    if (!(margin > 0.0)) throw Error(ErrorCode::InvalidParameter, "margin must be > 0");
    if (!(basepoint.height > 0.0)) throw Error(ErrorCode::InvalidParameter, "basepoint height must be > 0");
  }
};

/// Orbit of x along the prefixes of g^N: N |g| + 1 points.
inline std::vector<H3Point> orbit_path(const Representation& rho, std::span<const Letter> g, std::size_t n,
                                       const H3Point& x) {
  if (g.empty()) throw Error(ErrorCode::TrivialElement, "orbit path of the identity");
  std::vector<H3Point> out;
  out.reserve(n * g.size() + 1);
  out.push_back(x);
  MoebiusMap m = MoebiusMap::identity();
  std::size_t since = 0;
  for (std::size_t k = 0; k < n; ++k) {
    for (Letter l : g) {
      m = m * rho.image(l);
      if (++since == 16) {
        m = m.renormalized();
        since = 0;
      }
      out.push_back(apply(m, x));
    }
  }
  return out;
}

struct QgFit {
  double k_est = 0.0;
  double a_est = 0.0;
  double worst_ratio = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
};

namespace detail {

// Fit over all pairs i < j <= i + window of n path points, where dist(i, j)
// supplies the hyperbolic distance between points i and j.
template <class Dist>
QgFit fit_qg(std::size_t n, std::size_t window, double k_max, Dist&& dist_ij) {
  if (n < 2) throw Error(ErrorCode::PathTooShort, "quasi-geodesic fit needs at least two points");
  if (window < 1) throw Error(ErrorCode::InvalidParameter, "window must be >= 1");
  const std::size_t span_min = std::min((window + 1) / 2, n - 1);
  struct Pair {
    double c, d;
  };
  std::vector<Pair> pairs;
  QgFit fit;
  fit.worst_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && j - i <= window; ++j) {
      double c = static_cast<double>(j - i);
      double d = dist_ij(i, j);
      pairs.push_back({c, d});
      if (j - i >= span_min && d / c < fit.worst_ratio) {
        fit.worst_ratio = d / c;
        fit.worst_i = i;
        fit.worst_j = j;
      }
    }
  }
  double a = 0.0;
  for (const Pair& p : pairs) a = std::max(a, p.c - k_max * p.d);
  double k = 0.0;
  for (const Pair& p : pairs) {
    if (p.c > a) k = std::max(k, (p.c - a) / p.d);
  }
  fit.a_est = a;
  fit.k_est = k;
  return fit;
}

}  // namespace detail

/// Quasi-geodesic constants of a path on windows of at most W steps.
///
/// A_est is the smallest additive constant that works with K = k_max; K_est
/// is then the smallest multiplicative constant that works with A_est. The
/// worst ratio d/c is taken over pairs at least min(ceil(W/2), n-1) apart.
inline QgFit qg_constants(std::span<const H3Point> path, std::size_t window, double k_max = 100.0) {
  return detail::fit_qg(path.size(), window, k_max, [&](std::size_t i, std::size_t j) { return dist(path[i], path[j]); });
}

/// Same fit for the orbit path of g^N at x, computed without forming the
/// path: dist(x_i, x_j) = dist(x, rho(g_{i+1} ... g_j) x). Stays finite where
/// the path's coordinates would overflow.
inline QgFit orbit_qg(const Representation& rho, std::span<const Letter> g, std::size_t n, const H3Point& x,
                      std::size_t window, double k_max = 100.0) {
  if (g.empty()) throw Error(ErrorCode::TrivialElement, "orbit path of the identity");
  const std::size_t steps = n * g.size();
  // Row i holds displacements for j = i+1 .. i+window; rows depend only on
  // i mod |g|, so compute |g| rows.
  std::vector<std::vector<double>> rows(g.size());
  for (std::size_t i = 0; i < g.size() && i < steps; ++i) {
    MoebiusMap m = MoebiusMap::identity();
    std::size_t since = 0;
    for (std::size_t k = 1; k <= window && i + k <= steps; ++k) {
      m = m * rho.image(g[(i + k - 1) % g.size()]);
      if (++since == 16) {
        m = m.renormalized();
        since = 0;
      }
      rows[i].push_back(displacement(m, x));
    }
  }
  return detail::fit_qg(steps + 1, window, k_max, [&](std::size_t i, std::size_t j) {
    return rows[i % g.size()][j - i - 1];
  });
}

/// Every sampled pair satisfies c <= K d + A (up to rounding).
inline bool qg_feasible(std::span<const H3Point> path, std::size_t window, double k, double a) {
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t j = i + 1; j < path.size() && j - i <= window; ++j) {
      double c = static_cast<double>(j - i);
      if (c > k * dist(path[i], path[j]) + a + 1e-9 * c) return false;
    }
  }
  return true;
}

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct ElementRecord {
  CyclicNormalForm form;
  std::string spelling;
  std::size_t length = 0;
  Separability separability = Separability::Unknown;
  Complex trace;
  MapClass map_class = MapClass::Loxodromic;
  double parabolic_gap = 0.0;  // |tr^2 - 4|
  double trans_len = 0.0;
  double ratio = 0.0;          // trans_len / length
  double worst_qg = 0.0;
  std::optional<double> worst_qg_half;  // at N/2, only when needed
  double k_est = 0.0;
  double a_est = 0.0;
  std::vector<std::string> flags;
};

struct StabilityReport {
  GroupSpec group;
  StabilityParams params;
  std::vector<ElementRecord> elements;
  std::size_t skipped_nonseparable = 0;
  double margin = std::numeric_limits<double>::infinity();  // min ratio
  double k_est = 0.0;
  double a_est = 0.0;
  Verdict verdict = Verdict::Pass;
  std::optional<std::size_t> witness;  // index into elements
  std::string reason;

  std::string header() const {
    std::ostringstream os;
    os << to_string(verdict) << " certified at depth (L,N,W) = (" << params.depth << "," << params.powers << ","
       << params.window << ")";
    return os.str();
  }
};

namespace detail {

inline constexpr double exact_parabolic = 1e-12;
inline constexpr double refutation_gap = 1e-6;

// Fail is reserved for separable-certified elements; everything else that
// would fail only blocks a Pass.
inline void assess(ElementRecord& r, const StabilityParams& p, const Representation& rho, std::optional<Verdict>& fail,
                   bool& blocked) {
  const bool certified = r.separability == Separability::Separable;
  bool refuted = false;
  bool blocking = false;
  switch (r.map_class) {
    case MapClass::Identity:
      r.flags.push_back("identity");
      refuted = true;
      break;
    case MapClass::Parabolic:
      r.flags.push_back("parabolic");
      if (r.parabolic_gap <= exact_parabolic) {
        refuted = true;
      } else {
        r.flags.push_back("near-parabolic");
        blocking = true;
      }
      break;
    case MapClass::Elliptic:
      r.flags.push_back("elliptic");
      if (r.parabolic_gap > refutation_gap) {
        refuted = true;
      } else {
        r.flags.push_back("near-parabolic");
        blocking = true;
      }
      break;
    case MapClass::Loxodromic:
      if (r.parabolic_gap < refutation_gap) {
        r.flags.push_back("near-parabolic");
        blocking = true;
      }
      break;
  }
  if (!refuted && r.ratio < p.margin) {
    r.flags.push_back("low-ratio");
    r.worst_qg_half = orbit_qg(rho, r.form.letters(), p.powers / 2, p.basepoint, p.window, p.k_max).worst_ratio;
    if (r.worst_qg < *r.worst_qg_half) {
      r.flags.push_back("decreasing");
      refuted = true;
    } else {
      blocking = true;
    }
  }
  if (refuted && certified) {
    r.flags.push_back("refuted");
    fail = Verdict::Fail;
  } else if (refuted || blocking) {
    r.flags.push_back("blocking");
    blocked = true;
  }
}

}  // namespace detail

/// Evaluates one element; exposed for tests and for the CLI's verbose mode.
inline ElementRecord measure_element(const Representation& rho, const CyclicNormalForm& form, Separability sep,
                                     const StabilityParams& p) {
  const GroupSpec& g = rho.group();
  ElementRecord r;
  r.form = form;
  const Word letters = form.letters();
  r.spelling = g.spell(letters);
  r.length = letters.size();
  r.separability = sep;
  const MoebiusMap m = rho.evaluate(letters);
  r.trace = m.trace();
  r.map_class = classify(m);
  r.parabolic_gap = std::abs(trace_squared(m) - 4.0);
  r.trans_len = translation_length(m);
  r.ratio = r.trans_len / static_cast<double>(r.length);
  QgFit fit = orbit_qg(rho, letters, p.powers, p.basepoint, p.window, p.k_max);
  r.worst_qg = fit.worst_ratio;
  r.k_est = fit.k_est;
  r.a_est = fit.a_est;
  return r;
}

inline StabilityReport stability_margin(const Representation& rho, const StabilityParams& p) {
  p.validate();
  const GroupSpec& g = rho.group();
  StabilityReport report{g, p, {}, 0, std::numeric_limits<double>::infinity(), 0.0, 0.0, Verdict::Pass, std::nullopt, ""};
  std::optional<std::size_t> first_blocked;
  for_each_element(g, p.depth, [&](const CyclicNormalForm& form) {
    SeparabilityVerdict sv = is_separable(form.letters(), g);
    if (sv.status == Separability::NotSeparable) {
      ++report.skipped_nonseparable;
      return;
    }
    ElementRecord r = measure_element(rho, form, sv.status, p);
    std::optional<Verdict> fail;
    bool blocked = false;
    detail::assess(r, p, rho, fail, blocked);
    report.margin = std::min(report.margin, r.ratio);
    report.k_est = std::max(report.k_est, r.k_est);
    report.a_est = std::max(report.a_est, r.a_est);
    report.elements.push_back(std::move(r));
    const std::size_t idx = report.elements.size() - 1;
    if (fail && !report.witness) {
      report.verdict = Verdict::Fail;
      report.witness = idx;
    }
    if (blocked && !first_blocked) first_blocked = idx;
  });
  if (report.verdict == Verdict::Fail) {
    const ElementRecord& w = report.elements[*report.witness];
    std::ostringstream os;
    os << "separable element " << w.spelling << " is " << to_string(w.map_class) << " (|tr^2-4| = " << w.parabolic_gap
       << ", ratio " << w.ratio << ")";
    report.reason = os.str();
    return report;
  }
  if (first_blocked) {
    report.verdict = Verdict::Inconclusive;
    report.witness = first_blocked;
    const ElementRecord& w = report.elements[*first_blocked];
    report.reason = "element " + w.spelling + " (" + to_string(w.separability) + ") is flagged";
    for (const auto& f : w.flags) report.reason += " " + f;
    return report;
  }
  if (report.k_est > p.k_max || report.a_est > p.a_max) {
    report.verdict = Verdict::Inconclusive;
    std::ostringstream os;
    os << "quasi-geodesic constants (" << report.k_est << ", " << report.a_est << ") exceed the bounds";
    report.reason = os.str();
    return report;
  }
  report.verdict = Verdict::Pass;
  std::ostringstream os;
  os << "all " << report.elements.size() << " tested elements have ratio >= " << p.margin;
  report.reason = os.str();
  return report;
}

}  // namespace sepstab
