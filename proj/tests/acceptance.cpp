// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "sepstab/sepstab.hpp"

using namespace sepstab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// ---------------------------------------------------------------------------
// 1. Complete dichotomy in free groups.

Outcome free_dichotomy() {
  Outcome out;
  std::size_t total = 0, separable = 0;
  for (auto [rank, max_len] : {std::pair<std::size_t, std::size_t>{2, 8}, {3, 6}}) {
    GroupSpec g = GroupSpec::free(rank);
    for_each_element(g, max_len, [&](const CyclicNormalForm& f) {
      ++total;
      SeparabilityVerdict v = is_separable(f.letters(), g);
      Word minimal = peak_reduce(f.letters(), g).minimal;
      bool certified = certifies_nonseparable(whitehead_graph_combinatorial(canonical_form(minimal, g), g));
      bool good = false;
      if (v.status == Separability::Separable) {
        ++separable;
        Word cur = v.form.letters();
        for (const auto& m : v.moves) cur = canonical_form(m.apply(cur), g).letters();
        good = cur == v.image && v.omitted_factor && !certified;
        for (Letter l : v.image) good = good && l.generator() != *v.omitted_factor;
      } else if (v.status == Separability::NotSeparable) {
        good = v.certificate && certifies_nonseparable(*v.certificate) && certified;
      }
      if (!good && out.ok) {
        out.ok = false;
        out.detail = "F" + std::to_string(rank) + " " + g.spell(f.letters()) + " -> " + to_string(v.status);
      }
    });
  }
  if (out.ok) out.detail = std::to_string(total) + " classes, " + std::to_string(separable) + " separable";
  return out;
}

// ---------------------------------------------------------------------------
// 2. Separable classes in F2 are exactly powers of primitives, with the
// primitive classes found by a Nielsen search over bases.

std::set<Word> primitive_classes(std::size_t max_len) {
  GroupSpec g = GroupSpec::free(2);
  using Basis = std::pair<Word, Word>;
  const std::size_t bound = max_len + 2;
  std::set<Basis> seen;
  std::vector<Basis> queue{{{Letter(0, false)}, {Letter(1, false)}}};
  seen.insert(queue.front());
  std::set<Word> prim;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Basis b = queue[head];
    for (const Word& u : {b.first, b.second}) {
      CyclicNormalForm f = canonical_form(u, g);
      if (f.length() <= max_len) {
        prim.insert(f.letters());
        prim.insert(canonical_form(inverse(u), g).letters());
      }
    }
    const Word& u = b.first;
    const Word& v = b.second;
    std::vector<Basis> next = {
        {v, u},
        {inverse(u), v},
        {free_reduce(concat(u, v)), v},
        {free_reduce(concat(v, u)), v},
        {u, free_reduce(concat(v, u))},
        {u, free_reduce(concat(u, v))},
    };
    for (Basis& n : next) {
      if (n.first.size() > bound || n.second.size() > bound) continue;
      if (seen.insert(n).second) queue.push_back(std::move(n));
    }
  }
  return prim;
}

std::size_t euler_phi(std::size_t n) {
  std::size_t count = 0;
  for (std::size_t k = 1; k <= n; ++k) count += std::gcd(k, n) == 1 ? 1 : 0;
  return count;
}

Outcome primitive_oracle() {
  Outcome out;
  const std::size_t max_len = 6;
  GroupSpec g = GroupSpec::free(2);
  std::set<Word> prim = primitive_classes(max_len);
  // The oracle itself: 4 classes of length 1 and 4 phi(n) of length n >= 2.
  for (std::size_t n = 1; n <= max_len; ++n) {
    std::size_t c = 0;
    for (const Word& w : prim) c += w.size() == n ? 1 : 0;
    std::size_t expect = n == 1 ? 4 : 4 * euler_phi(n);
    if (c != expect) {
      out.ok = false;
      out.detail = "oracle has " + std::to_string(c) + " primitive classes of length " + std::to_string(n);
      return out;
    }
  }
  std::set<Word> powers;
  for (const Word& p : prim) {
    for (std::size_t k = 1; k * p.size() <= max_len; ++k) powers.insert(canonical_form(power(p, k), g).letters());
  }
  std::size_t agree = 0;
  for (const CyclicNormalForm& f : enumerate_elements(g, max_len)) {
    bool sep = is_separable(f.letters(), g).status == Separability::Separable;
    bool oracle = powers.count(f.letters()) > 0;
    if (sep != oracle) {
      out.ok = false;
      out.detail = g.spell(f.letters()) + (oracle ? " is a primitive power" : " is not a primitive power");
      return out;
    }
    ++agree;
  }
  out.detail = std::to_string(agree) + " classes agree, " + std::to_string(prim.size()) + " primitive";
  return out;
}

// ---------------------------------------------------------------------------
// 3, 4. Reference verdicts.

Outcome schottky_pass() {
  RepFile f = gallery::schottky2();
  auto t0 = std::chrono::steady_clock::now();
  StabilityReport r = stability_margin(f.rep, StabilityParams::defaults_for(f.rep.group()));
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  Outcome out;
  out.ok = r.verdict == Verdict::Pass && r.margin >= 0.02 && secs < 60.0 && ping_pong_verify(f.rep, *f.disks).verified;
  std::ostringstream os;
  os << to_string(r.verdict) << ", margin " << format_double(r.margin, 6) << ", " << format_double(secs, 3) << " s";
  out.detail = os.str();
  return out;
}

Outcome pinched_fail() {
  RepFile f = gallery::pinched_a();
  StabilityReport r = stability_margin(f.rep, StabilityParams::defaults_for(f.rep.group()));
  Outcome out;
  out.ok = r.verdict == Verdict::Fail && r.witness && r.elements[*r.witness].spelling == "a" &&
           r.elements[*r.witness].parabolic_gap < 1e-12;
  out.detail = std::string(to_string(r.verdict)) + (r.witness ? ", witness " + r.elements[*r.witness].spelling : "");
  return out;
}

// ---------------------------------------------------------------------------
// 5. Combinatorial and sampled graphs agree on S2*Z.

Outcome cross_construction() {
  RepFile f = gallery::s2_times_z();
  const GroupSpec& g = f.rep.group();
  Outcome out;
  std::size_t n = 0;
  for (const CyclicNormalForm& e : enumerate_elements(g, 4)) {
    WhiteheadGraph comb = whitehead_graph_combinatorial(e, g);
    auto axes = sample_axes(f.rep, primitive_root(e).letters(), 3);
    WhiteheadGraph samp = whitehead_graph_sampled(f.rep, *f.disks, axes, 3);
    for (std::size_t c = 0; c < comb.components.size(); ++c) {
      auto a = canonical_edges(comb, comb.components[c]);
      auto b = canonical_edges(samp, samp.components[c]);
      if (std::set<CanonicalEdge>(a.begin(), a.end()) != std::set<CanonicalEdge>(b.begin(), b.end())) {
        out.ok = false;
        out.detail = g.spell(e.letters()) + " differs in " + comb.components[c].name;
        return out;
      }
    }
    ++n;
  }
  out.detail = std::to_string(n) + " elements";
  return out;
}

// ---------------------------------------------------------------------------
// 6. Hyperbolic kernel.

Outcome kernel() {
  Outcome out;
  std::mt19937_64 rng(6);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> hd(0.2, 3.0);
  auto random_map = [&] {
    for (;;) {
      MoebiusMap m({nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)});
      if (std::abs(m.det()) > 0.1) return m.normalized();
    }
  };
  double worst_iso = 0.0, worst_hom = 0.0;
  for (int i = 0; i < 1000; ++i) {
    MoebiusMap m = random_map();
    H3Point p{{nd(rng), nd(rng)}, hd(rng)}, q{{nd(rng), nd(rng)}, hd(rng)};
    double d = dist(p, q);
    worst_iso = std::max(worst_iso, std::abs(dist(apply(m, p), apply(m, q)) - d) / std::max(1.0, d));
    if (classify(m) == MapClass::Loxodromic) {
      double t = translation_length(m);
      MoebiusMap m3 = m * m * m;
      worst_hom = std::max(worst_hom, std::abs(translation_length(m3) - 3.0 * t) / std::max(1.0, t));
    }
  }
  double residual = gallery::s2_times_z().rep.residuals().front();
  out.ok = worst_iso < 1e-8 && worst_hom < 1e-8 && residual < 1e-8;
  std::ostringstream os;
  os << "isometry " << format_double(worst_iso, 3) << ", homogeneity " << format_double(worst_hom, 3) << ", residual "
     << format_double(residual, 3);
  out.detail = os.str();
  return out;
}

// ---------------------------------------------------------------------------
// 7. Conjugation invariance.

Outcome conjugation_invariance() {
  RepFile f = gallery::schottky2();
  StabilityParams p = StabilityParams::defaults_for(f.rep.group());
  StabilityReport base = stability_margin(f.rep, p);
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Outcome out;
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    MoebiusMap h;
    for (;;) {
      h = MoebiusMap({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)});
      if (std::abs(h.det()) > 0.1) break;
    }
    StabilityReport r = stability_margin(f.rep.conjugated(h), p);
    double diff = std::abs(r.margin - base.margin) / base.margin;
    worst = std::max(worst, diff);
    if (r.verdict != base.verdict || diff > 1e-6) {
      out.ok = false;
      out.detail = "conjugate " + std::to_string(i) + ": " + to_string(r.verdict) + ", margin " + format_double(r.margin, 9);
      return out;
    }
  }
  out.detail = std::string(to_string(base.verdict)) + " x10, margin drift " + format_double(worst, 3);
  return out;
}

// ---------------------------------------------------------------------------
// 8. CLI determinism.

struct Run {
  int status = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(SEPSTAB_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism() {
  Outcome out;
  fs::path dir = fs::temp_directory_path() / "sepstab_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> commands = {
      "check-stability schottky2 --csv " + (dir / "X.csv").string(),
      "check-stability pinched-a --csv " + (dir / "X.csv").string(),
      "whitehead 'a1 t1 b1 T1' --group 'S2*Z' --dot " + (dir / "X.dot").string(),
      "separable 'a a b a b'",
      "sweep --family schottky-lambda --grid 1:11:5 -L 3",
  };
  for (const std::string& c : commands) {
    std::string first_file, second_file;
    Run a = run_cli(c);
    for (const auto& e : fs::directory_iterator(dir)) first_file += slurp(e.path());
    Run b = run_cli(c);
    for (const auto& e : fs::directory_iterator(dir)) second_file += slurp(e.path());
    if (a.status != b.status || a.out != b.out || first_file != second_file || a.out.empty()) {
      out.ok = false;
      out.detail = "output differs: " + c;
      return out;
    }
  }
  out.detail = std::to_string(commands.size()) + " commands byte-identical";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "free-group separability dichotomy (F2 <= 8, F3 <= 6)", free_dichotomy},
      {2, "separable classes match primitive powers (F2 <= 6)", primitive_oracle},
      {3, "schottky2 passes with margin >= 0.02 within 60 s", schottky_pass},
      {4, "pinched-a fails with parabolic witness a", pinched_fail},
      {5, "sampled and combinatorial graphs agree on S2*Z (<= 4, depth 3)", cross_construction},
      {6, "hyperbolic kernel: isometry, homogeneity, relator residual", kernel},
      {7, "verdict invariant under 10 random conjugations", conjugation_invariance},
      {8, "CLI output is deterministic", cli_determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << o.detail << "]"
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
