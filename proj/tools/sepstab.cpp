// sepstab command-line front end.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "sepstab/sepstab.hpp"

namespace fs = std::filesystem;
using namespace sepstab;

namespace {

constexpr int kUsageError = 64;
constexpr int kDataError = 65;

struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw DataError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  out << text;
  if (!out) throw DataError("cannot write " + p.string());
}

/// A readable file wins; otherwise the last path component names a
/// built-in gallery entry (so "examples/schottky2" works without files).
RepFile load_rep(const std::string& arg, std::string& label) {
  fs::path p(arg);
  if (fs::is_regular_file(p)) {
    label = arg;
    return parse_rep(read_file(p));
  }
  std::string stem = p.filename().string();
  if (p.extension() == ".rep") stem = p.stem().string();
  if (const gallery::Entry* e = gallery::find(stem)) {
    label = std::string(e->name) + " (built-in)";
    return e->build();
  }
  throw DataError("no such representation file or built-in example: " + arg);
}

std::string num(double x) { return format_double(x, 10); }

std::string complex_str(Complex z) { return num(z.real()) + (z.imag() < 0 ? " - " : " + ") + num(std::abs(z.imag())) + "i"; }

PingPongDisks conjugate_disks(const PingPongDisks& d, const MoebiusMap& h) {
  PingPongDisks out;
  auto move = [&](const RoundRegion& r) {
    auto img = pingpong::image(h, r);
    if (!img) throw Error(ErrorCode::InvalidParameter, "conjugator sends a disk boundary through infinity");
    return *img;
  };
  for (const LetterDisk& l : d.letters) out.letters.push_back({l.letter, move(l.region)});
  for (const SurfaceHome& s : d.surfaces) out.surfaces.push_back({s.factor, move(s.home), apply(h, s.basepoint)});
  return out;
}

MoebiusMap random_conjugator(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    MoebiusMap h({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)});
    if (std::abs(h.det()) > 0.1) return h.normalized();
  }
}

// ---------------------------------------------------------------------------

int run_separable(const std::string& group_text, const std::string& word_text) {
  GroupSpec g = GroupSpec::parse(group_text);
  Word w = g.parse_word(word_text);
  SeparabilityVerdict v = is_separable(w, g);
  std::cout << "group " << g.to_string() << "\n";
  std::cout << "element " << g.spell(w) << "\n";
  std::cout << "cyclic form " << g.spell(v.form.letters()) << "\n";
  std::cout << "verdict " << to_string(v.status) << "\n";
  switch (v.status) {
    case Separability::Separable: {
      for (const WhiteheadMove& m : v.moves) std::cout << "  apply " << m.describe(g) << "\n";
      std::cout << "image " << g.spell(v.image) << "\n";
      const FactorSpec& f = g.factor(*v.omitted_factor);
      std::string name = f.is_surface() ? "S" + std::to_string(f.ordinal) : g.spell(Letter(f.first_generator, false));
      std::cout << "omits " << name << "\n";
      return 0;
    }
    case Separability::NotSeparable:
      std::cout << "certificate Whitehead graph is strongly connected without strong cutpoints\n";
      std::cout << emit_dot(*v.certificate);
      return 1;
    case Separability::Unknown:
      std::cout << "reason no visible factor and no certifying Whitehead graph\n";
      return 2;
  }
  return 2;
}

void print_graph(const WhiteheadGraph& wh) {
  GraphAnalysis a = analyse(wh);
  for (std::size_t i = 0; i < wh.components.size(); ++i) {
    const WhiteheadComponent& c = wh.components[i];
    const ComponentAnalysis& ca = a.components[i];
    std::cout << "component " << c.name << ": " << c.vertices.size() << " vertices, " << c.edges.size() << " edges\n";
    std::cout << "  strongly connected " << (ca.strongly_connected ? "yes" : "no");
    if (ca.strongly_connected && !ca.witness_cycle.empty()) {
      std::cout << ", cycle";
      for (std::size_t v : ca.witness_cycle) std::cout << ' ' << c.vertices[v].name;
      if (c.surface) std::cout << " label " << wh.group.spell(ca.witness_label);
    }
    std::cout << "\n  strong cutpoints";
    if (ca.strong_cutpoints.empty()) std::cout << " none";
    for (std::size_t v : ca.strong_cutpoints) std::cout << ' ' << c.vertices[v].name;
    std::cout << "\n";
  }
  std::cout << "certifies non-separable " << (a.all_strongly_connected() && !a.has_strong_cutpoint() ? "yes" : "no")
            << "\n";
}

int run_whitehead(const std::string& group_text, const std::string& word_text, const std::string& dot_path,
                  bool sampled, const std::string& rep_arg, std::size_t depth) {
  std::optional<RepFile> rep;
  std::string label;
  GroupSpec g = GroupSpec::parse(group_text);
  if (sampled) {
    rep = load_rep(rep_arg, label);
    g = rep->rep.group();
  }
  Word w = g.parse_word(word_text);
  CyclicNormalForm form = canonical_form(w, g);
  WhiteheadGraph wh = [&] {
    if (!sampled) return whitehead_graph_combinatorial(form, g);
    if (!rep->disks) throw Error(ErrorCode::UnverifiedDisks, "representation has no [disks] section");
    std::vector<AxisPair> mu = sample_axes(rep->rep, form.letters(), depth);
    return whitehead_graph_sampled(rep->rep, *rep->disks, mu, depth);
  }();
  std::cout << "group " << g.to_string() << "\n";
  std::cout << "cyclic form " << g.spell(form.letters()) << "\n";
  if (sampled) std::cout << "sampled from " << label << " at depth " << depth << "\n";
  print_graph(wh);
  if (!dot_path.empty()) {
    fs::path p(dot_path);
    write_file(p, emit_dot(wh, wh.components.front()));
    fs::path stem = p.parent_path() / (p.extension() == ".dot" ? p.stem() : p.filename());
    for (std::size_t i = 1; i < wh.components.size(); ++i) {
      write_file(stem.string() + "." + wh.components[i].name + ".dot", emit_dot(wh, wh.components[i]));
    }
  }
  return 0;
}

struct StabilityFlags {
  std::optional<std::size_t> depth;
  std::size_t powers = 16;
  std::size_t window = 24;
  double margin = 0.02;
  double k_max = 100.0;
  double a_max = 50.0;
  std::vector<double> basepoint;
};

StabilityParams to_params(const StabilityFlags& f, const GroupSpec& g) {
  StabilityParams p = StabilityParams::defaults_for(g);
  if (f.depth) p.depth = *f.depth;
  p.powers = f.powers;
  p.window = f.window;
  p.margin = f.margin;
  p.k_max = f.k_max;
  p.a_max = f.a_max;
  if (!f.basepoint.empty()) p.basepoint = {{f.basepoint[0], f.basepoint[1]}, f.basepoint[2]};
  return p;
}

void write_elements_csv(std::ostream& os, const StabilityReport& r) {
  write_csv_row(os, {"element", "length", "separable", "trace_re", "trace_im", "trans_len", "ratio", "worst_qg",
                     "verdict_flags"});
  for (const ElementRecord& e : r.elements) {
    std::string flags;
    for (const auto& f : e.flags) flags += (flags.empty() ? "" : ";") + f;
    write_csv_row(os, {e.spelling, std::to_string(e.length), to_string(e.separability), format_double(e.trace.real()),
                       format_double(e.trace.imag()), format_double(e.trans_len), format_double(e.ratio),
                       format_double(e.worst_qg), flags});
  }
}

int run_check_stability(const std::string& rep_arg, const StabilityFlags& flags, const std::string& csv_path,
                        bool conjugate, std::uint64_t seed) {
  std::string label;
  RepFile f = load_rep(rep_arg, label);
  Representation rho = f.rep;
  std::optional<PingPongDisks> disks = f.disks;
  if (conjugate) {
    MoebiusMap h = random_conjugator(seed);
    rho = rho.conjugated(h);
    if (disks) disks = conjugate_disks(*disks, h);
  }
  const GroupSpec& g = rho.group();
  StabilityParams p = to_params(flags, g);
  if (!(p.basepoint.height > 0.0)) throw Error(ErrorCode::InvalidParameter, "basepoint height must be positive");

  std::cout << "representation " << label << "\n";
  std::cout << "group " << g.to_string() << "\n";
  if (conjugate) std::cout << "conjugated by a random matrix (seed " << seed << ")\n";
  std::cout << "ping-pong ";
  if (!disks) {
    std::cout << "not checked (no disks)\n";
  } else {
    PingPongCertificate cert = ping_pong_verify(rho, *disks);
    if (cert) {
      std::cout << "verified\n";
    } else {
      std::cout << "failed";
      for (const auto& m : cert.failures) std::cout << "; " << m;
      std::cout << "\n";
    }
  }
  std::cout << "relator residuals";
  if (rho.residuals().empty()) std::cout << " none";
  for (double r : rho.residuals()) std::cout << ' ' << format_double(r, 3);
  std::cout << "\n";
  std::cout << "parameters L=" << p.depth << " N=" << p.powers << " W=" << p.window << " margin=" << num(p.margin)
            << " kmax=" << num(p.k_max) << " amax=" << num(p.a_max) << " basepoint=(" << complex_str(p.basepoint.horizontal)
            << ", " << num(p.basepoint.height) << ")\n";

  StabilityReport r = stability_margin(rho, p);
  std::size_t separable = 0, unknown = 0;
  for (const auto& e : r.elements) (e.separability == Separability::Separable ? separable : unknown)++;
  std::cout << r.header() << "\n";
  std::cout << "margin " << num(r.margin) << "\n";
  std::cout << "qg K=" << num(r.k_est) << " A=" << num(r.a_est) << "\n";
  std::cout << "elements " << r.elements.size() << " tested (" << separable << " separable, " << unknown
            << " unknown), " << r.skipped_nonseparable << " certified non-separable skipped\n";
  std::cout << "reason " << r.reason << "\n";
  if (r.witness) {
    const ElementRecord& w = r.elements[*r.witness];
    std::cout << "witness " << w.spelling << " (" << to_string(w.separability) << ", " << to_string(w.map_class)
              << ", trace " << complex_str(w.trace) << ", |tr^2-4| " << format_double(w.parabolic_gap, 6) << ", ratio "
              << num(w.ratio) << ")\n";
  }
  if (!csv_path.empty()) {
    std::ostringstream os;
    write_elements_csv(os, r);
    write_file(csv_path, os.str());
  }
  switch (r.verdict) {
    case Verdict::Pass: return 0;
    case Verdict::Fail: return 1;
    case Verdict::Inconclusive: return 2;
  }
  return 2;
}

int run_sweep(const std::string& family_name, const std::string& grid_text, const StabilityFlags& flags,
              const std::string& out_path) {
  Family family = find_family(family_name);
  std::vector<double> grid = parse_grid(grid_text);
  StabilityParams p = to_params(flags, GroupSpec::free(2));
  std::vector<SweepRow> rows = sweep(family, grid, p);
  std::ostringstream os;
  write_sweep_csv(os, family, rows);
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    write_file(out_path, os.str());
  }
  return 0;
}

int run_examples(const std::string& write_dir, const std::string& show) {
  if (!show.empty()) {
    const gallery::Entry* e = gallery::find(show);
    if (!e) throw DataError("no built-in example named " + show);
    std::cout << emit_rep(e->build());
    return 0;
  }
  for (const gallery::Entry& e : gallery::entries()) {
    std::cout << e.name << "  " << e.description << "\n";
    if (!write_dir.empty()) {
      fs::create_directories(write_dir);
      write_file(fs::path(write_dir) / (std::string(e.name) + ".rep"), emit_rep(e.build()));
    }
  }
  return 0;
}

void add_stability_flags(CLI::App* cmd, StabilityFlags& f) {
  cmd->add_option("--depth,-L", f.depth, "maximal cyclic length of tested elements")->check(CLI::PositiveNumber);
  cmd->add_option("--powers,-N", f.powers, "powers of each element traced")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--window,-W", f.window, "window length for quasi-geodesic checks")->check(CLI::Range(2, 1 << 20));
  cmd->add_option("--margin", f.margin, "ratio threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--kmax", f.k_max, "bound on the multiplicative constant")->check(CLI::PositiveNumber);
  cmd->add_option("--amax", f.a_max, "bound on the additive constant")->check(CLI::NonNegativeNumber);
  cmd->add_option("--basepoint", f.basepoint, "basepoint as RE IM HEIGHT")->expected(3);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability and separable-stability in free products of surface and free groups"};
  app.require_subcommand(1);

  std::string group_text = "F2";
  std::string word_text;
  auto* sep = app.add_subcommand("separable", "decide whether an element is separable");
  sep->add_option("word", word_text, "whitespace-separated letters")->required();
  sep->add_option("--group,-g", group_text, "group, e.g. F2 or S2*Z");

  std::string dot_path, rep_arg;
  bool sampled = false;
  std::size_t sample_depth = 3;
  auto* wh = app.add_subcommand("whitehead", "build and analyse a Whitehead graph");
  wh->add_option("word", word_text, "whitespace-separated letters")->required();
  wh->add_option("--group,-g", group_text, "group, e.g. F2 or S2*Z");
  wh->add_option("--dot", dot_path, "write the ball component here and surface components next to it");
  wh->add_flag("--sampled", sampled, "sample the graph from a representation's limit set");
  wh->add_option("--rep", rep_arg, "representation file or built-in example (with --sampled)");
  wh->add_option("--depth", sample_depth, "conjugator and label length bound for sampling");

  StabilityFlags stab_flags;
  std::string csv_path;
  bool conjugate = false;
  std::uint64_t seed = 1;
  auto* chk = app.add_subcommand("check-stability", "certify or refute separable-stability at finite depth");
  chk->add_option("rep", rep_arg, "representation file or built-in example")->required();
  add_stability_flags(chk, stab_flags);
  chk->add_option("--csv", csv_path, "write per-element records here");
  chk->add_flag("--conjugate", conjugate, "conjugate the representation by a random matrix first");
  chk->add_option("--seed", seed, "seed for --conjugate");

  StabilityFlags sweep_flags;
  std::string family = "schottky-lambda", grid_text, out_path;
  auto* swp = app.add_subcommand("sweep", "stability margins over a one-parameter family");
  swp->add_option("--family", family, "family name")->check(CLI::IsMember({"schottky-lambda"}));
  swp->add_option("--grid", grid_text, "start:stop:step or comma-separated values")->required();
  swp->add_option("--out", out_path, "CSV output path (default stdout)");
  add_stability_flags(swp, sweep_flags);

  std::string write_dir, show;
  auto* ex = app.add_subcommand("examples", "list or write the built-in representations");
  ex->add_option("--write", write_dir, "write <name>.rep files into this directory");
  ex->add_option("--show", show, "print one example in file format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }
  if (wh->parsed() && sampled && rep_arg.empty()) {
    std::cerr << "error: --sampled needs --rep\n";
    return kUsageError;
  }

  try {
    if (sep->parsed()) return run_separable(group_text, word_text);
    if (wh->parsed()) return run_whitehead(group_text, word_text, dot_path, sampled, rep_arg, sample_depth);
    if (chk->parsed()) return run_check_stability(rep_arg, stab_flags, csv_path, conjugate, seed);
    if (swp->parsed()) return run_sweep(family, grid_text, sweep_flags, out_path);
    if (ex->parsed()) return run_examples(write_dir, show);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidParameter ? kUsageError : kDataError;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}
