#pragma once

// Representation files.
//
//   # comment
//   [group]
//   factors = S2 Z
//   [generators]
//   a1 = <re a> <im a> <re b> <im b> <re c> <im c> <re d> <im d>
//   ...
//   [disks]                       optional
//   t1 = <re centre> <im centre> <radius> [exterior]
//   S1 = <re centre> <im centre> <radius> [exterior] basepoint <re> <im> <height>
//   [metadata]                    optional
//   name = schottky2
//
// Every positive generator letter appears once under [generators]. Disk
// keys are free letters (either sign) and surface factors S<i>.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sepstab/csv.hpp"
#include "sepstab/pingpong.hpp"
#include "sepstab/representation.hpp"

namespace sepstab {

struct RepFile {
  Representation rep;
  std::optional<PingPongDisks> disks;
  std::map<std::string, std::string> metadata;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(std::string_view line, std::size_t offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), offset + start + 1});
  }
  return out;
}

[[noreturn]] inline void syntax_error(std::size_t line, std::size_t column, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

inline double parse_number(const Token& t, std::size_t line) {
  double x = 0.0;
  const char* first = t.text.data();
  const char* last = first + t.text.size();
  if (!t.text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, x);
  if (ec != std::errc() || ptr != last || !std::isfinite(x)) syntax_error(line, t.column, "expected a number, got '" + t.text + "'");
  return x;
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

}  // namespace detail

inline constexpr double determinant_limit = 1e-6;

inline RepFile parse_rep(std::string_view text) {
  using detail::syntax_error;
  std::string section;
  std::optional<GroupSpec> group;
  struct Entry {
    std::size_t line;
    std::size_t key_column;
    std::string key;
    std::vector<detail::Token> values;
  };
  std::vector<Entry> generators, disks;
  std::map<std::string, std::string> metadata;
  bool saw_disks = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = eol + 1;

    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') continue;
    if (line[first] == '[') {
      std::size_t close = line.find(']', first);
      if (close == std::string_view::npos) syntax_error(line_no, first + 1, "unterminated section header");
      if (!detail::trim(line.substr(close + 1)).empty()) syntax_error(line_no, close + 2, "text after section header");
      section = detail::trim(line.substr(first + 1, close - first - 1));
      if (section != "group" && section != "generators" && section != "disks" && section != "metadata") {
        syntax_error(line_no, first + 2, "unknown section '" + section + "'");
      }
      if (section == "disks") saw_disks = true;
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) syntax_error(line_no, first + 1, "expected 'key = value'");
    std::string key = detail::trim(line.substr(0, eq));
    if (key.empty()) syntax_error(line_no, first + 1, "missing key");
    std::string_view value = line.substr(eq + 1);
    if (section.empty()) syntax_error(line_no, first + 1, "entry outside any section");

    if (section == "group") {
      if (key != "factors") syntax_error(line_no, first + 1, "unknown key '" + key + "' in [group]");
      if (group) syntax_error(line_no, first + 1, "duplicate key 'factors'");
      try {
        group = GroupSpec::parse(value);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SyntaxError) throw;
        syntax_error(line_no, eq + 2, e.what());
      }
    } else if (section == "metadata") {
      if (key != "name" && key != "description") syntax_error(line_no, first + 1, "unknown key '" + key + "' in [metadata]");
      if (metadata.count(key)) syntax_error(line_no, first + 1, "duplicate key '" + key + "'");
      metadata[key] = detail::trim(value);
    } else {
      Entry e{line_no, first + 1, key, detail::tokenize(value, eq + 1)};
      (section == "generators" ? generators : disks).push_back(std::move(e));
    }
  }
  if (!group) syntax_error(line_no, 1, "missing [group] factors");
  const GroupSpec& g = *group;

  // Generators.
  std::vector<std::optional<MoebiusMap>> images(g.generator_count());
  for (const Entry& e : generators) {
    Word w;
    try {
      w = g.parse_word(e.key);
    } catch (const Error&) {
      syntax_error(e.line, e.key_column, "unknown generator '" + e.key + "'");
    }
    if (w.size() != 1 || w.front().inverted()) syntax_error(e.line, e.key_column, "unknown generator '" + e.key + "'");
    std::size_t gen = w.front().generator();
    if (images[gen]) syntax_error(e.line, e.key_column, "duplicate generator '" + e.key + "'");
    if (e.values.size() != 8) {
      throw Error(ErrorCode::DimensionMismatch, "line " + std::to_string(e.line) + ": generator " + e.key +
                                                    " needs 8 numbers, got " + std::to_string(e.values.size()));
    }
    double v[8];
    for (int i = 0; i < 8; ++i) v[i] = detail::parse_number(e.values[static_cast<std::size_t>(i)], e.line);
    MoebiusMap m({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
    double off = std::abs(m.det() - 1.0);
    if (off > determinant_limit) {
      throw Error(ErrorCode::DeterminantOff, "line " + std::to_string(e.line) + ": generator " + e.key +
                                                 " has |det - 1| = " + format_double(off, 6));
    }
    images[gen] = m;
  }
  std::vector<MoebiusMap> maps;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (!images[i]) {
      throw Error(ErrorCode::DimensionMismatch, "missing generator " + g.spell(Letter(i, false)));
    }
    maps.push_back(*images[i]);
  }

  RepFile out{Representation(g, std::move(maps)), std::nullopt, std::move(metadata)};

  if (saw_disks) {
    PingPongDisks pd;
    for (const Entry& e : disks) {
      auto number = [&](std::size_t i) {
        if (i >= e.values.size()) syntax_error(e.line, e.key_column, "too few numbers for '" + e.key + "'");
        return detail::parse_number(e.values[i], e.line);
      };
      RoundRegion region;
      region.circle.center = {number(0), number(1)};
      region.circle.radius = number(2);
      if (!(region.circle.radius > 0.0)) syntax_error(e.line, e.values[2].column, "radius must be positive");
      std::size_t next = 3;
      if (next < e.values.size() && e.values[next].text == "exterior") {
        region.exterior = true;
        ++next;
      }
      if (e.key.size() >= 2 && e.key[0] == 'S' && std::isdigit(static_cast<unsigned char>(e.key[1]))) {
        std::size_t ordinal = 0;
        auto [p, ec] = std::from_chars(e.key.data() + 1, e.key.data() + e.key.size(), ordinal);
        if (ec != std::errc() || p != e.key.data() + e.key.size()) syntax_error(e.line, e.key_column, "bad surface key '" + e.key + "'");
        const FactorSpec* f = nullptr;
        for (const FactorSpec& fs : g.factors()) {
          if (fs.is_surface() && fs.ordinal == ordinal) f = &fs;
        }
        if (!f) syntax_error(e.line, e.key_column, "no surface factor '" + e.key + "'");
        if (pd.surface_home(f->id)) syntax_error(e.line, e.key_column, "duplicate key '" + e.key + "'");
        if (next >= e.values.size() || e.values[next].text != "basepoint") {
          syntax_error(e.line, e.key_column, "surface home '" + e.key + "' needs 'basepoint <re> <im> <height>'");
        }
        if (e.values.size() != next + 4) syntax_error(e.line, e.key_column, "surface home '" + e.key + "' needs 3 basepoint numbers");
        H3Point o{{number(next + 1), number(next + 2)}, number(next + 3)};
        if (!(o.height > 0.0)) syntax_error(e.line, e.values[next + 3].column, "basepoint height must be positive");
        pd.surfaces.push_back({f->id, region, o});
      } else {
        Word w;
        try {
          w = g.parse_word(e.key);
        } catch (const Error&) {
          syntax_error(e.line, e.key_column, "unknown disk key '" + e.key + "'");
        }
        if (w.size() != 1 || g.factor_of(w.front()).is_surface()) syntax_error(e.line, e.key_column, "unknown disk key '" + e.key + "'");
        if (pd.letter_region(w.front())) syntax_error(e.line, e.key_column, "duplicate key '" + e.key + "'");
        if (next != e.values.size()) syntax_error(e.line, e.values[next].column, "unexpected '" + e.values[next].text + "'");
        pd.letters.push_back({w.front(), region});
      }
    }
    // Keep a fixed order: letters by code, surfaces by factor.
    std::sort(pd.letters.begin(), pd.letters.end(), [](const LetterDisk& a, const LetterDisk& b) { return a.letter < b.letter; });
    std::sort(pd.surfaces.begin(), pd.surfaces.end(), [](const SurfaceHome& a, const SurfaceHome& b) { return a.factor < b.factor; });
    out.disks = std::move(pd);
  }
  return out;
}

inline std::string emit_rep(const RepFile& f) {
  const GroupSpec& g = f.rep.group();
  auto num = [](double x) { return format_double(x, 17); };
  std::ostringstream os;
  os << "[group]\nfactors = ";
  for (std::size_t i = 0; i < g.factors().size(); ++i) {
    if (i) os << ' ';
    os << (g.factors()[i].is_surface() ? "S" + std::to_string(g.factors()[i].genus) : std::string("Z"));
  }
  os << "\n\n[generators]\n";
  for (std::size_t i = 0; i < g.generator_count(); ++i) {
    const MoebiusMap& m = f.rep.images()[i];
    os << g.spell(Letter(i, false)) << " =";
    for (Complex z : {m.a(), m.b(), m.c(), m.d()}) os << ' ' << num(z.real()) << ' ' << num(z.imag());
    os << '\n';
  }
  auto region = [&](const RoundRegion& r) {
    os << num(r.circle.center.real()) << ' ' << num(r.circle.center.imag()) << ' ' << num(r.circle.radius);
    if (r.exterior) os << " exterior";
  };
  if (f.disks) {
    os << "\n[disks]\n";
    for (const LetterDisk& d : f.disks->letters) {
      os << g.spell(d.letter) << " = ";
      region(d.region);
      os << '\n';
    }
    for (const SurfaceHome& s : f.disks->surfaces) {
      os << 'S' << g.factor(s.factor).ordinal << " = ";
      region(s.home);
      os << " basepoint " << num(s.basepoint.horizontal.real()) << ' ' << num(s.basepoint.horizontal.imag()) << ' '
         << num(s.basepoint.height) << '\n';
    }
  }
  if (!f.metadata.empty()) {
    os << "\n[metadata]\n";
    for (const auto& [k, v] : f.metadata) os << k << " = " << v << '\n';
  }
  return os.str();
}

}  // namespace sepstab
