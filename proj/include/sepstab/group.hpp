#pragma once

// Words and normal forms in free products G_1 * ... * G_k where each factor
// is either a closed surface group of genus >= 2 (standard one-relator
// presentation) or an infinite cyclic group.

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sepstab/error.hpp"

namespace sepstab {

enum class FactorKind { Surface, FreeRankOne };

struct FactorSpec {
  FactorKind kind = FactorKind::FreeRankOne;
  int genus = 0;
  std::size_t id = 0;       // position in GroupSpec::factors()
  std::size_t ordinal = 0;  // 1-based index among factors of the same kind
  std::size_t first_generator = 0;
  std::size_t generator_count = 1;

  bool is_surface() const { return kind == FactorKind::Surface; }
};

/// A generator or inverse generator, interned as 2 * generator + inverted.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(std::size_t generator, bool inverted)
      : code_(static_cast<std::uint32_t>((generator << 1) | (inverted ? 1u : 0u))) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr std::uint32_t code() const { return code_; }
  constexpr std::size_t generator() const { return code_ >> 1; }
  constexpr bool inverted() const { return (code_ & 1u) != 0; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }

  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  std::uint32_t code_ = 0;
};

using Word = std::vector<Letter>;

inline Word inverse(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(it->inverse());
  return out;
}

inline Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Removes adjacent x x^-1 pairs.
inline Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline Word power(std::span<const Letter> w, std::size_t n) {
  Word out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

inline Word rotate_left(std::span<const Letter> w, std::size_t k) {
  Word out(w.begin(), w.end());
  if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k % out.size()), out.end());
  return out;
}

class GroupSpec {
 public:
  struct Factor {
    FactorKind kind = FactorKind::FreeRankOne;
    int genus = 0;
  };

  explicit GroupSpec(std::span<const Factor> factors) {
    std::size_t surfaces = 0;
    std::size_t frees = 0;
    std::size_t next_generator = 0;
    for (const Factor& f : factors) {
      FactorSpec spec;
      spec.kind = f.kind;
      spec.id = factors_.size();
      spec.first_generator = next_generator;
      if (f.kind == FactorKind::Surface) {
        if (f.genus < 2) {
          throw Error(ErrorCode::InvalidGroup, "surface factors need genus >= 2");
        }
        spec.genus = f.genus;
        spec.ordinal = ++surfaces;
        spec.generator_count = 2 * static_cast<std::size_t>(f.genus);
      } else {
        spec.ordinal = ++frees;
        spec.generator_count = 1;
      }
      next_generator += spec.generator_count;
      factors_.push_back(spec);
    }
    if (factors_.size() < 2) {
      throw Error(ErrorCode::InvalidGroup, "a nontrivial free product needs at least two factors");
    }
    if (surfaces == 2 && frees == 0) {
      throw Error(ErrorCode::UniquelyFreelyDecomposable,
                  "the free product of exactly two surface groups is not supported");
    }
    generator_factor_.resize(next_generator);
    for (const FactorSpec& f : factors_) {
      for (std::size_t g = 0; g < f.generator_count; ++g) generator_factor_[f.first_generator + g] = f.id;
    }
    build_relators();
  }

  /// Parses "S2*Z", "F2", "S2*S3*F1" and the like. Factors are separated by
  /// '*' or whitespace; S<g> is a genus-g surface group, Z one free letter,
  /// F<r> r free letters.
  static GroupSpec parse(std::string_view text) {
    std::vector<Factor> factors;
    std::string token;
    auto flush = [&]() {
      if (token.empty()) return;
      char kind = token[0];
      std::string digits = token.substr(1);
      auto number = [&]() -> int {
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
          throw Error(ErrorCode::SyntaxError, "bad group factor '" + token + "'");
        }
        return std::stoi(digits);
      };
      if (kind == 'S') {
        factors.push_back({FactorKind::Surface, number()});
      } else if (kind == 'Z' && digits.empty()) {
        factors.push_back({FactorKind::FreeRankOne, 0});
      } else if (kind == 'F') {
        int rank = number();
        for (int i = 0; i < rank; ++i) factors.push_back({FactorKind::FreeRankOne, 0});
      } else {
        throw Error(ErrorCode::SyntaxError, "bad group factor '" + token + "'");
      }
      token.clear();
    };
    for (char c : text) {
      if (c == '*' || std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        token.push_back(c);
      }
    }
    flush();
    return GroupSpec(factors);
  }

  static GroupSpec free(std::size_t rank) {
    std::vector<Factor> factors(rank, Factor{FactorKind::FreeRankOne, 0});
    return GroupSpec(factors);
  }

  const std::vector<FactorSpec>& factors() const { return factors_; }
  const FactorSpec& factor(std::size_t id) const { return factors_.at(id); }
  std::size_t generator_count() const { return generator_factor_.size(); }
  std::size_t letter_count() const { return 2 * generator_count(); }

  std::size_t factor_index(Letter l) const {
    if (l.generator() >= generator_factor_.size()) {
      throw Error(ErrorCode::LetterOutOfRange, "letter code " + std::to_string(l.code()));
    }
    return generator_factor_[l.generator()];
  }
  const FactorSpec& factor_of(Letter l) const { return factors_[factor_index(l)]; }

  std::size_t surface_count() const {
    return static_cast<std::size_t>(std::count_if(factors_.begin(), factors_.end(), [](const FactorSpec& f) { return f.is_surface(); }));
  }
  std::size_t free_rank() const { return factors_.size() - surface_count(); }
  bool purely_free() const { return surface_count() == 0; }

  /// The relator [a_1,b_1]...[a_g,b_g] of a surface factor.
  const Word& relator(std::size_t factor_id) const {
    const FactorSpec& f = factors_.at(factor_id);
    if (!f.is_surface()) throw Error(ErrorCode::InvalidParameter, "relator requested for a free factor");
    return relators_[factor_id];
  }

  /// The two cyclic rotations of the relator or its inverse that begin with
  /// the letter `first`. Every surface letter occurs exactly once in the
  /// relator and once in its inverse.
  const std::array<Word, 2>& rotations_from(Letter first) const { return rotations_[first.code()]; }

  std::string spell(Letter l) const {
    const FactorSpec& f = factor_of(l);
    std::string s;
    if (f.is_surface()) {
      std::size_t local = l.generator() - f.first_generator;
      s.push_back(local % 2 == 0 ? 'a' : 'b');
      if (surface_count() > 1) s += std::to_string(f.ordinal) + ".";
      s += std::to_string(local / 2 + 1);
    } else if (purely_free() && generator_count() <= 26) {
      s.push_back(static_cast<char>('a' + l.generator()));
    } else {
      s = "t" + std::to_string(f.ordinal);
    }
    if (l.inverted()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
  }

  std::string spell(std::span<const Letter> w) const {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out.push_back(' ');
      out += spell(w[i]);
    }
    return out;
  }

  /// Whitespace-separated letters; "1" (or nothing) is the identity.
  Word parse_word(std::string_view text) const {
    Word out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos >= text.size()) break;
      std::size_t start = pos;
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
      std::string token(text.substr(start, pos - start));
      if (token == "1") continue;
      out.push_back(parse_letter(token, start));
    }
    return out;
  }

  std::string to_string() const {
    std::string out;
    std::size_t i = 0;
    while (i < factors_.size()) {
      if (!out.empty()) out.push_back('*');
      if (factors_[i].is_surface()) {
        out += "S" + std::to_string(factors_[i].genus);
        ++i;
      } else {
        std::size_t run = 0;
        while (i < factors_.size() && !factors_[i].is_surface()) {
          ++run;
          ++i;
        }
        out += run == 1 ? std::string("Z") : "F" + std::to_string(run);
      }
    }
    return out;
  }

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    if (a.factors_.size() != b.factors_.size()) return false;
    for (std::size_t i = 0; i < a.factors_.size(); ++i) {
      if (a.factors_[i].kind != b.factors_[i].kind || a.factors_[i].genus != b.factors_[i].genus) return false;
    }
    return true;
  }

 private:
  Letter parse_letter(const std::string& token, std::size_t column) const {
    auto fail = [&]() -> Letter {
      throw Error(ErrorCode::SyntaxError, "unknown letter '" + token + "' at column " + std::to_string(column + 1));
    };
    char head = token[0];
    bool inverted = std::isupper(static_cast<unsigned char>(head)) != 0;
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(head)));
    std::string rest = token.substr(1);
    auto all_digits = [](const std::string& s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };

    if (rest.empty()) {
      if (!purely_free()) return fail();
      std::size_t gen = static_cast<std::size_t>(lower - 'a');
      if (lower < 'a' || lower > 'z' || gen >= generator_count()) return fail();
      return Letter(gen, inverted);
    }
    if (lower == 't' && all_digits(rest)) {
      std::size_t k = std::stoul(rest);
      for (const FactorSpec& f : factors_) {
        if (!f.is_surface() && f.ordinal == k) return Letter(f.first_generator, inverted);
      }
      return fail();
    }
    if (lower == 'a' || lower == 'b') {
      std::size_t surface = 0;
      std::size_t handle = 0;
      auto dot = rest.find('.');
      if (dot == std::string::npos) {
        if (!all_digits(rest) || surface_count() != 1) return fail();
        surface = 1;
        handle = std::stoul(rest);
      } else {
        std::string s = rest.substr(0, dot);
        std::string h = rest.substr(dot + 1);
        if (!all_digits(s) || !all_digits(h)) return fail();
        surface = std::stoul(s);
        handle = std::stoul(h);
      }
      for (const FactorSpec& f : factors_) {
        if (f.is_surface() && f.ordinal == surface) {
          if (handle < 1 || handle > static_cast<std::size_t>(f.genus)) return fail();
          std::size_t local = 2 * (handle - 1) + (lower == 'b' ? 1 : 0);
          return Letter(f.first_generator + local, inverted);
        }
      }
      return fail();
    }
    return fail();
  }

  void build_relators() {
    relators_.assign(factors_.size(), Word{});
    rotations_.assign(letter_count(), std::array<Word, 2>{});
    for (const FactorSpec& f : factors_) {
      if (!f.is_surface()) continue;
      Word r;
      for (int i = 0; i < f.genus; ++i) {
        Letter a(f.first_generator + 2 * static_cast<std::size_t>(i), false);
        Letter b(f.first_generator + 2 * static_cast<std::size_t>(i) + 1, false);
        r.insert(r.end(), {a, b, a.inverse(), b.inverse()});
      }
      relators_[f.id] = r;
      Word rinv = sepstab::inverse(r);
      std::vector<std::size_t> filled(letter_count(), 0);
      for (const Word* base : {&r, &rinv}) {
        for (std::size_t k = 0; k < base->size(); ++k) {
          Word rot = rotate_left(*base, k);
          Letter first = rot.front();
          rotations_[first.code()][filled[first.code()]++] = std::move(rot);
        }
      }
    }
  }

  std::vector<FactorSpec> factors_;
  std::vector<std::size_t> generator_factor_;
  std::vector<Word> relators_;
  std::vector<std::array<Word, 2>> rotations_;
};

namespace detail {

inline void require_factor(std::span<const Letter> w, const GroupSpec& g, std::size_t factor) {
  for (Letter l : w) {
    if (g.factor_index(l) != factor) {
      throw Error(ErrorCode::MixedFactors, "letter " + g.spell(l) + " is outside factor " + std::to_string(factor));
    }
  }
}

// Finds the first position where a subword of `w` is more than half of a
// relator rotation. Returns (position, matched length, rotation).
struct DehnMatch {
  std::size_t position = 0;
  std::size_t length = 0;
  const Word* rotation = nullptr;
};

inline bool find_linear_dehn_match(const Word& w, const GroupSpec& g, DehnMatch& match) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const Word& rot : g.rotations_from(w[i])) {
      std::size_t k = 0;
      while (k < rot.size() && i + k < w.size() && w[i + k] == rot[k]) ++k;
      if (2 * k > rot.size()) {
        match = {i, k, &rot};
        return true;
      }
    }
  }
  return false;
}

inline bool find_cyclic_dehn_match(const Word& w, const GroupSpec& g, DehnMatch& match) {
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (const Word& rot : g.rotations_from(w[i])) {
      std::size_t k = 0;
      while (k < rot.size() && k < n && w[(i + k) % n] == rot[k]) ++k;
      if (2 * k > rot.size()) {
        match = {i, k, &rot};
        return true;
      }
    }
  }
  return false;
}

// Replaces w[pos, pos+len) = rot[0, len) by the inverse of rot[len, end).
inline Word splice_dehn(const Word& w, const DehnMatch& m) {
  Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m.position));
  const Word& rot = *m.rotation;
  for (std::size_t j = rot.size(); j > m.length; --j) out.push_back(rot[j - 1].inverse());
  out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(m.position + m.length), w.end());
  return free_reduce(out);
}

}  // namespace detail

/// Dehn's algorithm in a surface factor. The result is freely reduced, has
/// no subword longer than half a relator rotation, and is empty exactly when
/// the input is trivial in the factor.
inline Word dehn_reduce(std::span<const Letter> w, const GroupSpec& g, std::size_t factor) {
  detail::require_factor(w, g, factor);
  if (!g.factor(factor).is_surface()) {
    throw Error(ErrorCode::InvalidParameter, "dehn_reduce requires a surface factor");
  }
  Word cur = free_reduce(w);
  detail::DehnMatch m;
  while (detail::find_linear_dehn_match(cur, g, m)) cur = detail::splice_dehn(cur, m);
  return cur;
}

/// Reduces a word that lies in a single factor.
inline Word reduce_in_factor(std::span<const Letter> w, const GroupSpec& g, std::size_t factor) {
  if (g.factor(factor).is_surface()) return dehn_reduce(w, g, factor);
  detail::require_factor(w, g, factor);
  return free_reduce(w);
}

struct Syllable {
  std::size_t factor = 0;
  Word letters;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Linear free-product normal form; first and last syllables may share a factor.
struct NormalForm {
  std::vector<Syllable> syllables;

  Word letters() const {
    Word out;
    for (const Syllable& s : syllables) out.insert(out.end(), s.letters.begin(), s.letters.end());
    return out;
  }
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

/// Cyclic free-product normal form: cyclically adjacent syllables lie in
/// distinct factors, no syllable is trivial, and surface syllables are
/// Dehn-reduced (a lone surface syllable is cyclically Dehn-reduced).
struct CyclicNormalForm {
  std::vector<Syllable> syllables;

  Word letters() const {
    Word out;
    for (const Syllable& s : syllables) out.insert(out.end(), s.letters.begin(), s.letters.end());
    return out;
  }
  std::size_t length() const {
    std::size_t n = 0;
    for (const Syllable& s : syllables) n += s.letters.size();
    return n;
  }
  friend bool operator==(const CyclicNormalForm&, const CyclicNormalForm&) = default;
};

/// Orders elements by cyclic length, then lexicographically by letter code.
inline bool shortlex_less(std::span<const Letter> a, std::span<const Letter> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline NormalForm normal_form(std::span<const Letter> w, const GroupSpec& g) {
  NormalForm nf;
  auto& stack = nf.syllables;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t f = g.factor_index(w[i]);
    std::size_t j = i;
    while (j < w.size() && g.factor_index(w[j]) == f) ++j;
    Word run(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(j));
    i = j;
    if (!stack.empty() && stack.back().factor == f) {
      Word merged = reduce_in_factor(concat(stack.back().letters, run), g, f);
      if (merged.empty()) {
        stack.pop_back();
      } else {
        stack.back().letters = std::move(merged);
      }
    } else {
      Word reduced = reduce_in_factor(run, g, f);
      if (!reduced.empty()) stack.push_back({f, std::move(reduced)});
    }
  }
  return nf;
}

struct CyclicReduction {
  CyclicNormalForm form;
  /// conjugator^-1 * form * conjugator equals the input word.
  Word conjugator;
};

namespace detail {

inline Word least_rotation(const Word& w, std::size_t* shift = nullptr) {
  Word best = w;
  std::size_t best_k = 0;
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word r = rotate_left(w, k);
    if (r < best) {
      best = std::move(r);
      best_k = k;
    }
  }
  if (shift) *shift = best_k;
  return best;
}

}  // namespace detail

/// Conjugates w into cyclic normal form, choosing the lexicographically
/// least rotation among those starting at a syllable boundary (any letter
/// for a lone surface syllable).
inline CyclicReduction cyclic_reduce(std::span<const Letter> w, const GroupSpec& g) {
  NormalForm nf = normal_form(w, g);
  if (nf.syllables.empty()) throw Error(ErrorCode::TrivialElement, "cyclic_reduce of the identity");
  std::vector<Syllable> syl = std::move(nf.syllables);
  Word conj;  // form = conj * w * conj^-1 throughout

  // Merge the last syllable into the first while they share a factor.
  while (syl.size() >= 2 && syl.front().factor == syl.back().factor) {
    Syllable last = std::move(syl.back());
    syl.pop_back();
    conj = concat(last.letters, conj);
    Word merged = reduce_in_factor(concat(last.letters, syl.front().letters), g, last.factor);
    if (merged.empty()) {
      syl.erase(syl.begin());
    } else {
      syl.front().letters = std::move(merged);
    }
  }
  if (syl.empty()) throw Error(ErrorCode::TrivialElement, "cyclic_reduce of the identity");

  if (syl.size() == 1 && g.factor(syl.front().factor).is_surface()) {
    // Cyclic Dehn reduction of a lone surface syllable.
    Word cur = syl.front().letters;
    for (;;) {
      while (cur.size() >= 2 && cur.front() == cur.back().inverse()) {
        conj = concat(Word{cur.front().inverse()}, conj);
        cur = Word(cur.begin() + 1, cur.end() - 1);
      }
      detail::DehnMatch m;
      if (cur.empty() || !detail::find_cyclic_dehn_match(cur, g, m)) break;
      Word head(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(m.position));
      conj = concat(inverse(head), conj);
      cur = rotate_left(cur, m.position);
      m.position = 0;
      cur = detail::splice_dehn(cur, m);
    }
    if (cur.empty()) throw Error(ErrorCode::TrivialElement, "cyclic_reduce of the identity");
    std::size_t k = 0;
    Word best = detail::least_rotation(cur, &k);
    Word head(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(k));
    conj = concat(inverse(head), conj);
    syl.front().letters = std::move(best);
  } else if (syl.size() >= 2) {
    std::size_t best_k = 0;
    Word best;
    for (std::size_t k = 0; k < syl.size(); ++k) {
      Word flat;
      for (std::size_t j = 0; j < syl.size(); ++j) {
        const Word& s = syl[(k + j) % syl.size()].letters;
        flat.insert(flat.end(), s.begin(), s.end());
      }
      if (k == 0 || flat < best) {
        best = std::move(flat);
        best_k = k;
      }
    }
    Word head;
    for (std::size_t j = 0; j < best_k; ++j) head.insert(head.end(), syl[j].letters.begin(), syl[j].letters.end());
    conj = concat(inverse(head), conj);
    std::rotate(syl.begin(), syl.begin() + static_cast<std::ptrdiff_t>(best_k), syl.end());
  }

  CyclicReduction out;
  out.form.syllables = std::move(syl);
  out.conjugator = free_reduce(conj);
  return out;
}

/// Canonical representative of the conjugacy class of w.
inline CyclicNormalForm canonical_form(std::span<const Letter> w, const GroupSpec& g) {
  return cyclic_reduce(w, g).form;
}

/// Checks the CyclicNormalForm invariants.
inline bool is_cyclic_normal_form(const CyclicNormalForm& f, const GroupSpec& g) {
  const auto& s = f.syllables;
  if (s.empty()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].letters.empty()) return false;
    for (Letter l : s[i].letters) {
      if (l.generator() >= g.generator_count() || g.factor_index(l) != s[i].factor) return false;
    }
    if (s.size() > 1 && s[i].factor == s[(i + 1) % s.size()].factor) return false;
    if (reduce_in_factor(s[i].letters, g, s[i].factor) != s[i].letters) return false;
  }
  if (s.size() == 1) {
    const Word& w = s.front().letters;
    if (w.size() >= 2 && w.front() == w.back().inverse()) return false;
    if (g.factor(s.front().factor).is_surface()) {
      detail::DehnMatch m;
      if (detail::find_cyclic_dehn_match(w, g, m)) return false;
    }
  }
  return true;
}

/// Calls visit(form) once per canonical conjugacy representative of cyclic
/// length 1..max_len, in shortlex order of the representative's letters.
template <class Visitor>
void for_each_element(const GroupSpec& g, std::size_t max_len, Visitor&& visit) {
  const std::uint32_t letters = static_cast<std::uint32_t>(g.letter_count());
  Word w;
  for (std::size_t n = 1; n <= max_len; ++n) {
    w.assign(n, Letter{});
    // Iterative DFS over freely reduced words of length n.
    std::vector<std::uint32_t> next(n, 0);
    std::size_t depth = 0;
    while (true) {
      if (next[depth] >= letters) {
        if (depth == 0) break;
        next[depth] = 0;
        --depth;
        continue;
      }
      Letter l = Letter::from_code(next[depth]++);
      if (depth > 0 && l == w[depth - 1].inverse()) continue;
      w[depth] = l;
      if (depth + 1 < n) {
        ++depth;
        continue;
      }
      if (n > 1 && w.back() == w.front().inverse()) continue;
      CyclicNormalForm f = canonical_form(w, g);
      if (f.length() == n && f.letters() == w) visit(f);
    }
  }
}

inline std::vector<CyclicNormalForm> enumerate_elements(const GroupSpec& g, std::size_t max_len) {
  if (max_len < 1) throw Error(ErrorCode::InvalidParameter, "max_len must be >= 1");
  std::vector<CyclicNormalForm> out;
  for_each_element(g, max_len, [&](const CyclicNormalForm& f) { out.push_back(f); });
  return out;
}

/// Shortest period of the cyclic syllable sequence (letter sequence for a
/// lone syllable); the result generates the maximal cyclic subgroup
/// containing the element whenever the spelling is periodic.
inline CyclicNormalForm primitive_root(const CyclicNormalForm& f) {
  if (f.syllables.size() == 1) {
    const Word& w = f.syllables.front().letters;
    for (std::size_t p = 1; p <= w.size(); ++p) {
      if (w.size() % p != 0) continue;
      if (rotate_left(w, p) == w) {
        CyclicNormalForm r;
        r.syllables.push_back({f.syllables.front().factor, Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p))});
        return r;
      }
    }
    return f;
  }
  const std::size_t n = f.syllables.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = 0; i < n && periodic; ++i) periodic = f.syllables[i] == f.syllables[(i + p) % n];
    if (periodic) {
      CyclicNormalForm r;
      r.syllables.assign(f.syllables.begin(), f.syllables.begin() + static_cast<std::ptrdiff_t>(p));
      return r;
    }
  }
  return f;
}

}  // namespace sepstab
