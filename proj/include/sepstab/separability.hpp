#pragma once

// Separability: complete in free groups by Whitehead's algorithm, one-sided
// in mixed free products (visible factor or graph certificate).

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sepstab/group.hpp"
#include "sepstab/whitehead.hpp"

namespace sepstab {

/// Automorphism of a free group on generators 0..rank-1, given by the image
/// of each generator.
struct WhiteheadMove {
  enum class Kind { Permutation, TypeII };
  Kind kind = Kind::Permutation;
  std::vector<Word> images;
  // Type II data: multiplier letter a and the subset Z (by letter code).
  Letter multiplier;
  std::vector<bool> subset;

  std::size_t rank() const { return images.size(); }

  Word apply(std::span<const Letter> w) const {
    Word out;
    for (Letter l : w) {
      const Word& img = images.at(l.generator());
      if (l.inverted()) {
        Word inv = inverse(img);
        out.insert(out.end(), inv.begin(), inv.end());
      } else {
        out.insert(out.end(), img.begin(), img.end());
      }
    }
    return free_reduce(out);
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i] != Word{Letter(i, false)}) return false;
    }
    return true;
  }

  std::string describe(const GroupSpec& g) const {
    std::string out = kind == Kind::Permutation ? "perm" : "move(" + g.spell(multiplier) + ";";
    if (kind == Kind::TypeII) {
      bool first = true;
      for (std::uint32_t c = 0; c < subset.size(); ++c) {
        if (!subset[c]) continue;
        out += (first ? "" : ",") + g.spell(Letter::from_code(c));
        first = false;
      }
      out += ")";
    }
    out += " [";
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (i) out += ", ";
      out += g.spell(Letter(i, false)) + "->" + g.spell(images[i]);
    }
    return out + "]";
  }
};

/// Type II move (a, Z) with a in Z and a^-1 not in Z. A generator x other
/// than a^{+-1} gains a trailing a when x is in Z and a leading a^-1 when
/// x^-1 is in Z.
inline WhiteheadMove type_two_move(std::size_t rank, Letter a, const std::vector<bool>& subset) {
  WhiteheadMove m;
  m.kind = WhiteheadMove::Kind::TypeII;
  m.multiplier = a;
  m.subset = subset;
  for (std::size_t i = 0; i < rank; ++i) {
    Letter x(i, false);
    Word img{x};
    if (i != a.generator()) {
      if (subset[x.code()]) img.push_back(a);
      if (subset[x.inverse().code()]) img.insert(img.begin(), a.inverse());
    }
    m.images.push_back(std::move(img));
  }
  return m;
}

/// Inverse of the Type II move (a, Z) is (a^-1, Z - a + a^-1).
inline WhiteheadMove inverse_move(const WhiteheadMove& m) {
  if (m.kind == WhiteheadMove::Kind::TypeII) {
    std::vector<bool> z = m.subset;
    z[m.multiplier.code()] = false;
    z[m.multiplier.inverse().code()] = true;
    return type_two_move(m.rank(), m.multiplier.inverse(), z);
  }
  // Signed permutation: invert the letter map.
  WhiteheadMove inv;
  inv.images.assign(m.rank(), Word{});
  for (std::size_t i = 0; i < m.rank(); ++i) {
    Letter img = m.images[i].front();
    inv.images[img.generator()] = Word{Letter(i, img.inverted())};
  }
  return inv;
}

/// Every signed permutation followed by every Type II move, in a fixed
/// order. Permutations come first, starting with the identity.
inline std::vector<WhiteheadMove> whitehead_moves(std::size_t rank) {
  if (rank < 2) throw Error(ErrorCode::InvalidParameter, "whitehead moves need rank >= 2");
  std::vector<WhiteheadMove> out;
  std::vector<std::size_t> perm(rank);
  for (std::size_t i = 0; i < rank; ++i) perm[i] = i;
  do {
    for (std::size_t signs = 0; signs < (std::size_t{1} << rank); ++signs) {
      WhiteheadMove m;
      for (std::size_t i = 0; i < rank; ++i) m.images.push_back(Word{Letter(perm[i], ((signs >> i) & 1u) != 0)});
      out.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  const std::size_t letters = 2 * rank;
  for (std::uint32_t ac = 0; ac < letters; ++ac) {
    Letter a = Letter::from_code(ac);
    std::vector<std::uint32_t> free_letters;
    for (std::uint32_t c = 0; c < letters; ++c) {
      if (c != ac && c != (ac ^ 1u)) free_letters.push_back(c);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << free_letters.size()); ++mask) {
      std::vector<bool> z(letters, false);
      z[ac] = true;
      for (std::size_t k = 0; k < free_letters.size(); ++k) {
        if ((mask >> k) & 1u) z[free_letters[k]] = true;
      }
      out.push_back(type_two_move(rank, a, z));
    }
  }
  return out;
}

inline std::vector<WhiteheadMove> type_two_moves(std::size_t rank) {
  std::vector<WhiteheadMove> out;
  for (WhiteheadMove& m : whitehead_moves(rank)) {
    if (m.kind == WhiteheadMove::Kind::TypeII && !m.is_identity()) out.push_back(std::move(m));
  }
  return out;
}

namespace detail {

inline void require_free(const GroupSpec& g) {
  if (!g.purely_free()) throw Error(ErrorCode::NotFreeGroup, "expected a free group, got " + g.to_string());
}

/// Cyclic word of a free-group element: least rotation of the cyclically
/// reduced word.
inline Word cyclic_word(std::span<const Letter> w, const GroupSpec& g) { return canonical_form(w, g).letters(); }

}  // namespace detail

struct PeakReduction {
  Word minimal;                      // cyclic word of minimal length
  std::vector<WhiteheadMove> moves;  // applied in order
};

/// Greedy descent: apply the first length-decreasing Type II move (fixed
/// order) until none exists.
inline PeakReduction peak_reduce(std::span<const Letter> w, const GroupSpec& g) {
  detail::require_free(g);
  PeakReduction out;
  out.minimal = detail::cyclic_word(w, g);
  const std::vector<WhiteheadMove> moves = type_two_moves(g.generator_count());
  bool improved = true;
  while (improved && out.minimal.size() > 1) {
    improved = false;
    for (const WhiteheadMove& m : moves) {
      Word next = detail::cyclic_word(m.apply(out.minimal), g);
      if (next.size() < out.minimal.size()) {
        out.minimal = std::move(next);
        out.moves.push_back(m);
        improved = true;
        break;
      }
    }
  }
  return out;
}

enum class Separability { Separable, NotSeparable, Unknown };

inline const char* to_string(Separability s) {
  switch (s) {
    case Separability::Separable: return "Separable";
    case Separability::NotSeparable: return "NotSeparable";
    case Separability::Unknown: return "Unknown";
  }
  return "?";
}

struct SeparabilityVerdict {
  Separability status = Separability::Unknown;
  CyclicNormalForm form;  // cyclic normal form of the input
  // Separable: automorphisms (free case) taking the input to `image`, which
  // omits `omitted_factor`.
  std::vector<WhiteheadMove> moves;
  Word image;
  std::optional<std::size_t> omitted_factor;
  // NotSeparable: the certifying graph.
  std::optional<WhiteheadGraph> certificate;
};

namespace detail {

inline std::optional<std::size_t> omitted_factor(std::span<const Letter> w, const GroupSpec& g) {
  std::vector<bool> used(g.factors().size(), false);
  for (Letter l : w) used[g.factor_index(l)] = true;
  for (std::size_t f = 0; f < used.size(); ++f) {
    if (!used[f]) return f;
  }
  return std::nullopt;
}

}  // namespace detail

/// Complete decision in a free group: separable iff some cyclic word of
/// minimal length in the Aut(F)-orbit omits a generator. The minimal level
/// set is explored breadth-first with length-preserving Type II moves;
/// permutations never change which generators occur, so they are not needed.
inline SeparabilityVerdict is_separable_free(std::span<const Letter> w, const GroupSpec& g) {
  detail::require_free(g);
  SeparabilityVerdict v;
  v.form = canonical_form(w, g);  // throws TrivialElement
  const Word start = v.form.letters();
  PeakReduction peak = peak_reduce(start, g);

  const std::vector<WhiteheadMove> moves = type_two_moves(g.generator_count());
  std::map<Word, std::pair<Word, std::size_t>> parent;  // word -> (previous, move index)
  std::deque<Word> queue{peak.minimal};
  parent.emplace(peak.minimal, std::make_pair(Word{}, moves.size()));
  std::optional<Word> found;
  while (!queue.empty()) {
    Word cur = std::move(queue.front());
    queue.pop_front();
    if (detail::omitted_factor(cur, g)) {
      found = cur;
      break;
    }
    for (std::size_t i = 0; i < moves.size(); ++i) {
      Word next = detail::cyclic_word(moves[i].apply(cur), g);
      if (next.size() != cur.size() || parent.count(next)) continue;
      parent.emplace(next, std::make_pair(cur, i));
      queue.push_back(std::move(next));
    }
  }
  if (!found) {
    v.status = Separability::NotSeparable;
    v.certificate = whitehead_graph_combinatorial(canonical_form(peak.minimal, g), g);
    return v;
  }
  v.status = Separability::Separable;
  v.moves = peak.moves;
  std::vector<WhiteheadMove> tail;
  for (Word cur = *found; parent.at(cur).second != moves.size(); cur = parent.at(cur).first) {
    tail.push_back(moves[parent.at(cur).second]);
  }
  v.moves.insert(v.moves.end(), tail.rbegin(), tail.rend());
  Word image = start;
  for (const WhiteheadMove& m : v.moves) image = detail::cyclic_word(m.apply(image), g);
  v.image = image;
  v.omitted_factor = detail::omitted_factor(image, g);
  return v;
}

/// One-sided decision in a general free product.
inline SeparabilityVerdict is_separable(std::span<const Letter> w, const GroupSpec& g) {
  if (g.purely_free()) return is_separable_free(w, g);
  SeparabilityVerdict v;
  v.form = canonical_form(w, g);
  const Word letters = v.form.letters();
  if (auto f = detail::omitted_factor(letters, g)) {
    v.status = Separability::Separable;
    v.image = letters;
    v.omitted_factor = f;
    return v;
  }
  WhiteheadGraph wh = whitehead_graph_combinatorial(v.form, g);
  if (certifies_nonseparable(wh)) {
    v.status = Separability::NotSeparable;
    v.certificate = std::move(wh);
  }
  return v;
}

}  // namespace sepstab
