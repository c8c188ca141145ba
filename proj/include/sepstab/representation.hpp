#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sepstab/group.hpp"
#include "sepstab/moebius.hpp"

namespace sepstab {

/// Assignment of a PSL(2,C) element to every generator of a GroupSpec.
/// Discreteness and faithfulness are not assumed.
class Representation {
 public:
  Representation(GroupSpec group, std::vector<MoebiusMap> images)
      : group_(std::move(group)), images_(std::move(images)) {
    if (images_.size() != group_.generator_count()) {
      throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(group_.generator_count()) +
                                                    " generator images, got " + std::to_string(images_.size()));
    }
    letter_images_.reserve(group_.letter_count());
    for (MoebiusMap& m : images_) {
      // Leave already-unimodular entries bit-identical so files round-trip;
      // the determinant of large entries carries rounding of order |ad|.
      const double size = std::abs(m.a() * m.d()) + std::abs(m.b() * m.c());
      if (std::abs(m.det() - 1.0) > 1e-14 * std::max(1.0, size)) m = m.normalized();
      letter_images_.push_back(m);
      letter_images_.push_back(m.inverse());
    }
    for (const FactorSpec& f : group_.factors()) {
      if (f.is_surface()) residuals_.push_back(distance_from_identity(evaluate(group_.relator(f.id))));
    }
  }

  const GroupSpec& group() const { return group_; }
  const std::vector<MoebiusMap>& images() const { return images_; }

  const MoebiusMap& image(Letter l) const {
    if (l.code() >= letter_images_.size()) {
      throw Error(ErrorCode::LetterOutOfRange, "letter code " + std::to_string(l.code()));
    }
    return letter_images_[l.code()];
  }

  /// Relator residuals, one per surface factor in factor order.
  const std::vector<double>& residuals() const { return residuals_; }

  /// Ordered product of generator images, renormalising the determinant
  /// every 16 multiplications.
  MoebiusMap evaluate(std::span<const Letter> w) const {
    MoebiusMap m = MoebiusMap::identity();
    std::size_t since = 0;
    for (Letter l : w) {
      m = m * image(l);
      if (++since == 16) {
        m = m.renormalized();
        since = 0;
      }
    }
    return m;
  }

  /// h rho h^-1.
  Representation conjugated(const MoebiusMap& h) const {
    MoebiusMap hn = h.normalized();
    MoebiusMap hinv = hn.inverse();
    std::vector<MoebiusMap> out;
    out.reserve(images_.size());
    for (const MoebiusMap& m : images_) out.push_back(hn * m * hinv);
    return Representation(group_, std::move(out));
  }

 private:
  GroupSpec group_;
  std::vector<MoebiusMap> images_;
  std::vector<MoebiusMap> letter_images_;
  std::vector<double> residuals_;
};

inline MoebiusMap evaluate(const Representation& rho, std::span<const Letter> w) { return rho.evaluate(w); }

}  // namespace sepstab
