#pragma once

// One-parameter representation families and grid sweeps over them.

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sepstab/csv.hpp"
#include "sepstab/gallery.hpp"
#include "sepstab/stability.hpp"

namespace sepstab {

struct Family {
  std::string name;
  std::string parameter;
  std::function<Representation(double)> build;
};

/// a = diag(lambda, 1/lambda) with b fixed as in schottky2.
inline Family schottky_lambda_family() {
  return {"schottky-lambda", "lambda", [](double lambda) {
            if (!std::isfinite(lambda) || lambda == 0.0) {
              throw Error(ErrorCode::InvalidParameter, "lambda must be finite and nonzero");
            }
            MoebiusMap a = MoebiusMap::diagonal(lambda);
            if (a.is_identity()) throw Error(ErrorCode::InvalidParameter, "degenerate generator: a is the identity");
            return Representation(GroupSpec::free(2), {a, gallery::schottky_b()});
          }};
}

inline Family find_family(std::string_view name) {
  if (name == "schottky-lambda") return schottky_lambda_family();
  throw Error(ErrorCode::InvalidParameter, "unknown family '" + std::string(name) + "'");
}

/// "start:stop:step" (inclusive, step > 0) or a comma-separated list; empty
/// text is the empty grid.
inline std::vector<double> parse_grid(std::string_view text) {
  auto number = [&](std::string_view s) {
    std::string t(s);
    char* end = nullptr;
    double x = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(x)) {
      throw Error(ErrorCode::SyntaxError, "bad grid value '" + t + "'");
    }
    return x;
  };
  std::vector<double> out;
  if (text.empty()) return out;
  if (text.find(':') != std::string_view::npos) {
    std::size_t c1 = text.find(':');
    std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
      throw Error(ErrorCode::SyntaxError, "grid ranges are start:stop:step");
    }
    double start = number(text.substr(0, c1));
    double stop = number(text.substr(c1 + 1, c2 - c1 - 1));
    double step = number(text.substr(c2 + 1));
    if (!(step > 0.0)) throw Error(ErrorCode::InvalidParameter, "grid step must be positive");
    // Index-based stepping avoids accumulating rounding error.
    for (std::size_t i = 0;; ++i) {
      double x = start + static_cast<double>(i) * step;
      if (x > stop + 1e-9 * step) break;
      out.push_back(x);
    }
    return out;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    out.push_back(number(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

struct SweepRow {
  double parameter = 0.0;
  std::optional<StabilityReport> report;
  std::string error;
};

inline std::vector<SweepRow> sweep(const Family& family, const std::vector<double>& grid, const StabilityParams& params) {
  std::vector<SweepRow> rows;
  for (double x : grid) {
    SweepRow row;
    row.parameter = x;
    try {
      row.report = stability_margin(family.build(x), params);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& os, const Family& family, const std::vector<SweepRow>& rows) {
  write_csv_row(os, {family.parameter, "margin", "k_est", "a_est", "verdict", "error"});
  for (const SweepRow& r : rows) {
    if (r.report) {
      write_csv_row(os, {format_double(r.parameter, 12), format_double(r.report->margin, 12),
                         format_double(r.report->k_est, 12), format_double(r.report->a_est, 12),
                         to_string(r.report->verdict), ""});
    } else {
      write_csv_row(os, {format_double(r.parameter, 12), "", "", "", "error", r.error});
    }
  }
}

}  // namespace sepstab
