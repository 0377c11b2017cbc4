#pragma once

// Brute-force reference for the effort table. Deliberately naive: no shared
// code with the library beyond the Catalog value type, int64 fractions only.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ccost/catalog.hpp"

namespace ccost::testing {

struct OracleRow {
  std::string requirement;
  std::int64_t group_id;
  std::int64_t ct;
  std::int64_t ct_max;
  std::int64_t ie_num;  // reduced
  std::int64_t ie_den;
};

inline std::vector<OracleRow> oracle_effort_table(const Catalog& catalog) {
  std::vector<OracleRow> rows;
  for (const auto& g : catalog.groups) {
    std::int64_t ct = 0;
    for (std::size_t i = 0; i < g.controls.size(); ++i) ct += 1;  // every control weighs 1
    std::int64_t ct_max = 0;
    for (const auto& other : catalog.groups) {
      if (other.requirement != g.requirement) continue;
      std::int64_t n = 0;
      for (std::size_t i = 0; i < other.controls.size(); ++i) n += 1;
      if (n > ct_max) ct_max = n;
    }
    const std::int64_t d = std::gcd(ct, ct_max);
    rows.push_back({g.requirement, g.group_id, ct, ct_max, ct / d, ct_max / d});
  }
  // insertion sort by (requirement, group_id)
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      const auto& a = rows[j - 1];
      const auto& b = rows[j];
      const bool out_of_order =
          a.requirement > b.requirement || (a.requirement == b.requirement && a.group_id > b.group_id);
      if (!out_of_order) break;
      std::swap(rows[j - 1], rows[j]);
    }
  }
  return rows;
}

/// Two-decimal rounding of n/d (half away from zero) via integer arithmetic.
inline std::string oracle_fixed2(std::int64_t n, std::int64_t d) {
  const std::int64_t scaled = n * 100;
  std::int64_t q = scaled / d;
  if ((scaled % d) * 2 >= d) ++q;
  std::string frac = std::to_string(q % 100);
  if (frac.size() < 2) frac = "0" + frac;
  return std::to_string(q / 100) + "." + frac;
}

}  // namespace ccost::testing
