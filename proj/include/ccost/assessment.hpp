#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ccost/ratio.hpp"

namespace ccost {

/// Applicability of a candidate solution to one control group.
enum class Rating { none, partial, full };

/// Points per rating: full 1, partial 1/2, none 0.
Ratio rating_weight(Rating rating);

std::string_view rating_name(Rating rating);
std::optional<Rating> parse_rating(std::string_view token);

/// (requirement id, group_id); rendered as "REQ/group_id".
struct GroupKey {
  std::string requirement;
  std::int64_t group_id = 0;

  friend auto operator<=>(const GroupKey&, const GroupKey&) = default;
  friend bool operator==(const GroupKey&, const GroupKey&) = default;

  std::string str() const;
  /// Parses "REQ/n" with n a positive decimal integer.
  static std::optional<GroupKey> parse(std::string_view text);
};

struct Assessment {
  std::string subject;
  std::string catalog_name;
  std::string catalog_fingerprint;
  std::map<GroupKey, Rating> ratings;  // unrated groups count as Rating::none

  friend bool operator==(const Assessment&, const Assessment&) = default;

  Rating rating_of(const GroupKey& key) const;
};

class FingerprintMismatchError : public std::runtime_error {
 public:
  FingerprintMismatchError(const std::string& expected, const std::string& actual)
      : std::runtime_error("assessment is bound to catalog " + actual +
                           " but the loaded catalog is " + expected) {}
};

class UnknownGroupError : public std::out_of_range {
 public:
  explicit UnknownGroupError(const std::string& key)
      : std::out_of_range("unknown control group: " + key), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace ccost
