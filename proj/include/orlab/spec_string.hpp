#pragma once

#include <map>
#include <string>
#include <string_view>

namespace orlab {

/// A parsed `name:key=value,key=value` string.
struct SpecString {
  std::string name;
  std::map<std::string, std::string> params;

  static SpecString parse(std::string_view text);

  bool has(const std::string& key) const { return params.count(key) != 0; }
  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::string text(const std::string& key) const;
  /// Throws UnknownKey if any parameter is not in the allowed list.
  void allow_only(std::initializer_list<std::string_view> keys) const;
};

/// Shortest round-trip decimal representation.
std::string format_number(double v);

}  // namespace orlab
