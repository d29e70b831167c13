#include "orlab/spec_string.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "orlab/errors.hpp"

namespace orlab {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

double parse_fraction(const std::string& s) {
  // accepts "1/3" in addition to plain decimals
  if (auto slash = s.find('/'); slash != std::string::npos) {
    char* end1 = nullptr;
    char* end2 = nullptr;
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    double num = std::strtod(a.c_str(), &end1);
    double den = std::strtod(b.c_str(), &end2);
    if (*end1 != '\0' || *end2 != '\0' || a.empty() || b.empty() || den == 0.0)
      throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
    return num / den;
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') throw Error(ErrorKind::ParseError, "bad number '" + s + "'");
  return v;
}

}  // namespace

SpecString SpecString::parse(std::string_view text) {
  SpecString out;
  auto colon = text.find(':');
  out.name = trim(text.substr(0, colon));
  if (out.name.empty()) throw Error(ErrorKind::ParseError, "empty spec '" + std::string(text) + "'");
  if (colon == std::string_view::npos) return out;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ParseError, "expected key=value in '" + std::string(text) + "'");
    out.params[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  return out;
}

double SpecString::number(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorKind::ParseError, "missing parameter '" + key + "' in " + name);
  return parse_fraction(it->second);
}

double SpecString::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

std::string SpecString::text(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorKind::ParseError, "missing parameter '" + key + "' in " + name);
  return it->second;
}

void SpecString::allow_only(std::initializer_list<std::string_view> keys) const {
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (auto a : keys) ok = ok || a == k;
    if (!ok) throw Error(ErrorKind::UnknownKey, "unknown parameter '" + k + "' for " + name);
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace orlab
