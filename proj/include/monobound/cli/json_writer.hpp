#pragma once

#include <span>
#include <string>
#include <string_view>

namespace monobound::cli {

/// 17 significant digits ("%.17g"), which round-trips every double.
/// Non-finite values render as null.
std::string format_number(double v);

std::string json_string(std::string_view s);
std::string json_array(std::span<const double> values);

/// Builds a single-line JSON object with fields in insertion order.
class JsonObject {
 public:
  JsonObject& number(std::string_view key, double v);
  JsonObject& integer(std::string_view key, long long v);
  JsonObject& string(std::string_view key, std::string_view v);
  JsonObject& boolean(std::string_view key, bool v);
  JsonObject& null(std::string_view key);
  /// `json` must already be valid JSON text.
  JsonObject& raw(std::string_view key, std::string_view json);

  std::string str() const { return "{" + body_ + "}"; }

 private:
  void key(std::string_view k);
  std::string body_;
};

}  // namespace monobound::cli
