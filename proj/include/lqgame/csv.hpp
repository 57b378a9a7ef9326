#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "lqgame/errors.hpp"

namespace lqgame {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// A CSV cell: numbers are formatted with format_double, integers verbatim,
/// booleans as true/false.
class CsvField {
 public:
  CsvField(double v) : text_(format_double(v)) {}  // NOLINT
  CsvField(bool v) : text_(v ? "true" : "false") {}  // NOLINT
  CsvField(int v) : text_(std::to_string(v)) {}    // NOLINT
  CsvField(unsigned v) : text_(std::to_string(v)) {}  // NOLINT
  CsvField(long v) : text_(std::to_string(v)) {}   // NOLINT
  CsvField(unsigned long v) : text_(std::to_string(v)) {}  // NOLINT
  CsvField(unsigned long long v) : text_(std::to_string(v)) {}  // NOLINT
  CsvField(long long v) : text_(std::to_string(v)) {}  // NOLINT
  CsvField(std::string_view s) : text_(s) {}  // NOLINT
  CsvField(const char* s) : text_(s) {}       // NOLINT

  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

/// Comma-separated writer with '\n' line endings. Throws IoError.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path,
            std::initializer_list<std::string_view> header);

  void row(std::initializer_list<CsvField> fields);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
};

/// "key: value" lines. Throws IoError.
class KeyValueWriter {
 public:
  explicit KeyValueWriter(const std::filesystem::path& path);

  void put(std::string_view key, const CsvField& value);
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace lqgame
