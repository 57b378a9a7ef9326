#include "lqgame/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace lqgame {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::initializer_list<std::string_view> header)
    : path_(path), out_(open_for_write(path)), columns_(header.size()) {
  bool first = true;
  for (std::string_view h : header) {
    if (!first) out_ << ',';
    out_ << h;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<CsvField> fields) {
  if (fields.size() != columns_) {
    throw IoError(path_.string() + ": row has " + std::to_string(fields.size()) +
                  " fields, header has " + std::to_string(columns_));
  }
  bool first = true;
  for (const CsvField& f : fields) {
    if (!first) out_ << ',';
    out_ << f.text();
    first = false;
  }
  out_ << '\n';
  if (!out_) throw IoError("write failed: " + path_.string());
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw IoError("close failed: " + path_.string());
}

KeyValueWriter::KeyValueWriter(const std::filesystem::path& path)
    : path_(path), out_(open_for_write(path)) {}

void KeyValueWriter::put(std::string_view key, const CsvField& value) {
  out_ << key << ": " << value.text() << '\n';
  if (!out_) throw IoError("write failed: " + path_.string());
}

void KeyValueWriter::close() {
  out_.close();
  if (!out_) throw IoError("close failed: " + path_.string());
}

}  // namespace lqgame
