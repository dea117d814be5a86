#include "featsel/report.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "featsel/error.hpp"

namespace featsel {

std::string format_double(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) fail(errc::numeric, "cannot format value");
  return std::string(buffer, ptr);
}

void KvReport::add(const std::string& key, const std::string& value) {
  lines_.emplace_back(key, value);
}

void KvReport::add(const std::string& key, const char* value) {
  lines_.emplace_back(key, std::string(value));
}

void KvReport::add(const std::string& key, double value) {
  lines_.emplace_back(key, format_double(value));
}

void KvReport::add(const std::string& key, int value) {
  lines_.emplace_back(key, std::to_string(value));
}

void KvReport::add(const std::string& key, std::uint64_t value) {
  lines_.emplace_back(key, std::to_string(value));
}

void KvReport::add(const std::string& key, std::optional<double> value) {
  lines_.emplace_back(key, value ? format_double(*value) : "undefined");
}

void KvReport::add_list(const std::string& key, std::span<const int> values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) joined += ',';
    joined += std::to_string(values[i]);
  }
  lines_.emplace_back(key, std::move(joined));
}

void KvReport::add_list(const std::string& key, std::span<const std::string> values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) joined += ',';
    joined += values[i];
  }
  lines_.emplace_back(key, std::move(joined));
}

void KvReport::add_list(const std::string& key, std::span<const double> values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) joined += ',';
    joined += format_double(values[i]);
  }
  lines_.emplace_back(key, std::move(joined));
}

std::string KvReport::str() const {
  std::string out;
  for (const auto& [key, value] : lines_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(errc::io, "cannot write file: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) fail(errc::io, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(errc::io, "cannot move " + tmp.string() + " into place: " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io, "cannot open file: " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

}  // namespace featsel
