#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace featsel {

/// Shortest decimal string that round-trips the exact double.
std::string format_double(double value);

/// Ordered flat key-value report ("key = value" lines, dotted keys for
/// nesting). Unset optionals render as "undefined". Reports never embed
/// filesystem paths, so fixed-seed reruns are byte-identical regardless of
/// where the output lands.
class KvReport {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const char* value);
  void add(const std::string& key, double value);
  void add(const std::string& key, int value);
  void add(const std::string& key, std::uint64_t value);
  void add(const std::string& key, std::optional<double> value);
  void add_list(const std::string& key, std::span<const int> values);
  void add_list(const std::string& key, std::span<const std::string> values);
  void add_list(const std::string& key, std::span<const double> values);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

/// Writes to a temp file in the target directory and renames into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

}  // namespace featsel
