#include "featsel/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <unordered_set>

#include "featsel/error.hpp"
#include "featsel/report.hpp"

namespace featsel {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

bool parse_full_double(std::string_view field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

bool parse_full_int(std::string_view field, long& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && !field.empty();
}

bool skippable(std::string_view line) {
  auto t = trim(line);
  return t.empty() || t.front() == '#';
}

}  // namespace

void ProvenanceManifest::validate() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& [prefix, tag] = entries[i];
    if (prefix.empty()) fail(errc::schema, "manifest prefix must be non-empty");
    if (tag.empty()) fail(errc::schema, "manifest tag must be non-empty for prefix '" + prefix + "'");
    for (std::size_t j = 0; j < i; ++j) {
      const auto& other = entries[j].first;
      if (prefix.starts_with(other) || other.starts_with(prefix)) {
        fail(errc::schema, "manifest prefixes overlap: '" + other + "' and '" + prefix + "'");
      }
    }
  }
}

ProvenanceManifest ProvenanceManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open manifest file: " + path.string());
  ProvenanceManifest manifest;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::string_view view = trim(line);
    std::size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      fail(errc::parse, path.string() + ": line " + std::to_string(line_no) +
                            ": expected 'prefix = tag'");
    }
    manifest.entries.emplace_back(std::string(trim(view.substr(0, eq))),
                                  std::string(trim(view.substr(eq + 1))));
  }
  manifest.validate();
  return manifest;
}

std::string ProvenanceManifest::tag_for(std::string_view feature_name) const {
  const std::string* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [prefix, tag] : entries) {
    if (feature_name.starts_with(prefix) && prefix.size() >= best_len) {
      best = &tag;
      best_len = prefix.size();
    }
  }
  return best ? *best : "unknown";
}

LabeledDataset::LabeledDataset(std::vector<double> columns, int rows,
                               std::vector<int> labels, int class_count,
                               std::vector<std::string> feature_names,
                               std::vector<std::string> provenance)
    : columns_(std::move(columns)),
      labels_(std::move(labels)),
      feature_names_(std::move(feature_names)),
      provenance_(std::move(provenance)),
      rows_(rows) {
  cols_ = static_cast<int>(feature_names_.size());
  class_count_ = class_count;

  if (rows_ < 1) fail(errc::schema, "dataset must have at least one sample row");
  if (class_count_ < 2) {
    fail(errc::label, "class count must be at least 2, got " + std::to_string(class_count_));
  }
  if (static_cast<int>(labels_.size()) != rows_) {
    fail(errc::align, "label count " + std::to_string(labels_.size()) +
                          " does not match row count " + std::to_string(rows_));
  }
  if (columns_.size() != static_cast<std::size_t>(rows_) * cols_) {
    fail(errc::schema, "feature buffer size does not match rows * cols");
  }
  if (provenance_.size() != feature_names_.size()) {
    fail(errc::schema, "provenance tag count does not match feature count");
  }
  for (int i = 0; i < rows_; ++i) {
    if (labels_[i] < 0 || labels_[i] >= class_count_) {
      fail(errc::label, "label " + std::to_string(labels_[i]) + " at row " +
                            std::to_string(i + 1) + " outside [0, " +
                            std::to_string(class_count_) + ")");
    }
  }
  for (double v : columns_) {
    if (!std::isfinite(v)) fail(errc::parse, "non-finite feature value in dataset");
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& name : feature_names_) {
    if (name.empty()) fail(errc::schema, "empty feature name");
    if (!seen.insert(name).second) fail(errc::schema, "duplicate feature name: " + name);
  }
  class_names_.reserve(class_count_);
  for (int c = 0; c < class_count_; ++c) class_names_.push_back(std::to_string(c));
}

std::span<const double> LabeledDataset::column(int j) const {
  if (j < 0 || j >= cols_) {
    fail(errc::index, "feature index " + std::to_string(j) + " outside [0, " +
                          std::to_string(cols_) + ")");
  }
  return {columns_.data() + static_cast<std::size_t>(j) * rows_,
          static_cast<std::size_t>(rows_)};
}

LabeledDataset load_dataset(const std::filesystem::path& path,
                            const ProvenanceManifest& manifest,
                            std::optional<int> class_count_override) {
  manifest.validate();
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open dataset file: " + path.string());
  const std::string where = path.string();

  std::string line;
  std::vector<std::string_view> header;
  std::string header_line;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    header_line = line;
    header = split_fields(header_line);
    break;
  }
  if (header.empty()) fail(errc::schema, where + ": missing header line");

  int label_col = -1;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "label") {
      if (label_col >= 0) fail(errc::schema, where + ": more than one label column");
      label_col = static_cast<int>(i);
    } else {
      names.emplace_back(header[i]);
    }
  }
  if (label_col < 0) fail(errc::schema, where + ": no label column in header");
  if (names.empty()) fail(errc::schema, where + ": no feature columns in header");

  const int field_count = static_cast<int>(header.size());
  const int d = field_count - 1;
  std::vector<std::vector<double>> cols(d);
  std::vector<int> labels;
  int row_no = 0;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    ++row_no;
    auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) != field_count) {
      fail(errc::parse, where + ": row " + std::to_string(row_no) + " has " +
                            std::to_string(fields.size()) + " fields, expected " +
                            std::to_string(field_count));
    }
    int feature_idx = 0;
    for (int f = 0; f < field_count; ++f) {
      if (f == label_col) {
        long label = 0;
        if (!parse_full_int(fields[f], label) || label < 0) {
          fail(errc::label, where + ": row " + std::to_string(row_no) +
                                ": label must be a non-negative integer, got '" +
                                std::string(fields[f]) + "'");
        }
        labels.push_back(static_cast<int>(label));
      } else {
        double value = 0.0;
        if (!parse_full_double(fields[f], value)) {
          fail(errc::parse, where + ": row " + std::to_string(row_no) +
                                ": non-numeric feature value '" + std::string(fields[f]) + "'");
        }
        if (!std::isfinite(value)) {
          fail(errc::parse, where + ": row " + std::to_string(row_no) +
                                ": non-finite feature value");
        }
        cols[feature_idx++].push_back(value);
      }
    }
  }
  if (row_no == 0) fail(errc::schema, where + ": dataset has no data rows");

  int max_label = *std::max_element(labels.begin(), labels.end());
  int class_count = max_label + 1;
  if (class_count_override) {
    if (*class_count_override <= max_label) {
      fail(errc::label, where + ": class count override " +
                            std::to_string(*class_count_override) +
                            " does not cover observed label " + std::to_string(max_label));
    }
    class_count = *class_count_override;
  }
  if (class_count < 2) {
    fail(errc::label, where + ": only one class present; pass an explicit class count");
  }

  std::vector<double> flat;
  flat.reserve(static_cast<std::size_t>(row_no) * d);
  for (auto& c : cols) flat.insert(flat.end(), c.begin(), c.end());

  std::vector<std::string> provenance;
  provenance.reserve(names.size());
  for (const auto& name : names) provenance.push_back(manifest.tag_for(name));

  return LabeledDataset(std::move(flat), row_no, std::move(labels), class_count,
                        std::move(names), std::move(provenance));
}

void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::string out;
  for (int j = 0; j < ds.cols(); ++j) {
    out += ds.feature_names()[j];
    out += ',';
  }
  out += "label\n";
  for (int i = 0; i < ds.rows(); ++i) {
    for (int j = 0; j < ds.cols(); ++j) {
      out += format_double(ds.at(i, j));
      out += ',';
    }
    out += std::to_string(ds.label(i));
    out += '\n';
  }
  write_file_atomic(path, out);
}

LabeledDataset concatenate(const LabeledDataset& a, const LabeledDataset& b) {
  if (a.rows() != b.rows()) {
    fail(errc::align, "row counts differ: " + std::to_string(a.rows()) + " vs " +
                          std::to_string(b.rows()));
  }
  if (a.classes() != b.classes()) {
    fail(errc::align, "class counts differ: " + std::to_string(a.classes()) + " vs " +
                          std::to_string(b.classes()));
  }
  for (int i = 0; i < a.rows(); ++i) {
    if (a.label(i) != b.label(i)) {
      fail(errc::align, "label vectors differ at row " + std::to_string(i + 1));
    }
  }

  std::vector<double> columns;
  columns.reserve(static_cast<std::size_t>(a.rows()) * (a.cols() + b.cols()));
  for (int j = 0; j < a.cols(); ++j) {
    auto c = a.column(j);
    columns.insert(columns.end(), c.begin(), c.end());
  }
  for (int j = 0; j < b.cols(); ++j) {
    auto c = b.column(j);
    columns.insert(columns.end(), c.begin(), c.end());
  }

  std::vector<std::string> names = a.feature_names();
  names.insert(names.end(), b.feature_names().begin(), b.feature_names().end());
  std::vector<std::string> provenance = a.provenance();
  provenance.insert(provenance.end(), b.provenance().begin(), b.provenance().end());

  return LabeledDataset(std::move(columns), a.rows(), a.labels(), a.classes(),
                        std::move(names), std::move(provenance));
}

LabeledDataset take_rows(const LabeledDataset& ds, std::span<const int> row_ids) {
  for (int r : row_ids) {
    if (r < 0 || r >= ds.rows()) {
      fail(errc::index, "row index " + std::to_string(r) + " outside [0, " +
                            std::to_string(ds.rows()) + ")");
    }
  }
  const int m = static_cast<int>(row_ids.size());
  std::vector<double> columns(static_cast<std::size_t>(m) * ds.cols());
  for (int j = 0; j < ds.cols(); ++j) {
    auto src = ds.column(j);
    for (int i = 0; i < m; ++i) columns[static_cast<std::size_t>(j) * m + i] = src[row_ids[i]];
  }
  std::vector<int> labels(m);
  for (int i = 0; i < m; ++i) labels[i] = ds.label(row_ids[i]);
  return LabeledDataset(std::move(columns), m, std::move(labels), ds.classes(),
                        ds.feature_names(), ds.provenance());
}

LabeledDataset take_columns(const LabeledDataset& ds, std::span<const int> col_ids) {
  std::vector<double> columns;
  columns.reserve(static_cast<std::size_t>(ds.rows()) * col_ids.size());
  std::vector<std::string> names;
  std::vector<std::string> provenance;
  for (int j : col_ids) {
    auto c = ds.column(j);  // range-checks j
    columns.insert(columns.end(), c.begin(), c.end());
    names.push_back(ds.feature_names()[j]);
    provenance.push_back(ds.provenance()[j]);
  }
  return LabeledDataset(std::move(columns), ds.rows(), ds.labels(), ds.classes(),
                        std::move(names), std::move(provenance));
}

}  // namespace featsel
