#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "labelguard/errors.hpp"
#include "labelguard/features.hpp"

namespace labelguard {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text, std::size_t row) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ": not a number: '" +
                     text + "'");
  }
}

}  // namespace

void write_feature_csv(const SampleSet& set,
                       const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "id,label,noise_flag";
  for (std::size_t f = 1; f <= set.dim(); ++f) out << ",f" << f;
  out << '\n';
  for (std::size_t r = 0; r < set.size(); ++r) {
    out << set.ids[r] << ',' << to_string(set.labels[r]) << ','
        << (set.noise_flags[r] ? '1' : '0');
    for (Eigen::Index f = 0; f < set.x.cols(); ++f) {
      out << ',' << fmt_double(set.x(static_cast<Eigen::Index>(r), f));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

SampleSet read_feature_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());

  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError(path.string() + ": missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);
  if (header.size() < 4 || header[0] != "id" || header[1] != "label" ||
      header[2] != "noise_flag") {
    throw SchemaError(path.string() +
                      ": expected header id,label,noise_flag,f1..fD");
  }
  const std::size_t dim = header.size() - 3;
  for (std::size_t f = 0; f < dim; ++f) {
    if (header[f + 3] != "f" + std::to_string(f + 1)) {
      throw SchemaError(path.string() + ": feature column " +
                        std::to_string(f + 4) + " must be named f" +
                        std::to_string(f + 1));
    }
  }

  std::vector<std::string> ids;
  std::vector<ClassLabel> labels;
  std::vector<std::uint8_t> flags;
  std::vector<double> values;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != dim + 3) {
      throw SchemaError("row " + std::to_string(row) + ": expected " +
                        std::to_string(dim + 3) + " fields, got " +
                        std::to_string(fields.size()));
    }
    const auto label = parse_label(fields[1]);
    if (!label) {
      throw ParseError("row " + std::to_string(row) +
                       ": unknown class label '" + fields[1] + "'");
    }
    if (fields[2] != "0" && fields[2] != "1") {
      throw ParseError("row " + std::to_string(row) +
                       ": noise_flag must be 0 or 1");
    }
    ids.push_back(fields[0]);
    labels.push_back(*label);
    flags.push_back(fields[2] == "1" ? 1 : 0);
    for (std::size_t f = 0; f < dim; ++f) {
      values.push_back(parse_double(fields[f + 3], row));
    }
  }

  SampleSet set;
  set.ids = std::move(ids);
  set.labels = std::move(labels);
  set.noise_flags = std::move(flags);
  set.x.resize(static_cast<Eigen::Index>(set.labels.size()),
               static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < set.labels.size(); ++r) {
    for (std::size_t f = 0; f < dim; ++f) {
      set.x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) =
          values[r * dim + f];
    }
  }
  set.validate();
  return set;
}

}  // namespace labelguard
