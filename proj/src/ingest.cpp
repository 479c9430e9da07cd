#include "labelguard/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "labelguard/errors.hpp"
#include "labelguard/rng.hpp"

namespace labelguard {

void RawRecord::validate() const {
  if (!(sampling_rate_hz > 0.0))
    throw ArgumentError("RawRecord: sampling rate must be positive");
  if (channels.empty()) throw ArgumentError("RawRecord: no channels");
  const std::size_t len = channels.front().size();
  for (const auto& ch : channels)
    if (ch.size() != len)
      throw ArgumentError("RawRecord: channels differ in length");
  std::size_t prev = 0;
  bool first = true;
  for (const auto& [index, label] : annotations) {
    (void)label;
    if (!first && index <= prev)
      throw ArgumentError("RawRecord: annotation indices not increasing");
    if (index >= len)
      throw ArgumentError("RawRecord: annotation index beyond signal end");
    prev = index;
    first = false;
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

std::size_t parse_index(const std::string& text, std::size_t row) {
  std::size_t pos = 0;
  try {
    const long long v = std::stoll(text, &pos);
    if (pos != text.size() || v < 0) throw std::invalid_argument("");
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ": non-numeric index '" +
                     text + "'");
  }
}

double parse_real(const std::string& text, std::size_t row) {
  std::size_t pos = 0;
  try {
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ": non-numeric field '" +
                     text + "'");
  }
}

// Returns nullopt for droppable MIT-BIH symbols, throws for anything else
// outside the label set.
std::optional<ClassLabel> parse_row_label(const std::string& text,
                                          std::size_t row) {
  if (auto label = parse_label_or_symbol(text)) return label;
  if (is_ignorable_mitbih_symbol(text)) return std::nullopt;
  throw ParseError("row " + std::to_string(row) + ": unknown class label '" +
                   text + "'");
}

std::ifstream open_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

void check_header(const std::vector<std::string>& fields,
                  const std::vector<std::string>& expected,
                  const std::filesystem::path& path) {
  if (fields.size() < expected.size())
    throw SchemaError(path.string() + ": missing column '" +
                      expected[fields.size()] + "'");
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (fields[i] != expected[i])
      throw SchemaError(path.string() + ": expected column '" + expected[i] +
                        "', found '" + fields[i] + "'");
}

}  // namespace

std::vector<AnnotationRow> read_annotations_csv(
    const std::filesystem::path& path) {
  std::ifstream in = open_csv(path);
  std::string line;
  if (!std::getline(in, line))
    throw SchemaError(path.string() + ": empty file, header expected");
  check_header(split_fields(line), {"record_id", "sample_index", "label"},
               path);

  std::vector<AnnotationRow> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 3)
      throw ParseError("row " + std::to_string(row) + ": expected 3 fields");
    const auto label = parse_row_label(fields[2], row);
    if (!label) continue;
    rows.push_back({fields[0], parse_index(fields[1], row), *label});
  }
  return rows;
}

std::vector<BeatRow> read_beats_csv(const std::filesystem::path& path) {
  std::ifstream in = open_csv(path);
  std::string line;
  if (!std::getline(in, line))
    throw SchemaError(path.string() + ": empty file, header expected");
  const auto header = split_fields(line);
  check_header(header, {"record_id", "r_peak_index", "label"}, path);
  const bool has_qrs = header.size() >= 4;
  if (has_qrs && header[3] != "qrs_duration_ms")
    throw SchemaError(path.string() +
                      ": fourth column must be 'qrs_duration_ms'");

  std::vector<BeatRow> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 3)
      throw ParseError("row " + std::to_string(row) + ": expected >= 3 fields");
    const auto label = parse_row_label(fields[2], row);
    if (!label) continue;
    BeatRow beat{fields[0], parse_index(fields[1], row), *label, std::nullopt};
    if (has_qrs && fields.size() >= 4 && !fields[3].empty())
      beat.qrs_duration_ms = parse_real(fields[3], row);
    rows.push_back(std::move(beat));
  }
  return rows;
}

SplitSpec reference_split_spec(std::uint64_t seed) {
  SplitSpec spec;
  spec.counts = {1500, 100, 1000, 1000, 1000, 500};
  spec.seed = seed;
  return spec;
}

std::pair<SampleSet, SampleSet> build_split(const SampleSet& all,
                                            const SplitSpec& spec) {
  all.validate();
  std::array<std::vector<std::size_t>, kNumClasses> by_class;
  for (std::size_t i = 0; i < all.size(); ++i)
    by_class[static_cast<int>(all.labels[i])].push_back(i);

  Rng rng(spec.seed);
  std::vector<std::size_t> train_rows;
  for (int c = 0; c < kNumClasses; ++c) {
    const auto& pool = by_class[c];
    const std::size_t want = spec.counts[c];
    if (want > pool.size())
      throw CapacityError(
          "build_split: class " + std::string(to_string(kAllLabels[c])) +
          " has " + std::to_string(pool.size()) + " beats, " +
          std::to_string(want) + " requested");
    for (std::size_t pick : rng.sample_without_replacement(pool.size(), want))
      train_rows.push_back(pool[pick]);
  }
  std::sort(train_rows.begin(), train_rows.end());

  std::vector<bool> in_train(all.size(), false);
  for (std::size_t i : train_rows) in_train[i] = true;
  std::vector<std::size_t> test_rows;
  test_rows.reserve(all.size() - train_rows.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (!in_train[i]) test_rows.push_back(i);

  return {all.select(train_rows), all.select(test_rows)};
}

}  // namespace labelguard
