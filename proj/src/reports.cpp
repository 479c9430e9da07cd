#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "labelguard/errors.hpp"
#include "labelguard/experiment.hpp"

namespace labelguard {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string fmt_level(double level) { return fmt("%g", level); }
std::string fmt_percent(double fraction) { return fmt("%.2f", fraction * 100.0) + "%"; }
std::string fmt_level_percent(double level) { return fmt("%g", level * 100.0) + "%"; }

std::string fmt_metric(const std::optional<double>& v) {
  return v ? fmt("%.6f", *v) : std::string("NA");
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

constexpr std::array<Condition, 5> kConditionOrder = {
    Condition::NF, Condition::IF, Condition::S1, Condition::S2,
    Condition::S3};

struct Mean {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  void add(double v) { sum += v; sum_sq += v * v; ++n; }
  double value() const { return sum / static_cast<double>(n); }
  double sample_stddev() const {
    if (n < 2) return 0.0;
    const double mean = value();
    const double var = (sum_sq - sum * mean) / static_cast<double>(n - 1);
    return std::sqrt(std::max(var, 0.0));
  }
};

void write_detection_markdown(const std::vector<DetectionRow>& rows,
                              const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "# Mislabel detection (means over repetitions)\n";
  if (rows.empty()) {
    out << "\nNo filter runs (noise level 0 only).\n";
    return;
  }
  std::vector<int> standards;
  std::vector<double> levels;
  for (const DetectionRow& row : rows) {
    if (std::find(standards.begin(), standards.end(), row.standard) ==
        standards.end()) {
      standards.push_back(row.standard);
    }
    if (std::find(levels.begin(), levels.end(), row.noise_level) ==
        levels.end()) {
      levels.push_back(row.noise_level);
    }
  }
  std::sort(standards.begin(), standards.end());
  std::sort(levels.begin(), levels.end());

  for (int standard : standards) {
    out << "\n## Standard " << standard << "\n\n";
    out << "| Noise level | ANM | INM | AINM | P_D | P_FA |\n";
    out << "|---:|---:|---:|---:|---:|---:|\n";
    for (double level : levels) {
      Mean anm;
      Mean inm;
      Mean ainm;
      Mean pd;
      Mean pfa;
      for (const DetectionRow& row : rows) {
        if (row.standard != standard || row.noise_level != level) continue;
        anm.add(static_cast<double>(row.report.anm));
        inm.add(static_cast<double>(row.report.inm));
        ainm.add(static_cast<double>(row.report.ainm));
        if (row.report.p_d) pd.add(*row.report.p_d);
        if (row.report.p_fa) pfa.add(*row.report.p_fa);
      }
      if (anm.n == 0) continue;
      out << "| " << fmt_level_percent(level) << " | "
          << fmt("%.1f", anm.value())
          << " | " << fmt("%.1f", inm.value()) << " | "
          << fmt("%.1f", ainm.value()) << " | "
          << (pd.n ? fmt_percent(pd.value()) : "NA") << " | "
          << (pfa.n ? fmt_percent(pfa.value()) : "NA") << " |\n";
    }
  }
}

void write_accuracy_markdown(const std::vector<ScenarioResult>& rows,
                             const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "# Test accuracy (means over repetitions)\n";

  std::vector<AlgorithmKind> kinds;
  std::vector<double> levels;
  for (const ScenarioResult& row : rows) {
    if (std::find(kinds.begin(), kinds.end(), row.classifier) == kinds.end()) {
      kinds.push_back(row.classifier);
    }
    if (std::find(levels.begin(), levels.end(), row.noise_level) ==
        levels.end()) {
      levels.push_back(row.noise_level);
    }
  }
  std::sort(levels.begin(), levels.end());

  for (AlgorithmKind kind : kinds) {
    out << "\n## " << to_string(kind) << "\n\n";
    out << "| Noise level | NF | IF | S1 | S2 | S3 |\n";
    out << "|---:|---:|---:|---:|---:|---:|\n";
    for (double level : levels) {
      out << "| " << fmt_level_percent(level) << " |";
      for (Condition condition : kConditionOrder) {
        Mean acc;
        bool failed = false;
        for (const ScenarioResult& row : rows) {
          if (row.classifier != kind || row.noise_level != level ||
              row.condition != condition) {
            continue;
          }
          if (row.error.empty()) acc.add(row.accuracy);
          else failed = true;
        }
        if (acc.n > 1) {
          out << ' ' << fmt_percent(acc.value()) << " (sd "
              << fmt("%.2f", acc.sample_stddev() * 100.0) << ") |";
        } else if (acc.n == 1) {
          out << ' ' << fmt_percent(acc.value()) << " |";
        } else {
          out << (failed ? " error |" : " - |");
        }
      }
      out << '\n';
    }
  }
}

std::size_t parse_count(const std::string& text, std::size_t row,
                        const char* what) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ": bad " + what + ": '" +
                     text + "'");
  }
}

double parse_real(const std::string& text, std::size_t row, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ": bad " + what + ": '" +
                     text + "'");
  }
}

}  // namespace

void write_detection_csv(const std::vector<DetectionRow>& rows,
                         const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "noise_level,standard,rep,ANM,INM,AINM,P_D,P_FA\n";
  for (const DetectionRow& row : rows) {
    out << fmt_level(row.noise_level) << ',' << row.standard << ',' << row.rep
        << ',' << row.report.anm << ',' << row.report.inm << ','
        << row.report.ainm << ',' << fmt_metric(row.report.p_d) << ','
        << fmt_metric(row.report.p_fa) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<DetectionRow> read_detection_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw SchemaError(path.string() + ": missing header");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "noise_level,standard,rep,ANM,INM,AINM,P_D,P_FA") {
    throw SchemaError(path.string() + ": unexpected detection header");
  }
  std::vector<DetectionRow> rows;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != 8) {
      throw SchemaError("row " + std::to_string(row_no) +
                        ": expected 8 fields");
    }
    DetectionRow row;
    row.noise_level = parse_real(fields[0], row_no, "noise_level");
    row.standard =
        static_cast<int>(parse_count(fields[1], row_no, "standard"));
    row.rep = parse_count(fields[2], row_no, "rep");
    row.report.anm = parse_count(fields[3], row_no, "ANM");
    row.report.inm = parse_count(fields[4], row_no, "INM");
    row.report.ainm = parse_count(fields[5], row_no, "AINM");
    if (fields[6] != "NA") row.report.p_d = parse_real(fields[6], row_no, "P_D");
    if (fields[7] != "NA") {
      row.report.p_fa = parse_real(fields[7], row_no, "P_FA");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_accuracy_csv(const std::vector<ScenarioResult>& rows,
                        const std::filesystem::path& path) {
  std::ofstream out = open_out(path);
  out << "classifier,noise_level,condition,rep,accuracy\n";
  for (const ScenarioResult& row : rows) {
    out << to_string(row.classifier) << ',' << fmt_level(row.noise_level)
        << ',' << to_string(row.condition) << ',' << row.rep << ','
        << (row.error.empty() ? fmt("%.6f", row.accuracy) : std::string("NA"))
        << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<std::filesystem::path> emit_reports(
    const MatrixResults& results, const std::filesystem::path& out_dir,
    std::string_view format) {
  if (results.accuracy.empty()) {
    throw ArgumentError("no results to report");
  }
  if (format != "csv" && format != "markdown") {
    throw ArgumentError("report format must be csv or markdown");
  }
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory " + out_dir.string() + ": " +
                  ec.message());
  }
  std::vector<std::filesystem::path> written;
  if (format == "csv") {
    written.push_back(out_dir / "detection.csv");
    write_detection_csv(results.detection, written.back());
    written.push_back(out_dir / "accuracy.csv");
    write_accuracy_csv(results.accuracy, written.back());
  } else {
    written.push_back(out_dir / "detection.md");
    write_detection_markdown(results.detection, written.back());
    written.push_back(out_dir / "accuracy.md");
    write_accuracy_markdown(results.accuracy, written.back());
  }
  return written;
}

}  // namespace labelguard
