#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "labelguard/classifiers.hpp"
#include "labelguard/errors.hpp"
#include "labelguard/experiment.hpp"
#include "test_util.hpp"

using namespace labelguard;

namespace {

ExperimentConfig small_matrix_config(const std::filesystem::path& out) {
  ExperimentConfig config;
  config.source = DataSource::synthetic;
  config.synth = {3, 30, 3, 10.0, 0};
  config.noise_levels = {0.0, 0.2};
  config.standards = {2, 3};
  config.folds = 5;
  config.reps = 2;
  config.seed = 5;
  config.out_dir = out.string();
  return config;
}

std::size_t count_rows(const std::vector<ScenarioResult>& rows,
                       double level, Condition condition) {
  std::size_t n = 0;
  for (const auto& row : rows)
    if (row.noise_level == level && row.condition == condition) ++n;
  return n;
}

bool same_rows(const std::vector<ScenarioResult>& a,
               const std::vector<ScenarioResult>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].classifier != b[i].classifier ||
        a[i].noise_level != b[i].noise_level ||
        a[i].condition != b[i].condition || a[i].rep != b[i].rep ||
        a[i].accuracy != b[i].accuracy || a[i].error != b[i].error)
      return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("config text parsing") {
  const auto config = parse_config_text(
      "# comment line\n"
      "data.source = synthetic\n"
      "synth.classes = 4\n"
      "synth.per_class = 25\n"
      "synth.dims = 7\n"
      "synth.separation = 9.5\n"
      "\n"
      "noise.levels = 0, 0.1, 0.3\n"
      "filter.standards = 2,3\n"
      "filter.folds = 5\n"
      "filter.stratified = true\n"
      "experiment.reps = 4\n"
      "experiment.seed = 99\n"
      "experiment.finals = nb, lda\n"
      "svm.kernel = linear\n"
      "svm.c = 2.5\n"
      "knn.k = 3\n"
      "c45.max_depth = 12\n"
      "pca.components = 5\n"
      "signal.wavelet = haar\n"
      "report.format = markdown\n");
  CHECK(config.source == DataSource::synthetic);
  CHECK(config.synth.classes == 4);
  CHECK(config.synth.per_class == 25);
  CHECK(config.synth.dims == 7);
  CHECK(config.synth.separation == doctest::Approx(9.5));
  CHECK(config.noise_levels == std::vector<double>{0.0, 0.1, 0.3});
  CHECK(config.standards == std::vector<int>{2, 3});
  CHECK(config.folds == 5);
  CHECK(config.stratified);
  CHECK(config.reps == 4);
  CHECK(config.seed == 99);
  CHECK(config.final_classifiers ==
        std::vector<AlgorithmKind>{AlgorithmKind::nb, AlgorithmKind::lda});
  CHECK(config.classifiers.svm.kernel.kind == KernelSpec::Kind::linear);
  CHECK(config.classifiers.svm.kernel.c == doctest::Approx(2.5));
  CHECK(config.classifiers.knn.k == 3);
  CHECK(config.classifiers.c45.max_depth == 12);
  CHECK(config.pca_components == 5);
  CHECK(config.wavelet == Wavelet::haar);
  CHECK(config.format == "markdown");
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("config rejects unknown keys and bad values") {
  CHECK_THROWS_AS(parse_config_text("data.sauce = synthetic\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("knn.k = lots\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("noise.levels =\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("just a sentence\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("split.counts = 1,2,3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("data.source = oracle\n"), ConfigError);
}

TEST_CASE("config validation catches out-of-range settings") {
  ExperimentConfig config;
  config.source = DataSource::synthetic;
  CHECK_NOTHROW(config.validate());

  auto broken = config;
  broken.folds = 1;
  CHECK_THROWS_AS(broken.validate(), ConfigError);

  broken = config;
  broken.noise_levels = {0.0, 1.0};
  CHECK_THROWS_AS(broken.validate(), ConfigError);

  broken = config;
  broken.standards = {2, 2};
  CHECK_THROWS_AS(broken.validate(), ConfigError);

  broken = config;
  broken.synth.separation = 0.0;
  CHECK_THROWS_AS(broken.validate(), ConfigError);

  broken = config;
  broken.format = "xml";
  CHECK_THROWS_AS(broken.validate(), ConfigError);

  broken = config;
  broken.source = DataSource::wfdb;
  broken.wfdb_dir = "/no/such/dir";
  CHECK_THROWS_AS(broken.validate(), ConfigError);
}

TEST_CASE("load_config reads files and rejects missing ones") {
  lgtest::TempDir tmp;
  const auto path = lgtest::write_file(
      tmp.file("run.conf"), "data.source = synthetic\nsynth.classes = 2\n");
  const auto config = load_config(path);
  CHECK(config.synth.classes == 2);
  CHECK_THROWS_AS(load_config(tmp.file("absent.conf")), ConfigError);
}

TEST_CASE("condition names round trip") {
  for (Condition c : {Condition::NF, Condition::IF, Condition::S1,
                      Condition::S2, Condition::S3}) {
    const auto name = to_string(c);
    REQUIRE(parse_condition(name).has_value());
    CHECK(*parse_condition(name) == c);
  }
  CHECK_FALSE(parse_condition("S4").has_value());
}

TEST_CASE("synthetic generation is deterministic and well separated") {
  const SynthSpec spec{4, 50, 6, 8.0, 3};
  const auto [train, test] = generate_synthetic(spec);
  CHECK(train.size() == 200);
  CHECK(test.size() == 200);
  CHECK(train.dim() == 6);
  CHECK(train.class_counts()[0] == 50);
  CHECK(test.class_counts()[3] == 50);

  const auto [train2, test2] = generate_synthetic(spec);
  CHECK((train.x.array() == train2.x.array()).all());
  CHECK(train.labels == train2.labels);
  CHECK((test.x.array() == test2.x.array()).all());

  // Class means pairwise at least `separation` apart.
  std::map<ClassLabel, Eigen::VectorXd> sums;
  std::map<ClassLabel, int> counts;
  for (std::size_t i = 0; i < train.size(); ++i) {
    auto it = sums.try_emplace(train.labels[i],
                               Eigen::VectorXd::Zero(train.x.cols()))
                  .first;
    it->second += train.x.row(static_cast<Eigen::Index>(i)).transpose();
    counts[train.labels[i]] += 1;
  }
  std::vector<Eigen::VectorXd> means;
  for (auto& [label, sum] : sums)
    means.push_back(sum / static_cast<double>(counts[label]));
  for (std::size_t a = 0; a < means.size(); ++a)
    for (std::size_t b = a + 1; b < means.size(); ++b)
      CHECK((means[a] - means[b]).norm() >= spec.separation * 0.8);
}

TEST_CASE("synthetic data supports more classes than dimensions") {
  const auto [train, test] = generate_synthetic({6, 10, 2, 5.0, 7});
  CHECK(train.dim() == 2);
  CHECK(train.size() == 60);
  std::set<ClassLabel> seen(train.labels.begin(), train.labels.end());
  CHECK(seen.size() == 6);
}

TEST_CASE("huge separation makes the task trivial") {
  const auto [train, test] = generate_synthetic({2, 40, 4, 100.0, 11});
  double min_cross = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < train.size(); ++i)
    for (std::size_t j = 0; j < test.size(); ++j) {
      if (train.labels[i] == test.labels[j]) continue;
      min_cross = std::min(
          min_cross, (train.x.row(static_cast<Eigen::Index>(i)) -
                      test.x.row(static_cast<Eigen::Index>(j))).norm());
    }
  REQUIRE(min_cross > 0.0);

  for (AlgorithmKind kind : kAllAlgorithms) {
    const auto model = train_classifier(kind, train, ClassifierConfig{});
    CHECK(accuracy(*model, test) == 1.0);
  }
}

TEST_CASE("synthetic dataset pipeline reports its width") {
  ExperimentConfig config;
  config.source = DataSource::synthetic;
  config.synth = {3, 20, 5, 8.0, 0};
  config.pca_components = 4;
  const auto data = load_dataset(config);
  CHECK(data.train.size() == 60);
  CHECK(data.test.size() == 60);
  CHECK(data.train.dim() == 4);
  CHECK(data.test.dim() == 4);
  CHECK(data.pca_components == 4);
}

TEST_CASE("wfdb records run the whole pipeline") {
  ExperimentConfig config;
  config.source = DataSource::wfdb;
  config.wfdb_dir = lgtest::data_dir().string();
  config.annotations_csv = (lgtest::data_dir() / "golden_annotations.csv").string();
  config.split_counts = {10, 2, 2, 2, 2, 2};
  config.seed = 3;
  config.validate();

  // 36 annotated beats minus the two boundary beats leave 34 segments.
  const auto data = load_dataset(config);
  CHECK(data.train.size() == 20);
  CHECK(data.test.size() == 14);
  CHECK(data.train.class_counts() ==
        std::array<std::size_t, kNumClasses>{10, 2, 2, 2, 2, 2});
  CHECK(data.train.dim() == data.pca_components);
  CHECK(data.train.dim() >= 1);
  CHECK(data.train.ids[0].rfind("golden:", 0) == 0);
  data.train.validate();
  data.test.validate();

  config.noise_levels = {0.0, 0.2};
  config.standards = {3};
  config.reps = 1;
  const auto results = run_matrix(config, data);
  CHECK(!results.has_errors());
  CHECK(results.accuracy.size() == 12);
  REQUIRE(results.detection.size() == 1);
  CHECK(results.detection[0].report.anm == 2);
}

TEST_CASE("matrix runs the expected grid") {
  lgtest::TempDir tmp;
  const auto config = small_matrix_config(tmp.path());
  const auto results = run_matrix(config);
  CHECK_FALSE(results.has_errors());

  // Level 0 runs NF only; level 0.2 adds IF plus the configured standards.
  CHECK(count_rows(results.accuracy, 0.0, Condition::NF) == 6);
  CHECK(count_rows(results.accuracy, 0.0, Condition::IF) == 0);
  CHECK(count_rows(results.accuracy, 0.0, Condition::S2) == 0);
  CHECK(count_rows(results.accuracy, 0.2, Condition::NF) == 6);
  CHECK(count_rows(results.accuracy, 0.2, Condition::IF) == 6);
  CHECK(count_rows(results.accuracy, 0.2, Condition::S2) == 6);
  CHECK(count_rows(results.accuracy, 0.2, Condition::S3) == 6);
  CHECK(count_rows(results.accuracy, 0.2, Condition::S1) == 0);
  CHECK(results.accuracy.size() == 30);

  REQUIRE(results.detection.size() == 4);
  for (const auto& row : results.detection) {
    CHECK(row.noise_level == 0.2);
    CHECK((row.standard == 2 || row.standard == 3));
    CHECK(row.rep <= 1);
    // floor(30 * 0.2) per class, three classes.
    CHECK(row.report.anm == 18);
    CHECK(row.report.p_d.has_value());
  }

  for (const auto& row : results.accuracy) {
    CHECK(row.error.empty());
    CHECK(row.accuracy >= 0.0);
    CHECK(row.accuracy <= 1.0);
  }
}

TEST_CASE("levels zero only produces no filter rows") {
  lgtest::TempDir tmp;
  auto config = small_matrix_config(tmp.path());
  config.noise_levels = {0.0};
  const auto results = run_matrix(config);
  CHECK(results.detection.empty());
  CHECK(results.accuracy.size() == 6);  // 3 finals x 2 reps, NF only
  for (const auto& row : results.accuracy)
    CHECK(row.condition == Condition::NF);
}

TEST_CASE("matrix results are deterministic") {
  lgtest::TempDir tmp;
  const auto config = small_matrix_config(tmp.path());
  const auto a = run_matrix(config);
  const auto b = run_matrix(config);
  CHECK(same_rows(a.accuracy, b.accuracy));
  REQUIRE(a.detection.size() == b.detection.size());
  for (std::size_t i = 0; i < a.detection.size(); ++i) {
    CHECK(a.detection[i].report.inm == b.detection[i].report.inm);
    CHECK(a.detection[i].report.ainm == b.detection[i].report.ainm);
  }
}

TEST_CASE("run_scenario covers a single cell") {
  lgtest::TempDir tmp;
  const auto config = small_matrix_config(tmp.path());
  const auto rows = run_scenario(config, 0.2, Condition::IF);
  CHECK(rows.size() == 6);  // 3 finals x 2 reps
  for (const auto& row : rows) {
    CHECK(row.condition == Condition::IF);
    CHECK(row.noise_level == 0.2);
    CHECK(row.error.empty());
  }
}

TEST_CASE("reports are byte-identical across writes") {
  lgtest::TempDir tmp;
  const auto config = small_matrix_config(tmp.path());
  const auto results = run_matrix(config);

  const auto first = emit_reports(results, tmp.file("a"), "csv");
  const auto second = emit_reports(results, tmp.file("b"), "csv");
  REQUIRE(first.size() == 2);
  REQUIRE(second.size() == 2);
  for (std::size_t i = 0; i < first.size(); ++i)
    CHECK(lgtest::read_file(first[i]) == lgtest::read_file(second[i]));

  const auto md = emit_reports(results, tmp.file("md"), "markdown");
  REQUIRE(md.size() == 2);
  for (const auto& path : md) CHECK(lgtest::read_file(path).size() > 0);
}

TEST_CASE("emit rejects empty results and unknown formats") {
  lgtest::TempDir tmp;
  CHECK_THROWS_AS(emit_reports(MatrixResults{}, tmp.file("x"), "csv"),
                  ArgumentError);
  MatrixResults results;
  results.accuracy.push_back({AlgorithmKind::nb, 0.0, Condition::NF, 0, 0.5,
                              ""});
  CHECK_THROWS_AS(emit_reports(results, tmp.file("x"), "yaml"),
                  ArgumentError);
}

TEST_CASE("detection csv round trips") {
  lgtest::TempDir tmp;
  std::vector<DetectionRow> rows;
  rows.push_back({0.05, 2, 0, {255, 267, 227, 227.0 / 255.0, 40.0 / 255.0}});
  rows.push_back({0.1, 1, 3, {0, 4, 0, std::nullopt, std::nullopt}});
  const auto path = tmp.file("detection.csv");
  write_detection_csv(rows, path);

  const auto back = read_detection_csv(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].noise_level == 0.05);
  CHECK(back[0].standard == 2);
  CHECK(back[0].rep == 0);
  CHECK(back[0].report.anm == 255);
  CHECK(back[0].report.inm == 267);
  CHECK(back[0].report.ainm == 227);
  REQUIRE(back[0].report.p_d.has_value());
  CHECK(*back[0].report.p_d == doctest::Approx(227.0 / 255.0).epsilon(1e-6));
  CHECK_FALSE(back[1].report.p_d.has_value());
  CHECK_FALSE(back[1].report.p_fa.has_value());
  CHECK(back[1].rep == 3);

  const auto bad = lgtest::write_file(tmp.file("bad.csv"),
                                      "noise,standard\n0.1,2\n");
  CHECK_THROWS_AS(read_detection_csv(bad), SchemaError);
}

TEST_CASE("scenario errors are recorded not thrown") {
  lgtest::TempDir tmp;
  auto config = small_matrix_config(tmp.path());
  // More folds than training rows: the vote sweep cannot run, the S
  // condition must record the failure while NF and IF still succeed.
  config.synth = {2, 3, 2, 100.0, 1};
  config.noise_levels = {0.4};
  config.standards = {3};
  config.folds = 7;
  config.reps = 1;
  const auto results = run_matrix(config);
  CHECK(results.has_errors());
  CHECK(results.detection.empty());
  REQUIRE(results.accuracy.size() == 9);  // NF, IF, S3 x 3 finals
  for (const auto& row : results.accuracy) {
    if (row.condition == Condition::S3) {
      CHECK_FALSE(row.error.empty());
    } else {
      CHECK(row.error.empty());
    }
  }
  // Failed rows serialize with an NA accuracy.
  const auto path = tmp.file("accuracy.csv");
  write_accuracy_csv(results.accuracy, path);
  CHECK(lgtest::read_file(path).find("NA") != std::string::npos);
}

}  // TEST_SUITE
