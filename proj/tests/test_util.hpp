#pragma once

#include <unistd.h>

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "labelguard/sample_set.hpp"

namespace lgtest {

/// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    const auto base = std::filesystem::temp_directory_path();
    path_ = base / ("labelguard_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path write_file(const std::filesystem::path& path,
                                        const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

inline std::filesystem::path data_dir() {
  return std::filesystem::path(LABELGUARD_TEST_DATA_DIR);
}

/// SampleSet with the given labels and deterministic pseudo-random features.
inline labelguard::SampleSet make_set(
    const std::vector<labelguard::ClassLabel>& labels, std::size_t dim = 3,
    std::uint64_t seed = 1) {
  labelguard::SampleSet set;
  const auto n = static_cast<Eigen::Index>(labels.size());
  set.x.resize(n, static_cast<Eigen::Index>(dim));
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < set.x.cols(); ++j) set.x(i, j) = dist(gen);
  set.labels = labels;
  set.ids.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    set.ids.push_back("s" + std::to_string(i));
  set.noise_flags.assign(labels.size(), 0);
  return set;
}

/// n samples of each requested class, in class blocks.
inline labelguard::SampleSet make_class_blocks(
    const std::vector<std::pair<labelguard::ClassLabel, std::size_t>>& counts,
    std::size_t dim = 3, std::uint64_t seed = 1) {
  std::vector<labelguard::ClassLabel> labels;
  for (const auto& [label, n] : counts)
    labels.insert(labels.end(), n, label);
  return make_set(labels, dim, seed);
}

}  // namespace lgtest
