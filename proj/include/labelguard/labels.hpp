#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace labelguard {

/// The six beat classes handled by the pipeline. The declaration order is
/// the fixed total order used for deterministic tie-breaking everywhere.
enum class ClassLabel : int {
  N = 0,   // normal sinus rhythm
  A = 1,   // atrial premature beat
  V = 2,   // ventricular premature beat
  RB = 3,  // right bundle branch block
  P = 4,   // paced beat
  LB = 5,  // left bundle branch block
};

inline constexpr int kNumClasses = 6;

inline constexpr std::array<ClassLabel, kNumClasses> kAllLabels = {
    ClassLabel::N,  ClassLabel::A, ClassLabel::V,
    ClassLabel::RB, ClassLabel::P, ClassLabel::LB};

std::string_view to_string(ClassLabel label);

/// Parses one of the canonical names N, A, V, RB, P, LB.
std::optional<ClassLabel> parse_label(std::string_view text);

/// Like parse_label but also accepts the single-character MIT-BIH annotation
/// symbols of the six classes (R -> RB, / -> P, L -> LB).
std::optional<ClassLabel> parse_label_or_symbol(std::string_view text);

/// True for MIT-BIH annotation symbols outside the six classes (fusion
/// beats, rhythm change markers, noise markers, ...). Rows carrying these
/// are silently dropped during ingestion rather than rejected.
bool is_ignorable_mitbih_symbol(std::string_view text);

}  // namespace labelguard
