#include "labelguard/labels.hpp"

#include <unordered_set>

namespace labelguard {

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::N:
      return "N";
    case ClassLabel::A:
      return "A";
    case ClassLabel::V:
      return "V";
    case ClassLabel::RB:
      return "RB";
    case ClassLabel::P:
      return "P";
    case ClassLabel::LB:
      return "LB";
  }
  return "?";
}

std::optional<ClassLabel> parse_label(std::string_view text) {
  if (text == "N") return ClassLabel::N;
  if (text == "A") return ClassLabel::A;
  if (text == "V") return ClassLabel::V;
  if (text == "RB") return ClassLabel::RB;
  if (text == "P") return ClassLabel::P;
  if (text == "LB") return ClassLabel::LB;
  return std::nullopt;
}

std::optional<ClassLabel> parse_label_or_symbol(std::string_view text) {
  if (auto label = parse_label(text)) return label;
  if (text == "R") return ClassLabel::RB;
  if (text == "/") return ClassLabel::P;
  if (text == "L") return ClassLabel::LB;
  return std::nullopt;
}

bool is_ignorable_mitbih_symbol(std::string_view text) {
  // Beat and non-beat annotation symbols of the MIT-BIH arrhythmia database
  // that fall outside the six classes. Single source: the PhysioNet
  // annotation code table.
  static const std::unordered_set<std::string> ignorable = {
      "a", "J", "S", "F", "e", "j", "E", "f", "Q", "?", "!",
      "[", "]", "x", "(", ")", "p", "t", "u", "`", "'", "^",
      "|", "~", "+", "s", "T", "*", "D", "=", "\"", "@"};
  return ignorable.count(std::string(text)) > 0;
}

}  // namespace labelguard
