// cmpos/feature_template.hpp -- which feature families are active and with
// what parameters. Loaded from a one-directive-per-line text file.

#ifndef CMPOS_FEATURE_TEMPLATE_HPP_
#define CMPOS_FEATURE_TEMPLATE_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cmpos {

/// Template file directives (one per line, '#' comments ignored):
///   context -2..2        token-window features, radius at most 4
///   ngram 1 2 3          character n-gram orders, each at most 5
///   norm on|off          orthographic normalization
///   prefix 3 / suffix 3  affix features, length at most 6
///   wordclass on|off
///   position on|off      relative position in the sequence
///   upper_ratio on|off
///   topk 1 2             lexicon Top@k bits; "topk off" disables
///   binary all|off       the eight binary flags
///   sufflen_threshold 4  length threshold of the SUFFLEN flag
///   stem on|off / phonetic on|off
///   basis cleaned|raw    index context/position over the cleaned
///                        subsequence (default) or the raw sentence
struct FeatureTemplate {
  bool context = true;
  int ctx_lo = -2;
  int ctx_hi = 2;
  std::vector<int> ngram_orders = {1, 2, 3};
  bool norm = true;
  int prefix_len = 3;  // 0 disables
  int suffix_len = 3;  // 0 disables
  bool wordclass = true;
  bool position = true;
  bool upper_ratio = true;
  bool top1 = true;
  bool top2 = true;
  bool binary = true;
  int sufflen_threshold = 4;
  bool stem = true;
  bool phonetic = true;
  enum class Basis { Cleaned, Raw };
  Basis basis = Basis::Cleaned;

  static FeatureTemplate defaults() { return FeatureTemplate{}; }
  static FeatureTemplate parse(std::istream& in, const std::string& source);
  static FeatureTemplate load_file(const std::string& path);

  /// Canonical one-directive-per-line rendering; parsing it back yields an
  /// equal template.
  std::string serialize() const;
  /// FNV-1a of serialize(), 16 hex digits. Guards feature/model skew.
  std::string hash() const;

  bool operator==(const FeatureTemplate&) const = default;
};

}  // namespace cmpos

#endif  // CMPOS_FEATURE_TEMPLATE_HPP_
