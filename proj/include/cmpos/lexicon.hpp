// cmpos/lexicon.hpp -- word/tag count statistics harvested from training
// data; the source of the Top@k probability features.

#ifndef CMPOS_LEXICON_HPP_
#define CMPOS_LEXICON_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cmpos/corpus.hpp"

namespace cmpos {

class Lexicon {
 public:
  /// Counts exact surface occurrences of gold tags of `kind` in `train`.
  /// The tag inventory keeps first-seen order.
  static Lexicon build(const Corpus& train, TagsetKind kind);

  /// Bit vector over the tag inventory marking the k most probable tags for
  /// `surface` (P(t|w) by counts). Unknown surfaces yield all zeros; ties at
  /// the k-th threshold are all included.
  std::vector<int> top_k_bits(std::string_view surface, int k) const;

  const std::vector<std::string>& tag_inventory() const { return inventory_; }
  bool contains(std::string_view surface) const;
  std::uint64_t count(std::string_view surface, std::string_view tag) const;
  std::uint64_t total(std::string_view surface) const;

  /// Tab-separated word/tag/count lines, sorted by word then tag.
  void save(std::ostream& out) const;
  static Lexicon load(std::istream& in);

 private:
  struct WordStats {
    // tag inventory index -> count; sparse, insertion-ordered
    std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
    std::uint64_t total = 0;
  };

  std::uint32_t intern_tag(const std::string& tag);

  std::unordered_map<std::string, WordStats> words_;
  std::vector<std::string> inventory_;
  std::unordered_map<std::string, std::uint32_t> inventory_index_;
};

}  // namespace cmpos

#endif  // CMPOS_LEXICON_HPP_
