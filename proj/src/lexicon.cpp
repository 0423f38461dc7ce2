#include "cmpos/lexicon.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include "cmpos/util.hpp"

namespace cmpos {

std::uint32_t Lexicon::intern_tag(const std::string& tag) {
  auto it = inventory_index_.find(tag);
  if (it != inventory_index_.end()) return it->second;
  std::uint32_t id = static_cast<std::uint32_t>(inventory_.size());
  inventory_.push_back(tag);
  inventory_index_.emplace(tag, id);
  return id;
}

Lexicon Lexicon::build(const Corpus& train, TagsetKind kind) {
  if (kind != TagsetKind::Fine && kind != TagsetKind::Coarse)
    throw Error("lexicon needs a fine or coarse tagset kind");
  if (train.sentences.empty()) throw Error("cannot build lexicon: empty corpus");

  Lexicon lex;
  for (const Sentence& sentence : train.sentences) {
    for (const Token& token : sentence.tokens) {
      const std::string& tag = token.tag(kind);
      if (tag.empty())
        throw Error("cannot build lexicon: token '" + token.surface +
                    "' has no " + tagset_kind_name(kind) + " tag");
      std::uint32_t tag_id = lex.intern_tag(tag);
      WordStats& stats = lex.words_[token.surface];
      stats.total += 1;
      bool found = false;
      for (auto& [id, count] : stats.counts) {
        if (id == tag_id) {
          ++count;
          found = true;
          break;
        }
      }
      if (!found) stats.counts.emplace_back(tag_id, 1);
    }
  }
  return lex;
}

std::vector<int> Lexicon::top_k_bits(std::string_view surface, int k) const {
  if (k != 1 && k != 2) throw Error("top_k_bits: k must be 1 or 2");
  std::vector<int> bits(inventory_.size(), 0);
  auto it = words_.find(std::string(surface));
  if (it == words_.end()) return bits;

  const WordStats& stats = it->second;
  // With a shared denominator, ranking probabilities == ranking counts.
  std::vector<std::uint64_t> sorted;
  sorted.reserve(stats.counts.size());
  for (const auto& [id, count] : stats.counts) sorted.push_back(count);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t kth = std::min<std::size_t>(static_cast<std::size_t>(k),
                                                sorted.size());
  const std::uint64_t threshold = sorted[kth - 1];
  for (const auto& [id, count] : stats.counts)
    if (count >= threshold) bits[id] = 1;
  return bits;
}

bool Lexicon::contains(std::string_view surface) const {
  return words_.count(std::string(surface)) != 0;
}

std::uint64_t Lexicon::count(std::string_view surface,
                             std::string_view tag) const {
  auto it = words_.find(std::string(surface));
  if (it == words_.end()) return 0;
  auto tag_it = inventory_index_.find(std::string(tag));
  if (tag_it == inventory_index_.end()) return 0;
  for (const auto& [id, count] : it->second.counts)
    if (id == tag_it->second) return count;
  return 0;
}

std::uint64_t Lexicon::total(std::string_view surface) const {
  auto it = words_.find(std::string(surface));
  return it == words_.end() ? 0 : it->second.total;
}

void Lexicon::save(std::ostream& out) const {
  std::map<std::string, std::map<std::string, std::uint64_t>> sorted;
  for (const auto& [word, stats] : words_)
    for (const auto& [id, count] : stats.counts)
      sorted[word][inventory_[id]] = count;
  for (const auto& [word, tags] : sorted)
    for (const auto& [tag, count] : tags)
      out << word << '\t' << tag << '\t' << count << '\n';
}

Lexicon Lexicon::load(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != 3)
      throw Error("lexicon line " + std::to_string(line_no) +
                  ": expected 3 columns, found " + std::to_string(cols.size()));
    std::uint64_t count = 0;
    try {
      count = std::stoull(cols[2]);
    } catch (const std::exception&) {
      throw Error("lexicon line " + std::to_string(line_no) +
                  ": bad count '" + cols[2] + "'");
    }
    std::uint32_t tag_id = lex.intern_tag(cols[1]);
    WordStats& stats = lex.words_[cols[0]];
    stats.counts.emplace_back(tag_id, count);
    stats.total += count;
  }
  return lex;
}

}  // namespace cmpos
