// cmpos/rule_tagger.hpp -- deterministic first stage: punctuation, symbols,
// unicode, numerals, URLs, emoticons, mentions and hashtags are tagged by
// rule; everything else is deferred to the classifier.

#ifndef CMPOS_RULE_TAGGER_HPP_
#define CMPOS_RULE_TAGGER_HPP_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cmpos/corpus.hpp"

namespace cmpos {

struct RuleDecision {
  bool tagged = false;  // false: deferred to the classifier
  std::string fine_tag;
  std::string coarse_tag;
  std::string rule_id;  // which branch fired, for audit

  bool operator==(const RuleDecision&) const = default;
};

/// Exact-match emoticon list, one entry per line in the data file,
/// '#'-prefixed comment lines ignored.
class EmoticonDictionary {
 public:
  static EmoticonDictionary defaults();
  static EmoticonDictionary load(std::istream& in, const std::string& version);
  static EmoticonDictionary load_file(const std::string& path);

  bool contains(std::string_view entry) const;
  std::size_t size() const { return entries_.size(); }
  const std::set<std::string>& entries() const { return entries_; }
  const std::string& version() const { return version_; }

 private:
  std::set<std::string> entries_;
  std::string version_;
};

/// Case-insensitive number words ("lakh", "million", ...). Same file format
/// as the emoticon dictionary.
class NumberWordDictionary {
 public:
  static NumberWordDictionary defaults();
  static NumberWordDictionary load(std::istream& in);
  static NumberWordDictionary load_file(const std::string& path);

  bool contains(std::string_view word) const;
  const std::set<std::string>& entries() const { return entries_; }

 private:
  std::set<std::string> entries_;  // stored lowercased
};

struct RuleDictionaries {
  EmoticonDictionary emoticons = EmoticonDictionary::defaults();
  NumberWordDictionary numbers = NumberWordDictionary::defaults();
};

/// Classifies one surface. Branches are evaluated in a fixed order and the
/// first match wins; tokens matching no branch come back deferred.
RuleDecision classify_token(std::string_view surface,
                            const RuleDictionaries& dicts);

struct RuleOutcome {
  std::vector<RuleDecision> decisions;   // aligned 1:1 with tokens
  std::vector<std::size_t> cleaned;      // indices of deferred tokens, increasing
};

RuleOutcome apply_rules(const Sentence& sentence, const RuleDictionaries& dicts);

}  // namespace cmpos

#endif  // CMPOS_RULE_TAGGER_HPP_
