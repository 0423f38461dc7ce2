// cmpos/feature_extractor.hpp -- turns each cleaned token, in sentence
// context, into named feature strings across the active feature families.

#ifndef CMPOS_FEATURE_EXTRACTOR_HPP_
#define CMPOS_FEATURE_EXTRACTOR_HPP_

#include <string>
#include <vector>

#include "cmpos/corpus.hpp"
#include "cmpos/feature_template.hpp"
#include "cmpos/lexicon.hpp"
#include "cmpos/rule_tagger.hpp"
#include "cmpos/sequence.hpp"

namespace cmpos {

struct CleanedToken {
  std::string surface;
  std::string lang;  // empty = unknown; "en" marks English
};

/// Emits the feature strings for seq[index]. Context and position are
/// computed over `seq` as given; BOS/EOS sentinels pad beyond the edges.
FeatureVector extract(const std::vector<CleanedToken>& seq, std::size_t index,
                      const Lexicon& lexicon, const FeatureTemplate& tmpl);

/// Feature vectors for the cleaned positions of one sentence, honoring the
/// template basis (cleaned subsequence vs raw sentence indexing). The result
/// aligns 1:1 with `cleaned`.
std::vector<FeatureVector> featurize_sentence(
    const Sentence& sentence, const std::vector<std::size_t>& cleaned,
    const Lexicon& lexicon, const FeatureTemplate& tmpl);

/// One labeled sequence per sentence whose cleaned subsequence is non-empty.
/// Gold labels of `kind` are required on every cleaned token.
std::vector<LabeledSequence> featurize_corpus(const Corpus& corpus,
                                              const RuleDictionaries& dicts,
                                              const Lexicon& lexicon,
                                              const FeatureTemplate& tmpl,
                                              TagsetKind kind);

/// True when the token counts as English for the stem/phonetic features:
/// the language code says "en", or, with no code, the surface is purely
/// ASCII-alphabetic.
bool is_english_token(const std::string& surface, const std::string& lang);

}  // namespace cmpos

#endif  // CMPOS_FEATURE_EXTRACTOR_HPP_
