#include "cmpos/feature_extractor.hpp"

#include "cmpos/text_algorithms.hpp"
#include "cmpos/util.hpp"

namespace cmpos {

namespace {

bool is_ascii_punct(char c) {
  unsigned char b = static_cast<unsigned char>(c);
  return b >= 0x21 && b <= 0x7E && !is_ascii_alpha(c) && !is_ascii_digit(c);
}

std::string lowercase_ascii(const std::string& s) {
  std::string out(s);
  for (char& c : out)
    if (is_ascii_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  return out;
}

void add(FeatureVector& fv, const std::string& name, const std::string& value) {
  fv.push_back(name + "=" + value);
}

void add_flag(FeatureVector& fv, const char* name, bool value) {
  fv.push_back(std::string(name) + (value ? "=1" : "=0"));
}

}  // namespace

bool is_english_token(const std::string& surface, const std::string& lang) {
  if (!lang.empty()) {
    return lowercase_ascii(lang) == "en";
  }
  if (surface.empty()) return false;
  for (char c : surface)
    if (!is_ascii_alpha(c)) return false;
  return true;
}

FeatureVector extract(const std::vector<CleanedToken>& seq, std::size_t index,
                      const Lexicon& lexicon, const FeatureTemplate& tmpl) {
  if (index >= seq.size())
    throw Error("extract: index " + std::to_string(index) +
                " out of bounds for sequence of length " +
                std::to_string(seq.size()));

  const std::string& w = seq[index].surface;
  const std::size_t len = w.size();
  FeatureVector fv;

  if (tmpl.context) {
    for (int offset = tmpl.ctx_lo; offset <= tmpl.ctx_hi; ++offset) {
      const long pos = static_cast<long>(index) + offset;
      std::string name = "CTX[" + std::to_string(offset) + "]";
      if (pos < 0)
        add(fv, name, "BOS");
      else if (pos >= static_cast<long>(seq.size()))
        add(fv, name, "EOS");
      else
        add(fv, name, seq[static_cast<std::size_t>(pos)].surface);
    }
  }

  for (int order : tmpl.ngram_orders) {
    const std::size_t n = static_cast<std::size_t>(order);
    if (n > len) continue;
    for (std::size_t i = 0; i + n <= len; ++i) {
      add(fv, "NGRAM[" + std::to_string(order) + "][" + std::to_string(i) + "]",
          w.substr(i, n));
    }
  }

  if (tmpl.norm) add(fv, "NORM", normalize_word(w));

  if (tmpl.prefix_len > 0) {
    const std::size_t k = static_cast<std::size_t>(tmpl.prefix_len);
    add(fv, "PRE" + std::to_string(tmpl.prefix_len),
        len <= k ? w : w.substr(0, k));
  }
  if (tmpl.suffix_len > 0) {
    const std::size_t k = static_cast<std::size_t>(tmpl.suffix_len);
    add(fv, "SUF" + std::to_string(tmpl.suffix_len),
        len <= k ? w : w.substr(len - k));
  }

  if (tmpl.wordclass) add(fv, "WCLASS", word_class(w));

  if (tmpl.position) {
    double rel = static_cast<double>(index + 1) / static_cast<double>(seq.size());
    add(fv, "POS_REL", format_fixed(rel, 2));
  }

  if (tmpl.upper_ratio) {
    std::size_t uppers = 0;
    for (char c : w)
      if (is_ascii_upper(c)) ++uppers;
    double ratio = len == 0 ? 0.0
                            : static_cast<double>(uppers) /
                                  static_cast<double>(len);
    add(fv, "UPPER_RATIO", format_fixed(ratio, 2));
  }

  if (tmpl.top1 || tmpl.top2) {
    const std::vector<std::string>& inventory = lexicon.tag_inventory();
    if (tmpl.top1) {
      std::vector<int> bits = lexicon.top_k_bits(w, 1);
      for (std::size_t t = 0; t < bits.size(); ++t)
        if (bits[t]) add(fv, "TOP1[" + inventory[t] + "]", "1");
    }
    if (tmpl.top2) {
      std::vector<int> bits = lexicon.top_k_bits(w, 2);
      for (std::size_t t = 0; t < bits.size(); ++t)
        if (bits[t]) add(fv, "TOP2[" + inventory[t] + "]", "1");
    }
  }

  if (tmpl.binary) {
    bool all_upper = len > 0;
    bool has_digit = false, has_alpha = false, all_alnum = len > 0,
         all_digit = len > 0;
    for (char c : w) {
      if (!is_ascii_upper(c)) all_upper = false;
      if (is_ascii_digit(c))
        has_digit = true;
      else
        all_digit = false;
      if (is_ascii_alpha(c)) has_alpha = true;
      if (!is_ascii_alpha(c) && !is_ascii_digit(c)) all_alnum = false;
    }
    add_flag(fv, "SUFFLEN",
             len > static_cast<std::size_t>(tmpl.sufflen_threshold));
    add_flag(fv, "ALLCAP", all_upper);
    add_flag(fv, "FIRSTUP", len > 0 && is_ascii_upper(w[0]));
    add_flag(fv, "INITCAP", len > 0 && is_ascii_upper(w[0]));
    add_flag(fv, "INITPUNDIG",
             len > 0 && (is_ascii_punct(w[0]) || is_ascii_digit(w[0])));
    add_flag(fv, "ISDIGIT", all_digit);
    add_flag(fv, "DIGALPHA", all_alnum && has_digit && has_alpha);
    add_flag(fv, "HASHTAG", len > 0 && w[0] == '#');
  }

  if (tmpl.stem || tmpl.phonetic) {
    if (is_english_token(w, seq[index].lang)) {
      const std::string lowered = lowercase_ascii(w);
      if (tmpl.stem) add(fv, "STEM", porter_stem(lowered));
      if (tmpl.phonetic) add(fv, "PHON", double_metaphone(lowered).primary);
    }
  }

  return fv;
}

std::vector<FeatureVector> featurize_sentence(
    const Sentence& sentence, const std::vector<std::size_t>& cleaned,
    const Lexicon& lexicon, const FeatureTemplate& tmpl) {
  std::vector<FeatureVector> out;
  out.reserve(cleaned.size());

  if (tmpl.basis == FeatureTemplate::Basis::Raw) {
    std::vector<CleanedToken> seq;
    seq.reserve(sentence.tokens.size());
    for (const Token& token : sentence.tokens)
      seq.push_back(CleanedToken{token.surface, token.lang});
    for (std::size_t raw_index : cleaned)
      out.push_back(extract(seq, raw_index, lexicon, tmpl));
    return out;
  }

  std::vector<CleanedToken> seq;
  seq.reserve(cleaned.size());
  for (std::size_t raw_index : cleaned) {
    const Token& token = sentence.tokens[raw_index];
    seq.push_back(CleanedToken{token.surface, token.lang});
  }
  for (std::size_t i = 0; i < seq.size(); ++i)
    out.push_back(extract(seq, i, lexicon, tmpl));
  return out;
}

std::vector<LabeledSequence> featurize_corpus(const Corpus& corpus,
                                              const RuleDictionaries& dicts,
                                              const Lexicon& lexicon,
                                              const FeatureTemplate& tmpl,
                                              TagsetKind kind) {
  std::vector<LabeledSequence> sequences;
  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& sentence = corpus.sentences[si];
    RuleOutcome outcome = apply_rules(sentence, dicts);
    if (outcome.cleaned.empty()) continue;

    LabeledSequence seq;
    seq.features = featurize_sentence(sentence, outcome.cleaned, lexicon, tmpl);
    seq.labels.reserve(outcome.cleaned.size());
    for (std::size_t raw_index : outcome.cleaned) {
      const Token& token = sentence.tokens[raw_index];
      const std::string& tag = token.tag(kind);
      if (tag.empty())
        throw Error("sentence " + std::to_string(si) + ": cleaned token '" +
                    token.surface + "' has no " + tagset_kind_name(kind) +
                    " tag");
      seq.labels.push_back(tag);
    }
    sequences.push_back(std::move(seq));
  }
  return sequences;
}

}  // namespace cmpos
