// Porter stemmer (1980), the classical rule tables with the bli->ble and
// logi->log step-2 rows. Expects lowercase input; anything containing a
// character outside [a-z] is returned unchanged.

#include <array>
#include <string>
#include <string_view>

#include "cmpos/text_algorithms.hpp"
#include "cmpos/util.hpp"

namespace cmpos {

namespace {

// Character classes. 'y' is deliberately in both C and V; the measure
// patterns below resolve it to whichever reading lets a match succeed.
// An uppercased initial 'Y' belongs to C only.
bool cls_c(char c) { return !(c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'); }
bool cls_v(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}
enum class Rep { One, Plus, Star };
struct Run {
  bool (*cls)(char);
  Rep rep;
};

// Matches `pattern` against s starting at position `i`; when anchored the
// whole string must be consumed, otherwise a prefix match suffices.
bool match_runs(std::string_view s, const Run* pattern, std::size_t count,
                bool anchored, std::size_t i = 0, std::size_t j = 0) {
  if (j == count) return !anchored || i == s.size();
  const Run& run = pattern[j];
  if (run.rep == Rep::One) {
    return i < s.size() && run.cls(s[i]) &&
           match_runs(s, pattern, count, anchored, i + 1, j + 1);
  }
  std::size_t k = i;
  if (run.rep == Rep::Plus) {
    if (!(k < s.size() && run.cls(s[k]))) return false;
    ++k;
  }
  if (match_runs(s, pattern, count, anchored, k, j + 1)) return true;
  while (k < s.size() && run.cls(s[k])) {
    ++k;
    if (match_runs(s, pattern, count, anchored, k, j + 1)) return true;
  }
  return false;
}

// measure > 0: C* V+ C+ prefix
bool m_gt_0(std::string_view s) {
  static const Run p[] = {{cls_c, Rep::Star}, {cls_v, Rep::Plus}, {cls_c, Rep::Plus}};
  return match_runs(s, p, 3, false);
}

// measure > 1: C* V+ C+ V+ C+ prefix
bool m_gt_1(std::string_view s) {
  static const Run p[] = {{cls_c, Rep::Star},
                          {cls_v, Rep::Plus},
                          {cls_c, Rep::Plus},
                          {cls_v, Rep::Plus},
                          {cls_c, Rep::Plus}};
  return match_runs(s, p, 5, false);
}

// measure == 1: C* V+ C+ V* anchored
bool m_eq_1(std::string_view s) {
  static const Run p[] = {{cls_c, Rep::Star},
                          {cls_v, Rep::Plus},
                          {cls_c, Rep::Plus},
                          {cls_v, Rep::Star}};
  return match_runs(s, p, 4, true);
}

bool has_vowel(std::string_view s) {
  for (char c : s)
    if (cls_v(c)) return true;
  return false;
}

// Whole string is C+ V c where the final consonant is not w, x or y.
bool cvc_shape(std::string_view s) {
  if (s.size() < 3) return false;
  char fin = s.back();
  if (cls_v(fin) || fin == 'w' || fin == 'x') return false;
  if (!cls_v(s[s.size() - 2])) return false;
  for (std::size_t i = 0; i + 2 < s.size(); ++i)
    if (!cls_c(s[i])) return false;
  return true;
}

bool ends_with(std::string_view s, std::string_view suf) {
  return s.size() >= suf.size() && s.substr(s.size() - suf.size()) == suf;
}

struct Rule {
  std::string_view suffix;
  std::string_view replacement;
};

constexpr std::array<Rule, 21> kStep2{{{"ational", "ate"}, {"tional", "tion"},
                                       {"enci", "ence"},   {"anci", "ance"},
                                       {"izer", "ize"},    {"bli", "ble"},
                                       {"alli", "al"},     {"entli", "ent"},
                                       {"eli", "e"},       {"ousli", "ous"},
                                       {"ization", "ize"}, {"ation", "ate"},
                                       {"ator", "ate"},    {"alism", "al"},
                                       {"iveness", "ive"}, {"fulness", "ful"},
                                       {"ousness", "ous"}, {"aliti", "al"},
                                       {"iviti", "ive"},   {"biliti", "ble"},
                                       {"logi", "log"}}};

constexpr std::array<Rule, 7> kStep3{{{"icate", "ic"},
                                      {"ative", ""},
                                      {"alize", "al"},
                                      {"iciti", "ic"},
                                      {"ical", "ic"},
                                      {"ful", ""},
                                      {"ness", ""}}};

constexpr std::array<Rule, 18> kStep4{{{"al", ""},    {"ance", ""},
                                       {"ence", ""},  {"er", ""},
                                       {"ic", ""},    {"able", ""},
                                       {"ible", ""},  {"ant", ""},
                                       {"ement", ""}, {"ment", ""},
                                       {"ent", ""},   {"ou", ""},
                                       {"ism", ""},   {"ate", ""},
                                       {"iti", ""},   {"ous", ""},
                                       {"ive", ""},   {"ize", ""}}};

// Longest list suffix leaving a non-empty stem, or nullptr.
template <std::size_t N>
const Rule* find_suffix(std::string_view word, const std::array<Rule, N>& rules) {
  const Rule* best = nullptr;
  for (const Rule& r : rules) {
    if (word.size() > r.suffix.size() && ends_with(word, r.suffix)) {
      if (!best || r.suffix.size() > best->suffix.size()) best = &r;
    }
  }
  return best;
}

}  // namespace

std::string porter_stem(std::string_view input) {
  for (char c : input)
    if (!is_ascii_lower(c)) return std::string(input);
  if (input.size() < 3) return std::string(input);

  std::string w(input);
  // Mark an initial y as a consonant for the duration of the algorithm.
  if (w[0] == 'y') w[0] = 'Y';

  // Step 1a
  if (ends_with(w, "sses") && w.size() > 4) {
    w.erase(w.size() - 2);
  } else if (ends_with(w, "ies") && w.size() > 3) {
    w.erase(w.size() - 2);
  } else if (w.size() > 2 && w.back() == 's' && w[w.size() - 2] != 's') {
    w.pop_back();
  }

  // Step 1b
  if (ends_with(w, "eed") && w.size() > 3) {
    if (m_gt_0(std::string_view(w).substr(0, w.size() - 3))) w.pop_back();
  } else {
    std::string_view stem;
    bool matched = false;
    if (ends_with(w, "ing") && w.size() > 3) {
      stem = std::string_view(w).substr(0, w.size() - 3);
      matched = true;
    } else if (ends_with(w, "ed") && w.size() > 2) {
      stem = std::string_view(w).substr(0, w.size() - 2);
      matched = true;
    }
    if (matched && has_vowel(stem)) {
      w.resize(stem.size());
      if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w += 'e';
      } else if (w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] &&
                 !cls_v(w.back()) && w.back() != 'l' && w.back() != 's' &&
                 w.back() != 'z' && w.back() != 'y') {
        w.pop_back();
      } else if (cvc_shape(w)) {
        w += 'e';
      }
    }
  }

  // Step 1c
  if (w.size() >= 2 && w.back() == 'y' &&
      has_vowel(std::string_view(w).substr(0, w.size() - 1))) {
    w.back() = 'i';
  }

  // Step 2
  if (const Rule* r = find_suffix(w, kStep2)) {
    std::string_view stem = std::string_view(w).substr(0, w.size() - r->suffix.size());
    if (m_gt_0(stem)) w = std::string(stem) + std::string(r->replacement);
  }

  // Step 3
  if (const Rule* r = find_suffix(w, kStep3)) {
    std::string_view stem = std::string_view(w).substr(0, w.size() - r->suffix.size());
    if (m_gt_0(stem)) w = std::string(stem) + std::string(r->replacement);
  }

  // Step 4
  if (const Rule* r = find_suffix(w, kStep4)) {
    std::string_view stem = std::string_view(w).substr(0, w.size() - r->suffix.size());
    if (m_gt_1(stem)) w.erase(w.size() - r->suffix.size());
  } else if (ends_with(w, "ion") && w.size() > 4 &&
             (w[w.size() - 4] == 's' || w[w.size() - 4] == 't')) {
    std::string_view stem = std::string_view(w).substr(0, w.size() - 3);
    if (m_gt_1(stem)) w.erase(w.size() - 3);
  }

  // Step 5a
  if (w.size() >= 2 && w.back() == 'e') {
    std::string_view stem = std::string_view(w).substr(0, w.size() - 1);
    if (m_gt_1(stem) || (m_eq_1(stem) && !cvc_shape(stem))) w.pop_back();
  }

  // Step 5b
  if (ends_with(w, "ll") && m_gt_1(w)) w.pop_back();

  if (w[0] == 'Y') w[0] = 'y';
  return w;
}

}  // namespace cmpos
