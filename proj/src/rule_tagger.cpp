#include "cmpos/rule_tagger.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "cmpos/util.hpp"

namespace cmpos {

namespace {

// Compiled-in copies of the shipped dictionary files, used when no file is
// given on the command line.
constexpr const char* kDefaultEmoticons[] = {
    ":)",    ":(",    ":))",   ":((",   ":)))",  ":-)",   ":-(",   ":D",
    ":-D",   ":d",    "=D",    "xD",    "XD",    "xd",    ":P",    ":-P",
    ":p",    ":-p",   ";P",    ";p",    ":O",    ":-O",   ":o",    ":-o",
    ";)",    ";-)",   ";(",    ";D",    ":'(",   ":')",   ":/",    ":-/",
    ":\\",   ":-\\",  ":|",    ":-|",   ":*",    ":-*",   ";*",    ":3",
    "<3",    "</3",   "<33",   "<333",  "=)",    "=(",    "=P",    "=p",
    "=/",    "=\\",   "=|",    "=*",    "=[",    "=]",    ":[",    ":]",
    ":-[",   ":-]",   ";]",    ";[",    ":{",    ":}",    ":-}",   ":-{",
    "8)",    "8-)",   "8D",    "8-D",   "B)",    "B-)",   "^_^",   "^-^",
    "^^",    "-_-",   "o_o",   "O_o",   "o_O",   "O_O",   "0_0",   ">_<",
    ">.<",   "T_T",   "T.T",   "-.-",   "._.",   ":-x",   ":x",    ":X",
    ":-X",   "xP",    "xp",    "x(",    "x)",    "D:",    "D;",    ":c",
    ":C",    "c:",    "(:",    "):",    "(;",    ");",    ":v",    ":V",
};

constexpr const char* kDefaultNumberWords[] = {
    "lakh", "crore", "million", "billion", "thousand", "hundred",
};

bool is_branch1_punct(char c) {
  // Sentence punctuation only. The set deliberately leaves out '~' (which
  // has its own branch), '@'/'#' (mention and hashtag markers) and the
  // emoticon alphabet, so tokens like ":)", "-_-" or a bare "@" fall through
  // to the branches that own them.
  switch (c) {
    case '.': case ',': case '!': case '?': case ';': case ':':
    case '\'': case '"': case '`':
      return true;
    default:
      return false;
  }
}

bool all_punctuation(std::string_view s) {
  for (char c : s)
    if (!is_branch1_punct(c)) return false;
  return true;
}

bool contains_non_printable_ascii(std::string_view s) {
  for (char c : s) {
    unsigned char b = static_cast<unsigned char>(c);
    if (b == '\t') continue;
    if (b < 0x20 || b > 0x7E) return true;
  }
  return false;
}

bool all_digits(std::string_view s) {
  for (char c : s)
    if (!is_ascii_digit(c)) return false;
  return true;
}

bool ends_with(std::string_view s, std::string_view suf) {
  return s.size() >= suf.size() && s.substr(s.size() - suf.size()) == suf;
}

bool starts_with(std::string_view s, std::string_view pre) {
  return s.substr(0, pre.size()) == pre;
}

// Eye-mouth ASCII emoticons such as ":)", ";-D", "=P".
bool matches_emoticon_pattern(std::string_view s) {
  if (s.size() < 2 || s.size() > 3) return false;
  auto eye = [](char c) { return c == ':' || c == ';' || c == '=' || c == '8'; };
  auto nose = [](char c) { return c == '-' || c == '^' || c == '\''; };
  auto mouth = [](char c) {
    switch (c) {
      case ')': case '(': case 'D': case 'P': case 'p': case 'O':
      case '3': case '/': case '\\': case '|':
        return true;
      default:
        return false;
    }
  };
  if (!eye(s[0]) || !mouth(s.back())) return false;
  return s.size() == 2 || nose(s[1]);
}

std::string to_lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (is_ascii_upper(c)) c = static_cast<char>(c - 'A' + 'a');
  return out;
}

std::set<std::string> read_dictionary_lines(std::istream& in) {
  std::set<std::string> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    entries.insert(line);
  }
  return entries;
}

RuleDecision tagged(std::string fine, std::string coarse, std::string rule_id) {
  return RuleDecision{true, std::move(fine), std::move(coarse),
                      std::move(rule_id)};
}

}  // namespace

EmoticonDictionary EmoticonDictionary::defaults() {
  EmoticonDictionary dict;
  for (const char* e : kDefaultEmoticons) dict.entries_.insert(e);
  dict.version_ = "builtin";
  return dict;
}

EmoticonDictionary EmoticonDictionary::load(std::istream& in,
                                            const std::string& version) {
  EmoticonDictionary dict;
  dict.entries_ = read_dictionary_lines(in);
  dict.version_ = version;
  if (dict.entries_.empty()) throw Error("emoticon dictionary is empty");
  return dict;
}

EmoticonDictionary EmoticonDictionary::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open emoticon dictionary: " + path);
  return load(in, path);
}

bool EmoticonDictionary::contains(std::string_view entry) const {
  return entries_.count(std::string(entry)) != 0;
}

NumberWordDictionary NumberWordDictionary::defaults() {
  NumberWordDictionary dict;
  for (const char* w : kDefaultNumberWords) dict.entries_.insert(w);
  return dict;
}

NumberWordDictionary NumberWordDictionary::load(std::istream& in) {
  NumberWordDictionary dict;
  for (const std::string& entry : read_dictionary_lines(in))
    dict.entries_.insert(to_lower_ascii(entry));
  if (dict.entries_.empty()) throw Error("number-word dictionary is empty");
  return dict;
}

NumberWordDictionary NumberWordDictionary::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open number-word dictionary: " + path);
  return load(in);
}

bool NumberWordDictionary::contains(std::string_view word) const {
  return entries_.count(to_lower_ascii(word)) != 0;
}

RuleDecision classify_token(std::string_view w, const RuleDictionaries& dicts) {
  if (w.empty()) throw Error("classify_token: empty surface");

  // 1. punctuation, including repeated runs like "...." and "!.!."
  if (all_punctuation(w)) return tagged("RD_PUNC", "G_X", "punct");
  // 2. tilde anywhere
  if (w.find('~') != std::string_view::npos)
    return tagged("RD_SYM", "G_X", "sym");
  // 3. anything outside printable ASCII
  if (contains_non_printable_ascii(w)) return tagged("RD_UNK", "G_X", "unicode");
  // 4. ordinals: digit-initial with st/nd/rd/th suffix ("1st", "100th")
  if (is_ascii_digit(w[0]) &&
      (ends_with(w, "st") || ends_with(w, "nd") || ends_with(w, "rd") ||
       ends_with(w, "th")))
    return tagged("$", "$", "ordinal");
  // 5. plain numbers
  if (all_digits(w)) return tagged("$", "$", "digits");
  // 6. cellular numbers and textual number words
  if (starts_with(w, "+91") || dicts.numbers.contains(w))
    return tagged("$", "$", "number");
  // 7. web URLs
  if (ends_with(w, ".com") || ends_with(w, ".org") || ends_with(w, ".me") ||
      ends_with(w, ".in") || starts_with(w, "http://") ||
      starts_with(w, "https://") || starts_with(w, "www."))
    return tagged("U", "U", "url");
  // 8. emoticons: regular expression first, then dictionary look-up
  if (matches_emoticon_pattern(w) || dicts.emoticons.contains(w))
    return tagged("E", "E", "emoticon");
  // 9. mentions
  if (w[0] == '@') return tagged("@", "@", "mention");
  // 10. hashtags
  if (w[0] == '#') return tagged("#", "#", "hashtag");
  // 11. everything else goes to the classifier
  return RuleDecision{false, "", "", "defer"};
}

RuleOutcome apply_rules(const Sentence& sentence,
                        const RuleDictionaries& dicts) {
  RuleOutcome outcome;
  outcome.decisions.reserve(sentence.tokens.size());
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    RuleDecision decision = classify_token(sentence.tokens[i].surface, dicts);
    if (!decision.tagged) outcome.cleaned.push_back(i);
    outcome.decisions.push_back(std::move(decision));
  }
  return outcome;
}

}  // namespace cmpos
