// Double Metaphone phonetic coding (Philips 2000). Emits full-length codes;
// primary and secondary differ only where an alternate pronunciation exists.
// Operates on ASCII letters; other bytes are skipped.

#include <string>
#include <string_view>

#include "cmpos/text_algorithms.hpp"
#include "cmpos/util.hpp"

namespace cmpos {

namespace {

// The word is padded with five trailing spaces; reads outside the padded
// range yield '\0', which no character class matches.
struct Word {
  std::string padded;   // uppercased word + "     "
  std::size_t length;   // length of the word itself
  std::size_t last;     // length - 1

  char at(std::ptrdiff_t i) const {
    if (i < 0 || i >= static_cast<std::ptrdiff_t>(padded.size())) return '\0';
    return padded[static_cast<std::size_t>(i)];
  }

  // JavaScript String.prototype.slice semantics, which the reference
  // implementation relies on (negative starts count from the end).
  std::string slice(std::ptrdiff_t from, std::ptrdiff_t to) const {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(padded.size());
    if (from < 0) from += n;
    if (from < 0) from = 0;
    if (to < 0) to += n;
    if (to > n) to = n;
    if (from >= to) return "";
    return padded.substr(static_cast<std::size_t>(from),
                         static_cast<std::size_t>(to - from));
  }

  std::string tail(std::ptrdiff_t from) const {
    return slice(from, static_cast<std::ptrdiff_t>(padded.size()));
  }
};

bool is_vowel(char c) {
  return c == 'A' || c == 'E' || c == 'I' || c == 'O' || c == 'U' || c == 'Y';
}

bool one_of(char c, std::string_view set) {
  return c != '\0' && set.find(c) != std::string_view::npos;
}

bool contains(std::string_view hay, std::string_view needle) {
  return hay.find(needle) != std::string_view::npos;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

bool is_slavo_germanic(const std::string& s) {
  return contains(s, "W") || contains(s, "K") || contains(s, "CZ");
}

bool is_germanic(const std::string& s) {
  return starts_with(s, "VAN ") || starts_with(s, "VON ") ||
         starts_with(s, "SCH");
}

bool initial_exception(const std::string& s) {
  return starts_with(s, "GN") || starts_with(s, "KN") ||
         starts_with(s, "PN") || starts_with(s, "WR") || starts_with(s, "PS");
}

// Greek roots where initial CH sounds like K: chemistry, chorus, chianti...
bool initial_greek_ch(const std::string& s) {
  if (starts_with(s, "CHIA") || starts_with(s, "CHEM") ||
      starts_with(s, "CHYM") || starts_with(s, "CHARAC") ||
      starts_with(s, "CHARIS"))
    return true;
  return starts_with(s, "CHOR") && (s.size() < 5 || s[4] != 'E');
}

bool greek_ch(std::string_view s) {
  return contains(s, "ORCHES") || contains(s, "ARCHIT") ||
         contains(s, "ORCHID");
}

// -ges-, -gep-, ... at the beginning: either K or J.
bool initial_g_for_kj(std::string_view two) {
  if (two.empty()) return false;
  if (two[0] == 'Y') return two.size() > 1;
  if (two.size() < 2) return false;
  if (two[0] == 'E') return one_of(two[1], "BILPRSY");
  if (two[0] == 'I') return one_of(two[1], "BELN");
  return false;
}

bool initial_anger_exception(std::string_view six) {
  return six.size() >= 6 && one_of(six[0], "DMR") && six.substr(1, 5) == "ANGER";
}

bool dutch_sch(std::string_view two) {
  if (two.size() < 2) return false;
  if (two[0] == 'E') return one_of(two[1], "DMNR");
  return two == "UY" || two == "OO";
}

}  // namespace

PhoneticCodes double_metaphone(std::string_view input) {
  Word w;
  w.padded.reserve(input.size() + 5);
  for (char c : input) {
    w.padded += is_ascii_lower(c) ? static_cast<char>(c - 'a' + 'A') : c;
  }
  w.padded += "     ";
  w.length = input.size();
  w.last = w.length == 0 ? 0 : w.length - 1;

  std::string pri, sec;
  std::ptrdiff_t i = 0;
  const std::ptrdiff_t length = static_cast<std::ptrdiff_t>(w.length);
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(w.last);
  const bool slavo = is_slavo_germanic(w.padded);
  const bool germanic = is_germanic(w.padded);

  if (initial_exception(w.padded)) i++;

  if (w.at(0) == 'X') {
    pri += 'S';
    sec += 'S';
    i++;
  }

  while (i < length) {
    const char prev = w.at(i - 1);
    const char next = w.at(i + 1);
    const char nextnext = w.at(i + 2);

    switch (w.at(i)) {
      case 'A':
      case 'E':
      case 'I':
      case 'O':
      case 'U':
      case 'Y':
        if (i == 0) {
          pri += 'A';
          sec += 'A';
        }
        i++;
        break;
      case 'B':
        pri += 'P';
        sec += 'P';
        if (next == 'B') i++;
        i++;
        break;
      case 'C': {
        // Various Germanic: -ACH- with a consonant before, e.g. "macher".
        if (prev == 'A' && next == 'H' && nextnext != 'I' &&
            !is_vowel(w.at(i - 2)) &&
            (nextnext != 'E' || w.slice(i - 2, i + 4) == "BACHER" ||
             w.slice(i - 2, i + 4) == "MACHER")) {
          pri += 'K';
          sec += 'K';
          i += 2;
          break;
        }
        if (i == 0 && w.slice(1, 6) == "AESAR") {
          pri += 'S';
          sec += 'S';
          i += 2;
          break;
        }
        if (w.slice(i + 1, i + 4) == "HIA") {
          pri += 'K';
          sec += 'K';
          i += 2;
          break;
        }
        if (next == 'H') {
          if (i > 0 && nextnext == 'A' && w.at(i + 3) == 'E') {
            pri += 'K';
            sec += 'X';
            i += 2;
            break;
          }
          if (i == 0 && initial_greek_ch(w.padded)) {
            pri += 'K';
            sec += 'K';
            i += 2;
            break;
          }
          if (germanic || greek_ch(w.slice(i - 2, i + 4)) || nextnext == 'T' ||
              nextnext == 'S' ||
              ((i == 0 || prev == 'A' || prev == 'E' || prev == 'O' ||
                prev == 'U') &&
               one_of(nextnext, " BFHLMNRVW"))) {
            pri += 'K';
            sec += 'K';
          } else if (i == 0) {
            pri += 'X';
            sec += 'X';
          } else if (w.slice(0, 2) == "MC") {
            pri += 'K';
            sec += 'K';
          } else {
            pri += 'X';
            sec += 'K';
          }
          i += 2;
          break;
        }
        if (next == 'Z' && w.slice(i - 2, i) != "WI") {
          pri += 'S';
          sec += 'X';
          i += 2;
          break;
        }
        if (w.slice(i + 1, i + 4) == "CIA") {
          pri += 'X';
          sec += 'X';
          i += 3;
          break;
        }
        if (next == 'C' && !(i == 1 && w.at(0) == 'M')) {
          if ((nextnext == 'I' || nextnext == 'E' || nextnext == 'H') &&
              w.slice(i + 2, i + 4) != "HU") {
            const std::string sub = w.slice(i - 1, i + 4);
            if ((i == 1 && prev == 'A') || sub == "UCCEE" || sub == "UCCES") {
              pri += "KS";
              sec += "KS";
            } else {
              pri += 'X';
              sec += 'X';
            }
            i += 3;
            break;
          }
          pri += 'K';
          sec += 'K';
          i += 2;
          break;
        }
        if (next == 'G' || next == 'K' || next == 'Q') {
          pri += 'K';
          sec += 'K';
          i += 2;
          break;
        }
        if (next == 'I' && (nextnext == 'E' || nextnext == 'O')) {
          pri += 'S';
          sec += 'X';
          i += 2;
          break;
        }
        if (next == 'I' || next == 'E' || next == 'Y') {
          pri += 'S';
          sec += 'S';
          i += 2;
          break;
        }
        pri += 'K';
        sec += 'K';
        if (next == ' ' && (nextnext == 'C' || nextnext == 'G' || nextnext == 'Q')) {
          i += 3;
          break;
        }
        i++;
        break;
      }
      case 'D':
        if (next == 'G') {
          if (nextnext == 'E' || nextnext == 'I' || nextnext == 'Y') {
            pri += 'J';
            sec += 'J';
            i += 3;
          } else {
            pri += "TK";
            sec += "TK";
            i += 2;
          }
          break;
        }
        if (next == 'T' || next == 'D') {
          pri += 'T';
          sec += 'T';
          i += 2;
          break;
        }
        pri += 'T';
        sec += 'T';
        i++;
        break;
      case 'F':
        if (next == 'F') i++;
        i++;
        pri += 'F';
        sec += 'F';
        break;
      case 'G':
        if (next == 'H') {
          if (i > 0 && !is_vowel(prev)) {
            pri += 'K';
            sec += 'K';
            i += 2;
            break;
          }
          if (i == 0) {
            if (nextnext == 'I') {
              pri += 'J';
              sec += 'J';
            } else {
              pri += 'K';
              sec += 'K';
            }
            i += 2;
            break;
          }
          // Parker's rule: silent GH as in "hugh", "bough", "broughton".
          if (one_of(w.at(i - 2), "BHD") || one_of(w.at(i - 3), "BHD") ||
              one_of(w.at(i - 4), "BH")) {
            i += 2;
            break;
          }
          if (i > 2 && prev == 'U' && one_of(w.at(i - 3), "CGLRT")) {
            pri += 'F';
            sec += 'F';
          } else if (i > 0 && prev != 'I') {
            pri += 'K';
            sec += 'K';
          }
          i += 2;
          break;
        }
        if (next == 'N') {
          if (i == 1 && is_vowel(w.at(0)) && !slavo) {
            pri += "KN";
            sec += 'N';
          } else if (w.slice(i + 2, i + 4) != "EY" && w.tail(i + 1) != "Y" &&
                     !slavo) {
            pri += 'N';
            sec += "KN";
          } else {
            pri += "KN";
            sec += "KN";
          }
          i += 2;
          break;
        }
        if (w.slice(i + 1, i + 3) == "LI" && !slavo) {
          pri += "KL";
          sec += 'L';
          i += 2;
          break;
        }
        if (i == 0 && initial_g_for_kj(w.slice(1, 3))) {
          pri += 'K';
          sec += 'J';
          i += 2;
          break;
        }
        if ((w.slice(i + 1, i + 3) == "ER" && prev != 'I' && prev != 'E' &&
             !initial_anger_exception(w.slice(0, 6))) ||
            (next == 'Y' && !one_of(prev, "EGIR"))) {
          pri += 'K';
          sec += 'J';
          i += 2;
          break;
        }
        if (next == 'E' || next == 'I' || next == 'Y' ||
            ((prev == 'A' || prev == 'O') && next == 'G' && nextnext == 'I')) {
          if (w.slice(i + 1, i + 3) == "ET" || germanic) {
            pri += 'K';
            sec += 'K';
          } else {
            pri += 'J';
            sec += w.slice(i + 1, i + 5) == "IER " ? 'J' : 'K';
          }
          i += 2;
          break;
        }
        if (next == 'G') i++;
        i++;
        pri += 'K';
        sec += 'K';
        break;
      case 'H':
        // Keep only if initial and before a vowel, or between two vowels.
        if (is_vowel(next) && (i == 0 || is_vowel(prev))) {
          pri += 'H';
          sec += 'H';
          i++;
        }
        i++;
        break;
      case 'J':
        if (w.slice(i, i + 4) == "JOSE" || w.slice(0, 4) == "SAN ") {
          if (w.slice(0, 4) == "SAN " || (i == 0 && w.at(i + 4) == ' ')) {
            pri += 'H';
            sec += 'H';
          } else {
            pri += 'J';
            sec += 'H';
          }
          i++;
          break;
        }
        if (i == 0) {
          pri += 'J';
          sec += 'A';
        } else if (!slavo && (next == 'A' || next == 'O') && is_vowel(prev)) {
          pri += 'J';
          sec += 'H';
        } else if (i == last) {
          pri += 'J';
        } else if (prev != 'S' && prev != 'K' && prev != 'L' &&
                   !one_of(next, "LTKSNMBZ")) {
          pri += 'J';
          sec += 'J';
        } else if (next == 'J') {
          i++;
        }
        i++;
        break;
      case 'K':
        if (next == 'K') i++;
        pri += 'K';
        sec += 'K';
        i++;
        break;
      case 'L':
        if (next == 'L') {
          // Spanish -illo/-illa/-alle as in "cabrillo", "gallegos".
          const std::string lastTwo = w.slice(last - 1, length);
          if ((i == length - 3 &&
               ((prev == 'A' && nextnext == 'E') ||
                (prev == 'I' && (nextnext == 'O' || nextnext == 'A')))) ||
              (prev == 'A' && nextnext == 'E' &&
               (w.at(last) == 'A' || w.at(last) == 'O' ||
                lastTwo == "AS" || lastTwo == "OS"))) {
            pri += 'L';
            i += 2;
            break;
          }
          i++;
        }
        pri += 'L';
        sec += 'L';
        i++;
        break;
      case 'M':
        if (next == 'M' ||
            (prev == 'U' && next == 'B' &&
             (i + 1 == last || w.slice(i + 2, i + 4) == "ER"))) {
          i++;
        }
        i++;
        pri += 'M';
        sec += 'M';
        break;
      case 'N':
        if (next == 'N') i++;
        i++;
        pri += 'N';
        sec += 'N';
        break;
      case 'P':
        if (next == 'H') {
          pri += 'F';
          sec += 'F';
          i += 2;
          break;
        }
        if (next == 'P' || next == 'B') i++;
        i++;
        pri += 'P';
        sec += 'P';
        break;
      case 'Q':
        if (next == 'Q') i++;
        i++;
        pri += 'K';
        sec += 'K';
        break;
      case 'R':
        // French final -ier as in "rogier", but not "hochmeier".
        if (i == last && !slavo && prev == 'E' && w.at(i - 2) == 'I' &&
            w.at(i - 4) != 'M' && w.at(i - 3) != 'E' && w.at(i - 3) != 'A') {
          sec += 'R';
        } else {
          pri += 'R';
          sec += 'R';
        }
        if (next == 'R') i++;
        i++;
        break;
      case 'S': {
        // Silent S in "island", "isle", "carlisle".
        if (next == 'L' && (prev == 'I' || prev == 'Y')) {
          i++;
          break;
        }
        if (i == 0 && w.slice(1, 5) == "UGAR") {
          pri += 'X';
          sec += 'S';
          i++;
          break;
        }
        if (next == 'H') {
          const std::string four = w.slice(i + 1, i + 5);
          if (contains(four, "EIM") || contains(four, "OEK") ||
              contains(four, "OLM") || contains(four, "OLZ")) {
            pri += 'S';
            sec += 'S';
          } else {
            pri += 'X';
            sec += 'X';
          }
          i += 2;
          break;
        }
        if (next == 'I' && (nextnext == 'O' || nextnext == 'A')) {
          pri += 'S';
          sec += slavo ? 'S' : 'X';
          i += 3;
          break;
        }
        if (next == 'Z' ||
            (i == 0 &&
             (next == 'L' || next == 'M' || next == 'N' || next == 'W'))) {
          pri += 'S';
          sec += 'X';
          if (next == 'Z') i++;
          i++;
          break;
        }
        if (next == 'C') {
          if (nextnext == 'H') {
            const std::string two = w.slice(i + 3, i + 5);
            if (dutch_sch(two)) {
              if (two == "ER" || two == "EN") {
                pri += 'X';
                sec += "SK";
              } else {
                pri += "SK";
                sec += "SK";
              }
              i += 3;
              break;
            }
            if (i == 0 && !is_vowel(w.at(3)) && w.at(3) != 'W') {
              pri += 'X';
              sec += 'S';
            } else {
              pri += 'X';
              sec += 'X';
            }
            i += 3;
            break;
          }
          if (nextnext == 'I' || nextnext == 'E' || nextnext == 'Y') {
            pri += 'S';
            sec += 'S';
            i += 3;
            break;
          }
          pri += "SK";
          sec += "SK";
          i += 3;
          break;
        }
        const std::string before = w.slice(i - 2, i);
        if (i == last && (before == "AI" || before == "OI")) {
          sec += 'S';
        } else {
          pri += 'S';
          sec += 'S';
        }
        if (next == 'S') i++;
        i++;
        break;
      }
      case 'T':
        if (next == 'I' && nextnext == 'O' && w.at(i + 3) == 'N') {
          pri += 'X';
          sec += 'X';
          i += 3;
          break;
        }
        if ((next == 'I' && nextnext == 'A') ||
            (next == 'C' && nextnext == 'H')) {
          pri += 'X';
          sec += 'X';
          i += 3;
          break;
        }
        if (next == 'H' || (next == 'T' && nextnext == 'H')) {
          if (germanic ||
              ((nextnext == 'O' || nextnext == 'A') && w.at(i + 3) == 'M')) {
            pri += 'T';
            sec += 'T';
          } else {
            pri += '0';
            sec += 'T';
          }
          i += 2;
          break;
        }
        if (next == 'T' || next == 'D') i++;
        i++;
        pri += 'T';
        sec += 'T';
        break;
      case 'V':
        if (next == 'V') i++;
        pri += 'F';
        sec += 'F';
        i++;
        break;
      case 'W':
        if (next == 'R') {
          pri += 'R';
          sec += 'R';
          i += 2;
          break;
        }
        if (i == 0) {
          if (is_vowel(next)) {
            pri += 'A';
            sec += 'F';
          } else if (next == 'H') {
            pri += 'A';
            sec += 'A';
          }
        }
        if (((prev == 'E' || prev == 'O') && next == 'S' && nextnext == 'K' &&
             (w.at(i + 3) == 'I' || w.at(i + 3) == 'Y')) ||
            w.slice(0, 3) == "SCH" || (i == last && is_vowel(prev))) {
          sec += 'F';
          i++;
          break;
        }
        if (next == 'I' && (nextnext == 'C' || nextnext == 'T') &&
            w.at(i + 3) == 'Z') {
          pri += "TS";
          sec += "FX";
          i += 4;
          break;
        }
        i++;
        break;
      case 'X':
        if (!(i == last && prev == 'U' &&
              (w.at(i - 2) == 'A' || w.at(i - 2) == 'O'))) {
          pri += "KS";
          sec += "KS";
        }
        if (next == 'C' || next == 'X') i++;
        i++;
        break;
      case 'Z':
        if (next == 'H') {
          pri += 'J';
          sec += 'J';
          i += 2;
          break;
        }
        if ((next == 'Z' &&
             (nextnext == 'A' || nextnext == 'I' || nextnext == 'O')) ||
            (slavo && i > 0 && prev != 'T')) {
          pri += 'S';
          sec += "TS";
        } else {
          pri += 'S';
          sec += 'S';
        }
        if (next == 'Z') i++;
        i++;
        break;
      default:
        i++;
        break;
    }
  }

  return PhoneticCodes{pri, sec};
}

}  // namespace cmpos
