// cmpos/text_algorithms.hpp -- string algorithms used by feature extraction:
// orthographic normalization, word-class squeezing, Porter stemming and
// Double Metaphone phonetic coding.

#ifndef CMPOS_TEXT_ALGORITHMS_HPP_
#define CMPOS_TEXT_ALGORITHMS_HPP_

#include <string>
#include <string_view>

namespace cmpos {

/// Maps every uppercase letter to 'A', lowercase to 'a' and digit to '0';
/// all other characters pass through unchanged. Length-preserving
/// (in codepoints). Case is decided for ASCII and the Latin-1 letter block;
/// other scripts pass through.
std::string normalize_word(std::string_view surface);

/// normalize_word() with maximal runs of identical characters squeezed to a
/// single character, e.g. "AAAaaa" -> "Aa".
std::string word_class(std::string_view surface);

/// Porter stemmer over lowercase English words. Inputs containing anything
/// outside [a-z] are returned unchanged; callers lowercase beforehand.
std::string porter_stem(std::string_view word);

struct PhoneticCodes {
  std::string primary;
  std::string secondary;  // equals primary when no alternate pronunciation
};

/// Double Metaphone codes. Codes are full length (no 4-character cutoff) and
/// use only the symbols {A,F,H,J,K,L,M,N,P,R,S,T,W,X,0}.
PhoneticCodes double_metaphone(std::string_view word);

}  // namespace cmpos

#endif  // CMPOS_TEXT_ALGORITHMS_HPP_
