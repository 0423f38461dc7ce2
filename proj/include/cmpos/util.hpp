// cmpos/util.hpp -- error type, hashing, formatting and small file helpers.

#ifndef CMPOS_UTIL_HPP_
#define CMPOS_UTIL_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cmpos {

/// All recoverable failures (bad input files, misuse of an API, corrupt
/// models) are reported through this type. The message is the contract:
/// it names the file/line/offset the caller needs to act on.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// FNV-1a, used for manifests, template hashes and input echoes.
// Stability across platforms matters; cryptographic strength does not.
std::uint64_t fnv1a64(std::string_view data);
std::string to_hex64(std::uint64_t value);

// Shortest decimal form that round-trips a double exactly ("%.17g").
std::string format_weight(double value);
// Fixed-point with `digits` decimals; ties resolve to even per IEEE
// correctly-rounded decimal conversion.
std::string format_fixed(double value, int digits);

std::vector<std::string> split(std::string_view text, char sep);

std::string read_file(const std::string& path);
// Writes via a sibling temp file and rename so readers never observe a
// partial file.
void write_file_atomic(const std::string& path, std::string_view content);

bool is_ascii_digit(char c);
bool is_ascii_alpha(char c);
bool is_ascii_upper(char c);
bool is_ascii_lower(char c);

}  // namespace cmpos

#endif  // CMPOS_UTIL_HPP_
