// cmpos/corpus.hpp -- column-formatted tagged corpora: domain types, reader,
// writer and cross-validation fold splitting.

#ifndef CMPOS_CORPUS_HPP_
#define CMPOS_CORPUS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace cmpos {

enum class TagsetKind { None, Fine, Coarse, Both };

std::string tagset_kind_name(TagsetKind kind);
TagsetKind tagset_kind_from_name(const std::string& name);

enum class Platform { Facebook, Twitter, Whatsapp, Unknown };

std::string platform_name(Platform platform);
Platform platform_from_name(const std::string& name);

/// One surface form. Empty strings stand for absent lang/tags.
struct Token {
  std::string surface;
  std::string lang;
  std::string fine_tag;
  std::string coarse_tag;

  const std::string& tag(TagsetKind kind) const;
  void set_tag(TagsetKind kind, const std::string& value);

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  Platform platform = Platform::Unknown;
  std::size_t id = 0;  // sequence number within the source file

  bool operator==(const Sentence&) const = default;
};

struct Corpus {
  std::vector<Sentence> sentences;
  TagsetKind tagset_kind = TagsetKind::None;  // which gold tags are populated
  std::vector<std::string> provenance;

  std::size_t token_count() const;
};

/// Column layout of a corpus file: one token per line, tab-separated fields,
/// blank line terminates a sentence. Parsed from a comma-separated role list
/// such as "surface,lang,tag". The generic "tag" role is resolved to fine or
/// coarse by the tagset passed to the reader/writer; "fine" and "coarse" name
/// the slot explicitly (4-column files use both).
struct ColumnFormat {
  enum class Role { Surface, Lang, Tag, FineTag, CoarseTag };
  std::vector<Role> roles;

  static ColumnFormat parse(const std::string& spec);
  std::string to_string() const;
  bool has_role(Role role) const;
};

/// Reads a corpus. `kind` resolves the generic "tag" column; it is ignored for
/// formats that name fine/coarse explicitly. Errors carry `source_name` and
/// the 1-based line number.
Corpus parse_corpus(std::istream& in, const ColumnFormat& format,
                    TagsetKind kind = TagsetKind::Fine,
                    const std::string& source_name = "<stream>");

Corpus parse_corpus_text(const std::string& text, const ColumnFormat& format,
                         TagsetKind kind = TagsetKind::Fine,
                         const std::string& source_name = "<string>");

Corpus load_corpus_file(const std::string& path, const ColumnFormat& format,
                        TagsetKind kind = TagsetKind::Fine,
                        Platform platform = Platform::Unknown);

/// Serializes a corpus; the output re-parses to an equal corpus. Every token
/// must carry the tags the format demands (missing tag -> error naming the
/// sentence and token index).
std::string write_corpus(const Corpus& corpus, const ColumnFormat& format,
                         TagsetKind kind);

struct Fold {
  Corpus train;
  Corpus held_out;
};

/// Sentence-level k-fold partition; deterministic in `seed`, folds are
/// disjoint and exhaustive. Requires 2 <= k <= sentence count.
std::vector<Fold> split_folds(const Corpus& corpus, int k, std::uint64_t seed);

}  // namespace cmpos

#endif  // CMPOS_CORPUS_HPP_
