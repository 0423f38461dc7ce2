#include "cmpos/corpus.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "cmpos/util.hpp"

namespace cmpos {

std::string tagset_kind_name(TagsetKind kind) {
  switch (kind) {
    case TagsetKind::None: return "none";
    case TagsetKind::Fine: return "fine";
    case TagsetKind::Coarse: return "coarse";
    case TagsetKind::Both: return "both";
  }
  return "none";
}

TagsetKind tagset_kind_from_name(const std::string& name) {
  if (name == "none") return TagsetKind::None;
  if (name == "fine") return TagsetKind::Fine;
  if (name == "coarse") return TagsetKind::Coarse;
  if (name == "both") return TagsetKind::Both;
  throw Error("unknown tagset kind: '" + name + "'");
}

std::string platform_name(Platform platform) {
  switch (platform) {
    case Platform::Facebook: return "facebook";
    case Platform::Twitter: return "twitter";
    case Platform::Whatsapp: return "whatsapp";
    case Platform::Unknown: return "unknown";
  }
  return "unknown";
}

Platform platform_from_name(const std::string& name) {
  if (name == "facebook") return Platform::Facebook;
  if (name == "twitter") return Platform::Twitter;
  if (name == "whatsapp") return Platform::Whatsapp;
  if (name == "unknown") return Platform::Unknown;
  throw Error("unknown platform: '" + name + "'");
}

const std::string& Token::tag(TagsetKind kind) const {
  switch (kind) {
    case TagsetKind::Fine: return fine_tag;
    case TagsetKind::Coarse: return coarse_tag;
    default: throw Error("tag() needs a fine or coarse tagset kind");
  }
}

void Token::set_tag(TagsetKind kind, const std::string& value) {
  switch (kind) {
    case TagsetKind::Fine: fine_tag = value; break;
    case TagsetKind::Coarse: coarse_tag = value; break;
    default: throw Error("set_tag() needs a fine or coarse tagset kind");
  }
}

std::size_t Corpus::token_count() const {
  std::size_t n = 0;
  for (const Sentence& s : sentences) n += s.tokens.size();
  return n;
}

ColumnFormat ColumnFormat::parse(const std::string& spec) {
  ColumnFormat format;
  for (const std::string& name : split(spec, ',')) {
    if (name == "surface") {
      format.roles.push_back(Role::Surface);
    } else if (name == "lang") {
      format.roles.push_back(Role::Lang);
    } else if (name == "tag") {
      format.roles.push_back(Role::Tag);
    } else if (name == "fine") {
      format.roles.push_back(Role::FineTag);
    } else if (name == "coarse") {
      format.roles.push_back(Role::CoarseTag);
    } else {
      throw Error("unknown column role: '" + name + "'");
    }
  }
  if (format.roles.empty() || format.roles[0] != Role::Surface)
    throw Error("column format must start with 'surface': '" + spec + "'");
  for (std::size_t i = 0; i < format.roles.size(); ++i)
    for (std::size_t j = i + 1; j < format.roles.size(); ++j)
      if (format.roles[i] == format.roles[j])
        throw Error("duplicate column role in format: '" + spec + "'");
  if (format.has_role(Role::Tag) &&
      (format.has_role(Role::FineTag) || format.has_role(Role::CoarseTag)))
    throw Error("'tag' cannot be combined with 'fine'/'coarse': '" + spec + "'");
  return format;
}

std::string ColumnFormat::to_string() const {
  std::string out;
  for (Role role : roles) {
    if (!out.empty()) out += ',';
    switch (role) {
      case Role::Surface: out += "surface"; break;
      case Role::Lang: out += "lang"; break;
      case Role::Tag: out += "tag"; break;
      case Role::FineTag: out += "fine"; break;
      case Role::CoarseTag: out += "coarse"; break;
    }
  }
  return out;
}

bool ColumnFormat::has_role(Role role) const {
  for (Role r : roles)
    if (r == role) return true;
  return false;
}

namespace {

bool has_ascii_whitespace(const std::string& s) {
  for (char c : s)
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f')
      return true;
  return false;
}

TagsetKind corpus_kind_of(const ColumnFormat& format, TagsetKind generic) {
  using Role = ColumnFormat::Role;
  if (format.has_role(Role::FineTag) && format.has_role(Role::CoarseTag))
    return TagsetKind::Both;
  if (format.has_role(Role::FineTag)) return TagsetKind::Fine;
  if (format.has_role(Role::CoarseTag)) return TagsetKind::Coarse;
  if (format.has_role(Role::Tag)) {
    if (generic != TagsetKind::Fine && generic != TagsetKind::Coarse)
      throw Error("a generic 'tag' column needs a fine or coarse tagset kind");
    return generic;
  }
  return TagsetKind::None;
}

}  // namespace

Corpus parse_corpus(std::istream& in, const ColumnFormat& format,
                    TagsetKind kind, const std::string& source_name) {
  using Role = ColumnFormat::Role;
  const TagsetKind corpus_kind = corpus_kind_of(format, kind);

  Corpus corpus;
  corpus.tagset_kind = corpus_kind;
  corpus.provenance.push_back(source_name);

  Sentence current;
  std::size_t line_no = 0;
  std::size_t next_id = 0;
  std::string line;

  auto flush_sentence = [&]() {
    if (current.tokens.empty()) return;
    current.id = next_id++;
    corpus.sentences.push_back(std::move(current));
    current = Sentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush_sentence();
      continue;
    }
    std::vector<std::string> cols = split(line, '\t');
    if (cols.size() != format.roles.size()) {
      throw Error(source_name + ":" + std::to_string(line_no) + ": expected " +
                  std::to_string(format.roles.size()) + " columns, found " +
                  std::to_string(cols.size()));
    }
    Token token;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::string& value = cols[c];
      switch (format.roles[c]) {
        case Role::Surface:
          if (value.empty())
            throw Error(source_name + ":" + std::to_string(line_no) +
                        ": empty surface");
          if (has_ascii_whitespace(value))
            throw Error(source_name + ":" + std::to_string(line_no) +
                        ": surface contains whitespace: '" + value + "'");
          token.surface = value;
          break;
        case Role::Lang:
          token.lang = value;
          break;
        case Role::Tag:
        case Role::FineTag:
        case Role::CoarseTag: {
          if (has_ascii_whitespace(value))
            throw Error(source_name + ":" + std::to_string(line_no) +
                        ": tag contains whitespace: '" + value + "'");
          TagsetKind slot = format.roles[c] == Role::FineTag ? TagsetKind::Fine
                            : format.roles[c] == Role::CoarseTag
                                ? TagsetKind::Coarse
                                : kind;
          token.set_tag(slot, value);
          break;
        }
      }
    }
    current.tokens.push_back(std::move(token));
  }
  flush_sentence();

  if (corpus.sentences.empty()) throw Error(source_name + ": no sentences");
  return corpus;
}

Corpus parse_corpus_text(const std::string& text, const ColumnFormat& format,
                         TagsetKind kind, const std::string& source_name) {
  std::istringstream in(text);
  return parse_corpus(in, format, kind, source_name);
}

Corpus load_corpus_file(const std::string& path, const ColumnFormat& format,
                        TagsetKind kind, Platform platform) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file: " + path);
  Corpus corpus = parse_corpus(in, format, kind, path);
  for (Sentence& sentence : corpus.sentences) sentence.platform = platform;
  return corpus;
}

std::string write_corpus(const Corpus& corpus, const ColumnFormat& format,
                         TagsetKind kind) {
  using Role = ColumnFormat::Role;
  std::string out;
  for (std::size_t si = 0; si < corpus.sentences.size(); ++si) {
    const Sentence& sentence = corpus.sentences[si];
    for (std::size_t ti = 0; ti < sentence.tokens.size(); ++ti) {
      const Token& token = sentence.tokens[ti];
      for (std::size_t c = 0; c < format.roles.size(); ++c) {
        if (c) out += '\t';
        switch (format.roles[c]) {
          case Role::Surface:
            out += token.surface;
            break;
          case Role::Lang:
            out += token.lang;
            break;
          case Role::Tag:
          case Role::FineTag:
          case Role::CoarseTag: {
            TagsetKind slot = format.roles[c] == Role::FineTag
                                  ? TagsetKind::Fine
                                  : format.roles[c] == Role::CoarseTag
                                        ? TagsetKind::Coarse
                                        : kind;
            const std::string& tag = token.tag(slot);
            if (tag.empty())
              throw Error("sentence " + std::to_string(si) + " token " +
                          std::to_string(ti) + " ('" + token.surface +
                          "') is missing its " + tagset_kind_name(slot) +
                          " tag");
            out += tag;
            break;
          }
        }
      }
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

std::vector<Fold> split_folds(const Corpus& corpus, int k, std::uint64_t seed) {
  const std::size_t n = corpus.sentences.size();
  if (k < 2) throw Error("fold count must be at least 2, got " + std::to_string(k));
  if (static_cast<std::size_t>(k) > n)
    throw Error("fold count " + std::to_string(k) + " exceeds sentence count " +
                std::to_string(n));

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  // Fisher-Yates with raw engine draws: std::shuffle's distribution is not
  // pinned by the standard, mt19937 output is.
  std::mt19937_64 gen(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::size_t j = static_cast<std::size_t>(gen() % (i + 1));
    std::swap(order[i], order[j]);
  }

  std::vector<std::vector<bool>> held(static_cast<std::size_t>(k),
                                      std::vector<bool>(n, false));
  for (std::size_t pos = 0; pos < n; ++pos)
    held[pos % static_cast<std::size_t>(k)][order[pos]] = true;

  std::vector<Fold> folds;
  folds.reserve(static_cast<std::size_t>(k));
  for (int f = 0; f < k; ++f) {
    Fold fold;
    fold.train.tagset_kind = corpus.tagset_kind;
    fold.held_out.tagset_kind = corpus.tagset_kind;
    fold.train.provenance = corpus.provenance;
    fold.held_out.provenance = corpus.provenance;
    for (std::size_t i = 0; i < n; ++i) {
      (held[static_cast<std::size_t>(f)][i] ? fold.held_out : fold.train)
          .sentences.push_back(corpus.sentences[i]);
    }
    folds.push_back(std::move(fold));
  }
  return folds;
}

}  // namespace cmpos
