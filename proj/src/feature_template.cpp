#include "cmpos/feature_template.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cmpos/util.hpp"

namespace cmpos {

namespace {

bool parse_on_off(const std::string& value, const std::string& directive,
                  const std::string& where) {
  if (value == "on") return true;
  if (value == "off") return false;
  throw Error(where + ": directive '" + directive + "' expects on|off, got '" +
              value + "'");
}

int parse_int(const std::string& value, const std::string& directive,
              const std::string& where) {
  try {
    std::size_t used = 0;
    int out = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw Error(where + ": directive '" + directive + "' expects an integer, got '" +
                value + "'");
  }
}

}  // namespace

FeatureTemplate FeatureTemplate::parse(std::istream& in,
                                       const std::string& source) {
  FeatureTemplate tmpl;
  // Start from a blank slate; the file states what is active.
  tmpl.context = false;
  tmpl.ngram_orders.clear();
  tmpl.norm = false;
  tmpl.prefix_len = 0;
  tmpl.suffix_len = 0;
  tmpl.wordclass = false;
  tmpl.position = false;
  tmpl.upper_ratio = false;
  tmpl.top1 = false;
  tmpl.top2 = false;
  tmpl.binary = false;
  tmpl.stem = false;
  tmpl.phonetic = false;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = source + ":" + std::to_string(line_no);

    std::istringstream ls(line);
    std::string directive;
    ls >> directive;
    std::vector<std::string> args;
    std::string arg;
    while (ls >> arg) args.push_back(arg);

    auto one_arg = [&]() -> const std::string& {
      if (args.size() != 1)
        throw Error(where + ": directive '" + directive +
                    "' expects one argument");
      return args[0];
    };

    if (directive == "context") {
      const std::string& spec = one_arg();
      std::size_t dots = spec.find("..");
      if (dots == std::string::npos)
        throw Error(where + ": context expects LO..HI, got '" + spec + "'");
      tmpl.ctx_lo = parse_int(spec.substr(0, dots), directive, where);
      tmpl.ctx_hi = parse_int(spec.substr(dots + 2), directive, where);
      if (tmpl.ctx_lo > tmpl.ctx_hi || tmpl.ctx_lo < -4 || tmpl.ctx_hi > 4)
        throw Error(where + ": context window out of range (radius <= 4)");
      tmpl.context = true;
    } else if (directive == "ngram") {
      if (args.size() == 1 && args[0] == "off") {
        tmpl.ngram_orders.clear();
      } else {
        if (args.empty())
          throw Error(where + ": ngram expects orders or 'off'");
        tmpl.ngram_orders.clear();
        for (const std::string& a : args) {
          int order = parse_int(a, directive, where);
          if (order < 1 || order > 5)
            throw Error(where + ": ngram order out of range 1..5: " + a);
          tmpl.ngram_orders.push_back(order);
        }
        std::sort(tmpl.ngram_orders.begin(), tmpl.ngram_orders.end());
        tmpl.ngram_orders.erase(
            std::unique(tmpl.ngram_orders.begin(), tmpl.ngram_orders.end()),
            tmpl.ngram_orders.end());
      }
    } else if (directive == "norm") {
      tmpl.norm = parse_on_off(one_arg(), directive, where);
    } else if (directive == "prefix" || directive == "suffix") {
      int len = args.size() == 1 && args[0] == "off"
                    ? 0
                    : parse_int(one_arg(), directive, where);
      if (len < 0 || len > 6)
        throw Error(where + ": affix length out of range 0..6");
      (directive == "prefix" ? tmpl.prefix_len : tmpl.suffix_len) = len;
    } else if (directive == "wordclass") {
      tmpl.wordclass = parse_on_off(one_arg(), directive, where);
    } else if (directive == "position") {
      tmpl.position = parse_on_off(one_arg(), directive, where);
    } else if (directive == "upper_ratio") {
      tmpl.upper_ratio = parse_on_off(one_arg(), directive, where);
    } else if (directive == "topk") {
      tmpl.top1 = tmpl.top2 = false;
      if (!(args.size() == 1 && args[0] == "off")) {
        if (args.empty()) throw Error(where + ": topk expects 1 and/or 2, or 'off'");
        for (const std::string& a : args) {
          int k = parse_int(a, directive, where);
          if (k == 1)
            tmpl.top1 = true;
          else if (k == 2)
            tmpl.top2 = true;
          else
            throw Error(where + ": topk supports only 1 and 2");
        }
      }
    } else if (directive == "binary") {
      const std::string& mode = one_arg();
      if (mode == "all")
        tmpl.binary = true;
      else if (mode == "off")
        tmpl.binary = false;
      else
        throw Error(where + ": binary expects all|off");
    } else if (directive == "sufflen_threshold") {
      int threshold = parse_int(one_arg(), directive, where);
      if (threshold < 1)
        throw Error(where + ": sufflen_threshold must be positive");
      tmpl.sufflen_threshold = threshold;
    } else if (directive == "stem") {
      tmpl.stem = parse_on_off(one_arg(), directive, where);
    } else if (directive == "phonetic") {
      tmpl.phonetic = parse_on_off(one_arg(), directive, where);
    } else if (directive == "basis") {
      const std::string& mode = one_arg();
      if (mode == "cleaned")
        tmpl.basis = Basis::Cleaned;
      else if (mode == "raw")
        tmpl.basis = Basis::Raw;
      else
        throw Error(where + ": basis expects cleaned|raw");
    } else {
      throw Error(where + ": unknown template directive '" + directive + "'");
    }
  }
  return tmpl;
}

FeatureTemplate FeatureTemplate::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open template file: " + path);
  return parse(in, path);
}

std::string FeatureTemplate::serialize() const {
  std::ostringstream out;
  if (context)
    out << "context " << ctx_lo << ".." << ctx_hi << "\n";
  if (!ngram_orders.empty()) {
    out << "ngram";
    for (int order : ngram_orders) out << ' ' << order;
    out << "\n";
  }
  if (norm) out << "norm on\n";
  if (prefix_len > 0) out << "prefix " << prefix_len << "\n";
  if (suffix_len > 0) out << "suffix " << suffix_len << "\n";
  if (wordclass) out << "wordclass on\n";
  if (position) out << "position on\n";
  if (upper_ratio) out << "upper_ratio on\n";
  if (top1 || top2) {
    out << "topk";
    if (top1) out << " 1";
    if (top2) out << " 2";
    out << "\n";
  }
  if (binary) out << "binary all\n";
  out << "sufflen_threshold " << sufflen_threshold << "\n";
  if (stem) out << "stem on\n";
  if (phonetic) out << "phonetic on\n";
  out << "basis " << (basis == Basis::Cleaned ? "cleaned" : "raw") << "\n";
  return out.str();
}

std::string FeatureTemplate::hash() const {
  return to_hex64(fnv1a64(serialize()));
}

}  // namespace cmpos
