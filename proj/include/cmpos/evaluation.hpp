// cmpos/evaluation.hpp -- token-level accuracy, per-label precision/recall/F,
// micro/macro aggregates and the gold x predicted confusion matrix.

#ifndef CMPOS_EVALUATION_HPP_
#define CMPOS_EVALUATION_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cmpos/corpus.hpp"

namespace cmpos {

struct LabelScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::uint64_t support = 0;  // gold occurrences
};

struct EvalReport {
  double token_accuracy = 0.0;
  double micro_f = 0.0;  // == accuracy when every token gets one prediction
  double macro_f = 0.0;  // unweighted mean F over the label union
  std::map<std::string, LabelScore> per_label;
  std::vector<std::string> confusion_labels;           // row/column order
  std::vector<std::vector<std::uint64_t>> confusion;   // [gold][predicted]
  std::uint64_t token_count = 0;
  std::uint64_t sentence_count = 0;
  // Filled by the tagging pipeline when it knows them; negative = unknown.
  double rule_stage_share = -1.0;
  std::int64_t rule_gold_disagreements = -1;
};

/// Token-level comparison of aligned corpora (same surfaces, same order);
/// misalignment raises an error locating the first divergent token.
EvalReport evaluate(const Corpus& gold, const Corpus& predicted,
                    TagsetKind kind);

/// Harmonic mean 2pr/(p+r); zero when both are zero.
double check_harmonic(double p, double r);

/// Human-readable aligned table, 3-decimal metrics.
std::string format_report_table(const EvalReport& report);

/// Machine-readable key=value lines, one metric per line.
std::string format_report_kv(const EvalReport& report);

/// Parses format_report_kv output back into metric -> value.
std::map<std::string, double> parse_report_kv(const std::string& text);

}  // namespace cmpos

#endif  // CMPOS_EVALUATION_HPP_
