// cmpos/crf.hpp -- linear-chain conditional random field: regularized
// maximum-likelihood training via forward-backward, Viterbi decoding and
// text-format model serialization.
//
// Parameters live in one flat vector: an (feature x label) emission block,
// then an (label x label) transition block, then per-label start weights.
// All sequence math is done in log space.

#ifndef CMPOS_CRF_HPP_
#define CMPOS_CRF_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmpos/corpus.hpp"
#include "cmpos/sequence.hpp"

namespace cmpos {

struct TrainConfig {
  double l2_sigma = 1.0;        // Gaussian prior std; larger = weaker prior
  int max_iterations = 200;
  double convergence_tol = 1e-5;  // relative objective change
  enum class Optimizer { BatchQuasiNewton, AveragedStochastic };
  Optimizer optimizer = Optimizer::BatchQuasiNewton;
  std::uint64_t seed = 1;
  int threads = 1;              // gradient workers; result is thread-count invariant
  double sgd_eta0 = 0.5;        // initial step size of the stochastic mode
};

std::string optimizer_name(TrainConfig::Optimizer optimizer);
TrainConfig::Optimizer optimizer_from_name(const std::string& name);

struct TrainStats {
  double initial_objective = 0.0;
  double final_objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

class CrfModel {
 public:
  CrfModel() = default;

  /// Zero-weight model whose label and feature universes are everything
  /// observed in `data` (first-seen order).
  static CrfModel from_data(const std::vector<LabeledSequence>& data,
                            TagsetKind kind, const std::string& template_hash);

  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t label_count() const { return labels_.size(); }
  std::size_t feature_count() const { return feature_names_.size(); }
  TagsetKind tagset_kind() const { return kind_; }
  const std::string& template_hash() const { return template_hash_; }
  const TrainConfig& config() const { return config_; }

  int label_id(std::string_view label) const;      // -1 when unknown
  int feature_id(std::string_view feature) const;  // -1 when unknown

  // Flat parameter access (used by the optimizer and by gradient checks).
  std::size_t parameter_count() const { return weights_.size(); }
  double weight_at(std::size_t i) const { return weights_[i]; }
  void set_weight_at(std::size_t i, double value) { weights_[i] = value; }
  const std::vector<double>& weights() const { return weights_; }

  std::size_t emission_offset(std::size_t feature, std::size_t label) const {
    return feature * labels_.size() + label;
  }
  std::size_t transition_offset(std::size_t from, std::size_t to) const {
    return trans_base_ + from * labels_.size() + to;
  }
  std::size_t start_offset(std::size_t label) const {
    return start_base_ + label;
  }

  double emission_weight(std::string_view feature, std::string_view label) const;
  double transition_weight(std::string_view from, std::string_view to) const;
  double start_weight(std::string_view label) const;

  /// Versioned UTF-8 text format; bit-exact round trip.
  void save(std::ostream& out) const;
  static CrfModel load(std::istream& in);

  bool operator==(const CrfModel& other) const;

  // Internal hooks shared with the trainer.
  std::vector<std::uint32_t> resolve_features(const FeatureVector& fv) const;

 private:
  friend CrfModel train_crf(const std::vector<LabeledSequence>&, TagsetKind,
                            const std::string&, const TrainConfig&,
                            TrainStats*);

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::uint32_t> label_index_;
  std::vector<std::string> feature_names_;
  std::unordered_map<std::string, std::uint32_t> feature_index_;
  std::vector<double> weights_;
  std::size_t trans_base_ = 0;
  std::size_t start_base_ = 0;
  TagsetKind kind_ = TagsetKind::Fine;
  std::string template_hash_;
  TrainConfig config_;
};

/// Start weight + per-position emission weights + label-bigram transitions of
/// one labeling. Unknown features contribute zero; unknown labels are errors.
double score_sequence(const CrfModel& model,
                      const std::vector<FeatureVector>& feats,
                      const std::vector<std::string>& labels);

/// log sum over all labelings of exp(score); forward algorithm in log space.
double log_partition(const CrfModel& model,
                     const std::vector<FeatureVector>& feats);

struct GradientResult {
  double objective = 0.0;           // regularized negative log-likelihood
  std::vector<double> gradient;     // aligned with the flat parameter vector
};

/// Objective and gradient over `data` under the model's current weights.
GradientResult nll_and_gradient(const CrfModel& model,
                                const std::vector<LabeledSequence>& data,
                                const TrainConfig& config);

CrfModel train_crf(const std::vector<LabeledSequence>& data, TagsetKind kind,
                   const std::string& template_hash, const TrainConfig& config,
                   TrainStats* stats = nullptr);

/// Highest-scoring labeling; backpointer ties resolve toward the lower label
/// index.
std::pair<std::vector<std::string>, double> viterbi_decode(
    const CrfModel& model, const std::vector<FeatureVector>& feats);

/// Per-position label posteriors; each row sums to one.
std::vector<std::vector<double>> marginals(
    const CrfModel& model, const std::vector<FeatureVector>& feats);

}  // namespace cmpos

#endif  // CMPOS_CRF_HPP_
