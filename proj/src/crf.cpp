#include "cmpos/crf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "cmpos/util.hpp"

namespace cmpos {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double logsumexp(const double* values, std::size_t n) {
  double best = kNegInf;
  for (std::size_t i = 0; i < n; ++i) best = std::max(best, values[i]);
  if (best == kNegInf) return kNegInf;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::exp(values[i] - best);
  return best + std::log(sum);
}

struct Resolved {
  std::vector<std::vector<std::uint32_t>> feats;  // unknown features dropped
  std::vector<std::uint32_t> labels;              // empty when unlabeled
};

// Flat parameter layout: emissions (F x L), transitions (L x L), starts (L).
struct Layout {
  std::size_t num_labels = 0;
  std::size_t num_features = 0;
  std::size_t trans_base = 0;
  std::size_t start_base = 0;

  Layout() = default;
  Layout(std::size_t labels, std::size_t features)
      : num_labels(labels),
        num_features(features),
        trans_base(features * labels),
        start_base(features * labels + labels * labels) {}

  std::size_t parameters() const { return start_base + num_labels; }
  std::size_t emission(std::size_t f, std::size_t y) const {
    return f * num_labels + y;
  }
  std::size_t transition(std::size_t a, std::size_t b) const {
    return trans_base + a * num_labels + b;
  }
  std::size_t start(std::size_t y) const { return start_base + y; }
};

// Weight view over the flat layout; ScaledView lets the stochastic
// optimizer keep its global L2 scale factor out of the parameter vector.
struct ScaledView {
  const double* v;
  double scale;
  double operator[](std::size_t i) const { return scale * v[i]; }
};

// emit[t*L + y] = start (at t=0) excluded; pure feature score.
template <typename W>
std::vector<double> emission_scores(const Layout& layout, const W& w,
                                    const Resolved& seq) {
  const std::size_t L = layout.num_labels;
  const std::size_t T = seq.feats.size();
  std::vector<double> emit(T * L, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    double* row = emit.data() + t * L;
    for (std::uint32_t f : seq.feats[t]) {
      const std::size_t base = layout.emission(f, 0);
      for (std::size_t y = 0; y < L; ++y) row[y] += w[base + y];
    }
  }
  return emit;
}

// alpha[t*L + y]; returns logZ.
template <typename W>
double forward(const Layout& layout, const W& w,
               const std::vector<double>& emit, std::size_t T,
               std::vector<double>& alpha) {
  const std::size_t L = layout.num_labels;
  alpha.assign(T * L, 0.0);
  std::vector<double> scratch(L);
  for (std::size_t y = 0; y < L; ++y)
    alpha[y] = w[layout.start(y)] + emit[y];
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t a = 0; a < L; ++a)
        scratch[a] = alpha[(t - 1) * L + a] + w[layout.transition(a, y)];
      alpha[t * L + y] = emit[t * L + y] + logsumexp(scratch.data(), L);
    }
  }
  return logsumexp(alpha.data() + (T - 1) * L, L);
}

template <typename W>
void backward(const Layout& layout, const W& w,
              const std::vector<double>& emit, std::size_t T,
              std::vector<double>& beta) {
  const std::size_t L = layout.num_labels;
  beta.assign(T * L, 0.0);
  std::vector<double> scratch(L);
  for (std::size_t t = T - 1; t-- > 0;) {
    for (std::size_t y = 0; y < L; ++y) {
      for (std::size_t b = 0; b < L; ++b)
        scratch[b] = w[layout.transition(y, b)] + emit[(t + 1) * L + b] +
                     beta[(t + 1) * L + b];
      beta[t * L + y] = logsumexp(scratch.data(), L);
    }
  }
}

template <typename W>
double gold_score(const Layout& layout, const W& w,
                  const std::vector<double>& emit, const Resolved& seq) {
  const std::size_t L = layout.num_labels;
  const std::size_t T = seq.feats.size();
  double score = w[layout.start(seq.labels[0])] + emit[seq.labels[0]];
  for (std::size_t t = 1; t < T; ++t) {
    score += w[layout.transition(seq.labels[t - 1], seq.labels[t])] +
             emit[t * L + seq.labels[t]];
  }
  return score;
}

// Everything the gradient reduction needs from one sentence.
struct SentenceResult {
  double objective = 0.0;            // logZ - score(gold)
  std::vector<double> node;          // T x L posteriors
  std::vector<double> edge_sum;      // L x L expected bigram counts
};

template <typename W>
SentenceResult analyze_sentence(const Layout& layout, const W& w,
                                const Resolved& seq) {
  const std::size_t L = layout.num_labels;
  const std::size_t T = seq.feats.size();
  const std::vector<double> emit = emission_scores(layout, w, seq);

  std::vector<double> alpha, beta;
  const double log_z = forward(layout, w, emit, T, alpha);
  backward(layout, w, emit, T, beta);

  SentenceResult result;
  result.objective = log_z - gold_score(layout, w, emit, seq);
  result.node.assign(T * L, 0.0);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t y = 0; y < L; ++y)
      result.node[t * L + y] = std::exp(alpha[t * L + y] + beta[t * L + y] - log_z);

  result.edge_sum.assign(L * L, 0.0);
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t a = 0; a < L; ++a) {
      const double base = alpha[(t - 1) * L + a];
      for (std::size_t b = 0; b < L; ++b) {
        result.edge_sum[a * L + b] +=
            std::exp(base + w[layout.transition(a, b)] + emit[t * L + b] +
                     beta[t * L + b] - log_z);
      }
    }
  }
  return result;
}

void run_partitioned(std::size_t count, int threads,
                     const std::function<void(std::size_t)>& work) {
  int usable = std::max(1, threads);
  usable = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(usable), count));
  if (usable <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(usable));
  for (int k = 0; k < usable; ++k) {
    pool.emplace_back([&, k]() {
      for (std::size_t i = static_cast<std::size_t>(k); i < count;
           i += static_cast<std::size_t>(usable))
        work(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

// Objective and gradient over resolved data. Per-sentence results are
// computed in parallel but reduced strictly in sentence order so the output
// does not depend on the thread count.
struct Evaluator {
  const Layout& layout;
  const std::vector<Resolved>& data;
  double l2_sigma;
  int threads;

  GradientResult eval(const std::vector<double>& w) const {
    const std::size_t L = layout.num_labels;
    std::vector<SentenceResult> results(data.size());
    run_partitioned(data.size(), threads, [&](std::size_t i) {
      results[i] = analyze_sentence(layout, w.data(), data[i]);
    });

    GradientResult out;
    out.gradient.assign(layout.parameters(), 0.0);
    double* g = out.gradient.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
      const Resolved& seq = data[i];
      const SentenceResult& r = results[i];
      const std::size_t T = seq.feats.size();
      out.objective += r.objective;
      // expected feature counts
      for (std::size_t t = 0; t < T; ++t) {
        const double* row = r.node.data() + t * L;
        for (std::uint32_t f : seq.feats[t]) {
          double* block = g + layout.emission(f, 0);
          for (std::size_t y = 0; y < L; ++y) block[y] += row[y];
        }
      }
      for (std::size_t a = 0; a < L; ++a)
        for (std::size_t b = 0; b < L; ++b)
          g[layout.transition(a, b)] += r.edge_sum[a * L + b];
      for (std::size_t y = 0; y < L; ++y)
        g[layout.start(y)] += r.node[y];
      // empirical counts
      for (std::size_t t = 0; t < T; ++t)
        for (std::uint32_t f : seq.feats[t])
          g[layout.emission(f, seq.labels[t])] -= 1.0;
      for (std::size_t t = 1; t < T; ++t)
        g[layout.transition(seq.labels[t - 1], seq.labels[t])] -= 1.0;
      g[layout.start(seq.labels[0])] -= 1.0;
    }

    const double inv_var = 1.0 / (l2_sigma * l2_sigma);
    for (std::size_t j = 0; j < w.size(); ++j) {
      out.objective += 0.5 * inv_var * w[j] * w[j];
      g[j] += inv_var * w[j];
    }
    return out;
  }
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// Limited-memory BFGS with backtracking line search; the objective is
// non-increasing across accepted steps by the Armijo condition.
TrainStats minimize_lbfgs(const Evaluator& evaluator, std::vector<double>& w,
                          int max_iterations, double tol) {
  constexpr std::size_t kHistory = 6;
  constexpr double kArmijo = 1e-4;

  TrainStats stats;
  GradientResult current = evaluator.eval(w);
  stats.initial_objective = current.objective;
  stats.final_objective = current.objective;

  struct Pair {
    std::vector<double> s, y;
    double rho;
  };
  std::deque<Pair> history;

  for (int iter = 1; iter <= max_iterations; ++iter) {
    const double gnorm = norm2(current.gradient);
    if (gnorm < 1e-10) {
      stats.converged = true;
      break;
    }

    // two-loop recursion
    std::vector<double> direction = current.gradient;
    std::vector<double> alpha_coef(history.size());
    for (std::size_t h = history.size(); h-- > 0;) {
      const Pair& p = history[h];
      alpha_coef[h] = p.rho * dot(p.s, direction);
      for (std::size_t j = 0; j < direction.size(); ++j)
        direction[j] -= alpha_coef[h] * p.y[j];
    }
    if (!history.empty()) {
      const Pair& newest = history.back();
      const double gamma = dot(newest.s, newest.y) / dot(newest.y, newest.y);
      for (double& d : direction) d *= gamma;
    }
    for (std::size_t h = 0; h < history.size(); ++h) {
      const Pair& p = history[h];
      const double beta = p.rho * dot(p.y, direction);
      for (std::size_t j = 0; j < direction.size(); ++j)
        direction[j] += (alpha_coef[h] - beta) * p.s[j];
    }
    for (double& d : direction) d = -d;

    double slope = dot(current.gradient, direction);
    if (slope >= 0.0) {
      // not a descent direction; fall back to steepest descent
      history.clear();
      for (std::size_t j = 0; j < direction.size(); ++j)
        direction[j] = -current.gradient[j];
      slope = -gnorm * gnorm;
    }

    double step = history.empty() ? std::min(1.0, 1.0 / gnorm) : 1.0;
    std::vector<double> candidate(w.size());
    GradientResult next;
    bool accepted = false;
    for (int half = 0; half < 50; ++half) {
      for (std::size_t j = 0; j < w.size(); ++j)
        candidate[j] = w[j] + step * direction[j];
      next = evaluator.eval(candidate);
      if (next.objective <= current.objective + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;  // no further progress possible

    Pair pair;
    pair.s.resize(w.size());
    pair.y.resize(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
      pair.s[j] = candidate[j] - w[j];
      pair.y[j] = next.gradient[j] - current.gradient[j];
    }
    const double ys = dot(pair.y, pair.s);
    if (ys > 1e-12) {
      pair.rho = 1.0 / ys;
      history.push_back(std::move(pair));
      if (history.size() > kHistory) history.pop_front();
    }

    const double previous = current.objective;
    w.swap(candidate);
    current = std::move(next);
    stats.iterations = iter;
    stats.final_objective = current.objective;

    const double denom = std::max({std::abs(previous),
                                   std::abs(current.objective), 1.0});
    if (std::abs(previous - current.objective) / denom < tol) {
      stats.converged = true;
      break;
    }
  }
  return stats;
}

// Averaged stochastic gradient descent. Runs single-threaded; the L2 term is
// folded in through a global scale factor so per-sentence updates stay sparse.
// Epoch-end iterates are averaged and the best averaged snapshot wins.
TrainStats minimize_asgd(const Evaluator& evaluator,
                         const std::vector<Resolved>& data,
                         std::vector<double>& w, const TrainConfig& config) {
  const Layout& layout = evaluator.layout;
  const std::size_t L = layout.num_labels;
  const std::size_t N = data.size();
  const double inv_var_n =
      1.0 / (config.l2_sigma * config.l2_sigma * static_cast<double>(N));

  TrainStats stats;
  GradientResult at_start = evaluator.eval(w);
  stats.initial_objective = at_start.objective;
  stats.final_objective = at_start.objective;

  std::vector<double> v = w;
  double scale = 1.0;
  std::vector<double> best = w;
  double best_objective = at_start.objective;

  std::vector<double> sum_snapshots(w.size(), 0.0);
  std::size_t snapshots = 0;
  std::size_t steps = 0;

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> order(N);
  for (std::size_t i = 0; i < N; ++i) order[i] = i;

  for (int epoch = 1; epoch <= config.max_iterations; ++epoch) {
    for (std::size_t i = N - 1; i > 0; --i)
      std::swap(order[i], order[rng() % (i + 1)]);

    for (std::size_t oi = 0; oi < N; ++oi) {
      const Resolved& seq = data[order[oi]];
      const double eta =
          config.sgd_eta0 / (1.0 + static_cast<double>(steps) /
                                       static_cast<double>(N));
      ++steps;

      const SentenceResult r =
          analyze_sentence(layout, ScaledView{v.data(), scale}, seq);

      scale *= 1.0 - eta * inv_var_n;
      if (scale < 1e-6) {
        for (double& x : v) x *= scale;
        scale = 1.0;
      }
      const std::size_t T = seq.feats.size();
      auto bump = [&](std::size_t index, double amount) {
        v[index] -= eta * amount / scale;
      };
      for (std::size_t t = 0; t < T; ++t) {
        const double* row = r.node.data() + t * L;
        for (std::uint32_t f : seq.feats[t]) {
          for (std::size_t y = 0; y < L; ++y)
            bump(layout.emission(f, y), row[y]);
          bump(layout.emission(f, seq.labels[t]), -1.0);
        }
      }
      for (std::size_t a = 0; a < L; ++a)
        for (std::size_t b = 0; b < L; ++b)
          bump(layout.transition(a, b), r.edge_sum[a * L + b]);
      for (std::size_t t = 1; t < T; ++t)
        bump(layout.transition(seq.labels[t - 1], seq.labels[t]), -1.0);
      for (std::size_t y = 0; y < L; ++y) bump(layout.start(y), r.node[y]);
      bump(layout.start(seq.labels[0]), -1.0);
    }

    std::vector<double> snapshot(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) snapshot[j] = scale * v[j];
    ++snapshots;
    for (std::size_t j = 0; j < w.size(); ++j) sum_snapshots[j] += snapshot[j];

    std::vector<double> averaged(w.size());
    for (std::size_t j = 0; j < w.size(); ++j)
      averaged[j] = sum_snapshots[j] / static_cast<double>(snapshots);
    const double objective = evaluator.eval(averaged).objective;
    stats.iterations = epoch;
    const double previous_best = best_objective;
    if (objective < best_objective) {
      best_objective = objective;
      best = std::move(averaged);
    }
    if (std::abs(previous_best - best_objective) /
            std::max({std::abs(previous_best), std::abs(best_objective), 1.0}) <
        config.convergence_tol) {
      stats.converged = true;
      break;
    }
  }

  w = best;
  stats.final_objective = best_objective;
  return stats;
}

}  // namespace

std::string optimizer_name(TrainConfig::Optimizer optimizer) {
  return optimizer == TrainConfig::Optimizer::BatchQuasiNewton ? "lbfgs"
                                                               : "asgd";
}

TrainConfig::Optimizer optimizer_from_name(const std::string& name) {
  if (name == "lbfgs") return TrainConfig::Optimizer::BatchQuasiNewton;
  if (name == "asgd") return TrainConfig::Optimizer::AveragedStochastic;
  throw Error("unknown optimizer: '" + name + "'");
}

CrfModel CrfModel::from_data(const std::vector<LabeledSequence>& data,
                             TagsetKind kind,
                             const std::string& template_hash) {
  CrfModel model;
  model.kind_ = kind;
  model.template_hash_ = template_hash;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const LabeledSequence& seq = data[i];
    if (seq.features.size() != seq.labels.size())
      throw Error("sequence " + std::to_string(i) + ": " +
                  std::to_string(seq.features.size()) + " positions but " +
                  std::to_string(seq.labels.size()) + " labels");
    if (seq.features.empty())
      throw Error("sequence " + std::to_string(i) + " is empty");
    for (const std::string& label : seq.labels) {
      if (model.label_index_.emplace(label, model.labels_.size()).second)
        model.labels_.push_back(label);
    }
    for (const FeatureVector& fv : seq.features) {
      for (const std::string& feature : fv) {
        if (model.feature_index_
                .emplace(feature, model.feature_names_.size())
                .second)
          model.feature_names_.push_back(feature);
      }
    }
  }
  if (model.labels_.empty()) throw Error("training data is empty");
  const Layout layout(model.labels_.size(), model.feature_names_.size());
  model.weights_.assign(layout.parameters(), 0.0);
  model.trans_base_ = layout.trans_base;
  model.start_base_ = layout.start_base;
  return model;
}

int CrfModel::label_id(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  return it == label_index_.end() ? -1 : static_cast<int>(it->second);
}

int CrfModel::feature_id(std::string_view feature) const {
  auto it = feature_index_.find(std::string(feature));
  return it == feature_index_.end() ? -1 : static_cast<int>(it->second);
}

double CrfModel::emission_weight(std::string_view feature,
                                 std::string_view label) const {
  const int f = feature_id(feature);
  const int y = label_id(label);
  if (y < 0) throw Error("unknown label: '" + std::string(label) + "'");
  if (f < 0) return 0.0;
  return weights_[emission_offset(static_cast<std::size_t>(f),
                                  static_cast<std::size_t>(y))];
}

double CrfModel::transition_weight(std::string_view from,
                                   std::string_view to) const {
  const int a = label_id(from);
  const int b = label_id(to);
  if (a < 0) throw Error("unknown label: '" + std::string(from) + "'");
  if (b < 0) throw Error("unknown label: '" + std::string(to) + "'");
  return weights_[transition_offset(static_cast<std::size_t>(a),
                                    static_cast<std::size_t>(b))];
}

double CrfModel::start_weight(std::string_view label) const {
  const int y = label_id(label);
  if (y < 0) throw Error("unknown label: '" + std::string(label) + "'");
  return weights_[start_offset(static_cast<std::size_t>(y))];
}

std::vector<std::uint32_t> CrfModel::resolve_features(
    const FeatureVector& fv) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(fv.size());
  for (const std::string& feature : fv) {
    auto it = feature_index_.find(feature);
    if (it != feature_index_.end()) ids.push_back(it->second);
  }
  return ids;
}

namespace {

Resolved resolve_sequence(const CrfModel& model, const LabeledSequence& seq,
                          std::size_t index) {
  if (!seq.labels.empty() && seq.labels.size() != seq.features.size())
    throw Error("sequence " + std::to_string(index) + ": " +
                std::to_string(seq.features.size()) + " positions but " +
                std::to_string(seq.labels.size()) + " labels");
  Resolved resolved;
  resolved.feats.reserve(seq.features.size());
  for (const FeatureVector& fv : seq.features)
    resolved.feats.push_back(model.resolve_features(fv));
  resolved.labels.reserve(seq.labels.size());
  for (const std::string& label : seq.labels) {
    const int y = model.label_id(label);
    if (y < 0)
      throw Error("sequence " + std::to_string(index) + ": unknown label '" +
                  label + "'");
    resolved.labels.push_back(static_cast<std::uint32_t>(y));
  }
  return resolved;
}

Resolved resolve_features_only(const CrfModel& model,
                               const std::vector<FeatureVector>& feats) {
  Resolved resolved;
  resolved.feats.reserve(feats.size());
  for (const FeatureVector& fv : feats)
    resolved.feats.push_back(model.resolve_features(fv));
  return resolved;
}

Layout layout_of(const CrfModel& model) {
  return Layout(model.label_count(), model.feature_count());
}

}  // namespace

double score_sequence(const CrfModel& model,
                      const std::vector<FeatureVector>& feats,
                      const std::vector<std::string>& labels) {
  if (feats.size() != labels.size())
    throw Error("score_sequence: " + std::to_string(feats.size()) +
                " positions but " + std::to_string(labels.size()) + " labels");
  if (feats.empty()) throw Error("score_sequence: empty sequence");

  LabeledSequence seq{feats, labels};
  Resolved resolved = resolve_sequence(model, seq, 0);
  const Layout layout = layout_of(model);
  const double* w = model.weights().data();
  const std::vector<double> emit = emission_scores(layout, w, resolved);
  return gold_score(layout, w, emit, resolved);
}

double log_partition(const CrfModel& model,
                     const std::vector<FeatureVector>& feats) {
  if (feats.empty()) throw Error("log_partition: empty sequence");
  Resolved resolved = resolve_features_only(model, feats);
  const Layout layout = layout_of(model);
  const double* w = model.weights().data();
  const std::vector<double> emit = emission_scores(layout, w, resolved);
  std::vector<double> alpha;
  return forward(layout, w, emit, feats.size(), alpha);
}

GradientResult nll_and_gradient(const CrfModel& model,
                                const std::vector<LabeledSequence>& data,
                                const TrainConfig& config) {
  if (data.empty()) throw Error("nll_and_gradient: empty data");
  std::vector<Resolved> resolved;
  resolved.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i].labels.empty())
      throw Error("sequence " + std::to_string(i) + " has no labels");
    resolved.push_back(resolve_sequence(model, data[i], i));
  }
  const Layout layout = layout_of(model);
  Evaluator evaluator{layout, resolved, config.l2_sigma, config.threads};
  return evaluator.eval(model.weights());
}

CrfModel train_crf(const std::vector<LabeledSequence>& data, TagsetKind kind,
                   const std::string& template_hash, const TrainConfig& config,
                   TrainStats* stats) {
  if (data.empty()) throw Error("train_crf: empty data");
  if (config.l2_sigma <= 0.0) throw Error("train_crf: l2_sigma must be positive");
  if (config.max_iterations <= 0)
    throw Error("train_crf: max_iterations must be positive");
  if (config.convergence_tol <= 0.0)
    throw Error("train_crf: convergence_tol must be positive");

  CrfModel model = CrfModel::from_data(data, kind, template_hash);
  model.config_ = config;

  std::vector<Resolved> resolved;
  resolved.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    resolved.push_back(resolve_sequence(model, data[i], i));

  const Layout layout(model.label_count(), model.feature_count());
  Evaluator evaluator{layout, resolved, config.l2_sigma, config.threads};

  TrainStats local;
  if (config.optimizer == TrainConfig::Optimizer::BatchQuasiNewton) {
    local = minimize_lbfgs(evaluator, model.weights_, config.max_iterations,
                           config.convergence_tol);
  } else {
    local = minimize_asgd(evaluator, resolved, model.weights_, config);
  }
  if (stats) *stats = local;
  return model;
}

std::pair<std::vector<std::string>, double> viterbi_decode(
    const CrfModel& model, const std::vector<FeatureVector>& feats) {
  if (feats.empty()) throw Error("viterbi_decode: empty sequence");
  const Resolved resolved = resolve_features_only(model, feats);
  const Layout layout = layout_of(model);
  const double* w = model.weights().data();
  const std::vector<double> emit = emission_scores(layout, w, resolved);

  const std::size_t L = layout.num_labels;
  const std::size_t T = feats.size();
  std::vector<double> delta(T * L, 0.0);
  std::vector<std::uint32_t> back(T * L, 0);

  for (std::size_t y = 0; y < L; ++y)
    delta[y] = w[layout.start(y)] + emit[y];
  for (std::size_t t = 1; t < T; ++t) {
    for (std::size_t y = 0; y < L; ++y) {
      double best = kNegInf;
      std::uint32_t best_prev = 0;
      for (std::size_t a = 0; a < L; ++a) {
        const double candidate =
            delta[(t - 1) * L + a] + w[layout.transition(a, y)];
        if (candidate > best) {  // strict: ties keep the lower index
          best = candidate;
          best_prev = static_cast<std::uint32_t>(a);
        }
      }
      delta[t * L + y] = best + emit[t * L + y];
      back[t * L + y] = best_prev;
    }
  }

  std::size_t best_final = 0;
  double best_score = delta[(T - 1) * L];
  for (std::size_t y = 1; y < L; ++y) {
    if (delta[(T - 1) * L + y] > best_score) {
      best_score = delta[(T - 1) * L + y];
      best_final = y;
    }
  }

  std::vector<std::string> labels(T);
  std::size_t state = best_final;
  for (std::size_t t = T; t-- > 0;) {
    labels[t] = model.labels()[state];
    if (t > 0) state = back[t * L + state];
  }
  return {std::move(labels), best_score};
}

std::vector<std::vector<double>> marginals(
    const CrfModel& model, const std::vector<FeatureVector>& feats) {
  if (feats.empty()) throw Error("marginals: empty sequence");
  const Resolved resolved = resolve_features_only(model, feats);
  const Layout layout = layout_of(model);
  const double* w = model.weights().data();
  const std::vector<double> emit = emission_scores(layout, w, resolved);

  const std::size_t L = layout.num_labels;
  const std::size_t T = feats.size();
  std::vector<double> alpha, beta;
  const double log_z = forward(layout, w, emit, T, alpha);
  backward(layout, w, emit, T, beta);

  std::vector<std::vector<double>> table(T, std::vector<double>(L, 0.0));
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t y = 0; y < L; ++y)
      table[t][y] = std::exp(alpha[t * L + y] + beta[t * L + y] - log_z);
  return table;
}

void CrfModel::save(std::ostream& out) const {
  out << "CMPOS-MODEL v1\n";
  out << tagset_kind_name(kind_) << "\n";
  for (std::size_t y = 0; y < labels_.size(); ++y) {
    if (y) out << ' ';
    out << labels_[y];
  }
  out << "\n";
  out << "M template_hash " << (template_hash_.empty() ? "-" : template_hash_)
      << "\n";
  out << "M l2_sigma " << format_weight(config_.l2_sigma) << "\n";
  out << "M max_iterations " << config_.max_iterations << "\n";
  out << "M convergence_tol " << format_weight(config_.convergence_tol) << "\n";
  out << "M optimizer " << optimizer_name(config_.optimizer) << "\n";
  out << "M seed " << config_.seed << "\n";

  const std::size_t L = labels_.size();
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = 0; b < L; ++b)
      out << "T " << labels_[a] << ' ' << labels_[b] << ' '
          << format_weight(weights_[transition_offset(a, b)]) << "\n";
  for (std::size_t y = 0; y < L; ++y)
    out << "S " << labels_[y] << ' '
        << format_weight(weights_[start_offset(y)]) << "\n";

  std::vector<std::uint32_t> order(feature_names_.size());
  for (std::uint32_t f = 0; f < order.size(); ++f) order[f] = f;
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) {
              return feature_names_[a] < feature_names_[b];
            });
  for (std::uint32_t f : order)
    for (std::size_t y = 0; y < L; ++y)
      out << "E " << feature_names_[f] << ' ' << labels_[y] << ' '
          << format_weight(weights_[emission_offset(f, y)]) << "\n";
}

namespace {

[[noreturn]] void corrupt(std::size_t offset, const std::string& what) {
  throw Error("corrupt model file at byte offset " + std::to_string(offset) +
              ": " + what);
}

double parse_weight(const std::string& text, std::size_t offset) {
  try {
    std::size_t used = 0;
    double value = std::stod(text, &used);
    if (used != text.size()) corrupt(offset, "bad weight '" + text + "'");
    if (!std::isfinite(value)) corrupt(offset, "non-finite weight");
    return value;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    corrupt(offset, "bad weight '" + text + "'");
  }
}

}  // namespace

CrfModel CrfModel::load(std::istream& in) {
  std::size_t offset = 0;
  std::string line;
  auto next_line = [&](bool required) -> bool {
    if (!std::getline(in, line)) {
      if (required) corrupt(offset, "unexpected end of file");
      return false;
    }
    return true;
  };

  next_line(true);
  if (line != "CMPOS-MODEL v1") {
    if (line.rfind("CMPOS-MODEL", 0) == 0)
      throw Error("unsupported model version: '" + line + "'");
    corrupt(offset, "missing CMPOS-MODEL header");
  }
  offset += line.size() + 1;

  next_line(true);
  CrfModel model;
  model.kind_ = tagset_kind_from_name(line);
  offset += line.size() + 1;

  next_line(true);
  if (line.empty()) corrupt(offset, "empty label inventory");
  for (const std::string& label : split(line, ' ')) {
    if (label.empty()) corrupt(offset, "empty label in inventory");
    if (!model.label_index_.emplace(label, model.labels_.size()).second)
      corrupt(offset, "duplicate label '" + label + "'");
    model.labels_.push_back(label);
  }
  offset += line.size() + 1;

  const std::size_t L = model.labels_.size();
  std::vector<double> transitions(L * L, 0.0);
  std::vector<double> starts(L, 0.0);
  std::vector<std::pair<std::uint32_t, double>> emissions;  // (f * L + y, w)

  auto require_label = [&](const std::string& name) -> std::size_t {
    auto it = model.label_index_.find(name);
    if (it == model.label_index_.end())
      corrupt(offset, "unknown label '" + name + "'");
    return it->second;
  };

  while (next_line(false)) {
    if (line.empty()) corrupt(offset, "blank line");
    std::vector<std::string> cols = split(line, ' ');
    if (cols[0] == "M") {
      if (cols.size() != 3) corrupt(offset, "malformed metadata line");
      const std::string& key = cols[1];
      const std::string& value = cols[2];
      if (key == "template_hash") {
        model.template_hash_ = value == "-" ? "" : value;
      } else if (key == "l2_sigma") {
        model.config_.l2_sigma = parse_weight(value, offset);
      } else if (key == "max_iterations") {
        model.config_.max_iterations = std::stoi(value);
      } else if (key == "convergence_tol") {
        model.config_.convergence_tol = parse_weight(value, offset);
      } else if (key == "optimizer") {
        model.config_.optimizer = optimizer_from_name(value);
      } else if (key == "seed") {
        model.config_.seed = std::stoull(value);
      } else {
        corrupt(offset, "unknown metadata key '" + key + "'");
      }
    } else if (cols[0] == "T") {
      if (cols.size() != 4) corrupt(offset, "malformed transition line");
      const std::size_t a = require_label(cols[1]);
      const std::size_t b = require_label(cols[2]);
      transitions[a * L + b] = parse_weight(cols[3], offset);
    } else if (cols[0] == "S") {
      if (cols.size() != 3) corrupt(offset, "malformed start line");
      starts[require_label(cols[1])] = parse_weight(cols[2], offset);
    } else if (cols[0] == "E") {
      if (cols.size() != 4) corrupt(offset, "malformed emission line");
      const std::string& feature = cols[1];
      const std::size_t y = require_label(cols[2]);
      auto [it, inserted] = model.feature_index_.emplace(
          feature, model.feature_names_.size());
      if (inserted) model.feature_names_.push_back(feature);
      emissions.emplace_back(
          static_cast<std::uint32_t>(it->second * L + y),
          parse_weight(cols[3], offset));
    } else {
      corrupt(offset, "unknown record '" + cols[0] + "'");
    }
    offset += line.size() + 1;
  }

  const Layout layout(L, model.feature_names_.size());
  model.weights_.assign(layout.parameters(), 0.0);
  model.trans_base_ = layout.trans_base;
  model.start_base_ = layout.start_base;
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = 0; b < L; ++b)
      model.weights_[model.transition_offset(a, b)] = transitions[a * L + b];
  for (std::size_t y = 0; y < L; ++y)
    model.weights_[model.start_offset(y)] = starts[y];
  for (const auto& [slot, weight] : emissions) model.weights_[slot] = weight;
  return model;
}

bool CrfModel::operator==(const CrfModel& other) const {
  std::ostringstream a, b;
  save(a);
  other.save(b);
  return a.str() == b.str();
}

}  // namespace cmpos
