#include "mteval/bleu.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "mteval/error.hpp"
#include "mteval/ngram.hpp"

namespace mteval {

void BleuConfig::validate() const {
  if (max_order < 1) throw Error(ErrorCode::kInvalidArgument, "max order must be >= 1");
  if (!(smoothing_epsilon >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "smoothing epsilon must be non-negative");
  }
  if (weights.empty()) return;
  if (weights.size() != max_order) {
    throw Error(ErrorCode::kInvalidArgument, "need one weight per n-gram order");
  }
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::kInvalidArgument, "weights must be positive");
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "weights must sum to 1");
  }
}

std::vector<double> BleuConfig::effective_weights() const {
  if (!weights.empty()) return weights;
  return std::vector<double>(max_order, 1.0 / static_cast<double>(max_order));
}

double brevity_penalty(std::size_t candidate_length, std::size_t reference_length) {
  if (candidate_length > reference_length) return 1.0;
  if (candidate_length == 0) return reference_length == 0 ? 1.0 : 0.0;
  return std::exp(1.0 - static_cast<double>(reference_length) /
                            static_cast<double>(candidate_length));
}

std::size_t effective_reference_length(std::size_t hyp_length,
                                       std::span<const TokenSequence> references) {
  std::size_t best = 0;
  std::size_t best_gap = 0;
  bool first = true;
  for (const auto& ref : references) {
    const std::size_t len = ref.size();
    const std::size_t gap = len > hyp_length ? len - hyp_length : hyp_length - len;
    if (first || gap < best_gap || (gap == best_gap && len < best)) {
      best = len;
      best_gap = gap;
      first = false;
    }
  }
  return best;
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  if (matched.size() < other.matched.size()) {
    matched.resize(other.matched.size(), 0);
    total.resize(other.total.size(), 0);
  }
  for (std::size_t n = 0; n < other.matched.size(); ++n) {
    matched[n] += other.matched[n];
    total[n] += other.total[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

BleuStats collect_bleu_stats(const EvalPair& pair, std::size_t max_order) {
  BleuStats s;
  s.matched.resize(max_order);
  s.total.resize(max_order);
  for (std::size_t n = 1; n <= max_order; ++n) {
    const Ratio r = modified_precision(pair, n);
    s.matched[n - 1] = r.numerator;
    s.total[n - 1] = r.denominator;
  }
  s.hyp_length = pair.hypothesis.size();
  s.ref_length = effective_reference_length(s.hyp_length, pair.references);
  return s;
}

double bleu_from_stats(const BleuStats& stats, const BleuConfig& cfg,
                       std::vector<double>* precisions_out) {
  const auto weights = cfg.effective_weights();
  std::vector<double> p(cfg.max_order, 0.0);
  bool any_zero = false;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < cfg.max_order; ++n) {
    const std::uint64_t total = n < stats.total.size() ? stats.total[n] : 0;
    const std::uint64_t matched = n < stats.matched.size() ? stats.matched[n] : 0;
    if (total > 0) {
      p[n] = static_cast<double>(matched) / static_cast<double>(total);
      if (cfg.smoothing_epsilon > 0.0) {
        p[n] = std::max(p[n], cfg.smoothing_epsilon / static_cast<double>(total));
      }
    }
    if (p[n] <= 0.0) {
      any_zero = true;
    } else {
      log_sum += weights[n] * std::log(p[n]);
    }
  }
  if (precisions_out) *precisions_out = p;
  if (any_zero) return 0.0;
  return brevity_penalty(stats.hyp_length, stats.ref_length) * std::exp(log_sum);
}

MetricScore bleu_score(const ParallelCorpus& corpus, const BleuConfig& cfg, Execution exec) {
  cfg.validate();
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "BLEU needs a non-empty corpus");

  const auto per_pair = map_indices(corpus.size(), exec, [&](std::size_t i) {
    return collect_bleu_stats(corpus[i], cfg.max_order);
  });

  MetricScore out;
  out.metric_name = "bleu";
  out.per_sentence.reserve(per_pair.size());
  BleuStats pooled;
  for (const auto& s : per_pair) {
    out.per_sentence.push_back(bleu_from_stats(s, cfg));
    pooled += s;
  }
  std::vector<double> p;
  out.corpus_score = bleu_from_stats(pooled, cfg, &p);
  for (std::size_t n = 0; n < p.size(); ++n) out.details["p_" + std::to_string(n + 1)] = p[n];
  out.details["brevity_penalty"] = brevity_penalty(pooled.hyp_length, pooled.ref_length);
  out.details["hyp_length"] = static_cast<double>(pooled.hyp_length);
  out.details["ref_length"] = static_cast<double>(pooled.ref_length);
  return out;
}

}  // namespace mteval
