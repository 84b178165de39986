#include <algorithm>
#include <cmath>
#include <string>

#include "mteval/error.hpp"
#include "mteval/ngram.hpp"
#include "mteval/refmetrics.hpp"

namespace mteval {

namespace {

struct NistStats {
  std::vector<double> info;  // matched information, per order
  std::vector<std::uint64_t> total;
  double hyp_length = 0.0;
  double ref_length = 0.0;  // average over the pair's references
};

class InfoWeights {
 public:
  InfoWeights(const ParallelCorpus& corpus, std::size_t max_order) : counts_() {
    counts_.reserve(max_order);
    for (std::size_t n = 1; n <= max_order; ++n) counts_.emplace_back(n);
    for (const auto& pair : corpus.pairs()) {
      for (const auto& ref : pair.references) {
        total_tokens_ += ref.size();
        for (std::size_t n = 1; n <= max_order; ++n) {
          const auto grams = extract_ngrams(ref, n);
          for (const auto& [g, c] : grams.counts()) counts_[n - 1].add(g, c);
        }
      }
    }
  }

  double operator()(const NGram& g) const {
    const std::size_t n = g.size();
    const double count = counts_[n - 1].count(g);
    if (count == 0) return 0.0;
    double prefix = static_cast<double>(total_tokens_);
    if (n > 1) prefix = counts_[n - 2].count(NGram(g.begin(), g.end() - 1));
    return std::log2(prefix / count);
  }

 private:
  std::vector<NGramCounts> counts_;
  std::size_t total_tokens_ = 0;
};

NistStats collect(const EvalPair& pair, std::size_t max_order, const InfoWeights& info) {
  NistStats s;
  s.info.resize(max_order, 0.0);
  s.total.resize(max_order, 0);
  for (std::size_t n = 1; n <= max_order; ++n) {
    const auto hyp = extract_ngrams(pair.hypothesis, n);
    std::vector<NGramCounts> refs;
    for (const auto& r : pair.references) refs.push_back(extract_ngrams(r, n));
    const auto max_ref = max_reference_counts(refs);
    s.total[n - 1] = hyp.total();
    // Sorted so the sum does not depend on hash-map iteration order.
    std::vector<std::pair<NGram, std::uint32_t>> matched;
    for (const auto& [g, c] : hyp.counts()) {
      const auto clip = std::min(c, max_ref.count(g));
      if (clip > 0) matched.emplace_back(g, clip);
    }
    std::sort(matched.begin(), matched.end());
    for (const auto& [g, clip] : matched) s.info[n - 1] += clip * info(g);
  }
  s.hyp_length = static_cast<double>(pair.hypothesis.size());
  double ref_sum = 0.0;
  for (const auto& r : pair.references) ref_sum += static_cast<double>(r.size());
  s.ref_length = pair.references.empty() ? 0.0 : ref_sum / static_cast<double>(pair.references.size());
  return s;
}

double score_from(const NistStats& s, std::vector<double>* per_order = nullptr) {
  double sum = 0.0;
  for (std::size_t n = 0; n < s.info.size(); ++n) {
    const double term = s.total[n] == 0 ? 0.0 : s.info[n] / static_cast<double>(s.total[n]);
    if (per_order) per_order->push_back(term);
    sum += term;
  }
  return sum * nist_brevity_factor(s.hyp_length, s.ref_length);
}

}  // namespace

double nist_brevity_factor(double hyp_length, double avg_ref_length) {
  if (avg_ref_length <= 0.0) return 1.0;
  static const double beta = std::log(0.5) / std::pow(std::log(1.5), 2.0);
  const double ratio = std::min(hyp_length / avg_ref_length, 1.0);
  if (ratio <= 0.0) return 0.0;
  const double l = std::log(ratio);
  return std::exp(beta * l * l);
}

MetricScore nist_score(const ParallelCorpus& corpus, std::size_t max_order, Execution exec) {
  if (max_order < 1) throw Error(ErrorCode::kInvalidArgument, "max order must be >= 1");
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "NIST needs a non-empty corpus");
  const InfoWeights info(corpus, max_order);

  const auto per_pair = map_indices(corpus.size(), exec, [&](std::size_t i) {
    return collect(corpus[i], max_order, info);
  });

  MetricScore out;
  out.metric_name = "nist";
  NistStats pooled;
  pooled.info.resize(max_order, 0.0);
  pooled.total.resize(max_order, 0);
  for (const auto& s : per_pair) {
    out.per_sentence.push_back(score_from(s));
    for (std::size_t n = 0; n < max_order; ++n) {
      pooled.info[n] += s.info[n];
      pooled.total[n] += s.total[n];
    }
    pooled.hyp_length += s.hyp_length;
    pooled.ref_length += s.ref_length;
  }
  std::vector<double> per_order;
  out.corpus_score = score_from(pooled, &per_order);
  for (std::size_t n = 0; n < per_order.size(); ++n) {
    out.details["info_" + std::to_string(n + 1)] = per_order[n];
  }
  out.details["brevity_factor"] = nist_brevity_factor(pooled.hyp_length, pooled.ref_length);
  return out;
}

}  // namespace mteval
