#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mteval/corpus.hpp"
#include "mteval/metric_score.hpp"
#include "mteval/parallel.hpp"

namespace mteval {

struct BleuConfig {
  std::size_t max_order = 4;
  // Empty means uniform 1/max_order.
  std::vector<double> weights;
  double smoothing_epsilon = 0.0;

  // Throws Error(kInvalidArgument) on out-of-domain fields.
  void validate() const;
  std::vector<double> effective_weights() const;
};

// 1 if c > r, otherwise e^(1 - r/c). c = 0 gives 0 when r > 0, 1 when r = 0.
double brevity_penalty(std::size_t candidate_length, std::size_t reference_length);

// Length of the reference closest to the hypothesis length; ties go to the
// shorter reference.
std::size_t effective_reference_length(std::size_t hyp_length,
                                       std::span<const TokenSequence> references);

// Sufficient statistics of one pair; corpus BLEU sums these.
struct BleuStats {
  std::vector<std::uint64_t> matched;  // per order, index 0 = unigrams
  std::vector<std::uint64_t> total;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats collect_bleu_stats(const EvalPair& pair, std::size_t max_order);

// BLEU from (possibly pooled) statistics. precisions_out, when given,
// receives the p_n actually used (after smoothing).
double bleu_from_stats(const BleuStats& stats, const BleuConfig& cfg,
                       std::vector<double>* precisions_out = nullptr);

// Throws Error(kEmptyCorpus) on an empty corpus.
MetricScore bleu_score(const ParallelCorpus& corpus, const BleuConfig& cfg = {},
                       Execution exec = Execution::kParallel);

}  // namespace mteval
