#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "mteval/error.hpp"
#include "mteval/refmetrics.hpp"

namespace mteval {

void RibesConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "RIBES alpha must lie in [0, 1]");
  }
}

std::vector<std::size_t> ribes_alignment(std::span<const std::string> hyp,
                                         std::span<const std::string> ref) {
  std::unordered_map<std::string, std::size_t> hyp_freq, ref_freq;
  for (const auto& w : hyp) ++hyp_freq[w];
  for (const auto& w : ref) ++ref_freq[w];

  std::vector<std::optional<std::size_t>> aligned(hyp.size());
  std::vector<bool> claimed(ref.size(), false);
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (hyp_freq[hyp[i]] != 1) continue;
    const auto it = ref_freq.find(hyp[i]);
    if (it == ref_freq.end() || it->second != 1) continue;
    const auto j = static_cast<std::size_t>(std::find(ref.begin(), ref.end(), hyp[i]) - ref.begin());
    aligned[i] = j;
    claimed[j] = true;
  }
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (aligned[i]) continue;
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (!claimed[j] && ref[j] == hyp[i]) {
        aligned[i] = j;
        claimed[j] = true;
        break;
      }
    }
  }

  std::vector<std::size_t> positions;
  for (const auto& a : aligned) {
    if (a) positions.push_back(*a);
  }
  return positions;
}

double normalized_kendall_tau(std::span<const std::size_t> positions) {
  const std::size_t k = positions.size();
  if (k < 2) return 0.0;
  std::size_t concordant = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      if (positions[i] < positions[j]) ++concordant;
    }
  }
  const double pairs = static_cast<double>(k * (k - 1) / 2);
  const double tau = 2.0 * static_cast<double>(concordant) / pairs - 1.0;
  return (tau + 1.0) / 2.0;
}

double normalized_spearman_rho(std::span<const std::size_t> positions) {
  const std::size_t k = positions.size();
  if (k < 2) return 0.0;
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return positions[a] < positions[b]; });
  double d2 = 0.0;
  for (std::size_t rank = 0; rank < k; ++rank) {
    const double d = static_cast<double>(order[rank]) - static_cast<double>(rank);
    d2 += d * d;
  }
  const double n = static_cast<double>(k);
  const double rho = 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
  return (rho + 1.0) / 2.0;
}

double ribes_sentence(const EvalPair& pair, const RibesConfig& cfg) {
  double best = 0.0;
  for (const auto& ref : pair.references) {
    const auto positions = ribes_alignment(pair.hypothesis, ref);
    if (positions.size() < 2) continue;
    const double order = cfg.correlation == RankCorrelation::kKendall
                             ? normalized_kendall_tau(positions)
                             : normalized_spearman_rho(positions);
    const double precision =
        static_cast<double>(positions.size()) / static_cast<double>(pair.hypothesis.size());
    best = std::max(best, order * std::pow(precision, cfg.alpha));
  }
  return best;
}

MetricScore ribes_score(const ParallelCorpus& corpus, const RibesConfig& cfg, Execution exec) {
  cfg.validate();
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "RIBES needs a non-empty corpus");
  MetricScore out;
  out.metric_name = "ribes";
  out.per_sentence = map_indices(corpus.size(), exec,
                                 [&](std::size_t i) { return ribes_sentence(corpus[i], cfg); });
  double sum = 0.0;
  for (double s : out.per_sentence) sum += s;
  out.corpus_score = sum / static_cast<double>(out.per_sentence.size());
  out.details["alpha"] = cfg.alpha;
  return out;
}

}  // namespace mteval
