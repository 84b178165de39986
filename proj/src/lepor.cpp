#include <cmath>
#include <limits>
#include <string>

#include "mteval/error.hpp"
#include "mteval/refmetrics.hpp"

namespace mteval {

void LeporConfig::validate() const {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "LEPOR weights must be positive");
  }
}

double lepor_length_penalty(double hyp_length, double ref_length) {
  if (hyp_length == ref_length) return 1.0;
  if (hyp_length <= 0.0 || ref_length <= 0.0) return 0.0;
  if (hyp_length < ref_length) return std::exp(1.0 - ref_length / hyp_length);
  return std::exp(1.0 - hyp_length / ref_length);
}

double lepor_position_difference_sum(std::span<const std::string> hyp,
                                     std::span<const std::string> ref,
                                     std::size_t* matches_out) {
  std::vector<bool> claimed(ref.size(), false);
  const double hyp_len = static_cast<double>(hyp.size());
  const double ref_len = static_cast<double>(ref.size());
  double sum = 0.0;
  std::size_t matches = 0;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    const double hyp_pos = static_cast<double>(i + 1) / hyp_len;
    double best_gap = std::numeric_limits<double>::infinity();
    std::size_t best = ref.size();
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (claimed[j] || ref[j] != hyp[i]) continue;
      const double gap = std::abs(hyp_pos - static_cast<double>(j + 1) / ref_len);
      if (gap < best_gap) {
        best_gap = gap;
        best = j;
      }
    }
    if (best == ref.size()) continue;
    claimed[best] = true;
    sum += best_gap;
    ++matches;
  }
  if (matches_out) *matches_out = matches;
  return sum;
}

namespace {

struct LeporStats {
  double pd_sum = 0.0;
  std::size_t matches = 0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  std::size_t sentences = 0;
};

double lepor_from(const LeporStats& s, const LeporConfig& cfg, double* npd_out = nullptr) {
  if (s.matches == 0 || s.sentences == 0) return 0.0;
  const double n = static_cast<double>(s.sentences);
  const double lp = lepor_length_penalty(static_cast<double>(s.hyp_length) / n,
                                         static_cast<double>(s.ref_length) / n);
  const double npd = s.pd_sum / static_cast<double>(s.hyp_length);
  if (npd_out) *npd_out = npd;
  const double p = static_cast<double>(s.matches) / static_cast<double>(s.hyp_length);
  const double r = static_cast<double>(s.matches) / static_cast<double>(s.ref_length);
  const double harmonic = (cfg.alpha + cfg.beta) / (cfg.alpha / r + cfg.beta / p);
  return lp * std::exp(-npd) * harmonic;
}

}  // namespace

MetricScore lepor_score(const ParallelCorpus& corpus, const LeporConfig& cfg, Execution exec) {
  cfg.validate();
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "LEPOR needs a non-empty corpus");

  // Each pair is scored against its best reference.
  const auto per_pair = map_indices(corpus.size(), exec, [&](std::size_t i) {
    const auto& pair = corpus[i];
    LeporStats best;
    double best_score = -1.0;
    for (const auto& ref : pair.references) {
      LeporStats s;
      s.pd_sum = lepor_position_difference_sum(pair.hypothesis, ref, &s.matches);
      s.hyp_length = pair.hypothesis.size();
      s.ref_length = ref.size();
      s.sentences = 1;
      const double score = lepor_from(s, cfg);
      if (score > best_score) {
        best_score = score;
        best = s;
      }
    }
    return best;
  });

  MetricScore out;
  out.metric_name = "lepor";
  LeporStats pooled;
  for (const auto& s : per_pair) {
    out.per_sentence.push_back(lepor_from(s, cfg));
    pooled.pd_sum += s.pd_sum;
    pooled.matches += s.matches;
    pooled.hyp_length += s.hyp_length;
    pooled.ref_length += s.ref_length;
    pooled.sentences += s.sentences;
  }
  double npd = 0.0;
  out.corpus_score = lepor_from(pooled, cfg, &npd);
  const double n = static_cast<double>(pooled.sentences);
  out.details["length_penalty"] = lepor_length_penalty(
      static_cast<double>(pooled.hyp_length) / n, static_cast<double>(pooled.ref_length) / n);
  out.details["npd"] = npd;
  out.details["matches"] = static_cast<double>(pooled.matches);
  return out;
}

}  // namespace mteval
