#include "mteval/ngram.hpp"

#include <algorithm>

#include "mteval/error.hpp"

namespace mteval {

std::uint32_t NGramCounts::count(const NGram& g) const {
  const auto it = counts_.find(g);
  return it == counts_.end() ? 0 : it->second;
}

std::uint64_t NGramCounts::total() const {
  std::uint64_t t = 0;
  for (const auto& [g, c] : counts_) t += c;
  return t;
}

void NGramCounts::add(NGram g, std::uint32_t times) {
  if (g.size() != order_) {
    throw Error(ErrorCode::kOrderMismatch, "n-gram length differs from counts order");
  }
  if (times == 0) return;
  counts_[std::move(g)] += times;
}

NGramCounts extract_ngrams(std::span<const std::string> tokens, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n-gram order must be >= 1");
  NGramCounts out(n);
  if (tokens.size() < n) return out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    out.add(NGram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                  tokens.begin() + static_cast<std::ptrdiff_t>(i + n)));
  }
  return out;
}

NGramCounts max_reference_counts(std::span<const NGramCounts> ref_counts) {
  if (ref_counts.empty()) return NGramCounts(1);
  const std::size_t order = ref_counts.front().order();
  NGramCounts::Map best;
  for (const auto& rc : ref_counts) {
    if (rc.order() != order) {
      throw Error(ErrorCode::kOrderMismatch, "reference counts of differing order");
    }
    for (const auto& [g, c] : rc.counts()) {
      auto& slot = best[g];
      slot = std::max(slot, c);
    }
  }
  NGramCounts out(order);
  for (auto& [g, c] : best) out.add(g, c);
  return out;
}

std::uint64_t clipped_match_count(const NGramCounts& hyp_counts,
                                  std::span<const NGramCounts> ref_counts_list) {
  for (const auto& rc : ref_counts_list) {
    if (rc.order() != hyp_counts.order()) {
      throw Error(ErrorCode::kOrderMismatch, "hypothesis and reference orders differ");
    }
  }
  std::uint64_t matched = 0;
  for (const auto& [g, c] : hyp_counts.counts()) {
    std::uint32_t best = 0;
    for (const auto& rc : ref_counts_list) best = std::max(best, rc.count(g));
    matched += std::min(c, best);
  }
  return matched;
}

Ratio modified_precision(const EvalPair& pair, std::size_t n) {
  const auto hyp = extract_ngrams(pair.hypothesis, n);
  std::vector<NGramCounts> refs;
  refs.reserve(pair.references.size());
  for (const auto& r : pair.references) refs.push_back(extract_ngrams(r, n));
  return {clipped_match_count(hyp, refs), hyp.total()};
}

}  // namespace mteval
