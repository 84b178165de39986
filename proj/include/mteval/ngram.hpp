#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mteval/corpus.hpp"

namespace mteval {

using NGram = std::vector<std::string>;

struct NGramHash {
  std::size_t operator()(const NGram& g) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (const auto& w : g) {
      h ^= std::hash<std::string>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Multiset of n-grams of a single order.
class NGramCounts {
 public:
  using Map = std::unordered_map<NGram, std::uint32_t, NGramHash>;

  explicit NGramCounts(std::size_t order = 1) : order_(order) {}

  std::size_t order() const { return order_; }
  const Map& counts() const { return counts_; }
  bool empty() const { return counts_.empty(); }
  std::uint32_t count(const NGram& g) const;
  // Sum of all multiplicities.
  std::uint64_t total() const;

  void add(NGram g, std::uint32_t times = 1);

 private:
  std::size_t order_;
  Map counts_;
};

// Exact fraction matched / total, kept unreduced so corpus pooling can sum it.
struct Ratio {
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;

  // 0 when the denominator is 0.
  double value() const {
    return denominator == 0 ? 0.0
                            : static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

NGramCounts extract_ngrams(std::span<const std::string> tokens, std::size_t n);

// Per n-gram maximum count over several references.
NGramCounts max_reference_counts(std::span<const NGramCounts> ref_counts);

// Σ_g min(hyp[g], max_r ref_r[g]). Throws Error(kOrderMismatch) when the
// orders differ.
std::uint64_t clipped_match_count(const NGramCounts& hyp_counts,
                                  std::span<const NGramCounts> ref_counts_list);

// Clipped matches over hypothesis n-gram total; denominator 0 reads as 0.
Ratio modified_precision(const EvalPair& pair, std::size_t n);

}  // namespace mteval
