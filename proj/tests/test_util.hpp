#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "mteval/corpus.hpp"

namespace mteval::testing {

inline EvalPair make_pair(const std::string& hyp, const std::vector<std::string>& refs) {
  EvalPair p;
  p.hypothesis = tokenize(hyp);
  for (const auto& r : refs) p.references.push_back(tokenize(r));
  return p;
}

inline ParallelCorpus make_corpus(const std::vector<std::pair<std::string, std::vector<std::string>>>& rows) {
  std::vector<EvalPair> pairs;
  for (const auto& [h, r] : rows) pairs.push_back(make_pair(h, r));
  return ParallelCorpus(std::move(pairs));
}

// Random sentences over a small vocabulary so that matches, repeats and
// reorderings are all common.
class SentenceGenerator {
 public:
  explicit SentenceGenerator(std::uint32_t seed, std::size_t vocab = 8) : rng_(seed) {
    for (std::size_t i = 0; i < vocab; ++i) vocab_.push_back("w" + std::to_string(i));
  }

  TokenSequence sentence(std::size_t min_len, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(min_len, max_len);
    std::uniform_int_distribution<std::size_t> word(0, vocab_.size() - 1);
    TokenSequence s(len(rng_));
    for (auto& w : s) w = vocab_[word(rng_)];
    return s;
  }

  ParallelCorpus corpus(std::size_t max_pairs, std::size_t max_len, std::size_t refs = 1) {
    std::uniform_int_distribution<std::size_t> count(1, max_pairs);
    std::vector<EvalPair> pairs(count(rng_));
    for (auto& p : pairs) {
      p.hypothesis = sentence(0, max_len);
      for (std::size_t r = 0; r < refs; ++r) p.references.push_back(sentence(1, max_len));
    }
    return ParallelCorpus(std::move(pairs));
  }

  const std::vector<std::string>& vocab() const { return vocab_; }
  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  std::vector<std::string> vocab_;
};

}  // namespace mteval::testing
