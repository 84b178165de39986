#include <algorithm>
#include <string>

#include "mteval/error.hpp"
#include "mteval/refmetrics.hpp"

namespace mteval {

std::size_t edit_distance(std::span<const std::string> hyp, std::span<const std::string> ref) {
  std::vector<std::size_t> prev(ref.size() + 1), cur(ref.size() + 1);
  for (std::size_t j = 0; j <= ref.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= hyp.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= ref.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[ref.size()];
}

TokenSequence apply_shift(std::span<const std::string> words, std::size_t start,
                          std::size_t length, std::size_t dest) {
  TokenSequence rest;
  rest.reserve(words.size());
  rest.insert(rest.end(), words.begin(), words.begin() + static_cast<std::ptrdiff_t>(start));
  rest.insert(rest.end(), words.begin() + static_cast<std::ptrdiff_t>(start + length), words.end());
  TokenSequence out;
  out.reserve(words.size());
  out.insert(out.end(), rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(dest));
  out.insert(out.end(), words.begin() + static_cast<std::ptrdiff_t>(start),
             words.begin() + static_cast<std::ptrdiff_t>(start + length));
  out.insert(out.end(), rest.begin() + static_cast<std::ptrdiff_t>(dest), rest.end());
  return out;
}

namespace {

bool same_phrase(std::span<const std::string> a, std::size_t i, std::span<const std::string> b,
                 std::size_t j, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    if (a[i + k] != b[j + k]) return false;
  }
  return true;
}

}  // namespace

TerAlignment ter_edits(std::span<const std::string> hyp, std::span<const std::string> ref,
                       const TerLimits& limits) {
  TokenSequence current(hyp.begin(), hyp.end());
  std::size_t distance = edit_distance(current, ref);
  std::size_t shifts = 0;

  // Candidate shifts move a hypothesis phrase that also occurs in the
  // reference to just around that occurrence's position.
  while (distance > 1) {
    std::size_t best_distance = distance;
    TokenSequence best;
    const std::size_t len_h = current.size();
    for (std::size_t start = 0; start < len_h; ++start) {
      for (std::size_t len = 1; len <= limits.max_shift_size && start + len <= len_h; ++len) {
        // Already in place relative to the reference.
        if (start + len <= ref.size() && same_phrase(current, start, ref, start, len)) continue;
        bool occurs = false;
        for (std::size_t j = 0; j + len <= ref.size(); ++j) {
          if (!same_phrase(current, start, ref, j, len)) continue;
          occurs = true;
          const std::size_t rest = len_h - len;
          const std::size_t lo = j == 0 ? 0 : j - 1;
          for (std::size_t dest = lo; dest <= std::min(j + 1, rest); ++dest) {
            if (dest == start) continue;
            const std::size_t moved = dest > start ? dest - start : start - dest;
            if (moved > limits.max_shift_distance) continue;
            auto candidate = apply_shift(current, start, len, dest);
            const std::size_t d = edit_distance(candidate, ref);
            if (d < best_distance) {
              best_distance = d;
              best = std::move(candidate);
            }
          }
        }
        if (!occurs) break;  // longer phrases from this start cannot occur either
      }
    }
    // The shift itself costs one edit, so it must save at least two.
    if (best_distance + 1 >= distance) break;
    current = std::move(best);
    distance = best_distance;
    ++shifts;
  }
  return {distance + shifts, shifts};
}

MetricScore ter_score(const ParallelCorpus& corpus, const TerLimits& limits, Execution exec) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "TER needs a non-empty corpus");

  struct PairTer {
    std::size_t edits = 0;
    std::size_t shifts = 0;
    double ref_length = 0.0;
  };
  const auto per_pair = map_indices(corpus.size(), exec, [&](std::size_t i) {
    const auto& pair = corpus[i];
    PairTer out;
    bool first = true;
    double ref_sum = 0.0;
    for (const auto& ref : pair.references) {
      const auto a = ter_edits(pair.hypothesis, ref, limits);
      if (first || a.edits < out.edits) {
        out.edits = a.edits;
        out.shifts = a.shifts;
        first = false;
      }
      ref_sum += static_cast<double>(ref.size());
    }
    out.ref_length = ref_sum / static_cast<double>(pair.references.size());
    return out;
  });

  // With no reference words at all, any edit is a full error.
  auto rate = [](double edits, double ref_length) {
    if (ref_length > 0.0) return edits / ref_length;
    return edits > 0.0 ? 1.0 : 0.0;
  };

  MetricScore out;
  out.metric_name = "ter";
  double edits = 0.0, shifts = 0.0, ref_length = 0.0;
  for (const auto& p : per_pair) {
    out.per_sentence.push_back(rate(static_cast<double>(p.edits), p.ref_length));
    edits += static_cast<double>(p.edits);
    shifts += static_cast<double>(p.shifts);
    ref_length += p.ref_length;
  }
  out.corpus_score = rate(edits, ref_length);
  out.details["edits"] = edits;
  out.details["shifts"] = shifts;
  out.details["ref_length"] = ref_length;
  return out;
}

}  // namespace mteval
