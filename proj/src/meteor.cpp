#include <string>

#include "mteval/error.hpp"
#include "mteval/refmetrics.hpp"

namespace mteval {

namespace {

// Aligns still-unaligned hypothesis words to unclaimed reference words
// accepted by `matches`. A reference position continuing the previous
// alignment is preferred, otherwise the leftmost one.
template <typename Matches>
void align_stage(std::span<const std::string> hyp, std::span<const std::string> ref,
                 UnigramAlignment& alignment, std::vector<bool>& claimed, Matches&& matches) {
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (alignment[i]) {
      prev = alignment[i];
      continue;
    }
    std::optional<std::size_t> pick;
    if (prev && *prev + 1 < ref.size() && !claimed[*prev + 1] && matches(hyp[i], ref[*prev + 1])) {
      pick = *prev + 1;
    } else {
      for (std::size_t j = 0; j < ref.size(); ++j) {
        if (!claimed[j] && matches(hyp[i], ref[j])) {
          pick = j;
          break;
        }
      }
    }
    if (pick) {
      alignment[i] = pick;
      claimed[*pick] = true;
    }
    prev = alignment[i];
  }
}

struct MeteorStats {
  std::size_t matches = 0;
  std::size_t chunks = 0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  double score() const { return meteor_formula(matches, chunks, hyp_length, ref_length); }
};

}  // namespace

UnigramAlignment meteor_align(std::span<const std::string> hyp,
                              std::span<const std::string> ref, const SynonymLexicon& lexicon) {
  UnigramAlignment alignment(hyp.size());
  std::vector<bool> claimed(ref.size(), false);
  align_stage(hyp, ref, alignment, claimed,
              [](const std::string& a, const std::string& b) { return a == b; });
  if (!lexicon.empty()) {
    align_stage(hyp, ref, alignment, claimed, [&](const std::string& a, const std::string& b) {
      return lexicon.are_synonyms(a, b);
    });
  }
  return alignment;
}

std::size_t count_chunks(const UnigramAlignment& alignment) {
  std::size_t chunks = 0;
  std::optional<std::size_t> prev_hyp, prev_ref;
  for (std::size_t i = 0; i < alignment.size(); ++i) {
    if (!alignment[i]) continue;
    const bool continues = prev_hyp && *prev_hyp + 1 == i && *prev_ref + 1 == *alignment[i];
    if (!continues) ++chunks;
    prev_hyp = i;
    prev_ref = alignment[i];
  }
  return chunks;
}

double meteor_formula(std::size_t matches, std::size_t chunks, std::size_t hyp_length,
                      std::size_t ref_length) {
  if (matches == 0 || hyp_length == 0 || ref_length == 0) return 0.0;
  const double p = static_cast<double>(matches) / static_cast<double>(hyp_length);
  const double r = static_cast<double>(matches) / static_cast<double>(ref_length);
  const double fmean = 10.0 * p * r / (r + 9.0 * p);
  const double penalty = 0.5 * static_cast<double>(chunks) / static_cast<double>(matches);
  return fmean * (1.0 - penalty);
}

MeteorResult meteor_score(const ParallelCorpus& corpus, const SynonymLexicon& lexicon,
                          Execution exec) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "METEOR needs a non-empty corpus");

  const auto per_pair = map_indices(corpus.size(), exec, [&](std::size_t i) {
    const auto& pair = corpus[i];
    MeteorStats best;
    double best_score = -1.0;
    for (const auto& ref : pair.references) {
      const auto alignment = meteor_align(pair.hypothesis, ref, lexicon);
      MeteorStats s;
      for (const auto& a : alignment) s.matches += a ? 1 : 0;
      s.chunks = count_chunks(alignment);
      s.hyp_length = pair.hypothesis.size();
      s.ref_length = ref.size();
      if (s.score() > best_score) {
        best_score = s.score();
        best = s;
      }
    }
    return best;
  });

  MeteorResult out;
  MeteorStats pooled;
  for (const auto& s : per_pair) {
    out.per_sentence.push_back(s.score());
    pooled.matches += s.matches;
    pooled.chunks += s.chunks;
    pooled.hyp_length += s.hyp_length;
    pooled.ref_length += s.ref_length;
  }
  out.matched_unigrams = pooled.matches;
  out.chunk_count = pooled.chunks;
  if (pooled.hyp_length > 0) {
    out.precision = static_cast<double>(pooled.matches) / static_cast<double>(pooled.hyp_length);
  }
  if (pooled.ref_length > 0) {
    out.recall = static_cast<double>(pooled.matches) / static_cast<double>(pooled.ref_length);
  }
  if (pooled.matches > 0) {
    out.penalty = 0.5 * static_cast<double>(pooled.chunks) / static_cast<double>(pooled.matches);
  }
  out.score = pooled.score();
  return out;
}

MetricScore to_metric_score(const MeteorResult& r) {
  MetricScore out;
  out.metric_name = "meteor";
  out.corpus_score = r.score;
  out.per_sentence = r.per_sentence;
  out.details["precision"] = r.precision;
  out.details["recall"] = r.recall;
  out.details["matched_unigrams"] = static_cast<double>(r.matched_unigrams);
  out.details["chunks"] = static_cast<double>(r.chunk_count);
  out.details["penalty"] = r.penalty;
  return out;
}

}  // namespace mteval
