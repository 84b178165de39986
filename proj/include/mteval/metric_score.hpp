#pragma once

#include <map>
#include <string>
#include <vector>

namespace mteval {

// Corpus-level result of one metric with its per-sentence breakdown.
struct MetricScore {
  std::string metric_name;
  double corpus_score = 0.0;
  std::vector<double> per_sentence;
  // Named intermediate values (precisions, penalties, ...).
  std::map<std::string, double> details;
};

}  // namespace mteval
