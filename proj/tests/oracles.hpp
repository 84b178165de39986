#pragma once

// Slow, obviously-correct implementations used to check the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace mteval::oracle {

using Words = std::vector<std::string>;

inline std::vector<Words> windows(const Words& s, std::size_t n) {
  std::vector<Words> out;
  for (std::size_t i = 0; i + n <= s.size(); ++i) {
    out.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(i),
                     s.begin() + static_cast<std::ptrdiff_t>(i + n));
  }
  return out;
}

inline std::uint64_t count(const std::vector<Words>& ws, const Words& g) {
  return static_cast<std::uint64_t>(std::count(ws.begin(), ws.end(), g));
}

inline std::uint64_t clipped(const Words& hyp, const std::vector<Words>& refs, std::size_t n) {
  const auto hw = windows(hyp, n);
  std::vector<Words> seen;
  std::uint64_t total = 0;
  for (const auto& g : hw) {
    if (std::find(seen.begin(), seen.end(), g) != seen.end()) continue;
    seen.push_back(g);
    std::uint64_t best = 0;
    for (const auto& r : refs) best = std::max(best, count(windows(r, n), g));
    total += std::min(count(hw, g), best);
  }
  return total;
}

// Full-matrix Levenshtein.
inline std::size_t levenshtein(const Words& a, const Words& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
    }
  }
  return d[a.size()][b.size()];
}

// Fewest shifts + edits when any contiguous block may move anywhere, found
// by breadth-first search over shift sequences. Meant for short sentences.
inline std::size_t optimal_shift_edits(const Words& hyp, const Words& ref) {
  std::size_t best = levenshtein(hyp, ref);
  std::set<Words> seen = {hyp};
  std::vector<Words> frontier = {hyp};
  for (std::size_t shifts = 1; shifts < best && !frontier.empty(); ++shifts) {
    std::vector<Words> next;
    for (const auto& s : frontier) {
      for (std::size_t start = 0; start < s.size(); ++start) {
        for (std::size_t len = 1; start + len <= s.size(); ++len) {
          Words rest(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(start));
          rest.insert(rest.end(), s.begin() + static_cast<std::ptrdiff_t>(start + len), s.end());
          for (std::size_t dest = 0; dest <= rest.size(); ++dest) {
            Words moved(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(dest));
            moved.insert(moved.end(), s.begin() + static_cast<std::ptrdiff_t>(start),
                         s.begin() + static_cast<std::ptrdiff_t>(start + len));
            moved.insert(moved.end(), rest.begin() + static_cast<std::ptrdiff_t>(dest), rest.end());
            if (!seen.insert(moved).second) continue;
            best = std::min(best, shifts + levenshtein(moved, ref));
            next.push_back(std::move(moved));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return best;
}

// Textbook Pearson product-moment correlation from raw sums.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

}  // namespace mteval::oracle
