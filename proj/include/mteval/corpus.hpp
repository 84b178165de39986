#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mteval {

// One normalized sentence. Tokens are non-empty and contain no whitespace.
using TokenSequence = std::vector<std::string>;

struct TokenizerConfig {
  bool lowercase = false;
  bool split_punctuation = false;
};

struct EvalPair {
  TokenSequence hypothesis;
  std::vector<TokenSequence> references;
};

class ParallelCorpus {
 public:
  ParallelCorpus() = default;
  // Throws Error(kInvalidArgument) unless every pair carries the same,
  // non-zero number of references.
  explicit ParallelCorpus(std::vector<EvalPair> pairs);

  const std::vector<EvalPair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  std::size_t ref_count() const { return ref_count_; }
  const EvalPair& operator[](std::size_t i) const { return pairs_[i]; }

  std::size_t hypothesis_tokens() const;
  std::size_t reference_tokens() const;

  // Every reference sentence of every pair, in pair order.
  std::vector<TokenSequence> all_references() const;

 private:
  std::vector<EvalPair> pairs_;
  std::size_t ref_count_ = 0;
};

// Word -> synonyms. Symmetric; no word lists itself.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  // Adds one synset: every member becomes a synonym of every other member.
  void add_synset(std::span<const std::string> words);

  const std::set<std::string>& synonyms(const std::string& word) const;
  bool are_synonyms(const std::string& a, const std::string& b) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, std::set<std::string>>& entries() const {
    return entries_;
  }

 private:
  std::map<std::string, std::set<std::string>> entries_;
};

struct RareWordSet {
  std::set<std::string> words;
  std::size_t source_vocab_size = 0;
  double percent = 0.0;

  bool contains(const std::string& w) const { return words.count(w) != 0; }
  bool empty() const { return words.empty(); }
};

TokenSequence tokenize(std::string_view raw_line, const TokenizerConfig& cfg = {});

// Reads a UTF-8 text file into lines. LF and CRLF endings are accepted; a
// trailing newline does not produce an extra empty line.
std::vector<std::string> read_lines(const std::filesystem::path& path);

ParallelCorpus load_parallel_corpus(const std::filesystem::path& hyp_path,
                                    std::span<const std::filesystem::path> ref_paths,
                                    const TokenizerConfig& cfg = {});

// Parses the lexicon text format: one comma-separated synset per line,
// '#' comment lines and blank lines ignored.
SynonymLexicon parse_synonym_lexicon(std::string_view text,
                                     const TokenizerConfig& cfg = {});
SynonymLexicon load_synonym_lexicon(const std::filesystem::path& path,
                                    const TokenizerConfig& cfg = {});

RareWordSet build_rare_word_set(std::span<const TokenSequence> references,
                                double percent);

// Checks that text is well-formed UTF-8.
bool is_valid_utf8(std::string_view text);

}  // namespace mteval
