#include "mteval/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>
#include <utility>

#include "mteval/error.hpp"

namespace mteval {

namespace {

struct CodePoint {
  char32_t value;
  std::size_t length;  // bytes consumed
  bool valid;
};

CodePoint decode_one(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1, true};
  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {b0, 1, false};
  }
  if (i + len > s.size()) return {b0, 1, false};
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {b0, 1, false};
    cp = (cp << 6) | (b & 0x3F);
  }
  // Overlong forms, surrogates, out of range.
  if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
      (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
      (cp >= 0xD800 && cp <= 0xDFFF)) {
    return {b0, 1, false};
  }
  return {cp, len, true};
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  switch (cp) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB: case 0xBF:
      return true;
    default:
      break;
  }
  return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
         (cp >= 0x3001 && cp <= 0x303F);
}

// Simple case folding for Latin-1, Latin Extended-A (covers Polish), Greek
// and Cyrillic. Everything else is returned unchanged.
char32_t to_lower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x130) return U'i';
    if (cp == 0x178) return 0xFF;
    const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    const bool even_upper = (cp <= 0x137) || (cp >= 0x14A && cp <= 0x177);
    if (odd_upper && (cp % 2 == 1)) return cp + 1;
    if (even_upper && (cp % 2 == 0)) return cp + 1;
    return cp;
  }
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool is_valid_utf8(std::string_view text) {
  for (std::size_t i = 0; i < text.size();) {
    const CodePoint cp = decode_one(text, i);
    if (!cp.valid) return false;
    i += cp.length;
  }
  return true;
}

TokenSequence tokenize(std::string_view raw_line, const TokenizerConfig& cfg) {
  TokenSequence tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  };
  for (std::size_t i = 0; i < raw_line.size();) {
    const CodePoint cp = decode_one(raw_line, i);
    if (!cp.valid) {
      // Invalid bytes are kept verbatim; loaders reject them before here.
      current.push_back(raw_line[i]);
      i += 1;
      continue;
    }
    i += cp.length;
    if (is_space(cp.value)) {
      flush();
      continue;
    }
    const char32_t value = cfg.lowercase ? to_lower(cp.value) : cp.value;
    if (cfg.split_punctuation && is_punct(cp.value)) {
      flush();
      std::string mark;
      append_utf8(mark, value);
      tokens.push_back(std::move(mark));
      continue;
    }
    append_utf8(current, value);
  }
  flush();
  return tokens;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path.string());

  std::string_view view(content);
  if (view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
  if (!is_valid_utf8(view)) {
    throw Error(ErrorCode::kEncoding, "invalid UTF-8 in " + path.string());
  }

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < view.size()) {
    auto end = view.find('\n', start);
    if (end == std::string_view::npos) end = view.size();
    std::string_view line = view.substr(start, end - start);
    if (line.ends_with('\r')) line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  return lines;
}

ParallelCorpus::ParallelCorpus(std::vector<EvalPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) return;
  ref_count_ = pairs_.front().references.size();
  if (ref_count_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "every pair needs at least one reference");
  }
  for (const auto& p : pairs_) {
    if (p.references.size() != ref_count_) {
      throw Error(ErrorCode::kInvalidArgument, "pairs carry differing reference counts");
    }
  }
}

std::size_t ParallelCorpus::hypothesis_tokens() const {
  std::size_t n = 0;
  for (const auto& p : pairs_) n += p.hypothesis.size();
  return n;
}

std::size_t ParallelCorpus::reference_tokens() const {
  std::size_t n = 0;
  for (const auto& p : pairs_) {
    for (const auto& r : p.references) n += r.size();
  }
  return n;
}

std::vector<TokenSequence> ParallelCorpus::all_references() const {
  std::vector<TokenSequence> out;
  out.reserve(pairs_.size() * ref_count_);
  for (const auto& p : pairs_) {
    out.insert(out.end(), p.references.begin(), p.references.end());
  }
  return out;
}

ParallelCorpus load_parallel_corpus(const std::filesystem::path& hyp_path,
                                    std::span<const std::filesystem::path> ref_paths,
                                    const TokenizerConfig& cfg) {
  if (ref_paths.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one reference file is required");
  }
  const auto hyp_lines = read_lines(hyp_path);
  std::vector<std::vector<std::string>> ref_lines;
  ref_lines.reserve(ref_paths.size());
  for (const auto& p : ref_paths) {
    ref_lines.push_back(read_lines(p));
    if (ref_lines.back().size() != hyp_lines.size()) {
      std::ostringstream msg;
      msg << p.string() << " has " << ref_lines.back().size() << " lines, "
          << hyp_path.string() << " has " << hyp_lines.size();
      throw Error(ErrorCode::kLineCountMismatch, msg.str());
    }
  }

  std::vector<EvalPair> pairs(hyp_lines.size());
  for (std::size_t i = 0; i < hyp_lines.size(); ++i) {
    pairs[i].hypothesis = tokenize(hyp_lines[i], cfg);
    pairs[i].references.reserve(ref_lines.size());
    for (const auto& lines : ref_lines) pairs[i].references.push_back(tokenize(lines[i], cfg));
  }
  return ParallelCorpus(std::move(pairs));
}

void SynonymLexicon::add_synset(std::span<const std::string> words) {
  for (const auto& a : words) {
    for (const auto& b : words) {
      if (a != b) entries_[a].insert(b);
    }
  }
}

const std::set<std::string>& SynonymLexicon::synonyms(const std::string& word) const {
  static const std::set<std::string> kNone;
  const auto it = entries_.find(word);
  return it == entries_.end() ? kNone : it->second;
}

bool SynonymLexicon::are_synonyms(const std::string& a, const std::string& b) const {
  return synonyms(a).count(b) != 0;
}

SynonymLexicon parse_synonym_lexicon(std::string_view text, const TokenizerConfig& cfg) {
  SynonymLexicon lexicon;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::vector<std::string> words;
    std::size_t field_start = 0;
    while (field_start <= line.size()) {
      auto comma = line.find(',', field_start);
      if (comma == std::string_view::npos) comma = line.size();
      const auto field = line.substr(field_start, comma - field_start);
      field_start = comma + 1;
      auto toks = tokenize(field, cfg);
      if (toks.empty()) continue;
      if (toks.size() > 1) {
        throw Error(ErrorCode::kMalformedLine,
                    "lexicon line " + std::to_string(line_no) + ": entry '" +
                        std::string(trim(field)) + "' is not a single token");
      }
      if (std::find(words.begin(), words.end(), toks.front()) == words.end()) {
        words.push_back(std::move(toks.front()));
      }
    }
    if (words.size() < 2) {
      throw Error(ErrorCode::kMalformedLine,
                  "lexicon line " + std::to_string(line_no) + " has fewer than two words");
    }
    lexicon.add_synset(words);
  }
  return lexicon;
}

SynonymLexicon load_synonym_lexicon(const std::filesystem::path& path,
                                    const TokenizerConfig& cfg) {
  const auto lines = read_lines(path);
  std::string text;
  for (const auto& l : lines) {
    text += l;
    text += '\n';
  }
  return parse_synonym_lexicon(text, cfg);
}

RareWordSet build_rare_word_set(std::span<const TokenSequence> references, double percent) {
  if (!(percent > 0.0 && percent <= 1.0)) {
    throw Error(ErrorCode::kInvalidPercent, "rare-words percent must lie in (0, 1]");
  }
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& ref : references) {
    for (const auto& w : ref) ++freq[w];
  }
  std::vector<std::pair<std::string, std::size_t>> vocab(freq.begin(), freq.end());
  std::sort(vocab.begin(), vocab.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  RareWordSet rare;
  rare.percent = percent;
  rare.source_vocab_size = vocab.size();
  // The epsilon keeps products such as 0.3 * 10 from rounding up past 3.
  const auto take = std::min<std::size_t>(
      vocab.size(),
      static_cast<std::size_t>(std::ceil(percent * static_cast<double>(vocab.size()) - 1e-9)));
  for (std::size_t i = vocab.size() - take; i < vocab.size(); ++i) {
    rare.words.insert(vocab[i].first);
  }
  return rare;
}

}  // namespace mteval
