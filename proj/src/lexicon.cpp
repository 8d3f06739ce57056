/*
 * Copyright 2026 The c2v Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "c2v/lexicon.hpp"

#include <algorithm>

#include "c2v/errors.hpp"
#include "c2v/text_io.hpp"

namespace c2v {

namespace {

// "WORD(2)" -> "WORD"; the variant index itself is not kept, variants are
// just appended in file order.
std::string strip_variant(std::string_view token) {
  size_t open = token.rfind('(');
  if (open != std::string_view::npos && !token.empty() &&
      token.back() == ')' && open > 0) {
    std::string_view num = token.substr(open + 1, token.size() - open - 2);
    if (!num.empty() &&
        std::all_of(num.begin(), num.end(),
                    [](char c) { return c >= '0' && c <= '9'; }))
      return std::string(token.substr(0, open));
  }
  return std::string(token);
}

}  // namespace

Lexicon load_lexicon(const std::string& path) {
  auto in = open_input(path);
  Lexicon lex;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty()) continue;
    if (sv.substr(0, 3) == ";;;") continue;
    auto fields = split_ws(sv);
    if (fields.size() < 2)
      throw ParseError(path, lineno, "lexicon entry needs a word and phones");
    std::string word = strip_variant(fields[0]);
    Pronunciation pron;
    for (size_t i = 1; i < fields.size(); ++i) pron.emplace_back(fields[i]);
    lex.entries[word].push_back(std::move(pron));
  }
  if (lex.entries.empty()) throw DataError("empty lexicon: " + path);
  return lex;
}

void save_lexicon(const Lexicon& lex, const std::string& path) {
  auto out = open_output(path);
  for (const auto& [word, prons] : lex.entries) {
    for (size_t v = 0; v < prons.size(); ++v) {
      out << word;
      if (v > 0) out << '(' << (v + 1) << ')';
      for (const auto& ph : prons[v]) out << ' ' << ph;
      out << '\n';
    }
  }
}

HomophoneSet load_homophones(const std::string& path) {
  auto in = open_input(path);
  HomophoneSet sets;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    auto fields = split_ws(sv);
    if (fields.size() < 2)
      throw ParseError(path, lineno, "homophone group needs >= 2 words");
    std::vector<std::string> group;
    for (auto f : fields) group.emplace_back(f);
    sets.groups.push_back(std::move(group));
  }
  if (sets.groups.empty()) throw DataError("no homophone groups in " + path);
  return sets;
}

void save_homophones(const HomophoneSet& sets, const std::string& path) {
  auto out = open_output(path);
  for (const auto& g : sets.groups) {
    for (size_t i = 0; i < g.size(); ++i) out << (i ? " " : "") << g[i];
    out << '\n';
  }
}

double phone_edit_distance(const Pronunciation& a, const Pronunciation& b) {
  const size_t n = a.size(), m = b.size();
  if (n == 0 && m == 0) return 0.0;
  // Rolling single-row Levenshtein, unit costs.
  std::vector<size_t> row(m + 1);
  for (size_t j = 0; j <= m; ++j) row[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= m; ++j) {
      size_t sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, sub});
    }
  }
  return static_cast<double>(row[m]) / static_cast<double>(std::max(n, m));
}

double acoustic_similarity(const std::string& w1, const std::string& w2,
                           const Lexicon& lex) {
  auto it1 = lex.entries.find(w1);
  auto it2 = lex.entries.find(w2);
  if (it1 == lex.entries.end())
    throw DataError("word missing from lexicon: " + w1);
  if (it2 == lex.entries.end())
    throw DataError("word missing from lexicon: " + w2);
  double best = 1.0;  // max possible normalized distance
  for (const auto& p1 : it1->second)
    for (const auto& p2 : it2->second)
      best = std::min(best, phone_edit_distance(p1, p2));
  return 1.0 - best;
}

}  // namespace c2v
