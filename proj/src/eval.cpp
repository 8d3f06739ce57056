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

#include "c2v/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>

#include "c2v/errors.hpp"
#include "c2v/text_io.hpp"

namespace c2v {

std::vector<AnalogyQuestion> load_analogies(const std::string& path) {
  auto in = open_input(path);
  std::vector<AnalogyQuestion> out;
  std::string line, category = "default";
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    if (sv[0] == ':') {
      category = std::string(trim(sv.substr(1)));
      if (category.empty())
        throw ParseError(path, lineno, "category line without a name");
      continue;
    }
    auto fields = split_ws(sv);
    if (fields.size() != 4)
      throw ParseError(path, lineno, "analogy line needs exactly 4 fields");
    AnalogyQuestion q;
    q.a = std::string(fields[0]);
    q.b = std::string(fields[1]);
    q.c = std::string(fields[2]);
    std::string_view ans = fields[3];
    size_t start = 0;
    while (start <= ans.size()) {
      size_t bar = ans.find('|', start);
      std::string_view tok = ans.substr(
          start, bar == std::string_view::npos ? ans.size() - start
                                               : bar - start);
      if (tok.empty())
        throw ParseError(path, lineno, "empty answer alternative");
      if (std::find(q.answers.begin(), q.answers.end(), tok) ==
          q.answers.end())
        q.answers.emplace_back(tok);
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    q.category = category;
    out.push_back(std::move(q));
  }
  if (out.empty()) throw DataError("no analogy questions in " + path);
  return out;
}

void save_analogies(const std::vector<AnalogyQuestion>& questions,
                    const std::string& path) {
  auto out = open_output(path);
  std::string prev;
  for (const auto& q : questions) {
    if (q.category != prev) {
      out << ": " << q.category << '\n';
      prev = q.category;
    }
    out << q.a << ' ' << q.b << ' ' << q.c << ' ';
    for (size_t i = 0; i < q.answers.size(); ++i)
      out << (i ? "|" : "") << q.answers[i];
    out << '\n';
  }
}

std::vector<SimilarityPair> load_similarity_pairs(const std::string& path) {
  auto in = open_input(path);
  std::vector<SimilarityPair> out;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv[0] == '#') continue;
    auto fields = split_ws(sv);
    if (fields.size() != 3)
      throw ParseError(path, lineno, "similarity line needs 3 fields");
    auto s = parse_double(fields[2]);
    if (!s)
      throw ParseError(path, lineno,
                       "bad score '" + std::string(fields[2]) + "'");
    out.push_back({std::string(fields[0]), std::string(fields[1]), *s});
  }
  if (out.empty()) throw DataError("no similarity pairs in " + path);
  return out;
}

void save_similarity_pairs(const std::vector<SimilarityPair>& pairs,
                           const std::string& path) {
  auto out = open_output(path);
  for (const auto& p : pairs)
    out << p.w1 << '\t' << p.w2 << '\t' << format_double(p.score, 9) << '\n';
}

AnalogyReport eval_analogy(const EmbeddingModel& m,
                           const std::vector<AnalogyQuestion>& questions,
                           int top_k, bool vocab_filter,
                           bool exclude_question_words) {
  if (top_k < 1) throw DataError("top_k must be >= 1");
  if (questions.empty()) throw DataError("no analogy questions");

  AnalogyReport report;
  std::map<std::string, size_t> cat_index;
  auto cat_slot = [&](const std::string& cat) -> CategoryResult& {
    auto it = cat_index.find(cat);
    if (it == cat_index.end()) {
      cat_index.emplace(cat, report.categories.size());
      report.categories.emplace_back(cat, CategoryResult{});
      return report.categories.back().second;
    }
    return report.categories[it->second].second;
  };

  std::vector<double> query(m.dim);
  for (const auto& q : questions) {
    int32_t ia = m.id_of(q.a), ib = m.id_of(q.b), ic = m.id_of(q.c);
    std::vector<int32_t> answer_ids;
    for (const auto& ans : q.answers) {
      int32_t id = m.id_of(ans);
      if (id >= 0) answer_ids.push_back(id);
    }
    bool resolvable = ia >= 0 && ib >= 0 && ic >= 0 && !answer_ids.empty();
    if (!resolvable) {
      if (vocab_filter) {
        ++report.dropped;
      } else {
        CategoryResult& slot = cat_slot(q.category);
        ++slot.used;
        ++report.overall.used;
      }
      continue;
    }
    const double *va = m.in_row(ia), *vb = m.in_row(ib), *vc = m.in_row(ic);
    for (int32_t j = 0; j < m.dim; ++j) query[j] = vb[j] - va[j] + vc[j];
    std::vector<int32_t> exclude;
    if (exclude_question_words) exclude = {ia, ib, ic};
    bool correct = false;
    // A zero query (degenerate question geometry) retrieves nothing.
    double norm2 = 0.0;
    for (double v : query) norm2 += v * v;
    if (norm2 > 0.0) {
      auto top = nearest(m, query, top_k, exclude);
      for (const auto& nb : top)
        if (std::find(answer_ids.begin(), answer_ids.end(), nb.id) !=
            answer_ids.end()) {
          correct = true;
          break;
        }
    }
    CategoryResult& slot = cat_slot(q.category);
    ++slot.used;
    ++report.overall.used;
    if (correct) {
      ++slot.correct;
      ++report.overall.correct;
    }
  }
  for (auto& [name, r] : report.categories)
    r.accuracy = r.used ? static_cast<double>(r.correct) / r.used : 0.0;
  report.overall.accuracy =
      report.overall.used
          ? static_cast<double>(report.overall.correct) / report.overall.used
          : 0.0;
  return report;
}

namespace {

// Average ranks (1-based) with ties sharing the mean rank of their run.
std::vector<double> ranks_of(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(n);
  size_t i = 0;
  while (i < n) {
    size_t j = i;
    while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
    double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2;
    for (size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

// Continued fraction for the regularized incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 200;
  constexpr double kEps = 3e-15, kFpMin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

double ibeta_reg(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
              a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
  return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace

SpearmanResult spearman(const std::vector<double>& x,
                        const std::vector<double>& y) {
  if (x.size() != y.size())
    throw DataError("spearman: input length mismatch");
  const size_t n = x.size();
  if (n < 3) throw DataError("spearman needs at least 3 observations");
  bool x_const = std::all_of(x.begin(), x.end(),
                             [&](double v) { return v == x[0]; });
  bool y_const = std::all_of(y.begin(), y.end(),
                             [&](double v) { return v == y[0]; });
  if (x_const || y_const)
    throw NumericError("spearman: constant input has no rank ordering");

  auto rx = ranks_of(x), ry = ranks_of(y);
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mx += rx[i];
    my += ry[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double dx = rx[i] - mx, dy = ry[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  SpearmanResult r;
  r.n = n;
  r.rho = sxy / std::sqrt(sxx * syy);
  double nu = static_cast<double>(n) - 2.0;
  double one_minus = 1.0 - r.rho * r.rho;
  if (one_minus <= 0.0) {
    r.p_value = 0.0;
  } else {
    double t = r.rho * std::sqrt(nu / one_minus);
    r.p_value = ibeta_reg(nu / 2.0, 0.5, nu / (nu + t * t));
  }
  return r;
}

SimilarityReport eval_similarity(const EmbeddingModel& m,
                                 const std::vector<SimilarityPair>& pairs) {
  if (pairs.empty()) throw DataError("no similarity pairs");
  std::vector<double> human, cos;
  SimilarityReport rep;
  for (const auto& p : pairs) {
    int32_t i1 = m.id_of(p.w1), i2 = m.id_of(p.w2);
    if (i1 < 0 || i2 < 0) {
      ++rep.dropped;
      continue;
    }
    const double *v1 = m.in_row(i1), *v2 = m.in_row(i2);
    double d12 = 0.0, d11 = 0.0, d22 = 0.0;
    for (int32_t j = 0; j < m.dim; ++j) {
      d12 += v1[j] * v2[j];
      d11 += v1[j] * v1[j];
      d22 += v2[j] * v2[j];
    }
    if (!(d11 > 0.0) || !(d22 > 0.0))
      throw NumericError("zero-norm vector for '" +
                         (d11 > 0.0 ? p.w2 : p.w1) + "'");
    human.push_back(p.score);
    cos.push_back(d12 / std::sqrt(d11 * d22));
  }
  rep.used = static_cast<int64_t>(human.size());
  if (rep.used < 3)
    throw DataError("fewer than 3 usable similarity pairs after OOV drop");
  rep.correlation = spearman(human, cos);
  return rep;
}

namespace {

// Deterministic subsample keeping original order: seeded choice of indices,
// then ascending.
template <typename T>
void subsample_to(std::vector<T>& items, size_t limit, uint64_t seed) {
  if (limit == 0 || items.size() <= limit) return;
  Rng rng = make_rng(seed);
  auto keep = sample_indices(rng, items.size(), limit);
  std::sort(keep.begin(), keep.end());
  std::vector<T> out;
  out.reserve(limit);
  for (size_t i : keep) out.push_back(std::move(items[i]));
  items = std::move(out);
}

}  // namespace

std::vector<AnalogyQuestion> gen_acoustic_analogies(const HomophoneSet& groups,
                                                    size_t limit,
                                                    uint64_t seed) {
  const auto& gs = groups.groups;
  if (gs.size() < 2)
    throw DataError("need at least 2 homophone groups for analogies");
  for (const auto& g : gs)
    if (g.size() < 2) throw DataError("homophone group with fewer than 2 words");

  std::vector<AnalogyQuestion> out;
  for (size_t gi = 0; gi < gs.size(); ++gi)
    for (size_t gj = 0; gj < gs.size(); ++gj) {
      if (gi == gj) continue;
      const auto& g1 = gs[gi];
      const auto& g2 = gs[gj];
      for (size_t a1 = 0; a1 < g1.size(); ++a1)
        for (size_t a2 = 0; a2 < g1.size(); ++a2) {
          if (a1 == a2) continue;
          for (size_t b1 = 0; b1 < g2.size(); ++b1)
            for (size_t b2 = 0; b2 < g2.size(); ++b2) {
              if (b1 == b2) continue;
              AnalogyQuestion q;
              q.a = g1[a1];
              q.b = g1[a2];
              q.c = g2[b1];
              for (size_t k = 0; k < g2.size(); ++k)
                if (k != b1) q.answers.push_back(g2[k]);
              q.category = "acoustic";
              out.push_back(std::move(q));
            }
        }
    }
  subsample_to(out, limit, seed);
  return out;
}

std::vector<AnalogyQuestion> gen_ss_acoustic_analogies(
    const std::vector<AnalogyQuestion>& base, const HomophoneSet& groups,
    size_t sample_n, uint64_t seed) {
  if (base.empty()) throw DataError("no base analogy questions");
  std::unordered_map<std::string, const std::vector<std::string>*> member_of;
  for (const auto& g : groups.groups)
    for (const auto& w : g) {
      if (!member_of.emplace(w, &g).second)
        throw DataError("word '" + w + "' appears in multiple homophone groups");
    }

  // Substitution options for a slot: the word itself first, then its
  // homophones in group order.
  auto options_for = [&](const std::string& w) {
    std::vector<std::string> opts{w};
    auto it = member_of.find(w);
    if (it != member_of.end())
      for (const auto& h : *it->second)
        if (h != w) opts.push_back(h);
    return opts;
  };

  std::vector<AnalogyQuestion> out;
  for (const auto& q : base) {
    if (q.answers.size() != 1)
      throw DataError("base analogy questions must have a single answer");
    const std::string& ans = q.answers[0];
    std::vector<std::vector<std::string>> slots = {
        options_for(q.a), options_for(q.b), options_for(q.c),
        options_for(ans)};
    size_t combos = 1;
    for (const auto& s : slots) combos *= s.size();
    if (combos == 1) continue;  // no homophone-bearing word: pruned

    std::vector<std::string> answers = options_for(ans);  // original + homs
    // Mixed-radix enumeration, slot `ans` fastest; index 0 is the identity.
    for (size_t code = 1; code < combos; ++code) {
      size_t rest = code;
      std::vector<size_t> pick(4);
      for (int s = 3; s >= 0; --s) {
        pick[s] = rest % slots[s].size();
        rest /= slots[s].size();
      }
      AnalogyQuestion v;
      v.a = slots[0][pick[0]];
      v.b = slots[1][pick[1]];
      v.c = slots[2][pick[2]];
      v.answers = answers;
      v.category = q.category;
      out.push_back(std::move(v));
    }
  }
  if (out.empty())
    throw DataError("no base question contains a homophone-bearing word");
  subsample_to(out, sample_n, seed);
  return out;
}

RatingGenResult gen_acoustic_similarity_ratings(
    const std::vector<SimilarityPair>& rated, const HomophoneSet& groups,
    const Lexicon& lex) {
  RatingGenResult res;
  std::set<std::pair<std::string, std::string>> seen;
  auto key = [](const std::string& a, const std::string& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  for (const auto& g : groups.groups)
    for (size_t i = 0; i < g.size(); ++i)
      for (size_t j = i + 1; j < g.size(); ++j)
        if (seen.insert(key(g[i], g[j])).second)
          res.pairs.push_back({g[i], g[j], 1.0});
  for (const auto& p : rated) {
    if (!seen.insert(key(p.w1, p.w2)).second) continue;
    if (!lex.contains(p.w1) || !lex.contains(p.w2)) {
      ++res.dropped;
      continue;
    }
    res.pairs.push_back({p.w1, p.w2, acoustic_similarity(p.w1, p.w2, lex)});
  }
  if (res.pairs.empty()) throw DataError("no acoustic similarity pairs");
  return res;
}

}  // namespace c2v
