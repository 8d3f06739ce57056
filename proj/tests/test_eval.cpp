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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "c2v/errors.hpp"
#include "c2v/eval.hpp"
#include "c2v/lexicon.hpp"
#include "c2v/model.hpp"
#include "c2v/rng.hpp"
#include "doctest.h"

using namespace c2v;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

// Model whose words sit at fixed coordinates in an 8-dim space.
EmbeddingModel model_at(
    const std::vector<std::pair<std::string, std::vector<double>>>& rows) {
  EmbeddingModel m;
  m.dim = 8;
  m.input.assign(rows.size() * 8, 0.0);
  for (size_t i = 0; i < rows.size(); ++i) {
    m.words.push_back(rows[i].first);
    for (size_t j = 0; j < rows[i].second.size(); ++j)
      m.input[i * 8 + j] = rows[i].second[j];
  }
  m.output.assign(rows.size() * 8, 0.0);
  m.rebuild_index();
  return m;
}

// Independent rank reference: counting ranks + direct Pearson over ranks.
double brute_spearman(const std::vector<double>& x,
                      const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (size_t i = 0; i < v.size(); ++i) {
      size_t less = 0, equal = 0;
      for (size_t j = 0; j < v.size(); ++j) {
        if (v[j] < v[i]) ++less;
        if (v[j] == v[i]) ++equal;
      }
      r[i] = double(less) + 1.0 + (double(equal) - 1.0) / 2.0;
    }
    return r;
  };
  auto rx = ranks(x), ry = ranks(y);
  double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += rx[i];
    sy += ry[i];
    sxx += rx[i] * rx[i];
    syy += ry[i] * ry[i];
    sxy += rx[i] * ry[i];
  }
  double cov = sxy - sx * sy / n;
  double vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
  return cov / std::sqrt(vx * vy);
}

bool is_constant(const std::vector<double>& v) {
  for (double x : v)
    if (x != v[0]) return false;
  return true;
}

}  // namespace

TEST_CASE("analogy files round trip with categories and multi-answers") {
  auto path = temp_path("c2v_analogy_io.txt");
  {
    std::ofstream out(path);
    out << ": capital-common\n"
        << "athens greece baghdad iraq\n"
        << ": acoustic\n"
        << "see sea red read|red2\n";
  }
  auto qs = load_analogies(path);
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].category == "capital-common");
  CHECK(qs[0].a == "athens");
  CHECK(qs[0].answers == std::vector<std::string>{"iraq"});
  CHECK(qs[1].category == "acoustic");
  CHECK(qs[1].answers == std::vector<std::string>{"read", "red2"});

  auto path2 = temp_path("c2v_analogy_io2.txt");
  save_analogies(qs, path2);
  auto qs2 = load_analogies(path2);
  REQUIRE(qs2.size() == qs.size());
  for (size_t i = 0; i < qs.size(); ++i) {
    CHECK(qs2[i].a == qs[i].a);
    CHECK(qs2[i].b == qs[i].b);
    CHECK(qs2[i].c == qs[i].c);
    CHECK(qs2[i].answers == qs[i].answers);
    CHECK(qs2[i].category == qs[i].category);
  }

  {
    std::ofstream out(path);
    out << "a b c\n";
  }
  CHECK_THROWS_AS(load_analogies(path), ParseError);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("similarity files round trip") {
  auto path = temp_path("c2v_sim_io.tsv");
  std::vector<SimilarityPair> pairs = {{"tiger", "cat", 7.35},
                                       {"book", "paper", 5.5}};
  save_similarity_pairs(pairs, path);
  auto back = load_similarity_pairs(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].w1 == "tiger");
  CHECK(back[0].score == doctest::Approx(7.35));
  std::filesystem::remove(path);
}

TEST_CASE("a perfect hand-built model scores 100 percent") {
  // v(b) - v(a) + v(c): king - man + woman = queen by construction
  auto m = model_at({{"man", {1, 0, 0}},
                     {"king", {1, 0, 1}},
                     {"woman", {0, 1, 0}},
                     {"queen", {0, 1, 1}},
                     {"prince", {1, 0.2, 1}},
                     {"princess", {0.2, 1, 1}},
                     {"noise", {0.3, 0.3, -1}}});
  std::vector<AnalogyQuestion> qs = {
      {"man", "king", "woman", {"queen"}, "default"},
      {"king", "man", "queen", {"woman"}, "default"},
      {"king", "prince", "queen", {"princess"}, "default"},
  };
  auto r = eval_analogy(m, qs, 1);
  CHECK(r.overall.used == 3);
  CHECK(r.overall.correct == 3);
  CHECK(r.overall.accuracy == doctest::Approx(1.0));
  CHECK(r.dropped == 0);
}

TEST_CASE("top-2 accuracy dominates top-1") {
  Rng rng = make_rng(17, 0);
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  for (int i = 0; i < 30; ++i) {
    std::vector<double> v(8);
    for (auto& x : v) x = next_double(rng) - 0.5;
    rows.push_back({"t" + std::to_string(i), v});
  }
  auto m = model_at(rows);
  std::vector<AnalogyQuestion> qs;
  for (int i = 0; i + 3 < 30; i += 4)
    qs.push_back({"t" + std::to_string(i), "t" + std::to_string(i + 1),
                  "t" + std::to_string(i + 2),
                  {"t" + std::to_string(i + 3)},
                  "default"});
  auto r1 = eval_analogy(m, qs, 1);
  auto r2 = eval_analogy(m, qs, 2);
  CHECK(r2.overall.correct >= r1.overall.correct);
}

TEST_CASE("question words are excluded from retrieval by default") {
  // b lies closest to the query; with exclusion the answer is found.
  auto m = model_at({{"a", {1, 0, 0}},
                     {"b", {0.9, 0.1, 0}},
                     {"c", {0.8, 0.15, 0}},
                     {"ans", {0.82, 0.1, 0.05}},
                     {"far", {-1, -1, -1}}});
  std::vector<AnalogyQuestion> qs = {{"a", "b", "c", {"ans"}, "default"}};
  auto with = eval_analogy(m, qs, 1, true, true);
  CHECK(with.overall.correct == 1);
  auto without = eval_analogy(m, qs, 1, true, false);
  CHECK(without.overall.correct == 0);
}

TEST_CASE("vocabulary filtering drops or scores OOV questions") {
  auto m = model_at({{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}});
  std::vector<AnalogyQuestion> qs = {
      {"a", "b", "c", {"a"}, "default"},        // resolvable
      {"a", "b", "missing", {"a"}, "default"},  // c OOV
      {"a", "b", "c", {"gone"}, "default"},     // all answers OOV
  };
  auto drop = eval_analogy(m, qs, 1, true);
  CHECK(drop.overall.used == 1);
  CHECK(drop.dropped == 2);
  auto keep = eval_analogy(m, qs, 1, false);
  CHECK(keep.overall.used == 3);
  CHECK(keep.dropped == 0);
  CHECK(keep.overall.correct <= 1);
}

TEST_CASE("multi-answer questions accept any listed answer") {
  auto m = model_at({{"a", {1, 0, 0}},
                     {"b", {0, 1, 0}},
                     {"c", {1, 0, 1}},
                     {"hit", {0, 1, 1}},
                     {"other", {-1, 0, 0}}});
  std::vector<AnalogyQuestion> qs = {
      {"a", "b", "c", {"other", "hit"}, "default"}};
  auto r = eval_analogy(m, qs, 1);
  CHECK(r.overall.correct == 1);
}

TEST_CASE("per-category splits accumulate in first-seen order") {
  auto m = model_at({{"a", {1, 0, 0}},
                     {"b", {0, 1, 0}},
                     {"c", {1, 0, 1}},
                     {"d", {0, 1, 1}}});
  std::vector<AnalogyQuestion> qs = {
      {"a", "b", "c", {"d"}, "sem"},
      {"b", "a", "d", {"c"}, "gram-x"},
      {"a", "b", "c", {"d"}, "sem"},
  };
  auto r = eval_analogy(m, qs, 2);
  REQUIRE(r.categories.size() == 2);
  CHECK(r.categories[0].first == "sem");
  CHECK(r.categories[0].second.used == 2);
  CHECK(r.categories[1].first == "gram-x");
  CHECK(r.categories[1].second.used == 1);
  CHECK(r.overall.used == 3);
}

TEST_CASE("spearman hand values") {
  // ranks differ by d = (0, 1, -1): sum d^2 = 2, rho = 1 - 12/(3*8) = 0.5
  auto r = spearman({1, 2, 3}, {1, 3, 2});
  CHECK(r.rho == doctest::Approx(0.5).epsilon(1e-12));
  // t test with one degree of freedom reduces to a Cauchy tail: p = 2/3
  CHECK(r.p_value == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(r.n == 3);

  CHECK(spearman({1, 2, 3, 4}, {2, 4, 6, 8}).rho == doctest::Approx(1.0));
  CHECK(spearman({1, 2, 3, 4}, {8, 6, 4, 2}).rho == doctest::Approx(-1.0));
  // perfect correlation degenerates to p = 0
  CHECK(spearman({1, 2, 3, 4}, {2, 4, 6, 8}).p_value == 0.0);

  CHECK_THROWS_AS(spearman({1, 2}, {1, 2}), DataError);
  CHECK_THROWS_AS(spearman({1, 2, 3}, {1, 2}), DataError);
  CHECK_THROWS_AS(spearman({1, 1, 1}, {1, 2, 3}), NumericError);
}

TEST_CASE("spearman matches the brute-force reference on all small inputs") {
  // exhaustive: every x, y in {0,1,2}^n for n = 3, 4 (ties included)
  for (int n : {3, 4}) {
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int xa = 0; xa < total; ++xa) {
      std::vector<double> x;
      int v = xa;
      for (int i = 0; i < n; ++i) {
        x.push_back(v % 3);
        v /= 3;
      }
      if (is_constant(x)) continue;
      for (int ya = 0; ya < total; ++ya) {
        std::vector<double> y;
        int w = ya;
        for (int i = 0; i < n; ++i) {
          y.push_back(w % 3);
          w /= 3;
        }
        if (is_constant(y)) continue;
        CAPTURE(xa);
        CAPTURE(ya);
        double got = spearman(x, y).rho;
        double want = brute_spearman(x, y);
        CHECK(got == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("spearman matches the reference on random longer inputs") {
  Rng rng = make_rng(5150, 0);
  for (int trial = 0; trial < 500; ++trial) {
    size_t n = 5 + uniform_index(rng, 4);  // 5..8
    std::vector<double> x, y;
    for (size_t i = 0; i < n; ++i) {
      x.push_back(double(uniform_index(rng, 4)));
      y.push_back(double(uniform_index(rng, 4)));
    }
    if (is_constant(x) || is_constant(y)) continue;
    double got = spearman(x, y).rho;
    double want = brute_spearman(x, y);
    CHECK(got == doctest::Approx(want).epsilon(1e-12));
    if (std::fabs(got) < 1.0) {
      double p = spearman(x, y).p_value;
      CHECK(p > 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("p-values shrink as evidence grows") {
  // same rho from longer input should be more significant
  std::vector<double> x1 = {1, 2, 3, 4, 5};
  std::vector<double> y1 = {1, 3, 2, 5, 4};
  std::vector<double> x2, y2;
  for (int rep = 0; rep < 4; ++rep)
    for (size_t i = 0; i < x1.size(); ++i) {
      x2.push_back(x1[i] + 10.0 * rep);
      y2.push_back(y1[i] + 10.0 * rep);
    }
  auto r1 = spearman(x1, y1);
  auto r2 = spearman(x2, y2);
  CHECK(r2.rho > 0.5);
  CHECK(r2.p_value < r1.p_value);
}

TEST_CASE("eval_similarity correlates cosine with reference scores") {
  auto m = model_at({{"hot", {1, 0, 0}},
                     {"warm", {0.95, 0.3, 0}},
                     {"cold", {-1, 0.2, 0}},
                     {"ice", {-0.9, 0.3, 0.1}}});
  // reference order matches the cosine order exactly: rho = 1
  std::vector<SimilarityPair> pairs = {
      {"hot", "warm", 8.5}, {"cold", "ice", 9.0},   {"hot", "cold", 1.0},
      {"warm", "ice", 2.0}, {"hot", "oov", 5.0},
  };
  auto r = eval_similarity(m, pairs);
  CHECK(r.used == 4);
  CHECK(r.dropped == 1);
  CHECK(r.correlation.rho == doctest::Approx(1.0));

  std::vector<SimilarityPair> few = {{"hot", "warm", 1.0}, {"hot", "oov", 2.0},
                                     {"warm", "oov", 3.0}};
  CHECK_THROWS_AS(eval_similarity(m, few), DataError);
}

TEST_CASE("acoustic analogy generation enumerates ordered pairs") {
  HomophoneSet h;
  h.groups = {{"see", "sea"}, {"red", "read"}};
  auto qs = gen_acoustic_analogies(h, 0, 1);
  REQUIRE(qs.size() == 8);
  for (const auto& q : qs) CHECK(q.category == "acoustic");
  // first block: group pair (0,1), a-pair (see,sea)
  CHECK(qs[0].a == "see");
  CHECK(qs[0].b == "sea");
  CHECK(qs[0].c == "red");
  CHECK(qs[0].answers == std::vector<std::string>{"read"});
  CHECK(qs[1].c == "read");
  CHECK(qs[1].answers == std::vector<std::string>{"red"});
  CHECK(qs[2].a == "sea");
  CHECK(qs[2].b == "see");
  // second block: group pair (1,0)
  CHECK(qs[4].a == "red");
  CHECK(qs[4].c == "see");
  CHECK(qs[4].answers == std::vector<std::string>{"sea"});

  // a triple group emits each (a1,a2,b1) once per remaining partner b2
  HomophoneSet h3;
  h3.groups = {{"x", "y"}, {"p", "q", "r"}};
  auto qs3 = gen_acoustic_analogies(h3, 0, 1);
  // (0,1): 2 a-pairs * 6 b-pairs; (1,0): 6 a-pairs * 2 b-pairs
  CHECK(qs3.size() == 2 * 6 + 6 * 2);
  // duplicates appear: (x, y, p) once with answers {q,r} per b2 in {q,r}
  int dup = 0;
  for (const auto& q : qs3)
    if (q.a == "x" && q.b == "y" && q.c == "p") {
      ++dup;
      CHECK(q.answers == std::vector<std::string>{"q", "r"});
    }
  CHECK(dup == 2);

  CHECK_THROWS_AS(gen_acoustic_analogies(HomophoneSet{{{"a", "b"}}}, 0, 1),
                  DataError);
}

TEST_CASE("acoustic analogy subsampling is seeded and order-preserving") {
  HomophoneSet h;
  h.groups = {{"a", "b", "c"}, {"d", "e", "f"}, {"g", "h"}};
  auto all = gen_acoustic_analogies(h, 0, 9);
  auto some = gen_acoustic_analogies(h, 10, 9);
  REQUIRE(some.size() == 10);
  auto some2 = gen_acoustic_analogies(h, 10, 9);
  for (size_t i = 0; i < some.size(); ++i) {
    CHECK(some[i].a == some2[i].a);
    CHECK(some[i].c == some2[i].c);
  }
  // order preserved: each sampled question appears in `all` order
  size_t cursor = 0;
  for (const auto& q : some) {
    while (cursor < all.size() &&
           !(all[cursor].a == q.a && all[cursor].b == q.b &&
             all[cursor].c == q.c && all[cursor].answers == q.answers))
      ++cursor;
    CHECK(cursor < all.size());
    ++cursor;
  }
  auto other = gen_acoustic_analogies(h, 10, 10);
  bool differs = false;
  for (size_t i = 0; i < other.size(); ++i)
    if (other[i].a != some[i].a || other[i].c != some[i].c) differs = true;
  CHECK(differs);
}

TEST_CASE("homophone substitution expands the frozen example") {
  HomophoneSet h;
  h.groups = {{"buoy", "boy"}, {"queen", "quean"}};
  std::vector<AnalogyQuestion> base = {
      {"buoy", "girl", "king", {"queen"}, "family"}};
  auto qs = gen_ss_acoustic_analogies(base, h, 0, 1);
  REQUIRE(qs.size() == 3);
  for (const auto& q : qs) {
    CHECK(q.category == "family");
    CHECK(q.answers == std::vector<std::string>{"queen", "quean"});
    CHECK(q.b == "girl");
    CHECK(q.c == "king");
  }
  // answer slot varies fastest; identity (code 0) is skipped
  CHECK(qs[0].a == "buoy");
  CHECK(qs[1].a == "boy");
  CHECK(qs[2].a == "boy");

  // questions with no homophone-bearing words are pruned
  std::vector<AnalogyQuestion> mixed = {
      {"plain", "words", "only", {"here"}, "x"},
      {"buoy", "girl", "king", {"queen"}, "x"}};
  auto qs2 = gen_ss_acoustic_analogies(mixed, h, 0, 1);
  CHECK(qs2.size() == 3);

  std::vector<AnalogyQuestion> none = {
      {"plain", "words", "only", {"here"}, "x"}};
  CHECK_THROWS_AS(gen_ss_acoustic_analogies(none, h, 0, 1), DataError);

  std::vector<AnalogyQuestion> multi = {
      {"buoy", "girl", "king", {"queen", "q2"}, "x"}};
  CHECK_THROWS_AS(gen_ss_acoustic_analogies(multi, h, 0, 1), DataError);

  HomophoneSet overlapping;
  overlapping.groups = {{"buoy", "boy"}, {"boy", "bouy"}};
  CHECK_THROWS_AS(gen_ss_acoustic_analogies(base, overlapping, 0, 1),
                  DataError);
}

TEST_CASE("acoustic similarity ratings merge homophones and rescored pairs") {
  Lexicon lex;
  lex.entries["see"] = {{"S", "IY"}};
  lex.entries["sea"] = {{"S", "IY"}};
  lex.entries["sit"] = {{"S", "IH", "T"}};
  lex.entries["seat"] = {{"S", "IY", "T"}};
  HomophoneSet h;
  h.groups = {{"see", "sea"}};
  std::vector<SimilarityPair> rated = {
      {"sit", "seat", 7.5},
      {"sea", "see", 3.0},      // collides with the homophone pair
      {"sit", "missing", 2.0},  // dropped
  };
  auto r = gen_acoustic_similarity_ratings(rated, h, lex);
  CHECK(r.dropped == 1);
  REQUIRE(r.pairs.size() == 2);
  bool saw_hom = false, saw_rescored = false;
  for (const auto& p : r.pairs) {
    if ((p.w1 == "see" && p.w2 == "sea") ||
        (p.w1 == "sea" && p.w2 == "see")) {
      CHECK(p.score == doctest::Approx(1.0));
      saw_hom = true;
    }
    if ((p.w1 == "sit" && p.w2 == "seat") ||
        (p.w1 == "seat" && p.w2 == "sit")) {
      CHECK(p.score == doctest::Approx(2.0 / 3.0));
      saw_rescored = true;
    }
  }
  CHECK(saw_hom);
  CHECK(saw_rescored);
}
