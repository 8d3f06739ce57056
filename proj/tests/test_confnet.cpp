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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "c2v/confnet.hpp"
#include "c2v/errors.hpp"
#include "c2v/lexicon.hpp"
#include "c2v/rng.hpp"
#include "c2v/text_io.hpp"
#include "doctest.h"

using namespace c2v;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

ConfusionBin bin(std::vector<std::pair<std::string, double>> entries) {
  ConfusionBin b;
  for (auto& [w, p] : entries) b.entries.push_back({w, p});
  return b;
}

}  // namespace

TEST_CASE("rng transforms are in range and deterministic") {
  Rng a = make_rng(7, 0), b = make_rng(7, 0), c = make_rng(7, 1);
  bool diverged = false;
  for (int i = 0; i < 1000; ++i) {
    double x = next_double(a), y = next_double(b);
    CHECK(x == y);
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    if (next_double(c) != x) diverged = true;
  }
  CHECK(diverged);

  Rng r = make_rng(3, 0);
  for (int i = 0; i < 1000; ++i) {
    uint64_t v = uniform_index(r, 7);
    CHECK(v < 7);
  }
  auto dir = next_dirichlet(r, 0.4, 5);
  double sum = 0.0;
  for (double d : dir) {
    CHECK(d >= 0.0);
    sum += d;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  auto pick = sample_indices(r, 10, 4);
  CHECK(pick.size() == 4);
  for (auto i : pick) CHECK(i < 10);
}

TEST_CASE("number formatting round-trips and is locale independent") {
  CHECK(format_fixed(0.5, 6) == "0.500000");
  CHECK(format_double(1.0 / 3.0, 9) == "0.333333333");
  CHECK(parse_double("0.333333333").value() == doctest::Approx(1.0 / 3.0));
  CHECK(!parse_double("1.0x").has_value());
  CHECK(!parse_double("").has_value());
  CHECK(parse_int("-42").value() == -42);
  CHECK(!parse_int("42.5").has_value());
}

TEST_CASE("normalize_bin scales, sorts, and rejects bad mass") {
  ConfusionBin b = bin({{"b", 0.2}, {"a", 0.2}, {"c", 0.6}});
  normalize_bin(b);
  CHECK(b.entries[0].word == "c");
  CHECK(b.entries[0].posterior == doctest::Approx(0.6));
  // tie on posterior breaks by word
  CHECK(b.entries[1].word == "a");
  CHECK(b.entries[2].word == "b");
  double total = 0.0;
  for (auto& e : b.entries) total += e.posterior;
  CHECK(total == doctest::Approx(1.0));

  ConfusionBin zero = bin({{"a", 0.0}, {"b", 0.0}});
  CHECK_THROWS_AS(normalize_bin(zero), NumericError);
  ConfusionBin neg = bin({{"a", 0.5}, {"b", -0.1}});
  CHECK_THROWS_AS(normalize_bin(neg), NumericError);
  ConfusionBin empty;
  CHECK_THROWS_AS(normalize_bin(empty), DataError);
}

TEST_CASE("parse_confnets reads the text format") {
  std::istringstream in(
      "#id utt-1\n"
      "hello:0.8 yellow:0.2\n"
      "world:1.0\n"
      "\n"
      "two:0.5 too:0.3 to:0.2\n");
  auto nets = parse_confnets(in, "test");
  REQUIRE(nets.size() == 2);
  CHECK(nets[0].utterance_id == "utt-1");
  REQUIRE(nets[0].num_bins() == 2);
  CHECK(nets[0].bins[0].entries[0].word == "hello");
  CHECK(nets[0].bins[0].entries[0].posterior == doctest::Approx(0.8));
  CHECK(nets[1].utterance_id.empty());
  CHECK(nets[1].num_bins() == 1);
  CHECK(nets[1].bins[0].size() == 3);

  auto path = top1_path(nets[0]);
  CHECK(path == std::vector<std::string>{"hello", "world"});
}

TEST_CASE("parse_confnets reports line numbers on violations") {
  std::istringstream bad("ok:1.0\nbroken\n");
  try {
    parse_confnets(bad, "f");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  std::istringstream bad2("w:x\n");
  CHECK_THROWS_AS(parse_confnets(bad2, "f"), ParseError);
  std::istringstream bad3("w:-1.0\n");
  CHECK_THROWS_AS(parse_confnets(bad3, "f"), ParseError);
}

TEST_CASE("write/parse round trip preserves structure and posteriors") {
  std::istringstream in(
      "#id a-1\n"
      "alpha:0.619048 beta:0.380952\n"
      "gamma:1.000000\n"
      "\n"
      "#id a-2\n"
      "x:0.5 y:0.25 z:0.25\n");
  auto nets = parse_confnets(in, "t");
  std::ostringstream out;
  write_confnets(nets, out);
  std::istringstream back(out.str());
  auto nets2 = parse_confnets(back, "t2");
  REQUIRE(nets2.size() == nets.size());
  for (size_t n = 0; n < nets.size(); ++n) {
    CHECK(nets2[n].utterance_id == nets[n].utterance_id);
    REQUIRE(nets2[n].num_bins() == nets[n].num_bins());
    for (size_t t = 0; t < nets[n].num_bins(); ++t) {
      REQUIRE(nets2[n].bins[t].size() == nets[n].bins[t].size());
      for (size_t i = 0; i < nets[n].bins[t].size(); ++i) {
        CHECK(nets2[n].bins[t].entries[i].word ==
              nets[n].bins[t].entries[i].word);
        CHECK(nets2[n].bins[t].entries[i].posterior ==
              doctest::Approx(nets[n].bins[t].entries[i].posterior)
                  .epsilon(1e-6));
      }
    }
  }

  // serialization is stable: writing the reparsed networks matches bytes
  std::ostringstream out2;
  write_confnets(nets2, out2);
  CHECK(out.str() == out2.str());
}

TEST_CASE("sentences round-trip and convert to singleton networks") {
  auto path = temp_path("c2v_sentences.txt");
  std::vector<std::vector<std::string>> sents = {{"a", "b", "c"}, {"d"}};
  save_sentences(sents, path);
  CHECK(load_sentences(path) == sents);
  auto nets = sentences_to_confnets(sents);
  REQUIRE(nets.size() == 2);
  CHECK(nets[0].num_bins() == 3);
  for (const auto& b : nets[0].bins) {
    CHECK(b.size() == 1);
    CHECK(b.entries[0].posterior == doctest::Approx(1.0));
  }
  CHECK(top1_path(nets[0]) == sents[0]);
  std::filesystem::remove(path);
}

TEST_CASE("lexicon load/save with variants and comments") {
  auto path = temp_path("c2v_lex.txt");
  {
    auto out = open_output(path);
    out << ";;; comment line\n"
        << "read  R EH D\n"
        << "read(2)  R IY D\n"
        << "red  R EH D\n";
  }
  Lexicon lex = load_lexicon(path);
  CHECK(lex.size() == 2);
  REQUIRE(lex.entries.at("read").size() == 2);
  CHECK(lex.entries.at("read")[0] == Pronunciation{"R", "EH", "D"});
  CHECK(lex.entries.at("read")[1] == Pronunciation{"R", "IY", "D"});

  auto path2 = temp_path("c2v_lex2.txt");
  save_lexicon(lex, path2);
  Lexicon lex2 = load_lexicon(path2);
  CHECK(lex2.entries == lex.entries);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("phone edit distance oracle values") {
  Pronunciation sit{"S", "IH", "T"}, seat{"S", "IY", "T"};
  CHECK(phone_edit_distance(sit, seat) == doctest::Approx(1.0 / 3.0));
  CHECK(phone_edit_distance(sit, sit) == 0.0);
  CHECK(phone_edit_distance({}, {}) == 0.0);
  CHECK(phone_edit_distance(sit, {}) == 1.0);
  // insertion against the longer side normalizes by the longer length
  Pronunciation seats{"S", "IY", "T", "S"};
  CHECK(phone_edit_distance(sit, seats) == doctest::Approx(2.0 / 4.0));
  // symmetry
  CHECK(phone_edit_distance(seats, sit) ==
        doctest::Approx(phone_edit_distance(sit, seats)));
}

TEST_CASE("acoustic similarity minimizes over pronunciation variants") {
  Lexicon lex;
  lex.entries["sit"] = {{"S", "IH", "T"}};
  lex.entries["seat"] = {{"S", "IY", "T"}};
  lex.entries["read"] = {{"R", "EH", "D"}, {"R", "IY", "D"}};
  lex.entries["red"] = {{"R", "EH", "D"}};
  CHECK(acoustic_similarity("sit", "seat", lex) == doctest::Approx(2.0 / 3.0));
  // homophone through the matching variant: distance 0, similarity 1
  CHECK(acoustic_similarity("read", "red", lex) == doctest::Approx(1.0));
  CHECK(acoustic_similarity("sit", "sit", lex) == doctest::Approx(1.0));
  CHECK_THROWS_AS(acoustic_similarity("sit", "absent", lex), DataError);
}

TEST_CASE("homophone sets load and save") {
  auto path = temp_path("c2v_hom.txt");
  {
    auto out = open_output(path);
    out << "# groups\n"
        << "see sea\n"
        << "to too two\n";
  }
  HomophoneSet h = load_homophones(path);
  REQUIRE(h.groups.size() == 2);
  CHECK(h.groups[1] == std::vector<std::string>{"to", "too", "two"});
  auto path2 = temp_path("c2v_hom2.txt");
  save_homophones(h, path2);
  HomophoneSet h2 = load_homophones(path2);
  CHECK(h2.groups == h.groups);

  {
    auto out = open_output(path);
    out << "lonely\n";
  }
  CHECK_THROWS_AS(load_homophones(path), ParseError);
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("zero noise synthesis reproduces the clean corpus") {
  std::vector<std::vector<std::string>> sents = {{"a", "b"}, {"b", "c", "a"}};
  Lexicon lex;
  lex.entries["a"] = {{"a"}};
  lex.entries["b"] = {{"b"}};
  lex.entries["c"] = {{"c"}};
  NoiseModel noise;
  noise.confusion_rate = 0.0;
  noise.substitution_rate = 0.0;
  auto nets = synthesize_confnets(sents, lex, noise);
  REQUIRE(nets.size() == 2);
  for (size_t n = 0; n < nets.size(); ++n) {
    CHECK(top1_path(nets[n]) == sents[n]);
    for (const auto& b : nets[n].bins) {
      CHECK(b.size() == 1);
      CHECK(b.entries[0].posterior == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("synthesis adds acoustically closest alternatives") {
  // Lexicon geometry: "bat" is closest to "cat" (distance 1/3); "cart" is
  // farther (2/4) and "dog" is farthest.
  Lexicon lex;
  lex.entries["cat"] = {{"c", "a", "t"}};
  lex.entries["bat"] = {{"b", "a", "t"}};
  lex.entries["cart"] = {{"c", "a", "r", "t"}};
  lex.entries["dog"] = {{"d", "o", "g"}};
  std::vector<std::vector<std::string>> sents = {{"cat"}};
  NoiseModel noise;
  noise.confusion_rate = 1.0;
  noise.max_alternatives = 2;
  noise.substitution_rate = 0.0;
  noise.seed = 11;
  auto nets = synthesize_confnets(sents, lex, noise);
  REQUIRE(nets.size() == 1);
  REQUIRE(nets[0].num_bins() == 1);
  const auto& b = nets[0].bins[0];
  REQUIRE(b.size() == 3);  // truth + 2 alternatives
  // truth keeps rank 1 with substitution off
  CHECK(b.entries[0].word == "cat");
  std::vector<std::string> alts{b.entries[1].word, b.entries[2].word};
  std::sort(alts.begin(), alts.end());
  CHECK(alts == std::vector<std::string>{"bat", "cart"});
  double total = 0.0;
  for (auto& e : b.entries) total += e.posterior;
  CHECK(total == doctest::Approx(1.0));
  // posteriors sorted descending
  CHECK(b.entries[0].posterior >= b.entries[1].posterior);
  CHECK(b.entries[1].posterior >= b.entries[2].posterior);
}

TEST_CASE("substitution can displace the truth from rank 1") {
  Lexicon lex;
  lex.entries["cat"] = {{"c", "a", "t"}};
  lex.entries["bat"] = {{"b", "a", "t"}};
  std::vector<std::vector<std::string>> sents(200, {"cat"});
  NoiseModel noise;
  noise.confusion_rate = 1.0;
  noise.max_alternatives = 1;
  noise.substitution_rate = 0.5;
  noise.seed = 5;
  auto nets = synthesize_confnets(sents, lex, noise);
  int displaced = 0;
  for (const auto& net : nets) {
    const auto& b = net.bins[0];
    REQUIRE(b.size() == 2);
    if (b.entries[0].word == "bat") ++displaced;
    CHECK(b.entries[0].posterior >= b.entries[1].posterior);
  }
  // ~half of 200 with generous margins
  CHECK(displaced > 50);
  CHECK(displaced < 150);

  // substitution never happens when no alternatives exist
  Lexicon lonely;
  lonely.entries["cat"] = {{"c", "a", "t"}};
  NoiseModel always;
  always.confusion_rate = 1.0;
  always.max_alternatives = 3;
  always.substitution_rate = 1.0;
  auto nets2 = synthesize_confnets({{"cat"}}, lonely, always);
  CHECK(nets2[0].bins[0].size() == 1);
  CHECK(nets2[0].bins[0].entries[0].word == "cat");
}

TEST_CASE("synthesis is deterministic for a fixed seed") {
  Lexicon lex;
  lex.entries["a"] = {{"a"}};
  lex.entries["b"] = {{"b"}};
  lex.entries["c"] = {{"c"}};
  std::vector<std::vector<std::string>> sents(50, {"a", "b", "c"});
  NoiseModel noise;
  noise.seed = 42;
  auto n1 = synthesize_confnets(sents, lex, noise);
  auto n2 = synthesize_confnets(sents, lex, noise);
  std::ostringstream s1, s2;
  write_confnets(n1, s1);
  write_confnets(n2, s2);
  CHECK(s1.str() == s2.str());
  noise.seed = 43;
  auto n3 = synthesize_confnets(sents, lex, noise);
  std::ostringstream s3;
  write_confnets(n3, s3);
  CHECK(s1.str() != s3.str());
}

TEST_CASE("corpus stats count structure") {
  std::istringstream in("a:0.5 b:0.5\nc:1.0\n\nd:1.0\n");
  auto nets = parse_confnets(in, "t");
  auto st = corpus_stats(nets);
  CHECK(st.num_networks == 2);
  CHECK(st.num_bins == 3);
  CHECK(st.num_arcs == 4);
  CHECK(st.avg_arcs_per_bin == doctest::Approx(4.0 / 3.0));
}
