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

#include "c2v/cli.hpp"

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "c2v/analysis.hpp"
#include "c2v/confnet.hpp"
#include "c2v/corpusgen.hpp"
#include "c2v/errors.hpp"
#include "c2v/eval.hpp"
#include "c2v/lexicon.hpp"
#include "c2v/manifest.hpp"
#include "c2v/model.hpp"
#include "c2v/sampler.hpp"
#include "c2v/text_io.hpp"
#include "c2v/vocab.hpp"

namespace c2v {

namespace {

std::string fmt(double v) { return format_double(v, 9); }

// ---------------------------------------------------------------- gen-corpus

struct GenCorpusOpts {
  GrammarConfig grammar;
  NoiseModel noise;
  uint64_t seed = 1;
  std::string out_confnets;
  std::string out_clean;
  std::string emit_lexicon, emit_homophones, emit_analogies, emit_wordsim;
};

void run_gen_corpus(const GenCorpusOpts& o) {
  GrammarConfig g = o.grammar;
  g.seed = o.seed;
  NoiseModel nm = o.noise;
  nm.seed = o.seed;

  SyntheticWorld world = generate_world(g);
  auto nets = synthesize_confnets(world.sentences, world.lexicon, nm);

  std::vector<std::string> outputs;
  save_confnets(nets, o.out_confnets);
  outputs.push_back(o.out_confnets);
  save_sentences(world.sentences, o.out_clean);
  outputs.push_back(o.out_clean);
  if (!o.emit_lexicon.empty()) {
    save_lexicon(world.lexicon, o.emit_lexicon);
    outputs.push_back(o.emit_lexicon);
  }
  if (!o.emit_homophones.empty()) {
    save_homophones(world.homophones, o.emit_homophones);
    outputs.push_back(o.emit_homophones);
  }
  if (!o.emit_analogies.empty()) {
    save_analogies(world.analogies, o.emit_analogies);
    outputs.push_back(o.emit_analogies);
  }
  if (!o.emit_wordsim.empty()) {
    save_similarity_pairs(world.rated_pairs, o.emit_wordsim);
    outputs.push_back(o.emit_wordsim);
  }

  CorpusStats st = corpus_stats(nets);
  RunManifest man("gen-corpus");
  man.set_param("sentences", g.sentences);
  man.set_param("vocab", g.vocab_target);
  man.set_param("homophone_groups", g.homophone_groups);
  man.set_param("homophone_freq", g.homophone_freq);
  man.set_param("confusion_rate", nm.confusion_rate);
  man.set_param("max_alternatives", nm.max_alternatives);
  man.set_param("substitution_rate", nm.substitution_rate);
  man.set_param("concentration", nm.posterior_concentration);
  man.set_param("seed", o.seed);
  man.set_param("out_confnets", o.out_confnets);
  man.set_param("out_clean", o.out_clean);
  if (!o.emit_lexicon.empty()) man.set_param("emit_lexicon", o.emit_lexicon);
  if (!o.emit_homophones.empty())
    man.set_param("emit_homophones", o.emit_homophones);
  if (!o.emit_analogies.empty())
    man.set_param("emit_analogies", o.emit_analogies);
  if (!o.emit_wordsim.empty()) man.set_param("emit_wordsim", o.emit_wordsim);
  man.set_stat("networks", st.num_networks);
  man.set_stat("bins", st.num_bins);
  man.set_stat("arcs", st.num_arcs);
  man.set_stat("lexicon_words", world.lexicon.entries.size());
  man.set_stat("homophone_groups", world.homophones.groups.size());
  man.set_stat("analogies", world.analogies.size());
  man.set_stat("rated_pairs", world.rated_pairs.size());
  for (const auto& path : outputs) man.save_for(path);

  std::cout << "command=gen-corpus\n"
            << "networks=" << st.num_networks << "\n"
            << "bins=" << st.num_bins << "\n"
            << "arcs=" << st.num_arcs << "\n"
            << "avg_arcs_per_bin=" << fmt(st.avg_arcs_per_bin) << "\n"
            << "lexicon_words=" << world.lexicon.entries.size() << "\n"
            << "homophone_groups=" << world.homophones.groups.size() << "\n"
            << "analogies=" << world.analogies.size() << "\n"
            << "rated_pairs=" << world.rated_pairs.size() << "\n";
}

// --------------------------------------------------------------------- train

struct TrainOpts {
  std::string corpus;
  std::string corpus_format = "confnet";
  std::string scheme = "inter";
  int window = 4;
  int epochs = 15;
  int dim = 256;
  int negatives = 64;
  int batch = 256;
  int min_count = 5;
  double subsample = 0.0;  // 0 disables
  double lr = 0.025;
  bool lr_given = false;
  double lr_final = -1.0;
  bool posterior_weighted = false;
  bool dynamic_window = false;
  std::string init;
  int freeze_prefix = 0;
  int workers = 1;
  uint64_t seed = 1;
  std::string out;
  std::string save_vocab;
};

void run_train(const TrainOpts& o) {
  std::vector<ConfusionNetwork> nets;
  if (o.corpus_format == "text")
    nets = sentences_to_confnets(load_sentences(o.corpus));
  else
    nets = load_confnets(o.corpus);

  Vocabulary vocab = build_vocab(nets, o.min_count, o.subsample);

  int32_t matched = 0;
  EmbeddingModel model =
      o.init.empty()
          ? init_random(vocab, o.dim, o.seed)
          : init_pretrained(vocab, o.dim, o.init, o.seed, &matched);

  SamplerConfig scfg;
  scfg.scheme = scheme_from_name(o.scheme);
  scfg.skip_window = o.window;
  scfg.subsample = o.subsample > 0.0;
  scfg.posterior_weighted = o.posterior_weighted;
  scfg.dynamic_window = o.dynamic_window;

  TrainConfig tc;
  tc.epochs = o.epochs;
  tc.negatives = o.negatives;
  tc.batch_size = o.batch;
  // Fine-tuning runs start from a tenth of the from-scratch rate unless the
  // user pinned one explicitly.
  tc.lr_initial = (!o.init.empty() && !o.lr_given) ? 0.0025 : o.lr;
  tc.lr_final = o.lr_final;
  tc.workers = o.workers;
  tc.freeze_prefix = o.freeze_prefix;
  tc.seed = o.seed;

  TrainStats stats = train(model, vocab, nets, scfg, tc);
  save_embeddings(model, o.out);
  if (!o.save_vocab.empty()) save_vocab_dump(vocab, o.save_vocab);

  RunManifest man("train");
  man.add_input(o.corpus);
  if (!o.init.empty()) man.add_input(o.init);
  man.set_param("corpus", o.corpus);
  man.set_param("corpus_format", o.corpus_format);
  man.set_param("scheme", o.scheme);
  man.set_param("window", o.window);
  man.set_param("epochs", o.epochs);
  man.set_param("dim", o.dim);
  man.set_param("negatives", o.negatives);
  man.set_param("batch", o.batch);
  man.set_param("min_count", o.min_count);
  man.set_param("subsample", o.subsample);
  man.set_param("lr", tc.lr_initial);
  man.set_param("lr_final", tc.lr_final);
  man.set_param("posterior_weighted", o.posterior_weighted);
  man.set_param("dynamic_window", o.dynamic_window);
  if (!o.init.empty()) man.set_param("init", o.init);
  man.set_param("freeze_prefix", o.freeze_prefix);
  man.set_param("workers", o.workers);
  man.set_param("seed", o.seed);
  man.set_param("out", o.out);
  if (!o.save_vocab.empty()) man.set_param("save_vocab", o.save_vocab);
  man.set_stat("vocab_size", vocab.size());
  man.set_stat("total_tokens", vocab.total_tokens());
  man.set_stat("planned_pairs_per_epoch", stats.planned_pairs_per_epoch);
  man.set_stat("pairs_processed", stats.pairs_processed);
  if (!o.init.empty()) man.set_stat("init_matched_rows", matched);
  man.save_for(o.out);
  if (!o.save_vocab.empty()) man.save_for(o.save_vocab);

  std::cout << "command=train\n"
            << "scheme=" << o.scheme << "\n"
            << "vocab_size=" << vocab.size() << "\n"
            << "total_tokens=" << vocab.total_tokens() << "\n"
            << "dim=" << o.dim << "\n"
            << "planned_pairs_per_epoch=" << stats.planned_pairs_per_epoch
            << "\n"
            << "pairs_processed=" << stats.pairs_processed << "\n";
  if (!o.init.empty()) std::cout << "init_matched_rows=" << matched << "\n";
  for (size_t e = 0; e < stats.epoch_mean_loss.size(); ++e)
    std::cout << "epoch=" << (e + 1)
              << " mean_loss=" << fmt(stats.epoch_mean_loss[e]) << "\n";
  std::cout << "seconds=" << format_double(stats.seconds, 3) << "\n";
}

// -------------------------------------------------------------------- concat

struct ConcatOpts {
  std::string a, b;
  int pad_to = 0;
  std::string out;
};

void run_concat(const ConcatOpts& o) {
  EmbeddingModel result;
  RunManifest man("concat");
  man.add_input(o.a);
  man.set_param("a", o.a);
  if (o.pad_to > 0) {
    EmbeddingModel m = load_embeddings(o.a);
    result = pad_model(m, o.pad_to);
    man.set_param("pad_to", o.pad_to);
  } else {
    EmbeddingModel ma = load_embeddings(o.a);
    EmbeddingModel mb = load_embeddings(o.b);
    result = concat_models(ma, mb);
    man.add_input(o.b);
    man.set_param("b", o.b);
  }
  save_embeddings(result, o.out);
  man.set_param("out", o.out);
  man.set_stat("rows", result.size());
  man.set_stat("dim", result.dim);
  man.set_stat("subspace_boundary", result.subspace_boundary);
  man.save_for(o.out);

  std::cout << "command=concat\n"
            << "rows=" << result.size() << "\n"
            << "dim=" << result.dim << "\n"
            << "subspace_boundary=" << result.subspace_boundary << "\n";
}

// ---------------------------------------------------------------------- eval

struct EvalOpts {
  std::string model;
  std::vector<std::string> analogy_files;
  std::vector<std::string> similarity_files;
  int topk = 2;
  bool keep_oov = false;
  std::string out;
};

bool is_syntactic_category(const std::string& name) {
  return name.rfind("gram", 0) == 0;
}

void run_eval(const EvalOpts& o) {
  EmbeddingModel m = load_embeddings(o.model);
  std::ostringstream rep;
  rep << "command=eval\n"
      << "model=" << o.model << "\n"
      << "topk=" << o.topk << "\n"
      << "oov_policy=" << (o.keep_oov ? "score_incorrect" : "drop") << "\n";

  double accuracy_sum = 0.0;
  int64_t sem_used = 0, sem_correct = 0, syn_used = 0, syn_correct = 0;
  for (const auto& path : o.analogy_files) {
    auto questions = load_analogies(path);
    AnalogyReport r = eval_analogy(m, questions, o.topk, !o.keep_oov, true);
    rep << "analogy_file=" << path << "\n";
    int64_t file_sem_used = 0, file_sem_correct = 0;
    int64_t file_syn_used = 0, file_syn_correct = 0;
    for (const auto& [name, cr] : r.categories) {
      rep << "category=" << name << " used=" << cr.used
          << " correct=" << cr.correct << " accuracy=" << fmt(cr.accuracy)
          << "\n";
      if (is_syntactic_category(name)) {
        file_syn_used += cr.used;
        file_syn_correct += cr.correct;
      } else {
        file_sem_used += cr.used;
        file_sem_correct += cr.correct;
      }
    }
    rep << "file_total used=" << r.overall.used
        << " correct=" << r.overall.correct
        << " accuracy=" << fmt(r.overall.accuracy)
        << " dropped=" << r.dropped << "\n";
    if (file_sem_used > 0)
      rep << "file_semantic used=" << file_sem_used
          << " correct=" << file_sem_correct << " accuracy="
          << fmt(double(file_sem_correct) / double(file_sem_used)) << "\n";
    if (file_syn_used > 0)
      rep << "file_syntactic used=" << file_syn_used
          << " correct=" << file_syn_correct << " accuracy="
          << fmt(double(file_syn_correct) / double(file_syn_used)) << "\n";
    accuracy_sum += r.overall.accuracy;
    sem_used += file_sem_used;
    sem_correct += file_sem_correct;
    syn_used += file_syn_used;
    syn_correct += file_syn_correct;
  }

  double rho_sum = 0.0;
  for (const auto& path : o.similarity_files) {
    auto pairs = load_similarity_pairs(path);
    SimilarityReport r = eval_similarity(m, pairs);
    rep << "similarity_file=" << path << "\n"
        << "pairs_used=" << r.used << " pairs_dropped=" << r.dropped << "\n"
        << "spearman_rho=" << fmt(r.correlation.rho) << "\n"
        << "spearman_p=" << fmt(r.correlation.p_value) << "\n";
    rho_sum += r.correlation.rho;
  }

  rep << "summary_begin\n"
      << "analogy_files=" << o.analogy_files.size() << "\n";
  if (!o.analogy_files.empty())
    rep << "analogy_average_accuracy="
        << fmt(accuracy_sum / double(o.analogy_files.size())) << "\n";
  if (sem_used > 0)
    rep << "semantic_accuracy=" << fmt(double(sem_correct) / double(sem_used))
        << "\n";
  if (syn_used > 0)
    rep << "syntactic_accuracy=" << fmt(double(syn_correct) / double(syn_used))
        << "\n";
  rep << "similarity_files=" << o.similarity_files.size() << "\n";
  if (!o.similarity_files.empty())
    rep << "similarity_average_rho="
        << fmt(rho_sum / double(o.similarity_files.size())) << "\n";
  rep << "summary_end\n";

  std::cout << rep.str();
  if (!o.out.empty()) {
    open_output(o.out) << rep.str();
    RunManifest man("eval");
    man.add_input(o.model);
    for (const auto& p : o.analogy_files) man.add_input(p);
    for (const auto& p : o.similarity_files) man.add_input(p);
    man.set_param("model", o.model);
    man.set_param("analogy", o.analogy_files);
    man.set_param("similarity", o.similarity_files);
    man.set_param("topk", o.topk);
    man.set_param("keep_oov", o.keep_oov);
    man.set_param("out", o.out);
    man.save_for(o.out);
  }
}

// ------------------------------------------------------------- gen-eval-data

struct GenEvalDataOpts {
  std::string lexicon;
  std::string homophones;
  std::string analogies_out;
  int limit = 0;
  std::string ss_base;
  std::string ss_out;
  int ss_limit = 0;
  std::string ratings_in;
  std::string ratings_out;
  uint64_t seed = 1;
};

void run_gen_eval_data(const GenEvalDataOpts& o) {
  Lexicon lex = load_lexicon(o.lexicon);
  HomophoneSet groups = load_homophones(o.homophones);

  RunManifest man("gen-eval-data");
  man.add_input(o.lexicon);
  man.add_input(o.homophones);
  man.set_param("lexicon", o.lexicon);
  man.set_param("homophones", o.homophones);
  man.set_param("seed", o.seed);
  std::vector<std::string> outputs;

  std::cout << "command=gen-eval-data\n";
  if (!o.analogies_out.empty()) {
    auto qs = gen_acoustic_analogies(groups, size_t(o.limit), o.seed);
    save_analogies(qs, o.analogies_out);
    outputs.push_back(o.analogies_out);
    man.set_param("acoustic_analogies_out", o.analogies_out);
    man.set_param("limit", o.limit);
    man.set_stat("acoustic_analogies", qs.size());
    std::cout << "acoustic_analogies=" << qs.size() << "\n";
  }
  if (!o.ss_out.empty()) {
    auto base = load_analogies(o.ss_base);
    auto qs =
        gen_ss_acoustic_analogies(base, groups, size_t(o.ss_limit), o.seed);
    save_analogies(qs, o.ss_out);
    outputs.push_back(o.ss_out);
    man.add_input(o.ss_base);
    man.set_param("ss_base", o.ss_base);
    man.set_param("ss_out", o.ss_out);
    man.set_param("ss_limit", o.ss_limit);
    man.set_stat("ss_questions", qs.size());
    std::cout << "ss_questions=" << qs.size() << "\n";
  }
  if (!o.ratings_out.empty()) {
    std::vector<SimilarityPair> rated;
    if (!o.ratings_in.empty()) {
      rated = load_similarity_pairs(o.ratings_in);
      man.add_input(o.ratings_in);
      man.set_param("ratings_in", o.ratings_in);
    }
    RatingGenResult r = gen_acoustic_similarity_ratings(rated, groups, lex);
    save_similarity_pairs(r.pairs, o.ratings_out);
    outputs.push_back(o.ratings_out);
    man.set_param("ratings_out", o.ratings_out);
    man.set_stat("rating_pairs", r.pairs.size());
    man.set_stat("rating_dropped", r.dropped);
    std::cout << "rating_pairs=" << r.pairs.size() << "\n"
              << "rating_dropped=" << r.dropped << "\n";
  }
  for (const auto& path : outputs) man.save_for(path);
}

// ----------------------------------------------------------------------- pca

struct PcaOpts {
  std::string model;
  std::string words_file;
  std::vector<std::string> words;
  std::string out;
};

void run_pca(const PcaOpts& o) {
  EmbeddingModel m = load_embeddings(o.model);
  std::vector<std::string> words = o.words;
  if (!o.words_file.empty())
    for (const auto& line : read_lines(o.words_file)) {
      auto t = trim(line);
      if (!t.empty()) words.emplace_back(t);
    }
  Projection2D proj = pca_2d(m, words);

  auto out = open_output(o.out);
  out << "# explained_variance\t" << fmt(proj.explained_variance[0]) << "\t"
      << fmt(proj.explained_variance[1]) << "\n";
  for (size_t i = 0; i < proj.words.size(); ++i)
    out << proj.words[i] << "\t" << fmt(proj.x[i]) << "\t" << fmt(proj.y[i])
        << "\n";
  out.close();

  RunManifest man("pca");
  man.add_input(o.model);
  if (!o.words_file.empty()) man.add_input(o.words_file);
  man.set_param("model", o.model);
  if (!o.words_file.empty()) man.set_param("words_file", o.words_file);
  man.set_param("out", o.out);
  man.set_stat("words_used", proj.words.size());
  man.set_stat("words_dropped", proj.dropped);
  man.save_for(o.out);

  std::cout << "command=pca\n"
            << "words_used=" << proj.words.size() << "\n"
            << "words_dropped=" << proj.dropped << "\n"
            << "explained_variance_1=" << fmt(proj.explained_variance[0])
            << "\n"
            << "explained_variance_2=" << fmt(proj.explained_variance[1])
            << "\n";
}

// ------------------------------------------------------------------- nearest

struct NearestOpts {
  std::string model;
  std::string word;
  int topk = 10;
  std::string out;
};

void run_nearest(const NearestOpts& o) {
  EmbeddingModel m = load_embeddings(o.model);
  int32_t id = m.id_of(o.word);
  if (id < 0) throw DataError("word not in model vocabulary: " + o.word);
  std::vector<double> query(m.in_row(id), m.in_row(id) + m.dim);
  auto hits = nearest(m, query, o.topk, {id});

  std::ostringstream rep;
  int rank = 0;
  for (const auto& h : hits) {
    ++rank;
    rep << rank << "\t" << m.words[size_t(h.id)] << "\t" << fmt(h.cosine)
        << "\n";
  }
  std::cout << rep.str();
  if (!o.out.empty()) {
    open_output(o.out) << rep.str();
    RunManifest man("nearest");
    man.add_input(o.model);
    man.set_param("model", o.model);
    man.set_param("word", o.word);
    man.set_param("topk", o.topk);
    man.set_param("out", o.out);
    man.save_for(o.out);
  }
}

// --------------------------------------------------------------- confnet-sim

struct ConfnetSimOpts {
  std::string model;
  std::string nets_file;
  int index_a = -1, index_b = -1;
  std::string text_a, text_b;
};

ConfusionNetwork side_net(const std::vector<ConfusionNetwork>& nets, int index,
                          const std::string& text, const char* side) {
  if (!text.empty()) {
    std::vector<std::string> tokens;
    for (auto piece : split_ws(text)) tokens.emplace_back(piece);
    if (tokens.empty())
      throw DataError(std::string("empty --text-") + side + " input");
    return sentences_to_confnets({tokens}).front();
  }
  if (index < 0)
    throw DataError(std::string("side ") + side +
                    " needs --index-" + side + " or --text-" + side);
  if (size_t(index) >= nets.size())
    throw DataError(std::string("--index-") + side + " out of range");
  return nets[size_t(index)];
}

void run_confnet_sim(const ConfnetSimOpts& o) {
  EmbeddingModel m = load_embeddings(o.model);
  std::vector<ConfusionNetwork> nets;
  if (!o.nets_file.empty()) nets = load_confnets(o.nets_file);
  ConfusionNetwork a = side_net(nets, o.index_a, o.text_a, "a");
  ConfusionNetwork b = side_net(nets, o.index_b, o.text_b, "b");
  double sim = confnet_similarity(a, b, m);
  std::cout << "command=confnet-sim\n"
            << "similarity=" << fmt(sim) << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"c2v: word embeddings from word confusion networks"};
  app.require_subcommand(1);

  GenCorpusOpts gc;
  auto* sc_gen = app.add_subcommand(
      "gen-corpus",
      "Generate a synthetic corpus: clean sentences plus confusion networks");
  sc_gen->add_option("--sentences", gc.grammar.sentences, "Sentence count")
      ->capture_default_str();
  sc_gen->add_option("--vocab", gc.grammar.vocab_target,
                     "Approximate vocabulary size (>= 300)")
      ->capture_default_str();
  sc_gen->add_option("--homophone-groups", gc.grammar.homophone_groups,
                     "Number of injected homophone groups")
      ->capture_default_str();
  sc_gen->add_option("--homophone-freq", gc.grammar.homophone_freq,
                     "Target token share per homophone group")
      ->capture_default_str();
  sc_gen->add_option("--confusion-rate", gc.noise.confusion_rate,
                     "Probability a bin receives alternatives")
      ->capture_default_str();
  sc_gen->add_option("--max-alternatives", gc.noise.max_alternatives,
                     "Cap on alternatives per bin")
      ->capture_default_str();
  sc_gen->add_option("--substitution-rate", gc.noise.substitution_rate,
                     "Probability the top alternative displaces the truth")
      ->capture_default_str();
  sc_gen->add_option("--concentration", gc.noise.posterior_concentration,
                     "Dirichlet concentration for bin posteriors")
      ->capture_default_str();
  sc_gen->add_option("--seed", gc.seed, "RNG seed")
      ->envname("C2V_SEED")
      ->capture_default_str();
  sc_gen->add_option("--out-confnets", gc.out_confnets,
                     "Confusion-network output file")
      ->required();
  sc_gen->add_option("--out-clean", gc.out_clean,
                     "Clean-sentence output file")
      ->required();
  sc_gen->add_option("--emit-lexicon", gc.emit_lexicon,
                     "Also write the pronunciation lexicon");
  sc_gen->add_option("--emit-homophones", gc.emit_homophones,
                     "Also write the homophone groups");
  sc_gen->add_option("--emit-analogies", gc.emit_analogies,
                     "Also write the grammar's analogy questions");
  sc_gen->add_option("--emit-wordsim", gc.emit_wordsim,
                     "Also write the grammar's rated word pairs");
  sc_gen->callback([&gc]() { run_gen_corpus(gc); });

  TrainOpts tr;
  auto* sc_train =
      app.add_subcommand("train", "Train embeddings on a corpus");
  sc_train->add_option("--corpus", tr.corpus, "Corpus file")->required();
  sc_train
      ->add_option("--corpus-format", tr.corpus_format,
                   "confnet (default) or text")
      ->check(CLI::IsMember({"confnet", "text"}))
      ->capture_default_str();
  sc_train->add_option("--scheme", tr.scheme, "Pair-generation scheme")
      ->check(CLI::IsMember({"top", "intra", "inter", "hybrid"}))
      ->capture_default_str();
  sc_train->add_option("--window", tr.window, "Skip window S_w")
      ->capture_default_str();
  sc_train->add_option("--epochs", tr.epochs, "Training epochs")
      ->capture_default_str();
  sc_train->add_option("--dim", tr.dim, "Embedding dimensionality")
      ->capture_default_str();
  sc_train->add_option("--negatives", tr.negatives, "Negative samples per pair")
      ->capture_default_str();
  sc_train
      ->add_option("--batch", tr.batch,
                   "Pairs between learning-rate updates")
      ->capture_default_str();
  sc_train->add_option("--min-count", tr.min_count, "Vocabulary count floor")
      ->capture_default_str();
  sc_train
      ->add_option("--subsample", tr.subsample,
                   "Frequent-word subsampling threshold t (0 disables)")
      ->capture_default_str();
  auto* lr_opt = sc_train->add_option("--lr", tr.lr, "Initial learning rate")
                     ->capture_default_str();
  sc_train
      ->add_option("--lr-final", tr.lr_final,
                   "Final learning rate (< 0: lr * 1e-4)")
      ->capture_default_str();
  sc_train->add_flag("--posterior-weighted", tr.posterior_weighted,
                     "Scale updates by arc posterior products");
  sc_train->add_flag("--dynamic-window", tr.dynamic_window,
                     "Sample each center's window from [1, S_w]");
  sc_train->add_option("--init", tr.init,
                       "Warm-start embeddings file (fine-tuning)");
  sc_train
      ->add_option("--freeze-prefix", tr.freeze_prefix,
                   "Freeze the first N coordinates of every vector")
      ->capture_default_str();
  sc_train->add_option("--workers", tr.workers, "Training threads")
      ->capture_default_str();
  sc_train->add_option("--seed", tr.seed, "RNG seed")
      ->envname("C2V_SEED")
      ->capture_default_str();
  sc_train->add_option("--out", tr.out, "Embeddings output file")->required();
  sc_train->add_option("--save-vocab", tr.save_vocab,
                       "Also write the vocabulary dump");
  sc_train->callback([&tr, lr_opt]() {
    tr.lr_given = lr_opt->count() > 0;
    run_train(tr);
  });

  ConcatOpts cc;
  auto* sc_concat = app.add_subcommand(
      "concat", "Concatenate two models, or zero-pad one with --pad-to");
  sc_concat->add_option("--a", cc.a, "First (contextual) model")->required();
  auto* b_opt = sc_concat->add_option("--b", cc.b, "Second (acoustic) model");
  auto* pad_opt = sc_concat->add_option(
      "--pad-to", cc.pad_to, "Zero-pad --a to this dimensionality");
  b_opt->excludes(pad_opt);
  sc_concat->add_option("--out", cc.out, "Embeddings output file")->required();
  sc_concat->callback([&cc, b_opt, pad_opt]() {
    if (b_opt->count() == 0 && pad_opt->count() == 0)
      throw CLI::ValidationError("concat", "need --b or --pad-to");
    run_concat(cc);
  });

  EvalOpts ev;
  auto* sc_eval = app.add_subcommand(
      "eval", "Evaluate a model on analogy and similarity files");
  sc_eval->add_option("--model", ev.model, "Embeddings file")->required();
  sc_eval->add_option("--analogy", ev.analogy_files,
                      "Analogy question file (repeatable)");
  sc_eval->add_option("--similarity", ev.similarity_files,
                      "Rated word-pair file (repeatable)");
  sc_eval->add_option("--topk", ev.topk, "Top-k retrieval criterion")
      ->check(CLI::Range(1, 16))
      ->capture_default_str();
  sc_eval->add_flag("--keep-oov", ev.keep_oov,
                    "Score OOV questions incorrect instead of dropping them");
  sc_eval->add_option("--out", ev.out, "Also write the report to a file");
  sc_eval->callback([&ev]() {
    if (ev.analogy_files.empty() && ev.similarity_files.empty())
      throw CLI::ValidationError("eval",
                                 "need at least one --analogy or --similarity");
    run_eval(ev);
  });

  GenEvalDataOpts ge;
  auto* sc_gen_eval = app.add_subcommand(
      "gen-eval-data",
      "Generate acoustic analogy/similarity sets from a lexicon");
  sc_gen_eval->add_option("--lexicon", ge.lexicon, "Pronunciation lexicon")
      ->required();
  sc_gen_eval
      ->add_option("--homophones", ge.homophones, "Homophone group file")
      ->required();
  sc_gen_eval->add_option("--acoustic-analogies-out", ge.analogies_out,
                          "Write homophone analogy questions here");
  sc_gen_eval
      ->add_option("--limit", ge.limit,
                   "Subsample acoustic analogies to this many (0 = all)")
      ->capture_default_str();
  auto* ss_base_opt = sc_gen_eval->add_option(
      "--ss-base", ge.ss_base, "Base analogy file for homophone substitution");
  auto* ss_out_opt = sc_gen_eval->add_option(
      "--ss-out", ge.ss_out, "Write substituted analogy questions here");
  ss_out_opt->needs(ss_base_opt);
  ss_base_opt->needs(ss_out_opt);
  sc_gen_eval
      ->add_option("--ss-limit", ge.ss_limit,
                   "Subsample substituted questions to this many (0 = all)")
      ->capture_default_str();
  sc_gen_eval->add_option("--ratings-in", ge.ratings_in,
                          "Rated word pairs to rescore acoustically");
  sc_gen_eval->add_option("--ratings-out", ge.ratings_out,
                          "Write acoustic similarity ratings here");
  sc_gen_eval->add_option("--seed", ge.seed, "RNG seed")
      ->envname("C2V_SEED")
      ->capture_default_str();
  sc_gen_eval->callback([&ge]() {
    if (ge.analogies_out.empty() && ge.ss_out.empty() &&
        ge.ratings_out.empty())
      throw CLI::ValidationError("gen-eval-data",
                                 "no output requested; pass at least one of "
                                 "--acoustic-analogies-out, --ss-out, "
                                 "--ratings-out");
    run_gen_eval_data(ge);
  });

  PcaOpts pc;
  auto* sc_pca = app.add_subcommand(
      "pca", "Project chosen words onto their two principal axes");
  sc_pca->add_option("--model", pc.model, "Embeddings file")->required();
  sc_pca->add_option("--words", pc.words_file, "File of words, one per line");
  sc_pca->add_option("--word", pc.words, "Word to project (repeatable)");
  sc_pca->add_option("--out", pc.out, "TSV output file")->required();
  sc_pca->callback([&pc]() { run_pca(pc); });

  NearestOpts ne;
  auto* sc_nearest =
      app.add_subcommand("nearest", "List a word's nearest neighbors");
  sc_nearest->add_option("--model", ne.model, "Embeddings file")->required();
  sc_nearest->add_option("--word", ne.word, "Query word")->required();
  sc_nearest->add_option("--topk", ne.topk, "Number of neighbors")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  sc_nearest->add_option("--out", ne.out, "Also write the list to a file");
  sc_nearest->callback([&ne]() { run_nearest(ne); });

  ConfnetSimOpts cs;
  auto* sc_sim = app.add_subcommand(
      "confnet-sim",
      "Cosine similarity between two confusion networks' feature vectors");
  sc_sim->add_option("--model", cs.model, "Embeddings file")->required();
  sc_sim->add_option("--nets", cs.nets_file,
                     "Confusion-network file for --index-a/--index-b");
  auto* ia = sc_sim->add_option("--index-a", cs.index_a,
                                "Side A: network index into --nets");
  auto* ta = sc_sim->add_option("--text-a", cs.text_a,
                                "Side A: literal sentence text");
  auto* ib = sc_sim->add_option("--index-b", cs.index_b,
                                "Side B: network index into --nets");
  auto* tb = sc_sim->add_option("--text-b", cs.text_b,
                                "Side B: literal sentence text");
  ia->excludes(ta);
  ib->excludes(tb);
  sc_sim->callback([&cs, ia, ta, ib, tb]() {
    if (ia->count() == 0 && ta->count() == 0)
      throw CLI::ValidationError("confnet-sim", "need --index-a or --text-a");
    if (ib->count() == 0 && tb->count() == 0)
      throw CLI::ValidationError("confnet-sim", "need --index-b or --text-b");
    run_confnet_sim(cs);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace c2v
