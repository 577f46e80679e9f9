#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <ostream>

#include "commands.hpp"
#include "jatecs/error.hpp"
#include "jatecs/log.hpp"
#include "jatecs/parallel.hpp"
#include "jatecs_cli/cli.hpp"

namespace jatecs::cli {

namespace {

struct WarningsTo {
  explicit WarningsTo(std::ostream& err) {
    set_warning_handler([&err](const std::string& message) { err << "warning: " << message << '\n'; });
  }
  ~WarningsTo() { set_warning_handler(nullptr); }
  WarningsTo(const WarningsTo&) = delete;
  WarningsTo& operator=(const WarningsTo&) = delete;
};

void add_extractor_options(CLI::App& cmd, ExtractorOptions& o) {
  cmd.add_option("--extractor", o.extractor, "Feature extractor: bow, chargrams or set");
  cmd.add_option("--ngram", o.ngram, "Character n-gram size");
  cmd.add_option("--word-bounded", o.wordBounded, "Character n-grams stay inside words (true/false)");
  cmd.add_option("--stoplist", o.stoplist, "Stop list: en or none");
  cmd.add_option("--stem", o.stem, "Stemmer: en (Porter) or none");
  cmd.add_option("--set-children", o.setChildren, "Comma-separated child extractors of the set extractor");
  cmd.add_option("--namespacing", o.namespacing, "Prefix set-extractor features with the child name (true/false)");
}

void add_reader_options(CLI::App& cmd, IndexOptions& o) {
  cmd.add_option("--reader", o.reader, "Input format: libsvm, csv or arff");
  cmd.add_option("--categories", o.categories,
                 "Category file, one label per line (default: labels in first-seen order)");
  cmd.add_option("--separator", o.separator, "CSV field separator: a single character, tab or comma");
  add_extractor_options(cmd, o.extractor);
}

void add_learner_options(CLI::App& cmd, LearnerOptions& o) {
  cmd.add_option("--learner", o.learner, "Learner: nb, rocchio, knn or boost");
  cmd.add_option("--param", o.params, "Hyperparameter key=value, repeatable")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
}

void add_test_options(CLI::App& cmd, std::string& test, std::string& testOut) {
  cmd.add_option("--test", test, "Test index transformed alongside the training index");
  cmd.add_option("--test-out", testOut, "Output directory for the transformed test index");
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  WarningsTo warnings(err);
  try {
    args = expand_config(std::move(args));
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App app{"Text categorization toolkit: indexing, feature selection, weighting, learning, evaluation and "
               "quantification.",
               "jatecs"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", "jatecs 0.1.0");
  app.footer("Options may also come from --config FILE (key=value lines); command-line flags win.\n"
             "JATECS_THREADS overrides --threads.\n"
             "Exit codes: 0 ok, 1 usage error, 2 data or parse error, 3 internal error.");

  unsigned threads = 0;
  std::function<void()> action;
  auto subcommand = [&](const char* name, const char* description) {
    auto* cmd = app.add_subcommand(name, description);
    cmd->add_option("--threads", threads, "Worker threads, 0 for all cores");
    cmd->add_option("--config", "Read more options from a key=value file");
    return cmd;
  };

  IndexOptions index;
  auto* cIndex = subcommand("index", "Read a corpus, extract features and write an index directory");
  cIndex->add_option("--input", index.input, "Corpus file")->required();
  cIndex->add_option("--out", index.out, "Output index directory")->required();
  add_reader_options(*cIndex, index);
  cIndex->add_option("--vocabulary", index.vocabulary,
                     "Index directory whose features and categories are reused; unknown features are dropped");
  cIndex->callback([&] { action = [&] { cmd_index(index, out); }; });

  TsrOptions tsr;
  auto* cTsr = subcommand("tsr", "Select features by term space reduction");
  cTsr->add_option("--index", tsr.index, "Input index directory")->required();
  cTsr->add_option("--out", tsr.out, "Output index directory")->required();
  cTsr->add_option("--func", tsr.func, "Scoring function: ig, chi2, pmi or or");
  cTsr->add_option("--policy", tsr.policy, "Selection policy: local, max, sum, wavg or rr (round robin)");
  cTsr->add_option("--k", tsr.k, "Features to keep (per category with local)");
  add_test_options(*cTsr, tsr.test, tsr.testOut);
  cTsr->callback([&] { action = [&] { cmd_tsr(tsr, out); }; });

  ProjectOptions project;
  auto* cProject = subcommand("project", "Project an index onto random latent features");
  cProject->add_option("--index", project.index, "Input index directory")->required();
  cProject->add_option("--out", project.out, "Output index directory (also receives projection.bin)")->required();
  cProject->add_option("--kind", project.kind, "Projection: ri, lri or achlioptas");
  cProject->add_option("--dim", project.dim, "Latent dimensions");
  cProject->add_option("--nonzeros", project.nonzeros, "Nonzeros per index vector, 0 for 1% of --dim");
  cProject->add_option("--seed", project.seed, "Random seed");
  add_test_options(*cProject, project.test, project.testOut);
  cProject->callback([&] { action = [&] { cmd_project(project, out); }; });

  WeightOptions weight;
  auto* cWeight = subcommand("weight", "Compute document weights");
  cWeight->add_option("--index", weight.index, "Input index directory")->required();
  cWeight->add_option("--out", weight.out, "Output index directory")->required();
  cWeight->add_option("--scheme", weight.scheme, "Weighting: tfidf or bm25");
  cWeight->add_option("--k1", weight.k1, "BM25 k1");
  cWeight->add_option("--b", weight.b, "BM25 b");
  add_test_options(*cWeight, weight.test, weight.testOut);
  cWeight->callback([&] { action = [&] { cmd_weight(weight, out); }; });

  TrainOptions trainOpts;
  auto* cTrain = subcommand("train", "Train a classifier and write a model directory");
  cTrain->add_option("--index", trainOpts.index, "Training index directory")->required();
  cTrain->add_option("--out", trainOpts.out, "Output model directory")->required();
  add_learner_options(*cTrain, trainOpts.learner);
  cTrain->callback([&] { action = [&] { cmd_train(trainOpts, out); }; });

  ClassifyOptions classify;
  auto* cClassify = subcommand("classify", "Classify an index with a trained model");
  cClassify->add_option("--model", classify.model, "Model directory")->required();
  cClassify->add_option("--index", classify.index, "Index directory to classify")->required();
  cClassify->add_option("--out", classify.out, "Predictions file (dID, cID pairs)")->required();
  cClassify->add_option("--scores", classify.scores, "Scores file (default: scores.tsv next to --out)");
  cClassify->callback([&] { action = [&] { cmd_classify(classify, out); }; });

  EvalOptions eval;
  auto* cEval = subcommand("eval", "Compare predictions with gold labels");
  cEval->add_option("--pred", eval.pred, "Predictions file")->required();
  cEval->add_option("--gold", eval.gold, "Gold index directory")->required();
  cEval->add_option("--out", eval.out, "Output table (default: eval.tsv next to --pred)");
  cEval->callback([&] { action = [&] { cmd_eval(eval, out); }; });

  QuantifyOptions quant;
  auto* cQuant = subcommand("quantify", "Estimate category prevalences of a test index");
  cQuant->add_option("--train", quant.train, "Training index directory")->required();
  cQuant->add_option("--test", quant.test, "Test index directory")->required();
  cQuant->add_option("--out", quant.out, "Output table");
  add_learner_options(*cQuant, quant.learner);
  cQuant->add_option("--folds", quant.folds, "Folds used to estimate tpr and fpr");
  cQuant->add_option("--seed", quant.seed, "Fold seed");
  cQuant->add_option("--slope", quant.slope, "Logistic slope for probabilistic quantifiers");
  cQuant->callback([&] { action = [&] { cmd_quantify(quant, out); }; });

  KFoldOptions kfold;
  auto* cKfold = subcommand("kfold", "k-fold cross validation");
  cKfold->add_option("--index", kfold.index, "Index directory")->required();
  cKfold->add_option("--out", kfold.out, "Output table");
  add_learner_options(*cKfold, kfold.learner);
  cKfold->add_option("--k", kfold.k, "Number of folds");
  cKfold->add_option("--mode", kfold.mode, "Fold assignment: simple or stratified");
  cKfold->add_option("--seed", kfold.seed, "Fold seed");
  cKfold->callback([&] { action = [&] { cmd_kfold(kfold, out); }; });

  GridOptions grid;
  auto* cGrid = subcommand("grid", "Grid search over hyperparameters with k-fold validation");
  cGrid->add_option("--index", grid.index, "Index directory")->required();
  cGrid->add_option("--out", grid.out, "Output table");
  cGrid->add_option("--learner", grid.learner, "Learner: nb, rocchio, knn or boost");
  cGrid->add_option("--param", grid.params, "Axis key=v1,v2,..., repeatable")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cGrid->add_option("--objective", grid.objective, "Objective: macrof1, microf1 or accuracy");
  cGrid->add_option("--k", grid.k, "Number of folds");
  cGrid->add_option("--mode", grid.mode, "Fold assignment: simple or stratified");
  cGrid->add_option("--seed", grid.seed, "Fold seed");
  cGrid->callback([&] { action = [&] { cmd_grid(grid, out); }; });

  PipelineOptions pipe;
  auto* cPipe = subcommand("pipeline", "Run several stages, each reading the previous stage's output directory");
  cPipe->add_option("--stages", pipe.stages,
                    "Comma-separated stages in order: index, tsr, project, weight, train, classify, eval; quantify "
                    "may follow any representation stage");
  cPipe->add_option("--out", pipe.out, "Output root; stage results go to <root>/<stage>/")->required();
  cPipe->add_option("--input", pipe.index.input, "Training corpus file")->required();
  cPipe->add_option("--test-input", pipe.testInput, "Test corpus file (needed by classify, eval, quantify)");
  add_reader_options(*cPipe, pipe.index);
  cPipe->add_option("--func", pipe.tsr.func, "tsr: scoring function ig, chi2, pmi or or");
  cPipe->add_option("--policy", pipe.tsr.policy, "tsr: policy local, max, sum, wavg or rr");
  cPipe->add_option("--k", pipe.tsr.k, "tsr: features to keep");
  cPipe->add_option("--kind", pipe.project.kind, "project: ri, lri or achlioptas");
  cPipe->add_option("--dim", pipe.project.dim, "project: latent dimensions");
  cPipe->add_option("--nonzeros", pipe.project.nonzeros, "project: nonzeros per index vector, 0 for 1% of --dim");
  cPipe->add_option("--scheme", pipe.weight.scheme, "weight: tfidf or bm25");
  cPipe->add_option("--k1", pipe.weight.k1, "weight: BM25 k1");
  cPipe->add_option("--b", pipe.weight.b, "weight: BM25 b");
  add_learner_options(*cPipe, pipe.learner);
  cPipe->add_option("--folds", pipe.folds, "quantify: folds used to estimate tpr and fpr");
  cPipe->add_option("--slope", pipe.slope, "quantify: logistic slope");
  cPipe->add_option("--seed", pipe.seed, "Seed for projection and quantification folds");
  cPipe->callback([&] { action = [&] { cmd_pipeline(pipe, out); }; });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    set_thread_count(resolve_threads(threads));
    if (action) action();
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace jatecs::cli
