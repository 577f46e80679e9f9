#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <tuple>

#include "jatecs/corpus_io.hpp"
#include "jatecs/error.hpp"
#include "jatecs/evaluation.hpp"
#include "jatecs/experiments.hpp"
#include "jatecs/index_io.hpp"
#include "jatecs/indexing.hpp"
#include "jatecs/learners.hpp"
#include "jatecs/log.hpp"
#include "jatecs/model_io.hpp"
#include "jatecs/projection.hpp"
#include "jatecs/quantification.hpp"
#include "jatecs/text_format.hpp"
#include "jatecs/textproc.hpp"
#include "jatecs/tsr.hpp"
#include "jatecs/weighting.hpp"
#include "jatecs_cli/cli.hpp"

namespace jatecs::cli {

namespace {

void require_exists(const std::string& path, const std::string& what) {
  if (path.empty()) throw UsageError("missing " + what);
  if (!fs::exists(path)) throw DataError(what + " not found: " + path);
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void finish_output(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw DataError("write failed: " + path.string());
}

char parse_separator(const std::string& text) {
  if (text == "tab" || text == "\\t" || text == "\t") return '\t';
  if (text == "comma") return ',';
  if (text.size() == 1) return text[0];
  throw UsageError("--separator must be a single character, 'tab' or 'comma'");
}

Stemmer parse_stem(const std::string& text) {
  if (text == "en") return Stemmer::EnglishPorter;
  if (text == "none") return Stemmer::None;
  throw UsageError("--stem must be 'en' or 'none'");
}

std::shared_ptr<const StopList> parse_stoplist(const std::string& text) {
  if (text == "en") return english_stoplist();
  if (text == "none") return nullptr;
  throw UsageError("--stoplist must be 'en' or 'none'");
}

ExtractorConfig leaf_config(const std::string& kind, const ExtractorOptions& options) {
  ExtractorConfig config;
  if (kind == "bow") {
    config.kind = ExtractorKind::BagOfWords;
  } else if (kind == "chargrams") {
    config.kind = ExtractorKind::CharNGrams;
  } else {
    throw UsageError("unknown extractor '" + kind + "' (expected bow, chargrams or set)");
  }
  if (options.ngram == 0) throw UsageError("--ngram must be at least 1");
  config.ngramSize = options.ngram;
  config.wordBounded = options.wordBounded;
  config.stoplist = parse_stoplist(options.stoplist);
  config.stemmer = parse_stem(options.stem);
  return config;
}

ExtractorConfig extractor_config(const ExtractorOptions& options) {
  if (options.extractor != "set") return leaf_config(options.extractor, options);
  ExtractorConfig config;
  config.kind = ExtractorKind::Set;
  config.namespacing = options.namespacing;
  for (auto child : split(options.setChildren, ',')) {
    child = trim(child);
    if (child == "set") throw UsageError("--set-children cannot nest 'set'");
    config.children.push_back(leaf_config(std::string(child), options));
  }
  if (config.children.empty()) throw UsageError("--set-children is empty");
  return config;
}

TsrFunction parse_tsr_function(const std::string& text) {
  if (text == "ig") return TsrFunction::InformationGain;
  if (text == "chi2") return TsrFunction::ChiSquare;
  if (text == "pmi") return TsrFunction::PointwiseMutualInformation;
  if (text == "or") return TsrFunction::OddsRatio;
  throw UsageError("--func must be one of ig, chi2, pmi, or");
}

FoldMode parse_fold_mode(const std::string& text) {
  if (text == "simple") return FoldMode::Simple;
  if (text == "stratified") return FoldMode::Stratified;
  throw UsageError("--mode must be 'simple' or 'stratified'");
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const std::string& flag) {
  auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError(flag + " expects key=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

LearnerParams learner_params(const LearnerOptions& options) {
  auto params = default_params(parse_learner_kind(options.learner));
  for (const auto& entry : options.params) {
    auto [key, value] = split_assignment(entry, "--param");
    set_param(params, key, value);
  }
  return params;
}

std::string table_row(const ContingencyTable& t) {
  return std::to_string(t.tp) + '\t' + std::to_string(t.tn) + '\t' + std::to_string(t.fp) + '\t' + std::to_string(t.fn);
}

std::string measures_row(const Measures& m) {
  return format_double(m.precision) + '\t' + format_double(m.recall) + '\t' + format_double(m.f1) + '\t' +
         format_double(m.accuracy);
}

void print_table(std::ostream& out, const ContingencyTable& t) {
  out << "tp = " << t.tp << " tn = " << t.tn << " fp = " << t.fp << " fn = " << t.fn << '\n';
}

void print_measures(std::ostream& out, double p, double r, double f1, double acc) {
  out << "p = " << format_double(p) << " r = " << format_double(r) << " f1 = " << format_double(f1)
      << " acc = " << format_double(acc) << '\n';
}

void check_same_categories(const Index& index, const std::vector<std::string>& expected, const std::string& what) {
  if (index.categoryCount() != 0 && index.categories().names() != expected)
    throw DataError(what + " has different categories than the training data");
}

// Stage helpers used both by the subcommands and the pipeline.

Index build_from_input(const IndexOptions& options) {
  require_exists(options.input, "input file");
  std::vector<std::string> categories;
  std::shared_ptr<const FeatureDb> vocabulary;
  bool haveCategories = false;
  if (!options.categories.empty()) {
    require_exists(options.categories, "category file");
    categories = read_category_file(options.categories);
    haveCategories = true;
  }
  if (!options.vocabulary.empty()) {
    require_exists(options.vocabulary, "vocabulary index");
    auto reference = load_index(options.vocabulary);
    vocabulary = reference.featureDbPtr();
    if (!haveCategories) {
      categories = reference.categories().names();
      haveCategories = true;
    }
  }

  if (options.reader == "libsvm") {
    auto instances = read_libsvm(options.input, categories);
    if (!haveCategories) categories = collect_labels(std::span<const SparseInstance>(instances));
    return index_instances(instances, std::move(categories), vocabulary);
  }
  std::vector<RawDocument> documents;
  if (options.reader == "csv") {
    documents = read_csv(options.input, parse_separator(options.separator), categories);
  } else if (options.reader == "arff") {
    auto dataset = read_arff(options.input);
    if (!haveCategories && dataset.classAttribute) {
      categories = dataset.attributes[*dataset.classAttribute].nominalValues;
      haveCategories = true;
    }
    documents = std::move(dataset.documents);
  } else {
    throw UsageError("--reader must be one of libsvm, csv, arff");
  }
  if (!haveCategories) categories = collect_labels(std::span<const RawDocument>(documents));
  FeatureExtractor extractor(extractor_config(options.extractor));
  return index_documents(documents, extractor, std::move(categories), vocabulary);
}

void print_summary(std::ostream& out, const Index& index) {
  out << "D = " << index.documentCount() << " F = " << index.featureCount() << " C = " << index.categoryCount()
      << " nnz = " << index.content().nonZeroCount() << '\n';
}

void save_with_test(const Index& train, const std::string& out, const std::function<Index(const Index&)>& testMap,
                    const std::string& test, const std::string& testOut, std::ostream& log) {
  save_index(train, out);
  print_summary(log, train);
  if (test.empty()) return;
  auto mapped = testMap(load_index(test));
  save_index(mapped, testOut);
  log << "test: ";
  print_summary(log, mapped);
}

void validate_test_pair(const std::string& test, const std::string& testOut) {
  if (test.empty() != testOut.empty()) throw UsageError("--test and --test-out must be given together");
  if (!test.empty()) require_exists(test, "test index");
}

}  // namespace

void cmd_index(const IndexOptions& options, std::ostream& out) {
  if (options.out.empty()) throw UsageError("missing --out");
  extractor_config(options.extractor);  // reject bad flags before reading anything
  auto index = build_from_input(options);
  if (index.documentCount() == 0) warn("empty corpus: " + options.input);
  save_index(index, options.out);
  print_summary(out, index);
}

void cmd_tsr(const TsrOptions& options, std::ostream& out) {
  require_exists(options.index, "index");
  if (options.out.empty()) throw UsageError("missing --out");
  validate_test_pair(options.test, options.testOut);
  const auto function = parse_tsr_function(options.func);
  if (options.k == 0) throw UsageError("--k must be at least 1");
  const auto& policy = options.policy;
  if (policy != "local" && policy != "max" && policy != "sum" && policy != "wavg" && policy != "rr")
    throw UsageError("--policy must be one of local, max, sum, wavg, rr");

  auto index = load_index(options.index);
  Index selected;
  if (policy == "local") {
    selected = apply_local_selection(index, select_local(rank_all_categories(index, function), options.k));
  } else if (policy == "rr") {
    selected = apply_selection(index, select_round_robin(rank_all_categories(index, function), options.k));
  } else {
    const auto global = policy == "max"   ? GlobalPolicy::Max
                        : policy == "sum" ? GlobalPolicy::Sum
                                          : GlobalPolicy::Weighted;
    selected = apply_selection(index, select_top(rank_features_global(index, function, global), options.k));
  }
  const auto features = selected.featureDbPtr();
  save_with_test(
      selected, options.out, [&](const Index& test) { return align_features(test, features); }, options.test,
      options.testOut, out);
}

void cmd_project(const ProjectOptions& options, std::ostream& out) {
  require_exists(options.index, "index");
  if (options.out.empty()) throw UsageError("missing --out");
  validate_test_pair(options.test, options.testOut);
  ProjectionKind kind;
  if (options.kind == "ri") {
    kind = ProjectionKind::RandomIndexing;
  } else if (options.kind == "lri") {
    kind = ProjectionKind::LightweightRI;
  } else if (options.kind == "achlioptas") {
    kind = ProjectionKind::Achlioptas;
  } else {
    throw UsageError("--kind must be one of ri, lri, achlioptas");
  }
  if (options.dim == 0) throw UsageError("--dim must be at least 1");
  const auto nonzeros = options.nonzeros != 0 ? options.nonzeros : std::max<std::uint32_t>(1, options.dim / 100);

  auto index = load_index(options.index);
  const auto model = build_projection(index, kind, options.dim, nonzeros, options.seed);
  auto latent = to_latent_index(project(model, index), index);
  save_with_test(
      latent, options.out,
      [&](const Index& test) {
        auto aligned = align_features(test, model.features);
        return to_latent_index(project(model, aligned), aligned);
      },
      options.test, options.testOut, out);

  const auto path = fs::path(options.out) / "projection.bin";
  auto file = open_output(path);
  const auto bytes = serialize_projection(model);
  file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  finish_output(file, path);
}

void cmd_weight(const WeightOptions& options, std::ostream& out) {
  require_exists(options.index, "index");
  if (options.out.empty()) throw UsageError("missing --out");
  validate_test_pair(options.test, options.testOut);
  WeightingScheme scheme;
  if (options.scheme == "tfidf") {
    scheme = WeightingScheme::TfIdf;
  } else if (options.scheme == "bm25") {
    scheme = WeightingScheme::Bm25;
  } else {
    throw UsageError("--scheme must be 'tfidf' or 'bm25'");
  }
  const Bm25Params params{options.k1, options.b};

  auto index = load_index(options.index);
  const auto stats = recompute_stats(index);
  auto weighted = apply_weighting(index, scheme, params, &stats);
  const auto features = index.featureDbPtr();
  save_with_test(
      weighted, options.out,
      [&](const Index& test) { return apply_weighting(align_features(test, features), scheme, params, &stats); },
      options.test, options.testOut, out);
}

void cmd_train(const TrainOptions& options, std::ostream& out) {
  require_exists(options.index, "index");
  if (options.out.empty()) throw UsageError("missing --out");
  const auto params = learner_params(options.learner);
  auto index = load_index(options.index);
  auto classifier = train(params, index);
  save_model(classifier, options.out);
  out << "learner = " << learner_name(classifier.kind()) << " D = " << index.documentCount()
      << " C = " << classifier.categoryCount() << " degenerate = " << classifier.degenerate.size() << '\n';
}

void cmd_classify(const ClassifyOptions& options, std::ostream& out) {
  require_exists(options.model, "model");
  require_exists(options.index, "index");
  if (options.out.empty()) throw UsageError("missing --out");
  const fs::path predictionsPath = options.out;
  const fs::path scoresPath =
      options.scores.empty() ? predictionsPath.parent_path() / "scores.tsv" : fs::path(options.scores);

  auto classifier = load_model(options.model);
  auto index = load_index(options.index);
  check_same_categories(index, classifier.categories, "index");
  const auto table = classify_all(classifier, index);

  auto predictions = open_output(predictionsPath);
  auto scores = open_output(scoresPath);
  std::size_t positives = 0;
  for (DocId d = 0; d < table.documents; ++d) {
    for (CategoryId c = 0; c < table.categories; ++c) {
      scores << d << '\t' << c << '\t' << format_double(table.score(d, c)) << '\n';
      if (table.decision(d, c)) {
        predictions << d << '\t' << c << '\n';
        ++positives;
      }
    }
  }
  finish_output(predictions, predictionsPath);
  finish_output(scores, scoresPath);
  out << "D = " << table.documents << " C = " << table.categories << " assignments = " << positives << '\n';
}

void cmd_eval(const EvalOptions& options, std::ostream& out) {
  require_exists(options.pred, "predictions file");
  require_exists(options.gold, "gold index");
  const fs::path evalPath = options.out.empty() ? fs::path(options.pred).parent_path() / "eval.tsv" : fs::path(options.out);

  auto gold = load_index(options.gold);
  const auto D = gold.documentCount();
  const auto C = gold.categoryCount();
  if (C == 0) throw DataError("gold index has no categories");

  std::ifstream in(options.pred, std::ios::binary);
  if (!in) throw DataError("cannot read " + options.pred);
  std::vector<std::pair<DocId, CategoryId>> pairs;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto view = chomp_cr(line);
    if (view.empty()) continue;
    auto fields = split(view, '\t');
    if (fields.size() != 2) throw ParseError(options.pred, number, "expected dID<TAB>cID");
    auto d = parse_uint(fields[0]);
    auto c = parse_uint(fields[1]);
    if (!d || *d >= D) throw ParseError(options.pred, number, "document id out of range");
    if (!c || *c >= C) throw ParseError(options.pred, number, "category id out of range");
    pairs.emplace_back(static_cast<DocId>(*d), static_cast<CategoryId>(*c));
  }
  const ClassificationDb predicted(D, C, std::move(pairs));
  const auto tables = compare(predicted, gold.classification());
  const auto summary = micro_macro(tables);

  auto file = open_output(evalPath);
  file << "scope\tcategory\ttp\ttn\tfp\tfn\tprecision\trecall\tf1\taccuracy\n";
  for (CategoryId c = 0; c < C; ++c) {
    const auto& t = tables.perCategory[c];
    const auto m = measures(t);
    out << "category " << gold.categories().name(c) << '\n';
    print_table(out, t);
    print_measures(out, m.precision, m.recall, m.f1, m.accuracy);
    file << "category\t" << escape_field(gold.categories().name(c)) << '\t' << table_row(t) << '\t' << measures_row(m)
         << '\n';
  }
  const auto global = tables.global();
  out << "micro\n";
  print_table(out, global);
  print_measures(out, summary.microPrecision, summary.microRecall, summary.microF1, summary.microAccuracy);
  out << "macro\n";
  print_measures(out, summary.macroPrecision, summary.macroRecall, summary.macroF1, summary.macroAccuracy);
  file << "micro\t\t" << table_row(global) << '\t'
       << measures_row({summary.microPrecision, summary.microRecall, summary.microF1, summary.microAccuracy}) << '\n';
  file << "macro\t\t\t\t\t\t"
       << measures_row({summary.macroPrecision, summary.macroRecall, summary.macroF1, summary.macroAccuracy}) << '\n';
  finish_output(file, evalPath);
}

void cmd_quantify(const QuantifyOptions& options, std::ostream& out) {
  require_exists(options.train, "training index");
  require_exists(options.test, "test index");
  if (options.out.empty()) throw UsageError("missing --out");
  if (options.folds < 2) throw UsageError("--folds must be at least 2");
  if (!(options.slope > 0.0)) throw UsageError("--slope must be positive");
  const auto params = learner_params(options.learner);

  auto training = load_index(options.train);
  auto test = load_index(options.test);
  if (test.categories().names() != training.categories().names())
    throw DataError("test index has different categories than the training index");
  if (test.documentCount() == 0) throw DataError("test index is empty");

  const auto pool = learn_quantifiers(params, training, options.folds, LogisticScaling{options.slope}, options.seed);
  const auto estimate = quantify(pool, test);
  const auto truth = true_prevalences(test);
  const auto report = evaluate_quantification(estimate, truth, test.documentCount());

  auto file = open_output(options.out);
  file << "category\tquantifier\testimate\ttrue\tae\trae\tkld\n";
  for (CategoryId c = 0; c < training.categoryCount(); ++c) {
    for (std::size_t q = 0; q < kQuantifiers.size(); ++q) {
      const auto& e = report.perCategory[c][q];
      file << escape_field(training.categories().name(c)) << '\t' << quantifier_name(kQuantifiers[q]) << '\t'
           << format_double(estimate.values[c][q]) << '\t' << format_double(truth[c]) << '\t' << format_double(e.ae)
           << '\t' << format_double(e.rae) << '\t' << format_double(e.kld) << '\n';
    }
  }
  finish_output(file, options.out);
  for (std::size_t q = 0; q < kQuantifiers.size(); ++q) {
    const auto& e = report.mean[q];
    out << quantifier_name(kQuantifiers[q]) << " ae = " << format_double(e.ae) << " rae = " << format_double(e.rae)
        << " kld = " << format_double(e.kld) << '\n';
  }
}

void cmd_kfold(const KFoldOptions& options, std::ostream& out) {
  require_exists(options.index, "index");
  if (options.out.empty()) throw UsageError("missing --out");
  const auto params = learner_params(options.learner);
  const auto mode = parse_fold_mode(options.mode);
  auto index = load_index(options.index);
  const auto plan = make_folds(index, options.k, mode, options.seed);
  const auto result = kfold_evaluate(params, index, plan);

  auto file = open_output(options.out);
  file << "fold\tcategory\ttp\ttn\tfp\tfn\tprecision\trecall\tf1\taccuracy\n";
  auto rows = [&](const std::string& fold, const ContingencyTableSet& set) {
    for (CategoryId c = 0; c < index.categoryCount(); ++c) {
      const auto& t = set.perCategory[c];
      file << fold << '\t' << escape_field(index.categories().name(c)) << '\t' << table_row(t) << '\t'
           << measures_row(measures(t)) << '\n';
    }
  };
  for (std::size_t f = 0; f < result.perFold.size(); ++f) rows(std::to_string(f), result.perFold[f]);
  rows("total", result.total);
  finish_output(file, options.out);

  const auto summary = micro_macro(result.total);
  out << "folds = " << plan.k << " microF1 = " << format_double(summary.microF1)
      << " macroF1 = " << format_double(summary.macroF1) << '\n';
}

void cmd_grid(const GridOptions& options, std::ostream& out) {
  require_exists(options.index, "index");
  if (options.out.empty()) throw UsageError("missing --out");
  if (options.params.empty()) throw UsageError("grid needs at least one --param key=v1,v2,...");
  const auto kind = parse_learner_kind(options.learner);
  ParamGrid grid;
  grid.objective = parse_objective(options.objective);
  for (const auto& entry : options.params) {
    auto [key, values] = split_assignment(entry, "--param");
    for (const auto& axis : grid.axes)
      if (axis.first == key) throw UsageError("--param '" + key + "' given twice");
    std::vector<std::string> list;
    for (auto value : split(values, ',')) {
      value = trim(value);
      if (value.empty()) throw UsageError("--param '" + key + "' has an empty value");
      list.emplace_back(value);
    }
    grid.axes.emplace_back(std::move(key), std::move(list));
  }
  const auto mode = parse_fold_mode(options.mode);
  auto index = load_index(options.index);
  const auto plan = make_folds(index, options.k, mode, options.seed);
  const auto result = grid_search(kind, grid, index, plan);

  auto file = open_output(options.out);
  file << "point";
  for (const auto& axis : grid.axes) file << '\t' << axis.first;
  file << '\t' << objective_name(grid.objective) << "\tbest\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const auto& point = result.points[i];
    file << i;
    for (const auto& assignment : point.assignment) file << '\t' << assignment.second;
    file << '\t' << format_double(point.objective) << '\t' << (i == result.best ? 1 : 0) << '\n';
  }
  finish_output(file, options.out);

  const auto& best = result.points[result.best];
  out << "best";
  for (const auto& [key, value] : best.assignment) out << ' ' << key << '=' << value;
  out << ' ' << objective_name(grid.objective) << " = " << format_double(best.objective) << '\n';
}

namespace {

// Runs one pipeline stage, naming it in any error while keeping the
// error's category (and so the exit code).
template <class Fn>
void run_stage(Stage stage, std::ostream& out, Fn&& fn) {
  const auto name = stage_name(stage);
  out << "stage " << name << '\n';
  const auto prefix = "stage " + name + ": ";
  try {
    fn();
  } catch (const UsageError& e) {
    throw UsageError(prefix + e.what());
  } catch (const DataError& e) {
    throw DataError(prefix + e.what());
  } catch (const InvariantError& e) {
    throw InvariantError(prefix + e.what());
  } catch (const fs::filesystem_error& e) {
    throw DataError(prefix + e.what());
  }
}

}  // namespace

void cmd_pipeline(const PipelineOptions& options, std::ostream& out) {
  const auto stages = parse_stages(options.stages);
  auto has = [&](Stage s) { return std::find(stages.begin(), stages.end(), s) != stages.end(); };
  if (options.out.empty()) throw UsageError("missing --out");
  const bool needsTest = has(Stage::Classify) || has(Stage::Eval) || has(Stage::Quantify);
  if (needsTest && options.testInput.empty())
    throw UsageError("stages classify, eval and quantify need --test-input");

  // Everything that can be checked without reading data is checked here.
  require_exists(options.index.input, "input file");
  if (!options.testInput.empty()) require_exists(options.testInput, "test input file");
  if (!options.index.categories.empty()) require_exists(options.index.categories, "category file");
  extractor_config(options.index.extractor);
  if (has(Stage::Tsr)) parse_tsr_function(options.tsr.func);
  if (has(Stage::Train) || has(Stage::Quantify)) learner_params(options.learner);

  const fs::path root = options.out;
  const bool withTest = !options.testInput.empty();
  std::string train;
  std::string test;
  auto sidePaths = [&](const std::string& stage) {
    return std::pair{(root / stage / "train").string(), withTest ? (root / stage / "test").string() : std::string()};
  };

  for (Stage stage : stages) {
    run_stage(stage, out, [&] {
      switch (stage) {
        case Stage::Index: {
          auto [trainOut, testOut] = sidePaths("index");
          IndexOptions o = options.index;
          o.vocabulary.clear();
          o.out = trainOut;
          cmd_index(o, out);
          if (withTest) {
            o.input = options.testInput;
            o.vocabulary = trainOut;
            o.out = testOut;
            cmd_index(o, out);
          }
          train = trainOut;
          test = testOut;
          break;
        }
        case Stage::Tsr: {
          TsrOptions o = options.tsr;
          std::tie(o.out, o.testOut) = sidePaths("tsr");
          o.index = train;
          o.test = test;
          cmd_tsr(o, out);
          train = o.out;
          test = o.testOut;
          break;
        }
        case Stage::Project: {
          ProjectOptions o = options.project;
          std::tie(o.out, o.testOut) = sidePaths("project");
          o.index = train;
          o.test = test;
          o.seed = options.seed;
          cmd_project(o, out);
          train = o.out;
          test = o.testOut;
          break;
        }
        case Stage::Weight: {
          WeightOptions o = options.weight;
          std::tie(o.out, o.testOut) = sidePaths("weight");
          o.index = train;
          o.test = test;
          cmd_weight(o, out);
          train = o.out;
          test = o.testOut;
          break;
        }
        case Stage::Train:
          cmd_train({train, (root / "train" / "model").string(), options.learner}, out);
          break;
        case Stage::Classify:
          cmd_classify({(root / "train" / "model").string(), test, (root / "classify" / "predictions.tsv").string(),
                        (root / "classify" / "scores.tsv").string()},
                       out);
          break;
        case Stage::Eval:
          cmd_eval({(root / "classify" / "predictions.tsv").string(), test, (root / "eval" / "eval.tsv").string()},
                   out);
          break;
        case Stage::Quantify: {
          QuantifyOptions o;
          o.train = train;
          o.test = test;
          o.out = (root / "quantify" / "quantify.tsv").string();
          o.learner = options.learner;
          o.folds = options.folds;
          o.seed = options.seed;
          o.slope = options.slope;
          cmd_quantify(o, out);
          break;
        }
      }
    });
  }
}

}  // namespace jatecs::cli
