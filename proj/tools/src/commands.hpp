#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace jatecs::cli {

namespace fs = std::filesystem;

struct ExtractorOptions {
  std::string extractor = "bow";
  std::uint32_t ngram = 3;
  bool wordBounded = true;
  std::string stoplist = "none";
  std::string stem = "none";
  std::string setChildren = "bow,chargrams";
  bool namespacing = true;
};

struct IndexOptions {
  std::string reader = "csv";
  std::string input;
  std::string categories;
  std::string separator = "tab";
  ExtractorOptions extractor;
  std::string vocabulary;  // index directory whose feature space is reused
  std::string out;
};

struct TsrOptions {
  std::string index;
  std::string out;
  std::string func = "ig";
  std::string policy = "rr";
  std::uint64_t k = 1000;
  std::string test;
  std::string testOut;
};

struct ProjectOptions {
  std::string index;
  std::string out;
  std::string kind = "ri";
  std::uint32_t dim = 1000;
  std::uint32_t nonzeros = 0;  // 0: 1% of dim, at least 1 (ignored by achlioptas)
  std::uint64_t seed = 0;
  std::string test;
  std::string testOut;
};

struct WeightOptions {
  std::string index;
  std::string out;
  std::string scheme = "tfidf";
  double k1 = 1.2;
  double b = 0.75;
  std::string test;
  std::string testOut;
};

struct LearnerOptions {
  std::string learner = "nb";
  std::vector<std::string> params;  // key=value
};

struct TrainOptions {
  std::string index;
  std::string out;
  LearnerOptions learner;
};

struct ClassifyOptions {
  std::string model;
  std::string index;
  std::string out;
  std::string scores;  // default: scores.tsv next to `out`
};

struct EvalOptions {
  std::string pred;
  std::string gold;
  std::string out;  // default: eval.tsv next to `pred`
};

struct QuantifyOptions {
  std::string train;
  std::string test;
  std::string out = "quantify.tsv";
  LearnerOptions learner;
  std::uint32_t folds = 50;
  std::uint64_t seed = 0;
  double slope = 1.0;
};

struct KFoldOptions {
  std::string index;
  std::string out = "kfold.tsv";
  LearnerOptions learner;
  std::uint32_t k = 10;
  std::string mode = "stratified";
  std::uint64_t seed = 0;
};

struct GridOptions {
  std::string index;
  std::string out = "grid.tsv";
  std::string learner = "nb";
  std::vector<std::string> params;  // key=v1,v2,...
  std::string objective = "macrof1";
  std::uint32_t k = 10;
  std::string mode = "stratified";
  std::uint64_t seed = 0;
};

struct PipelineOptions {
  std::string stages = "index,tsr,weight,train,classify,eval";
  std::string out;
  std::string testInput;
  IndexOptions index;
  TsrOptions tsr;
  ProjectOptions project;
  WeightOptions weight;
  LearnerOptions learner;
  std::uint32_t folds = 50;
  double slope = 1.0;
  std::uint64_t seed = 0;  // projection and quantification folds
};

void cmd_index(const IndexOptions& options, std::ostream& out);
void cmd_tsr(const TsrOptions& options, std::ostream& out);
void cmd_project(const ProjectOptions& options, std::ostream& out);
void cmd_weight(const WeightOptions& options, std::ostream& out);
void cmd_train(const TrainOptions& options, std::ostream& out);
void cmd_classify(const ClassifyOptions& options, std::ostream& out);
void cmd_eval(const EvalOptions& options, std::ostream& out);
void cmd_quantify(const QuantifyOptions& options, std::ostream& out);
void cmd_kfold(const KFoldOptions& options, std::ostream& out);
void cmd_grid(const GridOptions& options, std::ostream& out);
void cmd_pipeline(const PipelineOptions& options, std::ostream& out);

}  // namespace jatecs::cli
