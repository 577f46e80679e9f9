#include "jatecs/model_io.hpp"

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/utility.hpp>
#include <cereal/types/variant.hpp>
#include <cereal/types/vector.hpp>
#include <fstream>
#include <map>
#include <sstream>

#include "jatecs/error.hpp"
#include "jatecs/text_format.hpp"

namespace jatecs {

template <class Archive>
void serialize(Archive& ar, NaiveBayesParams& p) { ar(p.alpha, p.threshold); }
template <class Archive>
void serialize(Archive& ar, RocchioParams& p) { ar(p.beta, p.gamma, p.threshold); }
template <class Archive>
void serialize(Archive& ar, KnnParams& p) { ar(p.k, p.threshold); }
template <class Archive>
void serialize(Archive& ar, BoostParams& p) { ar(p.iterations, p.threshold); }

template <class Archive>
void serialize(Archive& ar, NaiveBayesModel& m) { ar(m.bias, m.delta); }
template <class Archive>
void serialize(Archive& ar, RocchioModel& m) { ar(m.profiles, m.profileNorms); }
template <class Archive>
void serialize(Archive& ar, KnnModel& m) { ar(m.documents, m.norms, m.labels, m.localNorms); }
template <class Archive>
void serialize(Archive& ar, BoostRound& r) { ar(r.feature, r.c0, r.c1); }
template <class Archive>
void serialize(Archive& ar, BoostModel& m) { ar(m.epsilon, m.rounds, m.z); }

namespace {

namespace fs = std::filesystem;

constexpr std::uint32_t kModelFormatVersion = 1;
const std::string kModelMagic = "jatecs-model";
const std::string kProjectionMagic = "jatecs-projection";

struct DomainBlob {
  bool local = false;
  std::vector<std::pair<FeatureId, CategoryId>> pairs;

  template <class Archive>
  void serialize(Archive& ar) { ar(local, pairs); }
};

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << bytes;
  if (!out) throw DataError("write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string payload_bytes(const TrainedClassifier& classifier) {
  std::ostringstream out(std::ios::binary);
  {
    cereal::PortableBinaryOutputArchive ar(out);
    DomainBlob domain{classifier.domain.isLocal(), classifier.domain.isLocal() ? classifier.domain.pairs()
                                                                              : std::vector<std::pair<FeatureId, CategoryId>>{}};
    ar(kModelMagic, kModelFormatVersion, classifier.params, classifier.thresholds, classifier.degenerate, domain,
       classifier.model);
  }
  return out.str();
}

}  // namespace

std::string serialize_classifier(const TrainedClassifier& classifier) { return payload_bytes(classifier); }

void save_model(const TrainedClassifier& classifier, const fs::path& directory) {
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) throw DataError("cannot create " + directory.string() + ": " + ec.message());

  write_file(directory / "model.bin", payload_bytes(classifier));

  std::ostringstream meta;
  meta << "format_version\t" << kModelFormatVersion << '\n';
  meta << "learner\t" << learner_name(classifier.kind()) << '\n';
  for (const auto& [key, value] : describe_params(classifier.params)) meta << "param." << key << '\t' << value << '\n';
  meta << "categories\t" << classifier.categoryCount() << '\n';
  for (CategoryId c = 0; c < classifier.categoryCount(); ++c)
    meta << "category\t" << c << '\t' << escape_field(classifier.categories[c]) << '\n';
  for (CategoryId c : classifier.degenerate) meta << "degenerate\t" << c << '\n';
  write_file(directory / "model-meta.tsv", meta.str());

  std::ostringstream features;
  const auto& names = classifier.features->names();
  for (FeatureId f = 0; f < names.size(); ++f) features << f << '\t' << escape_field(names[f]) << '\n';
  write_file(directory / "features.tsv", features.str());
}

TrainedClassifier load_model(const fs::path& directory) {
  const auto metaPath = (directory / "model-meta.tsv").string();
  std::istringstream meta(read_file(directory / "model-meta.tsv"));
  std::string line, learner;
  std::size_t number = 0;
  std::map<CategoryId, std::string> categories;
  std::optional<std::uint64_t> declaredCategories;
  while (std::getline(meta, line)) {
    ++number;
    auto fields = split(chomp_cr(line), '\t');
    if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;
    if (fields[0] == "learner" && fields.size() == 2) {
      learner = std::string(fields[1]);
    } else if (fields[0] == "categories" && fields.size() == 2) {
      declaredCategories = parse_uint(fields[1]);
    } else if (fields[0] == "category" && fields.size() == 3) {
      auto id = parse_uint(fields[1]);
      if (!id || !categories.emplace(static_cast<CategoryId>(*id), unescape_field(fields[2])).second)
        throw ParseError(metaPath, number, "bad category line");
    } else if (fields[0] == "format_version") {
      if (fields.size() != 2 || parse_uint(fields[1]) != kModelFormatVersion)
        throw ParseError(metaPath, number, "unsupported model format version");
    } else if (fields[0] != "degenerate" && !fields[0].starts_with("param.")) {
      throw ParseError(metaPath, number, "unknown key '" + std::string(fields[0]) + "'");
    }
  }
  if (learner.empty()) throw DataError(metaPath + ": missing learner");
  if (!declaredCategories || *declaredCategories != categories.size())
    throw DataError(metaPath + ": category count mismatch");

  TrainedClassifier out;
  for (CategoryId c = 0; c < categories.size(); ++c) {
    auto it = categories.find(c);
    if (it == categories.end()) throw DataError(metaPath + ": category IDs are not contiguous");
    out.categories.push_back(it->second);
  }

  const auto featurePath = (directory / "features.tsv").string();
  std::istringstream featureStream(read_file(directory / "features.tsv"));
  auto features = std::make_shared<FeatureDb>();
  number = 0;
  while (std::getline(featureStream, line)) {
    ++number;
    auto fields = split(chomp_cr(line), '\t');
    if (fields.size() != 2) throw ParseError(featurePath, number, "expected fID and feature text");
    auto id = parse_uint(fields[0]);
    if (!id || *id != features->size()) throw ParseError(featurePath, number, "feature IDs must be contiguous");
    features->add(unescape_field(fields[1]));
  }
  out.features = std::move(features);

  std::istringstream payload(read_file(directory / "model.bin"), std::ios::binary);
  try {
    cereal::PortableBinaryInputArchive ar(payload);
    std::string magic;
    std::uint32_t version = 0;
    DomainBlob domain;
    ar(magic, version);
    if (magic != kModelMagic || version != kModelFormatVersion)
      throw DataError((directory / "model.bin").string() + ": not a model payload of a supported version");
    ar(out.params, out.thresholds, out.degenerate, domain, out.model);
    if (domain.local)
      out.domain = DomainDb::local(out.features->size(), out.categoryCount(), std::move(domain.pairs));
  } catch (const cereal::Exception& e) {
    throw DataError((directory / "model.bin").string() + ": corrupt payload (" + e.what() + ")");
  }

  if (learner_name(out.kind()) != learner) throw DataError(metaPath + ": learner does not match model.bin");
  if (out.thresholds.size() != out.categoryCount()) throw DataError(metaPath + ": threshold count mismatch");
  if (auto* knn = std::get_if<KnnModel>(&out.model)) build_knn_postings(*knn, out.features->size());
  return out;
}

std::string serialize_projection(const ProjectionModel& model) {
  std::ostringstream out(std::ios::binary);
  {
    cereal::PortableBinaryOutputArchive ar(out);
    ar(kProjectionMagic, kModelFormatVersion, static_cast<std::uint32_t>(model.kind), model.dim, model.nonzeros,
       model.seed, model.indexVectors);
  }
  return out.str();
}

ProjectionModel deserialize_projection(const std::string& bytes, std::shared_ptr<const FeatureDb> features) {
  std::istringstream in(bytes, std::ios::binary);
  ProjectionModel model;
  try {
    cereal::PortableBinaryInputArchive ar(in);
    std::string magic;
    std::uint32_t version = 0, kind = 0;
    ar(magic, version);
    if (magic != kProjectionMagic || version != kModelFormatVersion)
      throw DataError("not a projection payload of a supported version");
    ar(kind, model.dim, model.nonzeros, model.seed, model.indexVectors);
    if (kind > static_cast<std::uint32_t>(ProjectionKind::Achlioptas)) throw DataError("unknown projection kind");
    model.kind = static_cast<ProjectionKind>(kind);
  } catch (const cereal::Exception& e) {
    throw DataError(std::string("corrupt projection payload (") + e.what() + ")");
  }
  if (features && features->size() != model.indexVectors.size())
    throw DataError("projection payload does not match the feature space");
  model.features = std::move(features);
  return model;
}

}  // namespace jatecs
