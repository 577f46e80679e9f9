#include "jatecs/index_io.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <string>

#include "jatecs/error.hpp"
#include "jatecs/text_format.hpp"

namespace jatecs {
namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void close_output(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw DataError("write failed for " + path.string());
}

template <class Tag>
void write_names(const NameTable<Tag>& table, const fs::path& path) {
  auto out = open_output(path);
  for (std::uint32_t id = 0; id < table.size(); ++id) out << id << '\t' << escape_field(table.name(id)) << '\n';
  close_output(out, path);
}

// Calls fn(fields, lineNumber) for every non-empty line.
void for_each_row(const fs::path& path, std::size_t arity,
                  const std::function<void(const std::vector<std::string_view>&, std::size_t)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto view = chomp_cr(line);
    if (view.empty()) continue;
    auto fields = split(view, '\t');
    if (fields.size() != arity)
      throw ParseError(path.string(), number,
                       "expected " + std::to_string(arity) + " fields, found " + std::to_string(fields.size()));
    fn(fields, number);
  }
}

std::uint32_t parse_id(std::string_view token, const fs::path& path, std::size_t line) {
  auto value = parse_uint(token);
  if (!value || *value > kMaxDocuments) throw ParseError(path.string(), line, "invalid id '" + std::string(token) + "'");
  return static_cast<std::uint32_t>(*value);
}

template <class Tag>
std::shared_ptr<NameTable<Tag>> read_names(const fs::path& path, std::uint32_t expected) {
  auto table = std::make_shared<NameTable<Tag>>();
  for_each_row(path, 2, [&](const auto& fields, std::size_t line) {
    auto id = parse_id(fields[0], path, line);
    if (id != table->size()) throw ParseError(path.string(), line, "ids must be contiguous and ascending");
    try {
      table->add(unescape_field(fields[1]));
    } catch (const DataError& e) {
      throw ParseError(path.string(), line, e.what());
    }
  });
  if (table->size() != expected)
    throw DataError(path.string() + ": expected " + std::to_string(expected) + " entries, found " +
                    std::to_string(table->size()));
  return table;
}

}  // namespace

void save_index(const Index& index, const fs::path& directory) {
  fs::create_directories(directory);

  {
    auto path = directory / "meta.tsv";
    auto out = open_output(path);
    out << "format_version\t" << kIndexFormatVersion << '\n'
        << "D\t" << index.documentCount() << '\n'
        << "F\t" << index.featureCount() << '\n'
        << "C\t" << index.categoryCount() << '\n';
    close_output(out, path);
  }
  write_names(index.categories(), directory / "categories.tsv");
  write_names(index.features(), directory / "features.tsv");
  write_names(index.documents(), directory / "documents.tsv");

  {
    auto path = directory / "content.tsv";
    auto out = open_output(path);
    for (DocId d = 0; d < index.documentCount(); ++d)
      for (const auto& e : index.content().documentFeatures(d)) out << d << '\t' << e.feature << '\t' << e.count << '\n';
    close_output(out, path);
  }
  {
    auto path = directory / "classification.tsv";
    auto out = open_output(path);
    for (const auto& [d, c] : index.classification().pairs()) out << d << '\t' << c << '\n';
    close_output(out, path);
  }
  {
    auto path = directory / "weights.tsv";
    auto out = open_output(path);
    for (DocId d = 0; d < index.documentCount(); ++d)
      for (const auto& w : index.weighting().documentWeights(d))
        out << d << '\t' << w.feature << '\t' << format_double(w.weight) << '\n';
    close_output(out, path);
  }

  auto domainPath = directory / "domain.tsv";
  if (index.domain().isLocal()) {
    auto out = open_output(domainPath);
    for (const auto& [f, c] : index.domain().pairs()) out << f << '\t' << c << '\n';
    close_output(out, domainPath);
  } else {
    fs::remove(domainPath);
  }
}

Index load_index(const fs::path& directory) {
  if (!fs::is_directory(directory)) throw DataError("index directory not found: " + directory.string());

  std::map<std::string, std::string> meta;
  auto metaPath = directory / "meta.tsv";
  for_each_row(metaPath, 2, [&](const auto& fields, std::size_t) {
    meta[std::string(fields[0])] = std::string(fields[1]);
  });
  auto metaValue = [&](const std::string& key) -> std::uint32_t {
    auto it = meta.find(key);
    if (it == meta.end()) throw DataError(metaPath.string() + ": missing key " + key);
    auto value = parse_uint(it->second);
    if (!value || *value > kMaxDocuments) throw DataError(metaPath.string() + ": invalid value for " + key);
    return static_cast<std::uint32_t>(*value);
  };
  if (metaValue("format_version") != static_cast<std::uint32_t>(kIndexFormatVersion))
    throw DataError(metaPath.string() + ": unsupported format_version " + meta["format_version"]);
  const auto D = metaValue("D");
  const auto F = metaValue("F");
  const auto C = metaValue("C");

  auto categories = read_names<CategoryTag>(directory / "categories.tsv", C);
  auto features = read_names<FeatureTag>(directory / "features.tsv", F);
  auto documents = read_names<DocumentTag>(directory / "documents.tsv", D);

  std::vector<std::vector<ContentEntry>> rows(D);
  auto contentPath = directory / "content.tsv";
  for_each_row(contentPath, 3, [&](const auto& fields, std::size_t line) {
    auto d = parse_id(fields[0], contentPath, line);
    auto f = parse_id(fields[1], contentPath, line);
    auto count = parse_uint(fields[2]);
    if (d >= D || f >= F) throw ParseError(contentPath.string(), line, "id out of range");
    if (!count || *count == 0 || *count > 0xffffffffULL) throw ParseError(contentPath.string(), line, "invalid count");
    if (!rows[d].empty() && rows[d].back().feature >= f)
      throw ParseError(contentPath.string(), line, "rows must be sorted by document then feature");
    rows[d].push_back({f, static_cast<std::uint32_t>(*count)});
  });

  std::vector<std::pair<DocId, CategoryId>> labels;
  auto classificationPath = directory / "classification.tsv";
  for_each_row(classificationPath, 2, [&](const auto& fields, std::size_t line) {
    auto d = parse_id(fields[0], classificationPath, line);
    auto c = parse_id(fields[1], classificationPath, line);
    if (d >= D || c >= C) throw ParseError(classificationPath.string(), line, "id out of range");
    labels.emplace_back(d, c);
  });

  std::vector<std::vector<WeightEntry>> weights(D);
  auto weightsPath = directory / "weights.tsv";
  for_each_row(weightsPath, 3, [&](const auto& fields, std::size_t line) {
    auto d = parse_id(fields[0], weightsPath, line);
    auto f = parse_id(fields[1], weightsPath, line);
    auto w = parse_double(fields[2]);
    if (d >= D || f >= F) throw ParseError(weightsPath.string(), line, "id out of range");
    if (!w) throw ParseError(weightsPath.string(), line, "invalid weight '" + std::string(fields[2]) + "'");
    if (!weights[d].empty() && weights[d].back().feature >= f)
      throw ParseError(weightsPath.string(), line, "rows must be sorted by document then feature");
    weights[d].push_back({f, *w});
  });

  DomainDb domain;
  auto domainPath = directory / "domain.tsv";
  if (fs::exists(domainPath)) {
    std::vector<std::pair<FeatureId, CategoryId>> pairs;
    for_each_row(domainPath, 2, [&](const auto& fields, std::size_t line) {
      pairs.emplace_back(parse_id(fields[0], domainPath, line), parse_id(fields[1], domainPath, line));
    });
    domain = DomainDb::local(F, C, std::move(pairs));
  }

  return Index::assemble(std::move(categories), std::move(features), std::move(documents),
                         std::make_shared<const ContentDb>(F, std::move(rows)),
                         std::make_shared<const ClassificationDb>(D, C, std::move(labels)),
                         std::make_shared<const DomainDb>(std::move(domain)),
                         std::make_shared<const WeightingDb>(std::move(weights)));
}

}  // namespace jatecs
