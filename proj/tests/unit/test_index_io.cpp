#include <doctest.h>

#include <fstream>

#include "jatecs/error.hpp"
#include "jatecs/index_io.hpp"
#include "jatecs/weighting.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using namespace jatecs;
using namespace jatecs::testing;

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

Index tricky_names() {
  return build_index({{"doc\twith tab", {{"back\\slash", 1}, {"new\nline", 2}}}, {"caf\xc3\xa9", {{"cr\rhere", 3}}}},
                     {{"doc\twith tab", {"label one"}}}, {"label one", "label\ttwo"});
}

}  // namespace

TEST_CASE("layout of a saved index") {
  TempDir tmp("index-io");
  const auto index = build_index({{"d0", {{"b", 2}, {"a", 1}}}, {"d1", {}}}, {{"d0", {"c1"}}}, {"c0", "c1"});
  save_index(index, tmp / "idx");
  CHECK(read_file(tmp / "idx" / "meta.tsv") == "format_version\t1\nD\t2\nF\t2\nC\t2\n");
  CHECK(read_file(tmp / "idx" / "categories.tsv") == "0\tc0\n1\tc1\n");
  CHECK(read_file(tmp / "idx" / "features.tsv") == "0\tb\n1\ta\n");
  CHECK(read_file(tmp / "idx" / "documents.tsv") == "0\td0\n1\td1\n");
  CHECK(read_file(tmp / "idx" / "content.tsv") == "0\t0\t2\n0\t1\t1\n");
  CHECK(read_file(tmp / "idx" / "classification.tsv") == "0\t1\n");
  CHECK(read_file(tmp / "idx" / "weights.tsv") == "0\t0\t2\n0\t1\t1\n");
  CHECK_FALSE(fs::exists(tmp / "idx" / "domain.tsv"));
}

TEST_CASE("names with control characters survive") {
  TempDir tmp("index-io");
  const auto index = tricky_names();
  save_index(index, tmp / "idx");
  CHECK(load_index(tmp / "idx") == index);
  CHECK(read_file(tmp / "idx" / "documents.tsv").find("doc\\twith tab") != std::string::npos);
}

TEST_CASE("weights keep every bit") {
  TempDir tmp("index-io");
  const auto base = build_index({{"d0", {{"x", 1}, {"y", 7}, {"z", 2}}}, {"d1", {{"x", 3}}}}, {}, {"c"});
  const auto weighted = tfidf_normalized(base).withWeighting(WeightingDb({{{0, 0.1}, {1, 1e-300}, {2, -2.5e17}},
                                                                         {{0, 1.0 / 3.0}}}));
  save_index(weighted, tmp / "idx");
  const auto loaded = load_index(tmp / "idx");
  CHECK(loaded.weighting().weight(0, 1) == 1e-300);
  CHECK(loaded.weighting().weight(1, 0) == 1.0 / 3.0);
  CHECK(loaded == weighted);
}

TEST_CASE("local domain round trip and stale domain removal") {
  TempDir tmp("index-io");
  const auto global = build_index({{"d0", {{"a", 1}, {"b", 1}}}}, {{"d0", {"c0"}}}, {"c0", "c1"});
  const auto local = global.withDomain(DomainDb::local(2, 2, {{1, 0}, {0, 1}, {1, 1}}));
  save_index(local, tmp / "idx");
  CHECK(read_file(tmp / "idx" / "domain.tsv") == "0\t1\n1\t0\n1\t1\n");
  CHECK(load_index(tmp / "idx") == local);
  save_index(global, tmp / "idx");
  CHECK_FALSE(fs::exists(tmp / "idx" / "domain.tsv"));
  CHECK(load_index(tmp / "idx") == global);
}

TEST_CASE("random round trips are byte stable") {
  TempDir tmp("index-io");
  Xoshiro256 rng(99);
  for (int i = 0; i < 25; ++i) {
    const auto index = random_index(rng, 40);
    save_index(index, tmp / "a");
    const auto loaded = load_index(tmp / "a");
    CHECK(loaded == index);
    save_index(loaded, tmp / "b");
    CHECK(diff_trees(tmp / "a", tmp / "b").empty());
    fs::remove_all(tmp / "a");
    fs::remove_all(tmp / "b");
  }
}

TEST_CASE("malformed index files") {
  TempDir tmp("index-io");
  const auto dir = tmp / "idx";
  save_index(build_index({{"d0", {{"a", 1}}}, {"d1", {{"b", 2}}}}, {}, {"c"}), dir);

  SUBCASE("missing directory") { CHECK_THROWS_AS(load_index(tmp / "nope"), DataError); }
  SUBCASE("bad count") {
    write_text(dir / "content.tsv", "0\t0\t1\n1\t1\tx\n");
    try {
      load_index(dir);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("non-contiguous ids") {
    write_text(dir / "features.tsv", "0\ta\n2\tb\n");
    CHECK_THROWS_AS(load_index(dir), ParseError);
  }
  SUBCASE("content referencing a missing feature") {
    write_text(dir / "content.tsv", "0\t0\t1\n1\t5\t2\n");
    CHECK_THROWS_AS(load_index(dir), DataError);
  }
  SUBCASE("unsupported version") {
    write_text(dir / "meta.tsv", "format_version\t9\nD\t2\nF\t2\nC\t1\n");
    CHECK_THROWS_AS(load_index(dir), DataError);
  }
  SUBCASE("meta disagrees with the tables") {
    write_text(dir / "meta.tsv", "format_version\t1\nD\t3\nF\t2\nC\t1\n");
    CHECK_THROWS_AS(load_index(dir), DataError);
  }
}
