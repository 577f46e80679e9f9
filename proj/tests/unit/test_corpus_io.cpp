#include <doctest.h>

#include <sstream>

#include "golden.hpp"
#include "jatecs/corpus_io.hpp"
#include "jatecs/error.hpp"
#include "jatecs/indexing.hpp"
#include "synthetic.hpp"

using namespace jatecs;
using namespace jatecs::testing;

namespace {

std::vector<SparseInstance> libsvm(const std::string& text, std::span<const std::string> categories = {}) {
  std::istringstream in(text);
  return parse_libsvm(in, "mem", categories);
}

std::vector<RawDocument> csv(const std::string& text, char separator = '\t') {
  std::istringstream in(text);
  return parse_csv(in, "mem", separator);
}

ArffDataset arff(const std::string& text) {
  std::istringstream in(text);
  return parse_arff(in, "mem");
}

template <class F>
std::size_t error_line(F&& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("golden files") {
  const auto outcomes = check_golden_files(JATECS_GOLDEN_DIR);
  CHECK(outcomes.size() >= 10);
  for (const auto& o : outcomes) {
    INFO(o.file << ": " << o.detail);
    CHECK(o.ok);
  }
}

TEST_CASE("category files") {
  std::istringstream plain("sports\npolitics\n");
  CHECK(parse_category_list(plain, "mem") == std::vector<std::string>{"sports", "politics"});
  std::istringstream commented("# comment\nsports\n\npolitics\r\n");
  CHECK(parse_category_list(commented, "mem") == std::vector<std::string>{"sports", "politics"});
  std::istringstream duplicate("sports\npolitics\nsports\n");
  CHECK_THROWS_WITH_AS(parse_category_list(duplicate, "mem"), doctest::Contains("mem:3"), ParseError);
}

TEST_CASE("libsvm lines") {
  const auto one = libsvm("1 3:2 7:1.5\n");
  REQUIRE(one.size() == 1);
  CHECK(one[0].labels == std::vector<std::string>{"1"});
  CHECK(one[0].pairs == std::vector<std::pair<std::uint32_t, double>>{{3, 2.0}, {7, 1.5}});

  const auto commented = libsvm("+1 1:1 # cmt\n");
  CHECK(commented[0].labels == std::vector<std::string>{"+1"});
  CHECK(commented[0].pairs.size() == 1);

  const auto multi = libsvm("a,b 2:1\n4:3\n");
  CHECK(multi[0].labels == std::vector<std::string>{"a", "b"});
  CHECK(multi[1].labels.empty());
  CHECK(multi[1].pairs == std::vector<std::pair<std::uint32_t, double>>{{4, 3.0}});

  CHECK_THROWS_WITH_AS(libsvm("1 1:1\n1 7:1 3:2\n"), doctest::Contains("indices not ascending"), ParseError);
  CHECK(error_line([] { libsvm("1 1:1\n\n1 7:1 3:2\n"); }) == 3);
  CHECK(error_line([] { libsvm("1 1:x\n"); }) == 1);
  CHECK(error_line([] { libsvm("1 1:1\n1 0:1\n"); }) == 2);
  const std::vector<std::string> known{"1"};
  CHECK(error_line([&] { libsvm("1 1:1\n2 1:1\n", known); }) == 2);
}

TEST_CASE("libsvm writing") {
  std::ostringstream empty;
  write_libsvm(std::vector<SparseInstance>{}, empty);
  CHECK(empty.str().empty());

  const std::vector<SparseInstance> instances{{{"x"}, {{1, 1.0}, {5, 0.1}}}};
  std::ostringstream out;
  write_libsvm(instances, out);
  CHECK(out.str() == "x 1:1 5:0.1\n");
  const auto back = libsvm(out.str());
  CHECK(back[0].pairs[0].second == 1.0);
  CHECK(back[0].pairs[1].second == 0.1);
}

TEST_CASE("libsvm round trip on random instances") {
  Xoshiro256 rng(2);
  const auto instances = random_instances(rng, 100);
  std::ostringstream first;
  write_libsvm(instances, first);
  const auto parsed = libsvm(first.str());
  CHECK(parsed == instances);
  std::ostringstream second;
  write_libsvm(parsed, second);
  CHECK(libsvm(second.str()) == parsed);
}

TEST_CASE("csv lines") {
  const auto docs = csv("d0\tsports\tthe cat sat\nd1\t\tsome text\nd3\ta,b\tx\ty\r\n");
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].name == "d0");
  CHECK(docs[0].labels == std::vector<std::string>{"sports"});
  CHECK(docs[0].text == "the cat sat");
  CHECK(docs[1].labels.empty());
  CHECK(docs[2].labels == std::vector<std::string>{"a", "b"});
  CHECK(docs[2].text == "x\ty");

  CHECK_THROWS_WITH_AS(csv("d2\tsports\n"), doctest::Contains("missing text field"), ParseError);
  CHECK(error_line([] { csv("d0\tx\tok\nd2\tsports\n"); }) == 2);

  const auto semicolon = csv("d0;x;a;b\n", ';');
  CHECK(semicolon[0].text == "a;b");
}

TEST_CASE("arff") {
  SUBCASE("dense nominal class") {
    const auto data = arff("@relation r\n@attribute text string\n@attribute class {ham,spam}\n@data\n'buy now',spam\n");
    REQUIRE(data.documents.size() == 1);
    CHECK(data.documents[0].labels == std::vector<std::string>{"spam"});
    CHECK(data.documents[0].text == "buy now");
    CHECK(data.classAttribute == 1U);
  }
  SUBCASE("sparse rows") {
    const auto data = arff(
        "% comment\n@RELATION r\n@attribute w0 numeric\n@attribute w1 numeric\n@attribute w2 numeric\n"
        "@attribute w3 numeric\n@attribute class {a,b}\n@data\n{0 2, 3 1}\n");
    REQUIRE(data.documents.size() == 1);
    const auto& numeric = data.documents[0].numericFeatures;
    REQUIRE(numeric.size() == 2);
    CHECK(numeric[0] == std::pair<std::string, double>{"w0", 2.0});
    CHECK(numeric[1] == std::pair<std::string, double>{"w3", 1.0});
    // The class is omitted, so it takes the first declared value.
    CHECK(data.documents[0].labels == std::vector<std::string>{"a"});
  }
  SUBCASE("errors carry line numbers") {
    CHECK(error_line([] { arff("@relation r\n@attribute x numeric\n@data\nabc\n"); }) == 4);
    CHECK(error_line([] { arff("@relation r\n@attribute x date\n@data\n"); }) == 2);
    CHECK(error_line([] { arff("@relation r\n@attribute x numeric\n@data\n{5 1}\n"); }) == 4);
  }
  SUBCASE("missing data section") { CHECK_THROWS_AS(arff("@relation r\n@attribute x numeric\n"), DataError); }
}

TEST_CASE("readers are deterministic and keep order") {
  const std::string text = "z\tb\tone\na\ta\ttwo\nm\t\tthree\n";
  CHECK(csv(text) == csv(text));
  const auto docs = csv(text);
  CHECK(docs[0].name == "z");
  CHECK(docs[1].name == "a");
  CHECK(docs[2].name == "m");
}

TEST_CASE("missing files") {
  CHECK_THROWS_AS(read_csv("/nonexistent/file.csv", '\t'), DataError);
  CHECK_THROWS_AS(read_libsvm("/nonexistent/file.svm"), DataError);
  CHECK_THROWS_AS(read_arff("/nonexistent/file.arff"), DataError);
  CHECK_THROWS_AS(read_category_file("/nonexistent/cats.txt"), DataError);
}

TEST_CASE("libsvm instances as an index") {
  const auto instances = libsvm("b 1:2.6 4:0.5\na 4:1\n");
  const auto index = index_instances(instances, collect_labels(instances));
  CHECK(index.categories().names() == std::vector<std::string>{"b", "a"});
  CHECK(index.features().names() == std::vector<std::string>{"1", "4"});
  CHECK(index.documents().name(1) == "doc1");
  CHECK(index.content().count(0, 0) == 3);
  CHECK(index.content().count(0, 1) == 1);
  CHECK(index.weighting().weight(0, 0) == 2.6);
  CHECK(index.weighting().weight(0, 1) == 0.5);
}
