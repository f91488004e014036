#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ldnet/cli.hpp"
#include "ldnet/corpus.hpp"
#include "ldnet/io.hpp"
#include "support.hpp"

using namespace ldnet;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string corpus_path(const char* name) {
  return (testing::corpus_dir() / name).string();
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "ldnet_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("validate") {
  Run r = run({"validate", corpus_path("fig2.net")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "valid: true"));

  r = run({"validate", corpus_path("invalid/gain_dimension.net")});
  CHECK(r.status == 1);
  CHECK(contains(r.out, "violations: 1"));
  CHECK(contains(r.out, "gain-shape"));

  r = run({"--format", "structured", "validate",
           corpus_path("invalid/missing_endpoint.net")});
  CHECK(r.status == 1);
  CHECK(contains(r.out, "valid=false"));

  const auto broken = scratch("broken.net");
  write_file(broken, "p: 2 q: 1 nodes: a edges: {from: a");
  r = run({"validate", broken.string()});
  CHECK(r.status == 2);
  CHECK(contains(r.err, "parse-error"));
}

TEST_CASE("transfer") {
  Run r = run({"transfer", corpus_path("fig2.net"), corpus_path("fig2.code")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "verdict: solves"));
  CHECK(contains(r.out, "gamma[1,1]: [[1,0],[0,1]]"));
  CHECK(contains(r.out, "gamma[2,2]: [[1,0],[0,1]]"));

  r = run({"transfer", corpus_path("fig2.net"), corpus_path("fig2_zero_decoder.code")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "verdict: does not solve"));

  r = run({"--format", "structured", "transfer", corpus_path("butterfly.net"),
           corpus_path("butterfly.code")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "verdict=solves"));

  r = run({"transfer", corpus_path("fig2.net"), corpus_path("butterfly.code")});
  CHECK(r.status == 2);

  r = run({"transfer", corpus_path("three_node.net"), corpus_path("fig2.code")});
  CHECK(r.status == 1);
  CHECK(contains(r.err, "not-layered"));
}

TEST_CASE("reciprocal twice gives the original") {
  const auto once = scratch("once.net"), twice = scratch("twice.net");
  for (const char* net : {"fig2.net", "butterfly.net", "three_node.net",
                          "shift_edge.net"}) {
    CAPTURE(net);
    CHECK(run({"reciprocal", corpus_path(net), "--out", once.string()}).status == 0);
    CHECK(run({"reciprocal", once.string(), "--out", twice.string()}).status == 0);
    CHECK(parse_network(read_file(twice)) == parse_network(read_file(corpus_path(net))));
    CHECK(read_file(twice) == read_file(corpus_path(net)));
  }
  Run r = run({"reciprocal", corpus_path("fig2.net")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "{from: 3, to: 1"));
  CHECK(run({"reciprocal", corpus_path("invalid/gain_dimension.net")}).status == 2);
}

TEST_CASE("unfold") {
  Run r = run({"unfold", corpus_path("three_node.net"), "2"});
  CHECK(r.status == 0);
  const Network n = parse_network(r.out);
  CHECK(n.nodes.size() == 9);
  CHECK(n.q == 8);
  CHECK(detect_layers(n).horizon() == 2);
  const auto out = scratch("unfolded.net");
  CHECK(run({"unfold", corpus_path("three_node.net"), "2", "--out", out.string()})
            .status == 0);
  CHECK(read_file(out) == r.out);
  CHECK(run({"unfold", corpus_path("three_node.net"), "0"}).status == 2);
  CHECK(run({"unfold", corpus_path("three_node.net")}).status == 2);
}

TEST_CASE("verify-reciprocity") {
  Run r = run({"--format", "structured", "verify-reciprocity",
               corpus_path("fig2.net"), corpus_path("fig2.code")});
  CHECK(r.status == 0);
  for (const char* line : {"solves=true", "duality=true",
                           "transposed_solves=true", "consistent=true"})
    CHECK(contains(r.out, line));
  CHECK(contains(r.out, "gamma_reciprocal.1.2=[[0,0],[0,0]]"));

  r = run({"verify-reciprocity", corpus_path("fig2.net"),
           corpus_path("fig2_zero_decoder.code")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "solves: false"));
  CHECK(contains(r.out, "duality: true"));
}

TEST_CASE("search") {
  Run r = run({"search", corpus_path("single_edge_zero.net")});
  CHECK(r.status == 1);
  CHECK(contains(r.out, "status: exhausted"));

  r = run({"search", corpus_path("single_edge_identity.net")});
  CHECK(r.status == 0);
  CHECK(contains(r.out, "status: found"));
  CHECK(contains(r.out, "C 1: [[1]]"));

  r = run({"search", corpus_path("fig2.net"), "--budget", "100"});
  CHECK(r.status == 1);
  CHECK(contains(r.out, "budget-exceeded"));

  const auto out = scratch("found.code");
  r = run({"search", corpus_path("fig2.net"), "--out", out.string()});
  CHECK(r.status == 0);
  CHECK(read_file(out) == read_file(corpus_path("fig2.code")));

  const std::vector<std::string> args{"--format", "structured", "search",
                                      corpus_path("single_edge_gf3.net"),
                                      "--trials", "5000", "--seed", "99"};
  r = run(args);
  CHECK(r.status == 0);
  CHECK(contains(r.out, "status=found"));
  CHECK(contains(r.out, "code.C.1="));
  CHECK(run(args).out == r.out);

  r = run({"search", corpus_path("single_edge_zero.net"), "--trials", "10"});
  CHECK(r.status == 1);
  CHECK(contains(r.out, "not-found"));
  CHECK(run({"search", corpus_path("fig2.net"), "--trials", "0"}).status == 2);
  CHECK(run({"search", corpus_path("fig2.net"), "--seed", "x"}).status == 2);
}

TEST_CASE("simulate") {
  Run r = run({"simulate", corpus_path("butterfly.net"), corpus_path("butterfly.code"),
               corpus_path("butterfly.msg")});
  CHECK(r.status == 0);
  CHECK(r.out == "decoded 1: [1,0,1]\ndecoded 2: [0,1,1]\n");
  r = run({"--format", "structured", "simulate", corpus_path("fig2.net"),
           corpus_path("fig2.code"), corpus_path("fig2.msg")});
  CHECK(r.status == 0);
  CHECK(r.out == "decoded.1=[1,0]\ndecoded.2=[1,1]\n");
  CHECK(run({"simulate", corpus_path("fig2.net"), corpus_path("fig2.code"),
             corpus_path("butterfly.msg")})
            .status == 2);
}

TEST_CASE("corpus regeneration") {
  const auto dir = scratch("corpus");
  std::filesystem::remove_all(dir);
  CHECK(run({"corpus", "--out", dir.string()}).status == 0);
  for (const auto& file : corpus::files())
    CHECK(read_file(dir / file.path) == file.text);
}

TEST_CASE("usage errors") {
  CHECK(run({}).status == 2);
  CHECK(run({"frobnicate"}).status == 2);
  CHECK(run({"validate"}).status == 2);
  CHECK(run({"validate", "/nonexistent.net"}).status == 2);
  CHECK(run({"--format", "xml", "validate", corpus_path("fig2.net")}).status == 2);
  Run help = run({"--help"});
  CHECK(help.status == 0);
  CHECK(contains(help.out, "verify-reciprocity"));
}
