#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ldnet/corpus.hpp"
#include "support.hpp"

using namespace ldnet;

namespace {
const FieldModulus gf2{2};

Network chain(std::initializer_list<const char*> names, std::size_t q = 1) {
  Network n;
  n.field = gf2;
  n.q = q;
  for (auto name : names) n.nodes.push_back(name);
  for (std::size_t i = 0; i + 1 < n.nodes.size(); ++i)
    n.edges.push_back({n.nodes[i], n.nodes[i + 1], GfMatrix::identity(gf2, q)});
  n.sessions = {{1, n.nodes.front(), n.nodes.back(), 1}};
  return n;
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::parse_error;
}
}  // namespace

TEST_CASE("validate") {
  Network ok = corpus::single_edge(GfMatrix::identity(gf2, 2), 1);
  CHECK(validate(ok).ok());

  Network big = ok;
  big.edges[0].gain = GfMatrix::identity(gf2, 3);
  auto report = validate(big);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == ViolationKind::gain_shape);

  Network loop = ok;
  loop.sessions[0].dest = "a";
  report = validate(loop);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == ViolationKind::session_loop);

  Network messy = ok;
  messy.nodes.push_back("a");
  messy.edges.push_back({"a", "a", GfMatrix::identity(gf2, 2)});
  messy.edges.push_back({"a", "b", GfMatrix::identity(FieldModulus{3}, 2)});
  messy.edges.push_back({"a", "z", GfMatrix::identity(gf2, 2)});
  messy.sessions.push_back({1, "a", "y", 1});
  std::vector<ViolationKind> kinds;
  for (const auto& v : validate(messy).violations) kinds.push_back(v.kind);
  for (auto k : {ViolationKind::duplicate_node, ViolationKind::self_loop,
                 ViolationKind::duplicate_edge, ViolationKind::gain_modulus,
                 ViolationKind::unknown_edge_endpoint,
                 ViolationKind::unknown_session_endpoint,
                 ViolationKind::duplicate_session_id})
    CHECK(std::find(kinds.begin(), kinds.end(), k) != kinds.end());

  Network zero_q = ok;
  zero_q.q = 0;
  CHECK_FALSE(validate(zero_q).ok());
  CHECK(code_of([&] { require_valid(big); }) == Errc::invalid_network);
}

TEST_CASE("reciprocal of the two-unicast instance") {
  const Network n = corpus::fig2_network();
  const Network r = reciprocal(n);
  CHECK(r.nodes == n.nodes);
  CHECK(r.q == n.q);
  CHECK(r.field == n.field);
  REQUIRE(r.edges.size() == n.edges.size());
  CHECK(r.edges[0].from == "3");
  CHECK(r.edges[0].to == "1");
  CHECK(r.edges[0].gain == mat_transpose(n.edges[0].gain));
  for (std::size_t i = 0; i < n.edges.size(); ++i) {
    CHECK(r.edges[i].from == n.edges[i].to);
    CHECK(r.edges[i].to == n.edges[i].from);
    CHECK(r.edges[i].gain == mat_transpose(n.edges[i].gain));
  }
  CHECK(r.sessions[0].source == "5");
  CHECK(r.sessions[0].dest == "1");
  CHECK(r.sessions[1].source == "6");
  CHECK(r.sessions[1].dest == "2");
  CHECK(reciprocal(r) == n);
}

TEST_CASE("reciprocal of a shift edge is the flipped shift") {
  const GfMatrix s = shift_matrix(gf2, 3, 2);
  const Network r = reciprocal(corpus::single_edge(s, 1));
  CHECK(r.edges[0].from == "b");
  CHECK(r.edges[0].gain == mat_transpose(s));
  CHECK(r.edges[0].gain == flip_matrix(gf2, 3) * s * flip_matrix(gf2, 3));
}

TEST_CASE("reciprocal preserves sizes on random networks") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const FieldModulus f{i % 2 ? 3u : 2u};
    const Network n =
        testing::random_layered_network(f, {.q = 2, .horizon = 3}, rng).base();
    const Network r = reciprocal(n);
    CHECK(r.nodes.size() == n.nodes.size());
    CHECK(r.edges.size() == n.edges.size());
    CHECK(r.sessions.size() == n.sessions.size());
    CHECK(r.q == n.q);
    CHECK(r.field == n.field);
    CHECK(reciprocal(r) == n);
  }
}

TEST_CASE("detect_layers") {
  const LayeredNetwork fig2 = detect_layers(corpus::fig2_network());
  CHECK(fig2.horizon() == 2);
  CHECK(fig2.layers() == std::vector<std::size_t>{0, 0, 1, 1, 2, 2});
  CHECK(fig2.relays() == std::vector<std::size_t>{2, 3});
  CHECK(fig2.message_length(0) == 2);

  const LayeredNetwork one = detect_layers(chain({"a", "b"}));
  CHECK(one.horizon() == 1);
  CHECK(one.layers() == std::vector<std::size_t>{0, 1});
  CHECK(one.relays().empty());

  Network skip = chain({"a", "b", "c"});
  skip.edges.push_back({"a", "c", GfMatrix::identity(gf2, 1)});
  CHECK(code_of([&] { detect_layers(skip); }) == Errc::not_layered);

  Network cycle = chain({"a", "b", "c"});
  cycle.edges.push_back({"c", "a", GfMatrix::identity(gf2, 1)});
  CHECK(code_of([&] { detect_layers(cycle); }) == Errc::not_layered);

  // destination short of the final layer
  Network early = chain({"a", "b", "c"});
  early.sessions.push_back({2, "a", "b", 1});
  CHECK(code_of([&] { detect_layers(early); }) == Errc::not_layered);

  // a destination that also relays
  Network relay_dest = chain({"a", "b", "c"});
  relay_dest.sessions = {{1, "a", "b", 1}};
  relay_dest.nodes.push_back("d");
  relay_dest.edges.push_back({"d", "c", GfMatrix::identity(gf2, 1)});
  relay_dest.sessions.push_back({2, "d", "c", 1});
  CHECK(code_of([&] { detect_layers(relay_dest); }) == Errc::not_layered);

  // separate components line up at the source and destination layers
  Network split = chain({"a", "b", "c"});
  split.nodes.insert(split.nodes.end(), {"x", "y", "u", "v"});
  split.edges.push_back({"x", "y", GfMatrix::identity(gf2, 1)});
  split.edges.push_back({"u", "v", GfMatrix::identity(gf2, 1)});
  split.sessions.push_back({2, "u", "c", 1});
  Network joined = split;
  joined.sessions.push_back({3, "a", "y", 1});
  const LayeredNetwork ln = detect_layers(joined);
  CHECK(ln.horizon() == 2);
  CHECK(ln.layer(ln.index_of("y")) == 2);
  CHECK(ln.layer(ln.index_of("x")) == 1);
  CHECK(ln.layer(ln.index_of("v")) == 1);
  CHECK(code_of([&] { ln.index_of("nope"); }) == Errc::invalid_network);
}

TEST_CASE("from_layers checks every invariant") {
  Network n = chain({"a", "b", "c"});
  CHECK(LayeredNetwork::from_layers(n, {0, 1, 2}).horizon() == 2);
  CHECK(code_of([&] { LayeredNetwork::from_layers(n, {0, 1, 3}); }) ==
        Errc::not_layered);
  CHECK(code_of([&] { LayeredNetwork::from_layers(n, {0, 1}); }) ==
        Errc::not_layered);
  n.sessions[0].source = "b";
  CHECK(code_of([&] { LayeredNetwork::from_layers(n, {0, 1, 2}); }) ==
        Errc::not_layered);
}

TEST_CASE("layering of the reciprocal mirrors the layers") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const LayeredNetwork ln = testing::random_layered_network(
        FieldModulus{2}, {.q = 1, .horizon = 1 + std::size_t(i % 3)}, rng);
    const LayeredNetwork r = reciprocal(ln);
    CHECK(r.base() == reciprocal(ln.base()));
    for (std::size_t j = 0; j < ln.node_count(); ++j)
      CHECK(r.layer(j) == ln.horizon() - ln.layer(j));
    CHECK(r.relays() == ln.relays());

    // detection on both sides agrees with the mirrored assignment wherever
    // the detected assignment of the forward network is pinned by sessions
    LayeredNetwork detected = ln;
    try {
      detected = detect_layers(ln.base());
    } catch (const Error&) {
      continue;
    }
    const LayeredNetwork back = detect_layers(reciprocal(ln.base()));
    if (back.horizon() != detected.horizon()) continue;
    for (std::size_t s = 0; s < ln.base().sessions.size(); ++s) {
      CHECK(back.layer(back.source_of(s)) == 0);
      CHECK(back.layer(back.dest_of(s)) == back.horizon());
    }
  }
}

TEST_CASE("layer-mirror holds for detected connected networks") {
  const Network fig2 = corpus::fig2_network();
  const LayeredNetwork fwd = detect_layers(fig2);
  const LayeredNetwork back = detect_layers(reciprocal(fig2));
  CHECK(back.horizon() == fwd.horizon());
  for (std::size_t j = 0; j < fwd.node_count(); ++j)
    CHECK(back.layer(j) == fwd.horizon() - fwd.layer(j));
  const LayeredNetwork fly = detect_layers(corpus::butterfly_network());
  const LayeredNetwork fly_back =
      detect_layers(reciprocal(corpus::butterfly_network()));
  CHECK(fly.horizon() == 3);
  for (std::size_t j = 0; j < fly.node_count(); ++j)
    CHECK(fly_back.layer(j) == fly.horizon() - fly.layer(j));
}
