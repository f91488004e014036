#include "ldnet/corpus.hpp"

#include <stdexcept>

#include "ldnet/io.hpp"
#include "ldnet/search.hpp"

namespace ldnet::corpus {

namespace {

const FieldModulus gf2{2};

}  // namespace

GfMatrix wireline_gain(FieldModulus field, std::size_t band, std::size_t bands,
                       std::size_t in_band, std::size_t out_band) {
  GfMatrix g(field, band * bands, band * bands);
  g.set_block(in_band * band, out_band * band,
              GfMatrix::identity(field, band));
  return g;
}

Network fig2_network() {
  Network n;
  n.field = gf2;
  n.q = 2;
  n.nodes = {"1", "2", "3", "4", "5", "6"};
  const GfMatrix eye = shift_matrix(gf2, 2, 2);
  const GfMatrix down = shift_matrix(gf2, 2, 1);
  n.edges = {
      {"1", "3", eye},  {"1", "4", down}, {"2", "3", down}, {"2", "4", eye},
      {"3", "5", eye},  {"3", "6", down}, {"4", "5", down}, {"4", "6", eye},
  };
  n.sessions = {{1, "1", "5", 1}, {2, "2", "6", 1}};
  return n;
}

Network butterfly_network() {
  constexpr std::size_t band = 3;
  auto link = [&](std::string from, std::string to, std::size_t in_band,
                  std::size_t out_band) {
    return Edge{std::move(from), std::move(to),
                wireline_gain(gf2, band, 2, in_band, out_band)};
  };
  Network n;
  n.field = gf2;
  n.q = 2 * band;
  n.nodes = {"s1", "s2", "a1", "u", "a2", "b1", "v", "b2", "t1", "t2"};
  n.edges = {
      link("s1", "a1", 0, 0), link("s1", "u", 0, 1), link("s2", "u", 1, 0),
      link("s2", "a2", 0, 1), link("a1", "b1", 0, 0), link("u", "v", 0, 0),
      link("a2", "b2", 0, 0), link("v", "t1", 0, 0), link("b2", "t1", 1, 0),
      link("v", "t2", 0, 1),  link("b1", "t2", 1, 0),
  };
  n.sessions = {{1, "s1", "t1", 1}, {2, "s2", "t2", 1}};
  return n;
}

LinearCode butterfly_code(const LayeredNetwork& butterfly) {
  const FieldModulus f = butterfly.base().field;
  const std::size_t band = butterfly.horizon();
  const GfMatrix eye = GfMatrix::identity(f, band);
  auto blocks = [&](std::initializer_list<std::pair<std::size_t, std::size_t>>
                        ones) {
    GfMatrix m(f, 2 * band, 2 * band);
    for (auto [r, c] : ones) m.set_block(r * band, c * band, eye);
    return m;
  };
  LinearCode code;
  code.horizon = band;
  const GfMatrix both = vstack(eye, eye);   // message on both out-bands
  const GfMatrix sum = hstack(eye, eye);    // add the two in-bands
  code.encoders = {both, both};
  code.decoders = {sum, sum};
  const GfMatrix forward = blocks({{0, 0}});
  code.relays = {
      {"a1", forward},
      {"a2", forward},
      {"b1", forward},
      {"b2", forward},
      {"u", blocks({{0, 0}, {0, 1}})},
      {"v", blocks({{0, 0}, {1, 0}})},
  };
  check_code(butterfly, code);
  return code;
}

Network single_edge(const GfMatrix& gain, std::size_t width) {
  Network n;
  n.field = gain.field();
  n.q = gain.rows();
  n.nodes = {"a", "b"};
  n.edges = {{"a", "b", gain}};
  n.sessions = {{1, "a", "b", width}};
  return n;
}

LinearCode identity_code(const LayeredNetwork& single_edge) {
  const Network& n = single_edge.base();
  LinearCode code;
  code.horizon = single_edge.horizon();
  code.encoders = {GfMatrix::identity(n.field, n.q)};
  code.decoders = {GfMatrix::identity(n.field, n.q)};
  check_code(single_edge, code);
  return code;
}

Network three_node_network() {
  Network n;
  n.field = gf2;
  n.q = 2;
  n.nodes = {"a", "b", "c"};
  n.edges = {
      {"a", "b", shift_matrix(gf2, 2, 2)},
      {"b", "c", shift_matrix(gf2, 2, 1)},
      {"c", "a", shift_matrix(gf2, 2, 2)},
      {"a", "c", GfMatrix::from_rows(gf2, {{1, 1}, {0, 1}})},
  };
  n.sessions = {{1, "a", "c", 1}, {2, "b", "a", 1}};
  return n;
}

std::vector<File> files() {
  std::vector<File> out;
  auto add_network = [&](const std::string& path, const Network& n) {
    out.push_back({path, format_network(n)});
  };

  const Network fig2 = fig2_network();
  const LayeredNetwork fig2_ln = detect_layers(fig2);
  const SearchResult found = exhaustive_search(fig2_ln, std::uint64_t{1} << 40);
  if (!found.code) throw std::logic_error("two-unicast instance has no linear code");
  add_network("fig2.net", fig2);
  out.push_back({"fig2.code", format_code(fig2_ln, *found.code)});
  LinearCode broken = *found.code;
  broken.decoders[0] = GfMatrix(gf2, broken.decoders[0].rows(),
                                broken.decoders[0].cols());
  out.push_back({"fig2_zero_decoder.code", format_code(fig2_ln, broken)});
  out.push_back({"fig2.msg", "W 1: [1,0]\nW 2: [1,1]\n"});

  const Network fly = butterfly_network();
  const LayeredNetwork fly_ln = detect_layers(fly);
  add_network("butterfly.net", fly);
  out.push_back({"butterfly.code", format_code(fly_ln, butterfly_code(fly_ln))});
  out.push_back({"butterfly.msg", "W 1: [1,0,1]\nW 2: [0,1,1]\n"});

  const Network id1 = single_edge(GfMatrix::identity(gf2, 1), 1);
  add_network("single_edge_identity.net", id1);
  out.push_back({"single_edge_identity.code",
                 format_code(detect_layers(id1), identity_code(detect_layers(id1)))});

  const FieldModulus gf3{3};
  const Network id3 = single_edge(GfMatrix::identity(gf3, 2), 2);
  add_network("single_edge_gf3.net", id3);
  out.push_back({"single_edge_gf3.code",
                 format_code(detect_layers(id3), identity_code(detect_layers(id3)))});

  add_network("single_edge_zero.net", single_edge(GfMatrix(gf2, 1, 1), 1));
  add_network("shift_edge.net", single_edge(shift_matrix(gf2, 3, 1), 1));
  add_network("three_node.net", three_node_network());

  Network bad_gain = single_edge(GfMatrix::identity(gf2, 1), 1);
  bad_gain.q = 2;
  bad_gain.sessions[0].width = 2;
  bad_gain.edges.push_back({"b", "a", GfMatrix::identity(gf2, 2)});
  add_network("invalid/gain_dimension.net", bad_gain);

  Network missing = single_edge(GfMatrix::identity(gf2, 1), 1);
  missing.sessions[0].dest = "c";
  add_network("invalid/missing_endpoint.net", missing);
  return out;
}

}  // namespace ldnet::corpus
