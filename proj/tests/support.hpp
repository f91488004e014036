#pragma once

// Test oracles and random instance generators. Nothing here calls the
// library's propagation or simulation code.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "ldnet/coding.hpp"
#include "ldnet/layering.hpp"
#include "ldnet/network.hpp"

namespace testing {

using namespace ldnet;

inline std::filesystem::path corpus_dir() { return LDNET_CORPUS_DIR; }

inline GfMatrix random_matrix(FieldModulus f, std::size_t rows,
                              std::size_t cols, std::mt19937_64& rng) {
  std::uniform_int_distribution<Residue> digit(0, f.value() - 1);
  GfMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, digit(rng));
  return m;
}

inline LinearCode random_layered_code(const LayeredNetwork& ln,
                                      std::mt19937_64& rng) {
  const Network& n = ln.base();
  LinearCode code;
  code.horizon = ln.horizon();
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    const std::size_t len = n.sessions[k].width * ln.horizon();
    code.encoders.push_back(random_matrix(n.field, n.q, len, rng));
    code.decoders.push_back(random_matrix(n.field, len, n.q, rng));
  }
  for (std::size_t j = 0; j < ln.node_count(); ++j)
    if (ln.layer(j) > 0 && ln.layer(j) < ln.horizon())
      code.relays.emplace(n.nodes[j], random_matrix(n.field, n.q, n.q, rng));
  return code;
}

struct LayeredShape {
  std::size_t q = 2;
  std::size_t horizon = 2;
  std::size_t max_per_layer = 3;
  std::size_t max_sessions = 2;
  std::size_t max_width = 1;
  double edge_probability = 0.6;
};

// Random layered network with explicit layers; node names encode the layer.
inline LayeredNetwork random_layered_network(FieldModulus f,
                                             const LayeredShape& shape,
                                             std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> per_layer(1, shape.max_per_layer);
  std::bernoulli_distribution edge(shape.edge_probability);
  Network n;
  n.field = f;
  n.q = shape.q;
  std::vector<std::vector<std::string>> by_layer(shape.horizon + 1);
  std::vector<std::size_t> layers;
  for (std::size_t m = 0; m <= shape.horizon; ++m) {
    const std::size_t count = per_layer(rng);
    for (std::size_t i = 0; i < count; ++i) {
      std::string name = "L" + std::to_string(m) + "n" + std::to_string(i);
      n.nodes.push_back(name);
      by_layer[m].push_back(name);
      layers.push_back(m);
    }
  }
  for (std::size_t m = 0; m < shape.horizon; ++m)
    for (const auto& from : by_layer[m])
      for (const auto& to : by_layer[m + 1])
        if (edge(rng))
          n.edges.push_back({from, to, random_matrix(f, shape.q, shape.q, rng)});
  std::uniform_int_distribution<std::size_t> sessions(1, shape.max_sessions);
  std::uniform_int_distribution<std::size_t> width(0, shape.max_width);
  std::uniform_int_distribution<std::size_t> src(0, by_layer.front().size() - 1);
  std::uniform_int_distribution<std::size_t> dst(0, by_layer.back().size() - 1);
  const std::size_t count = sessions(rng);
  for (std::size_t k = 0; k < count; ++k)
    n.sessions.push_back({static_cast<int>(k + 1), by_layer.front()[src(rng)],
                          by_layer.back()[dst(rng)], width(rng)});
  return LayeredNetwork::from_layers(std::move(n), std::move(layers));
}

// Gamma grid (row-major, l * n + k) from the explicit sum over every directed
// path from S_l to D_k of D_k G ... F G C_l.
inline std::vector<GfMatrix> path_sum(const LayeredNetwork& ln,
                                      const LinearCode& code) {
  const Network& n = ln.base();
  const std::size_t count = n.sessions.size();
  std::vector<GfMatrix> grid;
  for (std::size_t l = 0; l < count; ++l)
    for (std::size_t k = 0; k < count; ++k) {
      const std::string& target = n.sessions[k].dest;
      GfMatrix total(n.field, n.sessions[k].width * ln.horizon(),
                     n.sessions[l].width * ln.horizon());
      std::function<void(const std::string&, const GfMatrix&)> walk =
          [&](const std::string& at, const GfMatrix& signal) {
            for (const Edge& e : n.edges) {
              if (e.from != at) continue;
              const GfMatrix received = e.gain * signal;
              if (e.to == target)
                total = total + code.decoders[k] * received;
              auto relay = code.relays.find(e.to);
              if (relay != code.relays.end())
                walk(e.to, relay->second * received);
            }
          };
      walk(n.sessions[l].source, code.encoders[l]);
      grid.push_back(total);
    }
  return grid;
}

inline std::vector<GfMatrix> grid_of(const TransferMap& gamma) {
  std::vector<GfMatrix> grid;
  for (std::size_t l = 0; l < gamma.sessions(); ++l)
    for (std::size_t k = 0; k < gamma.sessions(); ++k)
      grid.push_back(gamma.at(l, k));
  return grid;
}

// Every tuple of message vectors over GF(p) of the given lengths, in
// lexicographic order. Calls visit once per tuple.
inline void for_each_message_tuple(
    FieldModulus f, const std::vector<std::size_t>& lengths,
    const std::function<void(const std::vector<GfMatrix>&)>& visit) {
  std::size_t total = 0;
  for (auto len : lengths) total += len;
  std::vector<Residue> digits(total, 0);
  for (;;) {
    std::vector<GfMatrix> messages;
    std::size_t at = 0;
    for (auto len : lengths) {
      GfMatrix m(f, len, 1);
      for (std::size_t i = 0; i < len; ++i) m.set(i, 0, digits[at++]);
      messages.push_back(m);
    }
    visit(messages);
    std::size_t i = 0;
    while (i < total && ++digits[i] == f.value()) digits[i++] = 0;
    if (i == total) return;
  }
}

inline std::vector<std::size_t> message_lengths(const Network& n,
                                                std::size_t horizon) {
  std::vector<std::size_t> out;
  for (const auto& s : n.sessions) out.push_back(s.width * horizon);
  return out;
}

inline UnlayeredLinearScheme random_scheme(const Network& n,
                                           std::size_t horizon,
                                           std::mt19937_64& rng) {
  UnlayeredLinearScheme s;
  s.horizon = horizon;
  for (const auto& v : n.nodes) {
    std::size_t own = 0;
    for (const auto& session : n.sessions)
      if (session.source == v) own += session.width * horizon;
    auto& per_time = s.encoders[v];
    for (std::size_t m = 0; m < horizon; ++m)
      per_time.push_back(random_matrix(n.field, n.q, own + n.q * m, rng));
  }
  for (const auto& session : n.sessions)
    s.decoders.push_back(random_matrix(n.field, session.width * horizon,
                                       n.q * horizon, rng));
  return s;
}

// Straight time-stepped evaluation of an unlayered scheme.
inline std::vector<GfMatrix> reference_unlayered(
    const Network& n, const UnlayeredLinearScheme& s,
    const std::vector<GfMatrix>& messages) {
  const std::size_t T = s.horizon;
  std::map<std::string, GfMatrix> input;  // own messages, then y[0..m-1]
  for (const auto& v : n.nodes) {
    GfMatrix stack(n.field, 0, 1);
    for (std::size_t k = 0; k < n.sessions.size(); ++k)
      if (n.sessions[k].source == v) stack = vstack(stack, messages[k]);
    input.emplace(v, stack);
  }
  for (std::size_t m = 0; m < T; ++m) {
    std::map<std::string, GfMatrix> x;
    for (const auto& v : n.nodes) x.emplace(v, s.encoders.at(v)[m] * input.at(v));
    for (const auto& v : n.nodes) {
      GfMatrix y(n.field, n.q, 1);
      for (const auto& e : n.edges)
        if (e.to == v) y = y + e.gain * x.at(e.from);
      input[v] = vstack(input.at(v), y);
    }
  }
  std::vector<GfMatrix> out;
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    const GfMatrix& all = input.at(n.sessions[k].dest);
    const GfMatrix history = all.block(all.rows() - n.q * T, 0, n.q * T, 1);
    out.push_back(s.decoders[k] * history);
  }
  return out;
}

// The 64 directed graphs on nodes a, b, c (each ordered pair present or not)
// with sessions a -> c and b -> a of the given width.
inline Network three_node_topology(FieldModulus f, std::size_t q,
                                   unsigned mask, std::size_t width,
                                   std::mt19937_64& rng) {
  static const std::pair<const char*, const char*> pairs[] = {
      {"a", "b"}, {"b", "a"}, {"a", "c"}, {"c", "a"}, {"b", "c"}, {"c", "b"}};
  Network n;
  n.field = f;
  n.q = q;
  n.nodes = {"a", "b", "c"};
  for (unsigned i = 0; i < 6; ++i)
    if (mask & (1u << i))
      n.edges.push_back({pairs[i].first, pairs[i].second,
                         random_matrix(f, q, q, rng)});
  n.sessions = {{1, "a", "c", width}, {2, "b", "a", width}};
  return n;
}

}  // namespace testing
