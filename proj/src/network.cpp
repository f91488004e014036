#include "ldnet/network.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <utility>

namespace ldnet {

std::optional<std::size_t> Network::node_index(const std::string& name) const {
  auto it = std::find(nodes.begin(), nodes.end(), name);
  if (it == nodes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes.begin());
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::bad_vector_length: return "bad-vector-length";
    case ViolationKind::duplicate_node: return "duplicate-node";
    case ViolationKind::unknown_edge_endpoint: return "unknown-edge-endpoint";
    case ViolationKind::self_loop: return "self-loop";
    case ViolationKind::duplicate_edge: return "duplicate-edge";
    case ViolationKind::gain_shape: return "gain-shape";
    case ViolationKind::gain_modulus: return "gain-modulus";
    case ViolationKind::unknown_session_endpoint:
      return "unknown-session-endpoint";
    case ViolationKind::session_loop: return "session-loop";
    case ViolationKind::duplicate_session_id: return "duplicate-session-id";
  }
  return "unknown";
}

ValidationReport validate(const Network& n) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  if (n.q == 0) add(ViolationKind::bad_vector_length, "q must be at least 1");

  std::set<std::string> names;
  for (const auto& name : n.nodes)
    if (!names.insert(name).second)
      add(ViolationKind::duplicate_node, "node '" + name + "' declared twice");

  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& e : n.edges) {
    const std::string label = "edge " + e.from + " -> " + e.to;
    for (const auto* end : {&e.from, &e.to})
      if (!names.contains(*end))
        add(ViolationKind::unknown_edge_endpoint,
            label + ": unknown node '" + *end + "'");
    if (e.from == e.to) add(ViolationKind::self_loop, label + ": self-loop");
    if (!pairs.insert({e.from, e.to}).second)
      add(ViolationKind::duplicate_edge, label + ": parallel edge");
    if (e.gain.rows() != n.q || e.gain.cols() != n.q)
      add(ViolationKind::gain_shape,
          label + ": gain is " + std::to_string(e.gain.rows()) + "x" +
              std::to_string(e.gain.cols()) + ", expected " +
              std::to_string(n.q) + "x" + std::to_string(n.q));
    if (e.gain.field() != n.field)
      add(ViolationKind::gain_modulus,
          label + ": gain modulus " + std::to_string(e.gain.field().value()) +
              " differs from " + std::to_string(n.field.value()));
  }

  std::set<int> ids;
  for (const auto& s : n.sessions) {
    const std::string label = "session " + std::to_string(s.id);
    for (const auto* end : {&s.source, &s.dest})
      if (!names.contains(*end))
        add(ViolationKind::unknown_session_endpoint,
            label + ": unknown node '" + *end + "'");
    if (s.source == s.dest)
      add(ViolationKind::session_loop,
          label + ": source and destination are both '" + s.source + "'");
    if (!ids.insert(s.id).second)
      add(ViolationKind::duplicate_session_id, label + ": id used twice");
  }
  return report;
}

void require_valid(const Network& n) {
  auto report = validate(n);
  if (!report.ok())
    throw Error(Errc::invalid_network, report.violations.front().detail);
}

Network reciprocal(const Network& n) {
  require_valid(n);
  Network out;
  out.field = n.field;
  out.q = n.q;
  out.nodes = n.nodes;
  out.edges.reserve(n.edges.size());
  for (const auto& e : n.edges)
    out.edges.push_back({e.to, e.from, mat_transpose(e.gain)});
  out.sessions.reserve(n.sessions.size());
  for (const auto& s : n.sessions)
    out.sessions.push_back({s.id, s.dest, s.source, s.width});
  return out;
}

LayeredNetwork LayeredNetwork::from_layers(Network base,
                                           std::vector<std::size_t> layers) {
  require_valid(base);
  if (layers.size() != base.nodes.size())
    throw Error(Errc::not_layered, "layer map covers " +
                                       std::to_string(layers.size()) +
                                       " of " +
                                       std::to_string(base.nodes.size()) +
                                       " nodes");
  LayeredNetwork ln;
  ln.horizon_ = layers.empty() ? 0 : *std::max_element(layers.begin(),
                                                        layers.end());
  for (std::size_t i = 0; i < base.nodes.size(); ++i)
    ln.index_.emplace(base.nodes[i], i);

  ln.by_layer_.resize(ln.horizon_ + 1);
  for (std::size_t i = 0; i < layers.size(); ++i)
    ln.by_layer_[layers[i]].push_back(i);

  ln.in_edges_.resize(base.nodes.size());
  for (std::size_t e = 0; e < base.edges.size(); ++e) {
    const auto& edge = base.edges[e];
    std::size_t u = ln.index_.at(edge.from), v = ln.index_.at(edge.to);
    if (layers[v] != layers[u] + 1)
      throw Error(Errc::not_layered,
                  "edge " + edge.from + " -> " + edge.to + " joins layers " +
                      std::to_string(layers[u]) + " and " +
                      std::to_string(layers[v]));
    ln.in_edges_[v].push_back({u, e});
  }

  for (const auto& s : base.sessions) {
    std::size_t src = ln.index_.at(s.source), dst = ln.index_.at(s.dest);
    if (layers[src] != 0)
      throw Error(Errc::not_layered, "session " + std::to_string(s.id) +
                                         " source '" + s.source +
                                         "' is not at layer 0");
    if (layers[dst] != ln.horizon_)
      throw Error(Errc::not_layered, "session " + std::to_string(s.id) +
                                         " destination '" + s.dest +
                                         "' is not at the final layer");
    ln.source_.push_back(src);
    ln.dest_.push_back(dst);
  }

  for (std::size_t i = 0; i < layers.size(); ++i)
    if (layers[i] >= 1 && layers[i] < ln.horizon_) ln.relays_.push_back(i);

  ln.layer_ = std::move(layers);
  ln.base_ = std::move(base);
  return ln;
}

std::size_t LayeredNetwork::index_of(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end())
    throw Error(Errc::invalid_network, "unknown node '" + name + "'");
  return it->second;
}

bool LayeredNetwork::is_relay(std::size_t node) const {
  std::size_t m = layer_.at(node);
  return m >= 1 && m < horizon_;
}

std::size_t LayeredNetwork::message_length(std::size_t session) const {
  return base_.sessions.at(session).width * horizon_;
}

LayeredNetwork detect_layers(const Network& n) {
  require_valid(n);
  const std::size_t count = n.nodes.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < count; ++i) index.emplace(n.nodes[i], i);

  // Undirected adjacency carrying the potential step along each link.
  std::vector<std::vector<std::pair<std::size_t, long>>> adj(count);
  for (const auto& e : n.edges) {
    std::size_t u = index.at(e.from), v = index.at(e.to);
    adj[u].push_back({v, +1});
    adj[v].push_back({u, -1});
  }

  std::vector<char> is_source(count, 0), is_dest(count, 0);
  for (const auto& s : n.sessions) {
    is_source[index.at(s.source)] = 1;
    is_dest[index.at(s.dest)] = 1;
  }

  constexpr long unset = std::numeric_limits<long>::min();
  std::vector<long> pot(count, unset);
  std::vector<std::size_t> comp(count, 0);
  std::vector<std::vector<std::size_t>> members;

  for (std::size_t root = 0; root < count; ++root) {
    if (pot[root] != unset) continue;
    std::size_t c = members.size();
    members.emplace_back();
    pot[root] = 0;
    comp[root] = c;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      members[c].push_back(u);
      for (auto [v, step] : adj[u]) {
        if (pot[v] == unset) {
          pot[v] = pot[u] + step;
          comp[v] = c;
          queue.push_back(v);
        } else if (pot[v] != pot[u] + step) {
          throw Error(Errc::not_layered,
                      "nodes '" + n.nodes[u] + "' and '" + n.nodes[v] +
                          "' admit no consistent layering (cycle or "
                          "layer-skipping edge)");
        }
      }
    }
  }

  enum class Anchor { source, dest, free };
  struct Info {
    Anchor anchor = Anchor::free;
    long min = 0, max = 0;
    long anchor_pot = 0;
  };
  std::vector<Info> info(members.size());
  for (std::size_t c = 0; c < members.size(); ++c) {
    Info& ci = info[c];
    ci.min = ci.max = pot[members[c].front()];
    std::optional<long> src_pot, dst_pot;
    for (std::size_t u : members[c]) {
      ci.min = std::min(ci.min, pot[u]);
      ci.max = std::max(ci.max, pot[u]);
      auto check = [&](std::optional<long>& slot, const char* role) {
        if (slot && *slot != pot[u])
          throw Error(Errc::not_layered, std::string(role) +
                                             " nodes of one component sit at "
                                             "different depths (at '" +
                                             n.nodes[u] + "')");
        slot = pot[u];
      };
      if (is_source[u]) check(src_pot, "source");
      if (is_dest[u]) check(dst_pot, "destination");
    }
    if (src_pot) {
      ci.anchor = Anchor::source;
      ci.anchor_pot = *src_pot;
      if (ci.min < *src_pot)
        throw Error(Errc::not_layered,
                    "a node precedes a session source in its component");
    } else if (dst_pot) {
      ci.anchor = Anchor::dest;
      ci.anchor_pot = *dst_pot;
    }
  }

  long horizon = 0;
  for (const auto& ci : info)
    horizon = std::max(horizon, ci.anchor == Anchor::source
                                    ? ci.max - ci.anchor_pot
                                    : ci.max - ci.min);

  std::vector<std::size_t> layers(count);
  for (std::size_t u = 0; u < count; ++u) {
    const Info& ci = info[comp[u]];
    long layer = 0;
    switch (ci.anchor) {
      case Anchor::source: layer = pot[u] - ci.anchor_pot; break;
      case Anchor::dest: layer = horizon - (ci.anchor_pot - pot[u]); break;
      case Anchor::free: layer = pot[u] - ci.min; break;
    }
    if (layer < 0)
      throw Error(Errc::not_layered,
                  "node '" + n.nodes[u] + "' falls before layer 0");
    layers[u] = static_cast<std::size_t>(layer);
  }
  return LayeredNetwork::from_layers(n, std::move(layers));
}

LayeredNetwork reciprocal(const LayeredNetwork& ln) {
  std::vector<std::size_t> layers(ln.layers());
  for (auto& m : layers) m = ln.horizon() - m;
  return LayeredNetwork::from_layers(reciprocal(ln.base()), std::move(layers));
}

}  // namespace ldnet
