#pragma once

// Linear deterministic networks: a directed graph with a q x q gain matrix on
// every edge and a set of unicast sessions.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ldnet/gf.hpp"

namespace ldnet {

struct Edge {
  std::string from;
  std::string to;
  GfMatrix gain;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A unicast flow. `width` is the number of symbols per time instant, so a
/// message over a horizon T has width * T symbols.
struct Session {
  int id = 0;
  std::string source;
  std::string dest;
  std::size_t width = 0;

  friend bool operator==(const Session&, const Session&) = default;
};

struct Network {
  FieldModulus field;
  std::size_t q = 1;
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::vector<Session> sessions;

  std::optional<std::size_t> node_index(const std::string& name) const;

  friend bool operator==(const Network&, const Network&) = default;
};

enum class ViolationKind {
  bad_vector_length,
  duplicate_node,
  unknown_edge_endpoint,
  self_loop,
  duplicate_edge,
  gain_shape,
  gain_modulus,
  unknown_session_endpoint,
  session_loop,
  duplicate_session_id,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
};

ValidationReport validate(const Network& n);

/// Throws invalid_network listing the first violation.
void require_valid(const Network& n);

/// Same nodes, every edge reversed with its gain transposed, every session's
/// endpoints swapped.
Network reciprocal(const Network& n);

/// A network together with a layer assignment 0..T in which every edge goes
/// from layer m to m+1, every session source sits at layer 0 and every session
/// destination at layer T. Construction validates these invariants and
/// precomputes the adjacency used by the coding routines.
class LayeredNetwork {
 public:
  struct InEdge {
    std::size_t from;
    std::size_t edge;  // index into base().edges
  };

  static LayeredNetwork from_layers(Network base,
                                    std::vector<std::size_t> layers);

  const Network& base() const noexcept { return base_; }
  std::size_t horizon() const noexcept { return horizon_; }
  std::size_t node_count() const noexcept { return layer_.size(); }
  std::size_t layer(std::size_t node) const { return layer_.at(node); }
  const std::vector<std::size_t>& layers() const noexcept { return layer_; }
  std::size_t index_of(const std::string& name) const;

  const std::vector<std::size_t>& nodes_in_layer(std::size_t m) const {
    return by_layer_.at(m);
  }
  const std::vector<InEdge>& in_edges(std::size_t node) const {
    return in_edges_.at(node);
  }
  std::size_t source_of(std::size_t session) const {
    return source_.at(session);
  }
  std::size_t dest_of(std::size_t session) const { return dest_.at(session); }

  /// Nodes at layers 1..T-1, in node declaration order.
  const std::vector<std::size_t>& relays() const noexcept { return relays_; }
  bool is_relay(std::size_t node) const;

  /// Message length w_k * T of session k (by position).
  std::size_t message_length(std::size_t session) const;

 private:
  LayeredNetwork() = default;

  Network base_;
  std::size_t horizon_ = 0;
  std::vector<std::size_t> layer_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> by_layer_;
  std::vector<std::vector<InEdge>> in_edges_;
  std::vector<std::size_t> source_;
  std::vector<std::size_t> dest_;
  std::vector<std::size_t> relays_;
};

/// Finds the layer assignment by propagating the +1 constraint of every edge
/// through each weakly connected component. Components containing a session
/// source are anchored with the sources at layer 0; components containing
/// only destinations are anchored with the destinations at the final layer;
/// untouched components start at layer 0. Throws not_layered if a cycle, a
/// layer-skipping edge, or a misplaced source or destination prevents a valid
/// assignment.
LayeredNetwork detect_layers(const Network& n);

/// The reciprocal with layer m mapped to T - m, so relay nodes keep their
/// relay role.
LayeredNetwork reciprocal(const LayeredNetwork& ln);

}  // namespace ldnet
