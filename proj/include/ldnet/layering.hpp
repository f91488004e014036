#pragma once

// Time-unfolding of an arbitrary network into a layered one, and translation
// of linear schemes between the two.
//
// Node v of the original network appears as v[s] for stages s = 1..T+1; stage
// s is layer s-1. Every unfolded vector has length q(T+2) and is split into
// three bands:
//
//   top     q    the signal transmitted by v at time s-1
//   state   qT   T slots of q symbols; slot t holds y_v[t] once it has been
//                received and, before that, the contribution of v's own
//                messages to x_v[t] that is still waiting to be sent
//   bottom  q    empty on transmission; receives y_v[s-1] from the channel
//
// A channel edge carries only the top band into the bottom band (block_embed)
// and the identity memory edge v[s] -> v[s+1] carries everything else.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ldnet/coding.hpp"
#include "ldnet/network.hpp"

namespace ldnet {

/// A linear scheme over T time instants on an arbitrary network.
///
/// encoders[v][m] (q x (M_v + q m)) maps the concatenation of the messages
/// sourced at v (session order, M_v symbols in total) followed by
/// y_v[0], ..., y_v[m-1] to x_v[m]. decoders[k] (w_k T x qT) maps
/// y_d[0..T-1] of the destination d of session k to its estimate.
struct UnlayeredLinearScheme {
  std::size_t horizon = 0;
  std::map<std::string, std::vector<GfMatrix>> encoders;
  std::vector<GfMatrix> decoders;

  friend bool operator==(const UnlayeredLinearScheme&,
                         const UnlayeredLinearScheme&) = default;
};

/// Number of message symbols sourced at `node` for horizon T.
std::size_t sourced_symbols(const Network& n, const std::string& node,
                            std::size_t horizon);

void check_scheme(const Network& n, const UnlayeredLinearScheme& scheme);

/// Runs the scheme time step by time step on concrete messages.
std::vector<GfMatrix> simulate_unlayered(const Network& n,
                                         const UnlayeredLinearScheme& scheme,
                                         std::span<const GfMatrix> messages);

std::string stage_name(const std::string& node, std::size_t stage);

/// The (T+1)-layered unfolding. Vector length is q(T+2).
LayeredNetwork unfold(const Network& n, std::size_t horizon);

/// The layered code on unfold(n, T) that reproduces `scheme` exactly.
LinearCode lift_code(const Network& n, const UnlayeredLinearScheme& scheme);

/// Recovers the unlayered scheme that a code on unfold(n, T) implements: the
/// top band of each transmitted vector, written as a function of the node's
/// own messages and received history. Throws not_projectable when a decoder
/// depends on messages sourced at its own node, which no unlayered decoder
/// can express.
UnlayeredLinearScheme project_code(const Network& n, std::size_t horizon,
                                   const LinearCode& layered);

}  // namespace ldnet
