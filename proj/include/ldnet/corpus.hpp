#pragma once

// Bundled example instances. The files under corpus/ are generated from these
// builders (`ldnet corpus --out corpus`).

#include <string>
#include <vector>

#include "ldnet/coding.hpp"
#include "ldnet/network.hpp"

namespace ldnet::corpus {

/// Wireline link embedding: node vectors are split into `bands` bands of
/// `band` symbols; the gain copies band `out_band` of the sender into band
/// `in_band` of the receiver and is zero elsewhere.
GfMatrix wireline_gain(FieldModulus field, std::size_t band, std::size_t bands,
                       std::size_t in_band, std::size_t out_band);

/// Two-unicast network with sources 1, 2, relays 3, 4, destinations 5, 6 and
/// shift gains over GF(2), q = 2, unit widths.
Network fig2_network();

/// Two-unicast butterfly over GF(2) in wireline embedding: sources s1, s2,
/// bottleneck u -> v, side paths s1 -> a1 -> b1 -> t2 and
/// s2 -> a2 -> b2 -> t1, sessions s1 -> t1 and s2 -> t2 of unit width. Each
/// link carries one symbol per time instant, i.e. T = 3 symbols per block, so
/// q = 2 bands of 3.
Network butterfly_network();

/// The classical code: the bottleneck forwards the sum of both messages and
/// each destination cancels the message it gets over its side path.
LinearCode butterfly_code(const LayeredNetwork& butterfly);

/// Two nodes a -> b with the given gain and one session a -> b.
Network single_edge(const GfMatrix& gain, std::size_t width);

/// Code with C = D = identity for single_edge(identity(q), q).
LinearCode identity_code(const LayeredNetwork& single_edge);

/// Small network with a cycle, used for unfolding demos.
Network three_node_network();

struct File {
  std::string path;  // relative to the corpus directory
  std::string text;
};

/// Every corpus file. fig2.code is the first solving code found by
/// exhaustive search.
std::vector<File> files();

}  // namespace ldnet::corpus
