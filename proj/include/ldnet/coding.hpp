#pragma once

// Layered linear coding schemes and their end-to-end transfer matrices.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ldnet/gf.hpp"
#include "ldnet/network.hpp"

namespace ldnet {

/// Encoders C_k (q x w_k T), decoders D_k (w_k T x q) indexed by session
/// position, and one relay matrix F_j (q x q) per relay node keyed by name.
struct LinearCode {
  std::size_t horizon = 0;
  std::vector<GfMatrix> encoders;
  std::vector<GfMatrix> decoders;
  std::map<std::string, GfMatrix> relays;

  friend bool operator==(const LinearCode&, const LinearCode&) = default;
};

/// Throws invalid_code unless `code` has exactly the shapes `ln` requires.
void check_code(const LayeredNetwork& ln, const LinearCode& code);

/// All-zero code with the shapes `ln` requires.
LinearCode zero_code(const LayeredNetwork& ln);

/// n x n grid; at(l, k) is Gamma_lk, the (w_k T x w_l T) map from message l
/// to the reconstruction of message k.
class TransferMap {
 public:
  TransferMap(std::size_t sessions, std::vector<GfMatrix> grid);

  std::size_t sessions() const noexcept { return n_; }
  const GfMatrix& at(std::size_t l, std::size_t k) const {
    return grid_.at(l * n_ + k);
  }

  friend bool operator==(const TransferMap&, const TransferMap&) = default;

 private:
  std::size_t n_;
  std::vector<GfMatrix> grid_;
};

/// True iff every Gamma_kk is an identity and every off-diagonal entry is
/// zero.
bool is_kronecker_identity(const TransferMap& gamma);

/// Forward propagation of per-message influence, one layer at a time.
TransferMap transfer_matrices(const LayeredNetwork& ln,
                              const LinearCode& code);

/// Runs the code on concrete messages (column vectors of length w_k T) and
/// returns every reconstruction.
std::vector<GfMatrix> simulate(const LayeredNetwork& ln,
                               const LinearCode& code,
                               std::span<const GfMatrix> messages);

bool is_solving(const LayeredNetwork& ln, const LinearCode& code);

namespace detail {

/// Pushes the layer-0 transmissions (q x columns each; entries for other
/// layers are ignored) through the network using the given relay matrices,
/// indexed by node and non-null for every relay. Returns, indexed by node, the
/// received q x columns matrix of every final-layer node; other entries are
/// left empty.
std::vector<GfMatrix> propagate(const LayeredNetwork& ln,
                                std::span<const GfMatrix* const> relay_by_node,
                                std::vector<GfMatrix> transmit,
                                std::size_t columns);

/// Relay matrices of `code` rearranged by node index.
std::vector<const GfMatrix*> relay_table(const LayeredNetwork& ln,
                                         const LinearCode& code);

}  // namespace detail

}  // namespace ldnet
