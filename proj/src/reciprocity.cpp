#include "ldnet/reciprocity.hpp"

#include <utility>

namespace ldnet {

LinearCode transpose_code(const LayeredNetwork& ln, const LinearCode& code) {
  check_code(ln, code);
  LinearCode out;
  out.horizon = code.horizon;
  for (const auto& d : code.decoders) out.encoders.push_back(mat_transpose(d));
  for (const auto& c : code.encoders) out.decoders.push_back(mat_transpose(c));
  for (const auto& [name, f] : code.relays)
    out.relays.emplace(name, mat_transpose(f));
  return out;
}

ReciprocityReport verify_reciprocity(const LayeredNetwork& ln,
                                     const LinearCode& code) {
  LayeredNetwork rln = reciprocal(ln);
  LinearCode rcode = transpose_code(ln, code);
  TransferMap gamma = transfer_matrices(ln, code);
  TransferMap gamma_r = transfer_matrices(rln, rcode);

  bool duality = true;
  for (std::size_t l = 0; l < gamma.sessions(); ++l)
    for (std::size_t k = 0; k < gamma.sessions(); ++k)
      if (gamma_r.at(l, k) != mat_transpose(gamma.at(k, l))) duality = false;

  return ReciprocityReport{is_kronecker_identity(gamma), gamma, gamma_r,
                           duality, is_kronecker_identity(gamma_r)};
}

namespace {

LayeredNetwork with_edges(const LayeredNetwork& ln, bool reverse,
                          bool transpose) {
  Network n = ln.base();
  for (auto& e : n.edges) {
    if (reverse) std::swap(e.from, e.to);
    if (transpose) e.gain = mat_transpose(e.gain);
  }
  std::vector<std::size_t> layers(ln.layers());
  if (reverse) {
    for (auto& s : n.sessions) std::swap(s.source, s.dest);
    for (auto& m : layers) m = ln.horizon() - m;
  }
  return LayeredNetwork::from_layers(std::move(n), std::move(layers));
}

}  // namespace

LayeredNetwork physical_reverse(const LayeredNetwork& ln) {
  return with_edges(ln, true, false);
}

LayeredNetwork transpose_gains(const LayeredNetwork& ln) {
  return with_edges(ln, false, true);
}

LinearCode physical_code(const LayeredNetwork& physical,
                         const LinearCode& rcode) {
  const Network& n = physical.base();
  for (const auto& e : n.edges)
    if (!shift_strength(e.gain))
      throw Error(Errc::non_shift_gain,
                  "edge " + e.from + " -> " + e.to + " is not a shift matrix");
  check_code(physical, rcode);

  const GfMatrix flip = flip_matrix(n.field, n.q);
  LinearCode out;
  out.horizon = rcode.horizon;
  for (const auto& c : rcode.encoders) out.encoders.push_back(flip * c);
  for (const auto& d : rcode.decoders) out.decoders.push_back(d * flip);
  for (const auto& [name, f] : rcode.relays)
    out.relays.emplace(name, flip * f * flip);
  return out;
}

}  // namespace ldnet
