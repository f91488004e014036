#include "ldnet/coding.hpp"

#include <set>
#include <utility>

namespace ldnet {

namespace {

void expect_shape(const GfMatrix& m, FieldModulus field, std::size_t rows,
                  std::size_t cols, const std::string& what) {
  if (m.field() != field)
    throw Error(Errc::invalid_code,
                what + " uses modulus " + std::to_string(m.field().value()) +
                    ", network uses " + std::to_string(field.value()));
  if (m.rows() != rows || m.cols() != cols)
    throw Error(Errc::invalid_code,
                what + " is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
}

}  // namespace

void check_code(const LayeredNetwork& ln, const LinearCode& code) {
  const Network& n = ln.base();
  if (code.horizon != ln.horizon())
    throw Error(Errc::invalid_code,
                "code horizon " + std::to_string(code.horizon) +
                    " differs from network horizon " +
                    std::to_string(ln.horizon()));
  const std::size_t sessions = n.sessions.size();
  if (code.encoders.size() != sessions || code.decoders.size() != sessions)
    throw Error(Errc::invalid_code,
                "code has " + std::to_string(code.encoders.size()) +
                    " encoders and " + std::to_string(code.decoders.size()) +
                    " decoders for " + std::to_string(sessions) + " sessions");
  for (std::size_t k = 0; k < sessions; ++k) {
    const std::string id = std::to_string(n.sessions[k].id);
    const std::size_t len = ln.message_length(k);
    expect_shape(code.encoders[k], n.field, n.q, len, "encoder C" + id);
    expect_shape(code.decoders[k], n.field, len, n.q, "decoder D" + id);
  }
  std::set<std::string> expected;
  for (std::size_t j : ln.relays()) expected.insert(n.nodes[j]);
  for (const auto& [name, f] : code.relays) {
    if (!expected.contains(name))
      throw Error(Errc::invalid_code,
                  "relay matrix given for '" + name + "', which is not a relay");
    expect_shape(f, n.field, n.q, n.q, "relay F" + name);
  }
  for (const auto& name : expected)
    if (!code.relays.contains(name))
      throw Error(Errc::invalid_code, "relay '" + name + "' has no matrix");
}

LinearCode zero_code(const LayeredNetwork& ln) {
  const Network& n = ln.base();
  LinearCode code;
  code.horizon = ln.horizon();
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    code.encoders.emplace_back(n.field, n.q, ln.message_length(k));
    code.decoders.emplace_back(n.field, ln.message_length(k), n.q);
  }
  for (std::size_t j : ln.relays())
    code.relays.emplace(n.nodes[j], GfMatrix(n.field, n.q, n.q));
  return code;
}

TransferMap::TransferMap(std::size_t sessions, std::vector<GfMatrix> grid)
    : n_(sessions), grid_(std::move(grid)) {
  if (grid_.size() != n_ * n_)
    throw Error(Errc::shape_mismatch, "transfer grid is not n x n");
}

bool is_kronecker_identity(const TransferMap& gamma) {
  for (std::size_t l = 0; l < gamma.sessions(); ++l)
    for (std::size_t k = 0; k < gamma.sessions(); ++k) {
      const GfMatrix& g = gamma.at(l, k);
      if (l == k ? !g.is_identity() : !g.is_zero()) return false;
    }
  return true;
}

namespace detail {

std::vector<GfMatrix> propagate(const LayeredNetwork& ln,
                                std::span<const GfMatrix* const> relay_by_node,
                                std::vector<GfMatrix> transmit,
                                std::size_t columns) {
  const Network& n = ln.base();
  const std::size_t horizon = ln.horizon();
  std::vector<GfMatrix> received(ln.node_count());
  for (std::size_t m = 1; m <= horizon; ++m) {
    for (std::size_t j : ln.nodes_in_layer(m)) {
      GfMatrix y(n.field, n.q, columns);
      for (const auto& in : ln.in_edges(j)) {
        const GfMatrix& x = transmit[in.from];
        if (x.rows() == 0) continue;  // silent node
        y.add_block(0, 0, mat_mul(n.edges[in.edge].gain, x));
      }
      if (m < horizon)
        transmit[j] = mat_mul(*relay_by_node[j], y);
      else
        received[j] = std::move(y);
    }
  }
  return received;
}

std::vector<const GfMatrix*> relay_table(const LayeredNetwork& ln,
                                         const LinearCode& code) {
  std::vector<const GfMatrix*> table(ln.node_count(), nullptr);
  for (std::size_t j : ln.relays())
    table[j] = &code.relays.at(ln.base().nodes[j]);
  return table;
}

}  // namespace detail

TransferMap transfer_matrices(const LayeredNetwork& ln,
                              const LinearCode& code) {
  check_code(ln, code);
  const Network& n = ln.base();
  const std::size_t sessions = n.sessions.size();

  std::vector<std::size_t> offset(sessions + 1, 0);
  for (std::size_t l = 0; l < sessions; ++l)
    offset[l + 1] = offset[l] + ln.message_length(l);
  const std::size_t columns = offset[sessions];

  // Layer 0: x_j = sum over messages sourced at j of C_k W_k, kept as a map
  // from the concatenation of all messages.
  std::vector<GfMatrix> transmit(ln.node_count());
  for (std::size_t l = 0; l < sessions; ++l) {
    GfMatrix& x = transmit[ln.source_of(l)];
    if (x.rows() == 0) x = GfMatrix(n.field, n.q, columns);
    x.set_block(0, offset[l], code.encoders[l]);
  }

  auto relays = detail::relay_table(ln, code);
  auto received = detail::propagate(ln, relays, std::move(transmit), columns);

  std::vector<GfMatrix> grid(sessions * sessions);
  for (std::size_t k = 0; k < sessions; ++k) {
    GfMatrix row = mat_mul(code.decoders[k], received[ln.dest_of(k)]);
    for (std::size_t l = 0; l < sessions; ++l)
      grid[l * sessions + k] =
          row.block(0, offset[l], row.rows(), offset[l + 1] - offset[l]);
  }
  return TransferMap(sessions, std::move(grid));
}

std::vector<GfMatrix> simulate(const LayeredNetwork& ln,
                               const LinearCode& code,
                               std::span<const GfMatrix> messages) {
  check_code(ln, code);
  const Network& n = ln.base();
  const std::size_t sessions = n.sessions.size();
  if (messages.size() != sessions)
    throw Error(Errc::shape_mismatch,
                "expected " + std::to_string(sessions) + " messages, got " +
                    std::to_string(messages.size()));

  std::vector<GfMatrix> transmit(ln.node_count());
  for (std::size_t k = 0; k < sessions; ++k) {
    const GfMatrix& w = messages[k];
    if (w.cols() != 1 || w.rows() != ln.message_length(k))
      throw Error(Errc::shape_mismatch,
                  "message " + std::to_string(n.sessions[k].id) +
                      " must have length " +
                      std::to_string(ln.message_length(k)));
    GfMatrix& x = transmit[ln.source_of(k)];
    if (x.rows() == 0) x = GfMatrix(n.field, n.q, 1);
    x.add_block(0, 0, mat_mul(code.encoders[k], w));
  }

  auto relays = detail::relay_table(ln, code);
  auto received = detail::propagate(ln, relays, std::move(transmit), 1);

  std::vector<GfMatrix> out;
  out.reserve(sessions);
  for (std::size_t k = 0; k < sessions; ++k)
    out.push_back(mat_mul(code.decoders[k], received[ln.dest_of(k)]));
  return out;
}

bool is_solving(const LayeredNetwork& ln, const LinearCode& code) {
  return is_kronecker_identity(transfer_matrices(ln, code));
}

}  // namespace ldnet
