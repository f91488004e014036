#include "ldnet/layering.hpp"

#include <utility>

namespace ldnet {

namespace {

// Column offset of each session's message inside its source's concatenated
// message vector.
std::vector<std::size_t> message_offsets(const Network& n,
                                         std::size_t horizon) {
  std::vector<std::size_t> offsets(n.sessions.size(), 0);
  std::map<std::string, std::size_t> used;
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    std::size_t& next = used[n.sessions[k].source];
    offsets[k] = next;
    next += n.sessions[k].width * horizon;
  }
  return offsets;
}

GfMatrix stack_columns(FieldModulus field,
                       std::span<const GfMatrix> parts) {
  std::vector<Residue> values;
  for (const auto& part : parts)
    values.insert(values.end(), part.entries().begin(), part.entries().end());
  return GfMatrix::column(field, values);
}

struct Bands {
  std::size_t q, horizon;
  std::size_t size() const { return q * (horizon + 2); }
  std::size_t top() const { return 0; }
  std::size_t slot(std::size_t t) const { return q + q * t; }
  std::size_t bottom() const { return q * (horizon + 1); }
};

}  // namespace

std::size_t sourced_symbols(const Network& n, const std::string& node,
                            std::size_t horizon) {
  std::size_t total = 0;
  for (const auto& s : n.sessions)
    if (s.source == node) total += s.width * horizon;
  return total;
}

void check_scheme(const Network& n, const UnlayeredLinearScheme& scheme) {
  require_valid(n);
  const std::size_t horizon = scheme.horizon;
  if (horizon == 0)
    throw Error(Errc::invalid_code, "scheme horizon must be at least 1");
  auto expect = [&](const GfMatrix& m, std::size_t rows, std::size_t cols,
                    const std::string& what) {
    if (m.field() != n.field || m.rows() != rows || m.cols() != cols)
      throw Error(Errc::shape_mismatch,
                  what + " must be " + std::to_string(rows) + "x" +
                      std::to_string(cols) + " over GF(" +
                      std::to_string(n.field.value()) + ")");
  };
  if (scheme.encoders.size() != n.nodes.size())
    throw Error(Errc::shape_mismatch, "scheme must cover every node");
  for (const auto& node : n.nodes) {
    auto it = scheme.encoders.find(node);
    if (it == scheme.encoders.end() || it->second.size() != horizon)
      throw Error(Errc::shape_mismatch,
                  "node '" + node + "' needs one encoder per time instant");
    const std::size_t msg = sourced_symbols(n, node, horizon);
    for (std::size_t m = 0; m < horizon; ++m)
      expect(it->second[m], n.q, msg + n.q * m,
             "encoder of '" + node + "' at time " + std::to_string(m));
  }
  if (scheme.decoders.size() != n.sessions.size())
    throw Error(Errc::shape_mismatch, "scheme needs one decoder per session");
  for (std::size_t k = 0; k < n.sessions.size(); ++k)
    expect(scheme.decoders[k], n.sessions[k].width * horizon, n.q * horizon,
           "decoder of session " + std::to_string(n.sessions[k].id));
}

std::vector<GfMatrix> simulate_unlayered(const Network& n,
                                         const UnlayeredLinearScheme& scheme,
                                         std::span<const GfMatrix> messages) {
  check_scheme(n, scheme);
  const std::size_t horizon = scheme.horizon;
  if (messages.size() != n.sessions.size())
    throw Error(Errc::shape_mismatch, "one message per session required");

  const std::size_t count = n.nodes.size();
  std::vector<std::vector<GfMatrix>> inputs(count);  // messages, then y[0..]
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    if (messages[k].cols() != 1 ||
        messages[k].rows() != n.sessions[k].width * horizon)
      throw Error(Errc::shape_mismatch,
                  "message " + std::to_string(n.sessions[k].id) +
                      " has the wrong length");
    inputs[*n.node_index(n.sessions[k].source)].push_back(messages[k]);
  }
  std::vector<std::size_t> history_start(count);
  for (std::size_t v = 0; v < count; ++v) history_start[v] = inputs[v].size();

  for (std::size_t m = 0; m < horizon; ++m) {
    std::vector<GfMatrix> x(count);
    for (std::size_t v = 0; v < count; ++v)
      x[v] = mat_mul(scheme.encoders.at(n.nodes[v])[m],
                     stack_columns(n.field, inputs[v]));
    std::vector<GfMatrix> y(count, GfMatrix(n.field, n.q, 1));
    for (const auto& e : n.edges)
      y[*n.node_index(e.to)].add_block(
          0, 0, mat_mul(e.gain, x[*n.node_index(e.from)]));
    for (std::size_t v = 0; v < count; ++v) inputs[v].push_back(y[v]);
  }

  std::vector<GfMatrix> out;
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    std::size_t d = *n.node_index(n.sessions[k].dest);
    std::span<const GfMatrix> history(inputs[d]);
    out.push_back(mat_mul(scheme.decoders[k],
                          stack_columns(n.field,
                                        history.subspan(history_start[d]))));
  }
  return out;
}

std::string stage_name(const std::string& node, std::size_t stage) {
  return node + "[" + std::to_string(stage) + "]";
}

LayeredNetwork unfold(const Network& n, std::size_t horizon) {
  require_valid(n);
  if (horizon == 0)
    throw Error(Errc::out_of_range, "unfolding horizon must be at least 1");
  const Bands bands{n.q, horizon};

  Network out;
  out.field = n.field;
  out.q = bands.size();
  std::vector<std::size_t> layers;
  for (const auto& v : n.nodes)
    for (std::size_t s = 1; s <= horizon + 1; ++s) {
      out.nodes.push_back(stage_name(v, s));
      layers.push_back(s - 1);
    }
  const GfMatrix memory = GfMatrix::identity(n.field, bands.size());
  for (std::size_t s = 1; s <= horizon; ++s) {
    for (const auto& v : n.nodes)
      out.edges.push_back({stage_name(v, s), stage_name(v, s + 1), memory});
    for (const auto& e : n.edges)
      out.edges.push_back({stage_name(e.from, s), stage_name(e.to, s + 1),
                           block_embed(e.gain, n.q, horizon)});
  }
  for (const auto& s : n.sessions)
    out.sessions.push_back({s.id, stage_name(s.source, 1),
                            stage_name(s.dest, horizon + 1), s.width});
  return LayeredNetwork::from_layers(std::move(out), std::move(layers));
}

LinearCode lift_code(const Network& n, const UnlayeredLinearScheme& scheme) {
  check_scheme(n, scheme);
  const std::size_t horizon = scheme.horizon;
  const std::size_t q = n.q;
  const Bands bands{q, horizon};
  const GfMatrix eye = GfMatrix::identity(n.field, q);
  const auto offsets = message_offsets(n, horizon);

  LinearCode code;
  code.horizon = horizon;

  // Stage 1: x_v[0] goes to the top band, the message part of every later
  // x_v[t] is parked in slot t until time t.
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    const auto& enc = scheme.encoders.at(n.sessions[k].source);
    const std::size_t len = n.sessions[k].width * horizon;
    GfMatrix c(n.field, bands.size(), len);
    for (std::size_t t = 0; t < horizon; ++t)
      c.set_block(t == 0 ? bands.top() : bands.slot(t), 0,
                  enc[t].block(0, offsets[k], q, len));
    code.encoders.push_back(std::move(c));
  }

  // Stage s = m + 1 transmits x_v[m]. On arrival y_v[m-1] sits in the bottom
  // band and y_v[0..m-2] in slots 0..m-2.
  for (const auto& v : n.nodes) {
    const std::size_t msg = sourced_symbols(n, v, horizon);
    for (std::size_t m = 1; m < horizon; ++m) {
      const GfMatrix& a = scheme.encoders.at(v)[m];
      GfMatrix f(n.field, bands.size(), bands.size());
      for (std::size_t t = 0; t + 1 < m; ++t)
        f.set_block(bands.top(), bands.slot(t), a.block(0, msg + q * t, q, q));
      f.set_block(bands.top(), bands.bottom(),
                  a.block(0, msg + q * (m - 1), q, q));
      f.add_block(bands.top(), bands.slot(m), eye);

      for (std::size_t t = 0; t < horizon; ++t) {
        if (t + 1 == m)
          f.set_block(bands.slot(t), bands.bottom(), eye);
        else if (t != m)
          f.set_block(bands.slot(t), bands.slot(t), eye);
      }
      code.relays.emplace(stage_name(v, m + 1), std::move(f));
    }
  }

  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    const GfMatrix& dec = scheme.decoders[k];
    GfMatrix d(n.field, dec.rows(), bands.size());
    for (std::size_t t = 0; t < horizon; ++t)
      d.set_block(0, t + 1 == horizon ? bands.bottom() : bands.slot(t),
                  dec.block(0, q * t, dec.rows(), q));
    code.decoders.push_back(std::move(d));
  }
  return code;
}

UnlayeredLinearScheme project_code(const Network& n, std::size_t horizon,
                                   const LinearCode& layered) {
  const LayeredNetwork unfolded = unfold(n, horizon);
  check_code(unfolded, layered);
  const std::size_t q = n.q;
  const Bands bands{q, horizon};
  const GfMatrix eye = GfMatrix::identity(n.field, q);
  const auto offsets = message_offsets(n, horizon);

  // Received vector of the next stage as a function of [messages; history]:
  // own transmission through the memory edge plus a fresh y in the bottom.
  auto receive = [&](const GfMatrix& sent) {
    GfMatrix k = hstack(sent, GfMatrix(n.field, bands.size(), q));
    k.add_block(bands.bottom(), sent.cols(), eye);
    return k;
  };

  UnlayeredLinearScheme scheme;
  scheme.horizon = horizon;
  scheme.decoders.resize(n.sessions.size());
  for (const auto& v : n.nodes) {
    const std::size_t msg = sourced_symbols(n, v, horizon);
    GfMatrix sent(n.field, bands.size(), msg);
    for (std::size_t k = 0; k < n.sessions.size(); ++k)
      if (n.sessions[k].source == v)
        sent.set_block(0, offsets[k], layered.encoders[k]);

    auto& encoders = scheme.encoders[v];
    encoders.push_back(sent.block(bands.top(), 0, q, sent.cols()));
    for (std::size_t s = 2; s <= horizon; ++s) {
      sent = mat_mul(layered.relays.at(stage_name(v, s)), receive(sent));
      encoders.push_back(sent.block(bands.top(), 0, q, sent.cols()));
    }

    const GfMatrix last = receive(sent);
    for (std::size_t k = 0; k < n.sessions.size(); ++k) {
      if (n.sessions[k].dest != v) continue;
      GfMatrix full = mat_mul(layered.decoders[k], last);
      if (!full.block(0, 0, full.rows(), msg).is_zero())
        throw Error(Errc::not_projectable,
                    "decoder of session " + std::to_string(n.sessions[k].id) +
                        " reads messages sourced at its own node '" + v + "'");
      scheme.decoders[k] = full.block(0, msg, full.rows(), q * horizon);
    }
  }
  return scheme;
}

}  // namespace ldnet
