#include "ldnet/search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

namespace ldnet {

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::found: return "found";
    case SearchStatus::exhausted: return "exhausted";
    case SearchStatus::budget_exceeded: return "budget-exceeded";
    case SearchStatus::not_found: return "not-found";
  }
  return "unknown";
}

namespace {

constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > saturated / a) return saturated;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return b > saturated - a ? saturated : a + b;
}

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

// Where each matrix of a candidate lives in the digit string.
struct Layout {
  struct Slot {
    std::size_t rows, cols, offset;
  };
  std::vector<Slot> encoders, relays, decoders;
  std::size_t encoder_entries = 0, relay_entries = 0, total = 0;

  explicit Layout(const LayeredNetwork& ln) {
    const Network& n = ln.base();
    auto add = [&](std::vector<Slot>& to, std::size_t r, std::size_t c) {
      to.push_back({r, c, total});
      total += r * c;
    };
    for (std::size_t k = 0; k < n.sessions.size(); ++k)
      add(encoders, n.q, ln.message_length(k));
    encoder_entries = total;
    for (std::size_t j = 0; j < ln.relays().size(); ++j) add(relays, n.q, n.q);
    relay_entries = total - encoder_entries;
    for (std::size_t k = 0; k < n.sessions.size(); ++k)
      add(decoders, ln.message_length(k), n.q);
  }
};

GfMatrix read_slot(FieldModulus field, const Layout::Slot& slot,
                   std::span<const Residue> digits) {
  auto first = digits.begin() + static_cast<std::ptrdiff_t>(slot.offset);
  return GfMatrix(field, slot.rows, slot.cols,
                  std::vector<Residue>(first, first + static_cast<std::ptrdiff_t>(
                                                          slot.rows * slot.cols)));
}

// Writes `value` as `count` base-p digits starting at `out`.
void to_digits(std::uint64_t value, Residue p, std::size_t count,
               Residue* out) {
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = static_cast<Residue>(value % p);
    value /= p;
  }
}

// Everything needed to evaluate one block of candidates sharing the relay and
// decoder digits.
class BlockSolver {
 public:
  explicit BlockSolver(const LayeredNetwork& ln) : ln_(ln), layout_(ln) {
    const Network& n = ln.base();
    for (std::size_t k = 0; k < n.sessions.size(); ++k) {
      std::size_t s = ln.source_of(k);
      auto it = std::find(sources_.begin(), sources_.end(), s);
      if (it == sources_.end()) {
        session_source_.push_back(sources_.size());
        sources_.push_back(s);
      } else {
        session_source_.push_back(static_cast<std::size_t>(it - sources_.begin()));
      }
    }
  }

  const Layout& layout() const { return layout_; }

  struct Hit {
    std::uint64_t inner;  // index within the block
    std::vector<Residue> encoder_digits;
  };

  // `outer` enumerates relay digits (less significant) then decoder digits.
  std::optional<Hit> solve(std::uint64_t outer) const {
    const Network& n = ln_.base();
    const FieldModulus field = n.field;
    const Residue p = field.value();
    const std::size_t q = n.q;

    std::vector<Residue> digits(layout_.total - layout_.encoder_entries);
    to_digits(outer, p, digits.size(), digits.data());
    auto shifted = [&](Layout::Slot slot) {
      slot.offset -= layout_.encoder_entries;
      return slot;
    };

    std::vector<GfMatrix> relay_mats;
    relay_mats.reserve(layout_.relays.size());
    for (const auto& slot : layout_.relays)
      relay_mats.push_back(read_slot(field, shifted(slot), digits));
    std::vector<const GfMatrix*> table(ln_.node_count(), nullptr);
    for (std::size_t j = 0; j < ln_.relays().size(); ++j)
      table[ln_.relays()[j]] = &relay_mats[j];

    std::vector<GfMatrix> decoders;
    for (const auto& slot : layout_.decoders)
      decoders.push_back(read_slot(field, shifted(slot), digits));

    // Unit transmissions from every distinct source node at once.
    const std::size_t columns = q * sources_.size();
    std::vector<GfMatrix> transmit(ln_.node_count());
    for (std::size_t u = 0; u < sources_.size(); ++u) {
      GfMatrix x(field, q, columns);
      x.set_block(0, u * q, GfMatrix::identity(field, q));
      transmit[sources_[u]] = std::move(x);
    }
    auto received = detail::propagate(ln_, table, std::move(transmit), columns);

    const std::size_t sessions = n.sessions.size();
    // decoded[k] = D_k y_{dest k}, as a function of all unit transmissions.
    std::vector<GfMatrix> decoded(sessions);
    for (std::size_t k = 0; k < sessions; ++k)
      decoded[k] = mat_mul(decoders[k], received[ln_.dest_of(k)]);

    Hit hit{0, std::vector<Residue>(layout_.encoder_entries, 0)};
    for (std::size_t l = 0; l < sessions; ++l) {
      // P stacks D_k R_{source l -> dest k} over k; C_l must map onto the
      // block column with the identity in row block l.
      GfMatrix stacked(field, 0, q);
      for (std::size_t k = 0; k < sessions; ++k)
        stacked = vstack(stacked, decoded[k].block(0, session_source_[l] * q,
                                                   decoded[k].rows(), q));
      const auto& slot = layout_.encoders[l];
      std::size_t target_row = 0;
      for (std::size_t k = 0; k < l; ++k) target_row += decoded[k].rows();
      for (std::size_t c = 0; c < slot.cols; ++c) {
        auto column = smallest_column(stacked, target_row + c, p);
        if (!column) return std::nullopt;
        for (std::size_t r = 0; r < q; ++r)
          hit.encoder_digits[slot.offset + r * slot.cols + c] = (*column)[r];
      }
    }
    std::uint64_t index = 0;
    for (std::size_t i = hit.encoder_digits.size(); i-- > 0;)
      index = sat_add(sat_mul(index, p), hit.encoder_digits[i]);
    hit.inner = index;
    return hit;
  }

 private:
  // Smallest v (digit r has weight p^r) with stacked * v equal to the unit
  // vector e_target, if any.
  static std::optional<std::vector<Residue>> smallest_column(
      const GfMatrix& stacked, std::size_t target, Residue p) {
    const FieldModulus field = stacked.field();
    const std::size_t q = stacked.cols();
    std::vector<Residue> v(q, 0);
    while (true) {
      bool ok = true;
      for (std::size_t r = 0; r < stacked.rows() && ok; ++r) {
        Residue acc = 0;
        for (std::size_t c = 0; c < q; ++c)
          acc = field.add(acc, field.mul(stacked(r, c), v[c]));
        ok = acc == (r == target ? 1u : 0u);
      }
      if (ok) return v;
      std::size_t i = 0;
      while (i < q && ++v[i] == p) v[i++] = 0;
      if (i == q) return std::nullopt;
    }
  }

  const LayeredNetwork& ln_;
  Layout layout_;
  std::vector<std::size_t> sources_;         // distinct source nodes
  std::vector<std::size_t> session_source_;  // session -> position in sources_
};

LinearCode assemble(const LayeredNetwork& ln, const Layout& layout,
                    std::span<const Residue> digits) {
  const Network& n = ln.base();
  LinearCode code;
  code.horizon = ln.horizon();
  for (const auto& slot : layout.encoders)
    code.encoders.push_back(read_slot(n.field, slot, digits));
  for (std::size_t j = 0; j < layout.relays.size(); ++j)
    code.relays.emplace(n.nodes[ln.relays()[j]],
                        read_slot(n.field, layout.relays[j], digits));
  for (const auto& slot : layout.decoders)
    code.decoders.push_back(read_slot(n.field, slot, digits));
  return code;
}

SearchResult verified(const LayeredNetwork& ln, LinearCode code,
                      std::uint64_t index) {
  if (!is_solving(ln, code))
    throw std::logic_error("search returned a code that does not solve");
  return {SearchStatus::found, std::move(code), index};
}

SearchResult scan_in_order(const LayeredNetwork& ln, std::uint64_t budget,
                           const std::vector<std::size_t>& order) {
  const Layout layout(ln);
  const Residue p = ln.base().field.value();
  std::vector<std::size_t> sorted(order);
  std::sort(sorted.begin(), sorted.end());
  bool permutation = sorted.size() == layout.total;
  for (std::size_t i = 0; permutation && i < sorted.size(); ++i)
    permutation = sorted[i] == i;
  if (!permutation)
    throw Error(Errc::out_of_range,
                "enumeration order is not a permutation of the entries");

  const std::uint64_t count = candidate_count(ln);
  const std::uint64_t limit = std::min(count, budget);
  std::vector<Residue> counter(layout.total, 0), digits(layout.total, 0);
  for (std::uint64_t index = 0; index < limit; ++index) {
    for (std::size_t i = 0; i < layout.total; ++i) digits[order[i]] = counter[i];
    LinearCode code = assemble(ln, layout, digits);
    if (is_solving(ln, code)) return verified(ln, std::move(code), index);
    std::size_t i = 0;
    while (i < layout.total && ++counter[i] == p) counter[i++] = 0;
  }
  return {count <= budget ? SearchStatus::exhausted
                          : SearchStatus::budget_exceeded,
          std::nullopt, limit};
}

}  // namespace

std::size_t free_entries(const LayeredNetwork& ln) {
  return Layout(ln).total;
}

std::uint64_t candidate_count(const LayeredNetwork& ln) {
  return sat_pow(ln.base().field.value(), free_entries(ln));
}

LinearCode code_from_digits(const LayeredNetwork& ln,
                            std::span<const Residue> digits) {
  const Layout layout(ln);
  if (digits.size() != layout.total)
    throw Error(Errc::shape_mismatch,
                "expected " + std::to_string(layout.total) + " digits");
  for (Residue d : digits)
    if (d >= ln.base().field.value())
      throw Error(Errc::out_of_range, "digit is not a residue");
  return assemble(ln, layout, digits);
}

SearchResult exhaustive_search(const LayeredNetwork& ln, std::uint64_t budget,
                               const ExhaustiveOptions& options) {
  if (options.order) return scan_in_order(ln, budget, *options.order);

  const BlockSolver solver(ln);
  const Layout& layout = solver.layout();
  const Residue p = ln.base().field.value();
  const std::uint64_t block = sat_pow(p, layout.encoder_entries);
  const std::uint64_t outer_count =
      sat_pow(p, layout.total - layout.encoder_entries);
  const std::uint64_t count = candidate_count(ln);

  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t chunk = 64 * std::uint64_t{threads};

  for (std::uint64_t start = 0; start < outer_count;) {
    if (sat_mul(start, block) >= budget)
      return {SearchStatus::budget_exceeded, std::nullopt, budget};
    const std::uint64_t end = std::min(outer_count, sat_add(start, chunk));

    // Contiguous shards; the lowest shard with a hit holds the global first.
    const std::uint64_t span = end - start;
    const std::uint64_t per = (span + threads - 1) / threads;
    std::vector<std::optional<std::pair<std::uint64_t, BlockSolver::Hit>>>
        found(threads);
    auto work = [&](unsigned t) {
      const std::uint64_t lo = start + per * t;
      const std::uint64_t hi = std::min(end, lo + per);
      for (std::uint64_t o = lo; o < hi; ++o)
        if (auto hit = solver.solve(o)) {
          found[t].emplace(o, std::move(*hit));
          return;
        }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    }

    for (auto& f : found) {
      if (!f) continue;
      const auto& [outer, hit] = *f;
      const std::uint64_t index = sat_add(sat_mul(outer, block), hit.inner);
      if (index >= budget)
        return {SearchStatus::budget_exceeded, std::nullopt, budget};
      std::vector<Residue> digits(layout.total);
      std::copy(hit.encoder_digits.begin(), hit.encoder_digits.end(),
                digits.begin());
      to_digits(outer, p, layout.total - layout.encoder_entries,
                digits.data() + layout.encoder_entries);
      return verified(ln, assemble(ln, layout, digits), index);
    }
    start = end;
  }
  return {count <= budget ? SearchStatus::exhausted
                          : SearchStatus::budget_exceeded,
          std::nullopt, std::min(count, budget)};
}

LinearCode random_code(const LayeredNetwork& ln, std::mt19937_64& rng) {
  const Layout layout(ln);
  std::uniform_int_distribution<Residue> entry(0, ln.base().field.value() - 1);
  std::vector<Residue> digits(layout.total);
  for (auto& d : digits) d = entry(rng);
  return assemble(ln, layout, digits);
}

SearchResult random_search(const LayeredNetwork& ln, std::uint64_t trials,
                           std::uint64_t seed) {
  if (trials == 0)
    throw Error(Errc::out_of_range, "random search needs at least one trial");
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 1; t <= trials; ++t) {
    LinearCode code = random_code(ln, rng);
    if (is_solving(ln, code)) return verified(ln, std::move(code), t);
  }
  return {SearchStatus::not_found, std::nullopt, trials};
}

}  // namespace ldnet
