#include "ldnet/gf.hpp"

#include <sstream>
#include <utility>

namespace ldnet {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::not_prime: return "not-prime";
    case Errc::out_of_range: return "out-of-range";
    case Errc::shape_mismatch: return "shape-mismatch";
    case Errc::modulus_mismatch: return "modulus-mismatch";
    case Errc::invalid_network: return "invalid-network";
    case Errc::not_layered: return "not-layered";
    case Errc::invalid_code: return "invalid-code";
    case Errc::non_shift_gain: return "non-shift-gain";
    case Errc::not_projectable: return "not-projectable";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldModulus::FieldModulus(std::uint64_t p) {
  if (p < 2)
    throw Error(Errc::not_prime, "field modulus " + std::to_string(p) +
                                     " is not prime");
  if (p > max_value)
    throw Error(Errc::out_of_range,
                "field modulus " + std::to_string(p) + " outside [2, 2^31-1]");
  if (!is_prime(p))
    throw Error(Errc::not_prime,
                "field modulus " + std::to_string(p) + " is not prime");
  p_ = static_cast<Residue>(p);
}

Residue FieldModulus::reduce(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<Residue>(r);
}

Residue FieldModulus::add(Residue a, Residue b) const noexcept {
  std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Residue>(s >= p_ ? s - p_ : s);
}

Residue FieldModulus::sub(Residue a, Residue b) const noexcept {
  return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p_ - b);
}

Residue FieldModulus::neg(Residue a) const noexcept {
  return a == 0 ? 0 : p_ - a;
}

Residue FieldModulus::mul(Residue a, Residue b) const noexcept {
  return static_cast<Residue>(std::uint64_t{a} * b % p_);
}

Residue FieldModulus::inv(Residue a) const {
  if (a % p_ == 0) throw Error(Errc::out_of_range, "zero has no inverse");
  std::int64_t old_r = a, r = p_;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    old_r = std::exchange(r, old_r - quot * r);
    old_s = std::exchange(s, old_s - quot * s);
  }
  return reduce(old_s);
}

namespace {

void require_same_field(const GfMatrix& a, const GfMatrix& b,
                        const char* op) {
  if (a.field() != b.field())
    throw Error(Errc::modulus_mismatch,
                std::string(op) + ": moduli " +
                    std::to_string(a.field().value()) + " and " +
                    std::to_string(b.field().value()) + " differ");
}

std::string shape(const GfMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const GfMatrix& a, const GfMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(Errc::shape_mismatch,
                std::string(op) + ": shapes " + shape(a) + " and " +
                    shape(b) + " differ");
}

}  // namespace

GfMatrix::GfMatrix(FieldModulus field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

GfMatrix::GfMatrix(FieldModulus field, std::size_t rows, std::size_t cols,
                   std::vector<Residue> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw Error(Errc::shape_mismatch,
                "entry count " + std::to_string(data_.size()) +
                    " does not match " + shape(*this));
  for (Residue e : data_)
    if (e >= field_.value())
      throw Error(Errc::out_of_range,
                  "entry " + std::to_string(e) + " is not a residue mod " +
                      std::to_string(field_.value()));
}

GfMatrix GfMatrix::from_rows(
    FieldModulus field,
    std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  std::vector<Residue> entries;
  entries.reserve(rows.size() * cols);
  for (const auto& row : rows) {
    if (row.size() != cols)
      throw Error(Errc::shape_mismatch, "ragged row list");
    for (std::int64_t v : row) entries.push_back(field.reduce(v));
  }
  return GfMatrix(field, rows.size(), cols, std::move(entries));
}

GfMatrix GfMatrix::column(FieldModulus field,
                          std::initializer_list<std::int64_t> values) {
  std::vector<Residue> entries;
  for (std::int64_t v : values) entries.push_back(field.reduce(v));
  std::size_t n = entries.size();
  return GfMatrix(field, n, 1, std::move(entries));
}

GfMatrix GfMatrix::column(FieldModulus field,
                          std::span<const Residue> values) {
  return GfMatrix(field, values.size(), 1,
                  std::vector<Residue>(values.begin(), values.end()));
}

GfMatrix GfMatrix::identity(FieldModulus field, std::size_t n) {
  GfMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

GfMatrix GfMatrix::zero(FieldModulus field, std::size_t rows,
                        std::size_t cols) {
  return GfMatrix(field, rows, cols);
}

Residue GfMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_)
    throw Error(Errc::out_of_range, "index outside " + shape(*this));
  return data_[r * cols_ + c];
}

void GfMatrix::set(std::size_t r, std::size_t c, std::int64_t value) {
  if (r >= rows_ || c >= cols_)
    throw Error(Errc::out_of_range, "index outside " + shape(*this));
  data_[r * cols_ + c] = field_.reduce(value);
}

bool GfMatrix::is_zero() const noexcept {
  for (Residue e : data_)
    if (e != 0) return false;
  return true;
}

bool GfMatrix::is_identity() const noexcept {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (data_[r * cols_ + c] != (r == c ? 1u : 0u)) return false;
  return true;
}

GfMatrix GfMatrix::block(std::size_t r0, std::size_t c0, std::size_t rows,
                         std::size_t cols) const {
  if (r0 + rows > rows_ || c0 + cols > cols_)
    throw Error(Errc::shape_mismatch, "block exceeds " + shape(*this));
  GfMatrix out(field_, rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out.data_[r * cols + c] = data_[(r0 + r) * cols_ + c0 + c];
  return out;
}

void GfMatrix::set_block(std::size_t r0, std::size_t c0, const GfMatrix& src) {
  require_same_field(*this, src, "set_block");
  if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
    throw Error(Errc::shape_mismatch,
                "block " + shape(src) + " exceeds " + shape(*this));
  for (std::size_t r = 0; r < src.rows_; ++r)
    for (std::size_t c = 0; c < src.cols_; ++c)
      data_[(r0 + r) * cols_ + c0 + c] = src.data_[r * src.cols_ + c];
}

void GfMatrix::add_block(std::size_t r0, std::size_t c0, const GfMatrix& src) {
  require_same_field(*this, src, "add_block");
  if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
    throw Error(Errc::shape_mismatch,
                "block " + shape(src) + " exceeds " + shape(*this));
  for (std::size_t r = 0; r < src.rows_; ++r)
    for (std::size_t c = 0; c < src.cols_; ++c) {
      Residue& e = data_[(r0 + r) * cols_ + c0 + c];
      e = field_.add(e, src.data_[r * src.cols_ + c]);
    }
}

GfMatrix mat_add(const GfMatrix& a, const GfMatrix& b) {
  require_same_field(a, b, "mat_add");
  require_same_shape(a, b, "mat_add");
  GfMatrix out = a;
  out.add_block(0, 0, b);
  return out;
}

GfMatrix mat_sub(const GfMatrix& a, const GfMatrix& b) {
  require_same_field(a, b, "mat_sub");
  require_same_shape(a, b, "mat_sub");
  const FieldModulus f = a.field();
  std::vector<Residue> entries(a.entries().size());
  for (std::size_t i = 0; i < entries.size(); ++i)
    entries[i] = f.sub(a.entries()[i], b.entries()[i]);
  return GfMatrix(f, a.rows(), a.cols(), std::move(entries));
}

GfMatrix mat_mul(const GfMatrix& a, const GfMatrix& b) {
  require_same_field(a, b, "mat_mul");
  if (a.cols() != b.rows())
    throw Error(Errc::shape_mismatch,
                "mat_mul: " + shape(a) + " times " + shape(b));
  const std::uint64_t p = a.field().value();
  const std::size_t n = a.rows(), k = a.cols(), m = b.cols();
  std::vector<std::uint64_t> acc(n * m, 0);
  auto ae = a.entries();
  auto be = b.entries();
  // Each product is below 2^62, so reducing after every term keeps the
  // running sum below 2^63.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      const std::uint64_t x = ae[i * k + t];
      if (x == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        acc[i * m + j] = (acc[i * m + j] + x * be[t * m + j]) % p;
    }
  std::vector<Residue> entries(acc.begin(), acc.end());
  return GfMatrix(a.field(), n, m, std::move(entries));
}

GfMatrix mat_scale(Residue s, const GfMatrix& a) {
  const FieldModulus f = a.field();
  Residue sr = f.reduce(s);
  std::vector<Residue> entries(a.entries().begin(), a.entries().end());
  for (Residue& e : entries) e = f.mul(e, sr);
  return GfMatrix(f, a.rows(), a.cols(), std::move(entries));
}

GfMatrix mat_transpose(const GfMatrix& a) {
  std::vector<Residue> entries(a.entries().size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      entries[c * a.rows() + r] = a(r, c);
  return GfMatrix(a.field(), a.cols(), a.rows(), std::move(entries));
}

GfMatrix vstack(const GfMatrix& top, const GfMatrix& bottom) {
  require_same_field(top, bottom, "vstack");
  if (top.cols() != bottom.cols())
    throw Error(Errc::shape_mismatch,
                "vstack: " + shape(top) + " over " + shape(bottom));
  GfMatrix out(top.field(), top.rows() + bottom.rows(), top.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), 0, bottom);
  return out;
}

GfMatrix hstack(const GfMatrix& left, const GfMatrix& right) {
  require_same_field(left, right, "hstack");
  if (left.rows() != right.rows())
    throw Error(Errc::shape_mismatch,
                "hstack: " + shape(left) + " beside " + shape(right));
  GfMatrix out(left.field(), left.rows(), left.cols() + right.cols());
  out.set_block(0, 0, left);
  out.set_block(0, left.cols(), right);
  return out;
}

std::size_t rank(const GfMatrix& a) {
  const FieldModulus f = a.field();
  const std::size_t rows = a.rows(), cols = a.cols();
  std::vector<Residue> m(a.entries().begin(), a.entries().end());
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < cols; ++j)
      std::swap(m[r * cols + j], m[pivot * cols + j]);
    const Residue inv = f.inv(m[r * cols + c]);
    for (std::size_t j = 0; j < cols; ++j)
      m[r * cols + j] = f.mul(m[r * cols + j], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i * cols + c] == 0) continue;
      const Residue factor = m[i * cols + c];
      for (std::size_t j = 0; j < cols; ++j)
        m[i * cols + j] = f.sub(m[i * cols + j], f.mul(factor, m[r * cols + j]));
    }
    ++r;
  }
  return r;
}

GfMatrix shift_matrix(FieldModulus field, std::size_t q, std::size_t g) {
  if (g > q)
    throw Error(Errc::out_of_range, "channel strength " + std::to_string(g) +
                                        " exceeds q = " + std::to_string(q));
  const std::size_t down = q - g;
  GfMatrix m(field, q, q);
  for (std::size_t c = 0; c + down < q; ++c) m.set(c + down, c, 1);
  return m;
}

std::optional<std::size_t> shift_strength(const GfMatrix& m) {
  if (!m.square()) return std::nullopt;
  const std::size_t q = m.rows();
  for (std::size_t g = 0; g <= q; ++g)
    if (m == shift_matrix(m.field(), q, g)) return g;
  return std::nullopt;
}

GfMatrix flip_matrix(FieldModulus field, std::size_t q) {
  GfMatrix m(field, q, q);
  for (std::size_t r = 0; r < q; ++r) m.set(r, q - 1 - r, 1);
  return m;
}

GfMatrix block_embed(const GfMatrix& g, std::size_t q, std::size_t horizon) {
  if (g.rows() != q || g.cols() != q)
    throw Error(Errc::shape_mismatch, "block_embed: gain is " + shape(g) +
                                          ", expected " + std::to_string(q) +
                                          "x" + std::to_string(q));
  const std::size_t n = q * (horizon + 2);
  GfMatrix out(g.field(), n, n);
  out.set_block(n - q, 0, g);
  return out;
}

std::string to_string(const GfMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) os << ',';
    os << '[';
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << m(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace ldnet
