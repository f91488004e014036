#include "ldnet/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace ldnet {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const std::string& what) const {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(text_.begin(), text_.begin() +
                                                             static_cast<std::ptrdiff_t>(pos_),
                                          '\n'));
    throw Error(Errc::parse_error, "line " + std::to_string(line) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c))
      fail(std::string("expected '") + c + "'" + found());
  }

  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '{' ||
           c == '}' || c == ',' || c == ':' || c == '=' || c == '#';
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name" + found());
    return std::string(text_.substr(start, pos_ - start));
  }

  void keyword(std::string_view kw) {
    std::size_t save = pos_;
    if (word() != kw) {
      pos_ = save;
      fail("expected '" + std::string(kw) + "'" + found());
    }
  }

  // True if the next token is a word immediately followed by ':'.
  bool next_is_key() {
    std::size_t save = pos_;
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !is_delimiter(text_[pos_])) ++pos_;
    bool key = pos_ > start && peek() == ':';
    pos_ = save;
    return key;
  }

  std::int64_t integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    std::size_t digits = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (digits == pos_ || pos_ - digits > 18) {
      pos_ = start;
      fail("expected an integer" + found());
    }
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  std::size_t count() {
    std::int64_t v = integer();
    if (v < 0) fail("expected a non-negative integer");
    return static_cast<std::size_t>(v);
  }

  Residue residue(FieldModulus field) {
    std::int64_t v = integer();
    if (v < 0 || v >= static_cast<std::int64_t>(field.value()))
      fail("entry " + std::to_string(v) + " is not a residue mod " +
           std::to_string(field.value()));
    return static_cast<Residue>(v);
  }

  std::vector<Residue> vector_literal(FieldModulus field) {
    std::vector<Residue> out;
    expect('[');
    if (accept(']')) return out;
    do out.push_back(residue(field));
    while (accept(','));
    expect(']');
    return out;
  }

  GfMatrix matrix(FieldModulus field) {
    std::vector<std::vector<Residue>> rows;
    expect('[');
    if (!accept(']')) {
      do rows.push_back(vector_literal(field));
      while (accept(','));
      expect(']');
    }
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    std::vector<Residue> entries;
    for (const auto& row : rows) {
      if (row.size() != cols) fail("rows of a matrix differ in length");
      entries.insert(entries.end(), row.begin(), row.end());
    }
    return GfMatrix(field, rows.size(), cols, std::move(entries));
  }

 private:
  std::string found() {
    skip();
    if (pos_ >= text_.size()) return ", found end of input";
    return ", found '" + std::string(1, text_[pos_]) + "'";
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Reads "{key: value, ...}" dispatching each key to `field`, which returns
// false for unknown keys. Every key in `required` must appear exactly once.
template <typename Field>
void record(Reader& in, std::initializer_list<std::string_view> required,
            Field&& field) {
  std::set<std::string> seen;
  in.expect('{');
  if (!in.accept('}')) {
    do {
      std::string key = in.word();
      in.expect(':');
      if (!seen.insert(key).second) in.fail("field '" + key + "' repeated");
      if (!field(key)) in.fail("unknown field '" + key + "'");
    } while (in.accept(','));
    in.expect('}');
  }
  for (auto key : required)
    if (!seen.contains(std::string(key)))
      in.fail("record lacks field '" + std::string(key) + "'");
}

GfMatrix fit_empty(GfMatrix m, std::size_t rows, std::size_t cols) {
  if (m.rows() == 0 && m.cols() == 0 && rows * cols == 0)
    return GfMatrix(m.field(), rows, cols);
  return m;
}

}  // namespace

Network parse_network(std::string_view text) {
  Reader in(text);
  Network n;
  in.keyword("p");
  in.expect(':');
  try {
    n.field = FieldModulus(static_cast<std::uint64_t>(in.count()));
  } catch (const Error& e) {
    in.fail(e.what());
  }
  in.keyword("q");
  in.expect(':');
  n.q = in.count();
  if (n.q == 0) in.fail("q must be at least 1");

  in.keyword("nodes");
  in.expect(':');
  while (!in.at_end() && !in.next_is_key()) n.nodes.push_back(in.word());

  in.keyword("edges");
  in.expect(':');
  while (in.peek() == '{') {
    Edge e;
    record(in, {"from", "to", "gain"}, [&](const std::string& key) {
      if (key == "from") {
        e.from = in.word();
      } else if (key == "to") {
        e.to = in.word();
      } else if (key == "gain") {
        if (in.peek() == '[') {
          e.gain = in.matrix(n.field);
        } else {
          in.keyword("shift");
          in.keyword("g");
          in.expect('=');
          std::size_t g = in.count();
          if (g > n.q)
            in.fail("shift strength " + std::to_string(g) + " exceeds q");
          e.gain = shift_matrix(n.field, n.q, g);
        }
      } else {
        return false;
      }
      return true;
    });
    n.edges.push_back(std::move(e));
  }

  in.keyword("sessions");
  in.expect(':');
  while (in.peek() == '{') {
    Session s;
    record(in, {"id", "source", "dest", "width"},
           [&](const std::string& key) {
             if (key == "id") {
               s.id = static_cast<int>(in.integer());
             } else if (key == "source") {
               s.source = in.word();
             } else if (key == "dest") {
               s.dest = in.word();
             } else if (key == "width") {
               s.width = in.count();
             } else {
               return false;
             }
             return true;
           });
    n.sessions.push_back(std::move(s));
  }
  if (!in.at_end()) in.fail("unexpected trailing input");
  return n;
}

std::string format_network(const Network& n) {
  std::ostringstream os;
  os << "p: " << n.field.value() << "\nq: " << n.q << "\nnodes:";
  for (const auto& v : n.nodes) os << ' ' << v;
  os << "\nedges:\n";
  for (const auto& e : n.edges)
    os << "  {from: " << e.from << ", to: " << e.to
       << ", gain: " << to_string(e.gain) << "}\n";
  os << "sessions:\n";
  for (const auto& s : n.sessions)
    os << "  {id: " << s.id << ", source: " << s.source << ", dest: " << s.dest
       << ", width: " << s.width << "}\n";
  return os.str();
}

LinearCode parse_code(std::string_view text, const LayeredNetwork& ln) {
  const Network& n = ln.base();
  Reader in(text);
  in.keyword("T");
  in.expect(':');
  LinearCode code;
  code.horizon = in.count();

  std::map<int, std::size_t> session_by_id;
  for (std::size_t k = 0; k < n.sessions.size(); ++k)
    session_by_id.emplace(n.sessions[k].id, k);
  std::vector<std::optional<GfMatrix>> enc(n.sessions.size()),
      dec(n.sessions.size());

  while (!in.at_end()) {
    std::string kind = in.word();
    if (kind == "C" || kind == "D") {
      std::int64_t id = in.integer();
      in.expect(':');
      auto it = session_by_id.find(static_cast<int>(id));
      if (it == session_by_id.end())
        in.fail("no session with id " + std::to_string(id));
      const std::size_t k = it->second;
      auto& slot = kind == "C" ? enc[k] : dec[k];
      if (slot) in.fail(kind + " " + std::to_string(id) + " given twice");
      GfMatrix m = in.matrix(n.field);
      const std::size_t len = ln.message_length(k);
      slot = kind == "C" ? fit_empty(std::move(m), n.q, len)
                         : fit_empty(std::move(m), len, n.q);
    } else if (kind == "F") {
      std::string node = in.word();
      in.expect(':');
      if (code.relays.contains(node)) in.fail("F " + node + " given twice");
      code.relays.emplace(node, in.matrix(n.field));
    } else {
      in.fail("expected C, D or F, found '" + kind + "'");
    }
  }
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    if (!enc[k] || !dec[k])
      in.fail("session " + std::to_string(n.sessions[k].id) +
              " needs both C and D");
    code.encoders.push_back(std::move(*enc[k]));
    code.decoders.push_back(std::move(*dec[k]));
  }
  check_code(ln, code);
  return code;
}

std::string format_code(const LayeredNetwork& ln, const LinearCode& code) {
  check_code(ln, code);
  const Network& n = ln.base();
  std::ostringstream os;
  os << "T: " << code.horizon << '\n';
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    os << "C " << n.sessions[k].id << ": " << to_string(code.encoders[k])
       << '\n';
    os << "D " << n.sessions[k].id << ": " << to_string(code.decoders[k])
       << '\n';
  }
  for (std::size_t j : ln.relays()) {
    const auto& name = n.nodes[j];
    os << "F " << name << ": " << to_string(code.relays.at(name)) << '\n';
  }
  return os.str();
}

std::vector<GfMatrix> parse_messages(std::string_view text,
                                     const LayeredNetwork& ln) {
  const Network& n = ln.base();
  Reader in(text);
  std::vector<std::optional<GfMatrix>> found(n.sessions.size());
  while (!in.at_end()) {
    in.keyword("W");
    std::int64_t id = in.integer();
    in.expect(':');
    auto it = std::find_if(n.sessions.begin(), n.sessions.end(),
                           [&](const Session& s) { return s.id == id; });
    if (it == n.sessions.end())
      in.fail("no session with id " + std::to_string(id));
    const auto k = static_cast<std::size_t>(it - n.sessions.begin());
    if (found[k]) in.fail("message " + std::to_string(id) + " given twice");
    auto values = in.vector_literal(n.field);
    if (values.size() != ln.message_length(k))
      in.fail("message " + std::to_string(id) + " must have " +
              std::to_string(ln.message_length(k)) + " symbols");
    found[k] = GfMatrix::column(n.field, values);
  }
  std::vector<GfMatrix> out;
  for (std::size_t k = 0; k < found.size(); ++k) {
    if (!found[k])
      in.fail("missing message for session " +
              std::to_string(n.sessions[k].id));
    out.push_back(std::move(*found[k]));
  }
  return out;
}

std::string format_vector(const GfMatrix& column) {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < column.rows(); ++r)
    os << (r ? "," : "") << column(r, 0);
  os << ']';
  return os.str();
}

std::string format_messages(const Network& n,
                            std::span<const GfMatrix> messages) {
  std::ostringstream os;
  for (std::size_t k = 0; k < messages.size(); ++k)
    os << "W " << n.sessions.at(k).id << ": " << format_vector(messages[k])
       << '\n';
  return os.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(Errc::parse_error, "cannot read '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(Errc::parse_error, "cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace ldnet
