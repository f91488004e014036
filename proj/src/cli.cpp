#include "ldnet/cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>

#include "ldnet/corpus.hpp"
#include "ldnet/io.hpp"
#include "ldnet/layering.hpp"
#include "ldnet/reciprocity.hpp"
#include "ldnet/search.hpp"

namespace ldnet::cli {

namespace {

enum class Format { text, structured };

struct Options {
  Format format = Format::text;
  std::string network, code, messages, out;
  std::size_t horizon = 0;
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 0;
};

const char* flag(bool b) { return b ? "true" : "false"; }

// Emits either "key: value" lines for people or "key=value" records for
// harnesses.
class Printer {
 public:
  Printer(std::ostream& os, Format format) : os_(os), format_(format) {}

  void field(const std::string& key, const std::string& value) {
    os_ << key << (format_ == Format::structured ? "=" : ": ") << value
        << '\n';
  }
  void raw(const std::string& text) { os_ << text; }
  bool structured() const { return format_ == Format::structured; }

 private:
  std::ostream& os_;
  Format format_;
};

void print_grid(Printer& p, const Network& n, const TransferMap& gamma,
                const std::string& name) {
  for (std::size_t l = 0; l < gamma.sessions(); ++l)
    for (std::size_t k = 0; k < gamma.sessions(); ++k) {
      const std::string l_id = std::to_string(n.sessions[l].id);
      const std::string k_id = std::to_string(n.sessions[k].id);
      p.field(p.structured() ? name + "." + l_id + "." + k_id
                             : name + "[" + l_id + "," + k_id + "]",
              to_string(gamma.at(l, k)));
    }
}

void print_code(Printer& p, const LayeredNetwork& ln, const LinearCode& code) {
  if (!p.structured()) {
    p.raw(format_code(ln, code));
    return;
  }
  const Network& n = ln.base();
  p.field("code.T", std::to_string(code.horizon));
  for (std::size_t k = 0; k < n.sessions.size(); ++k) {
    const std::string id = std::to_string(n.sessions[k].id);
    p.field("code.C." + id, to_string(code.encoders[k]));
    p.field("code.D." + id, to_string(code.decoders[k]));
  }
  for (std::size_t j : ln.relays())
    p.field("code.F." + n.nodes[j], to_string(code.relays.at(n.nodes[j])));
}

Network load_network(const std::string& path) {
  Network n = parse_network(read_file(path));
  require_valid(n);
  return n;
}

void emit(Printer& p, const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    p.raw(text);
  } else {
    write_file(opt.out, text);
    p.field("written", opt.out);
  }
}

int cmd_validate(Printer& p, const Options& opt) {
  const Network n = parse_network(read_file(opt.network));
  const ValidationReport report = validate(n);
  p.field("valid", flag(report.ok()));
  p.field("violations", std::to_string(report.violations.size()));
  for (const auto& v : report.violations)
    p.field("violation", std::string(to_string(v.kind)) + ": " + v.detail);
  return report.ok() ? ok : domain_failure;
}

int cmd_transfer(Printer& p, const Options& opt) {
  const LayeredNetwork ln = detect_layers(load_network(opt.network));
  const LinearCode code = parse_code(read_file(opt.code), ln);
  const TransferMap gamma = transfer_matrices(ln, code);
  print_grid(p, ln.base(), gamma, "gamma");
  p.field("verdict", is_kronecker_identity(gamma) ? "solves" : "does not solve");
  return ok;
}

int cmd_reciprocal(Printer& p, const Options& opt) {
  emit(p, opt, format_network(reciprocal(load_network(opt.network))));
  return ok;
}

int cmd_unfold(Printer& p, const Options& opt) {
  emit(p, opt, format_network(unfold(load_network(opt.network), opt.horizon).base()));
  return ok;
}

int cmd_verify(Printer& p, const Options& opt) {
  const LayeredNetwork ln = detect_layers(load_network(opt.network));
  const LinearCode code = parse_code(read_file(opt.code), ln);
  const ReciprocityReport report = verify_reciprocity(ln, code);
  p.field("solves", flag(report.solves));
  p.field("duality", flag(report.duality));
  p.field("transposed_solves", flag(report.transposed_solves));
  p.field("consistent", flag(report.consistent()));
  print_grid(p, ln.base(), report.gamma, "gamma");
  print_grid(p, ln.base(), report.gamma_reciprocal, "gamma_reciprocal");
  return report.duality && report.consistent() ? ok : domain_failure;
}

int cmd_search(Printer& p, const Options& opt) {
  const LayeredNetwork ln = detect_layers(load_network(opt.network));
  SearchResult result;
  if (opt.trials) {
    p.field("mode", "random");
    p.field("trials", std::to_string(*opt.trials));
    p.field("seed", std::to_string(opt.seed));
    result = random_search(ln, *opt.trials, opt.seed);
  } else {
    p.field("mode", "exhaustive");
    p.field("free_entries", std::to_string(free_entries(ln)));
    p.field("budget", std::to_string(opt.budget));
    result = exhaustive_search(ln, opt.budget);
  }
  p.field("status", to_string(result.status));
  if (!result.code) return domain_failure;
  p.field(opt.trials ? "trial" : "index", std::to_string(result.index));
  if (opt.out.empty()) {
    print_code(p, ln, *result.code);
  } else {
    write_file(opt.out, format_code(ln, *result.code));
    p.field("written", opt.out);
  }
  return ok;
}

int cmd_simulate(Printer& p, const Options& opt) {
  const LayeredNetwork ln = detect_layers(load_network(opt.network));
  const LinearCode code = parse_code(read_file(opt.code), ln);
  const auto messages = parse_messages(read_file(opt.messages), ln);
  const auto decoded = simulate(ln, code, messages);
  const Network& n = ln.base();
  for (std::size_t k = 0; k < decoded.size(); ++k) {
    const std::string id = std::to_string(n.sessions[k].id);
    p.field(p.structured() ? "decoded." + id : "decoded " + id,
            format_vector(decoded[k]));
  }
  return ok;
}

int cmd_corpus(Printer& p, const Options& opt) {
  const std::filesystem::path dir = opt.out.empty() ? "corpus" : opt.out;
  for (const auto& file : corpus::files()) {
    const auto path = dir / file.path;
    std::filesystem::create_directories(path.parent_path());
    write_file(path, file.text);
    p.field("written", path.string());
  }
  return ok;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::not_layered:
    case Errc::non_shift_gain:
    case Errc::not_projectable:
      return domain_failure;
    default:
      return malformed_input;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Linear deterministic networks: transfer matrices, reciprocity, "
               "unfolding and code search"};
  app.name("ldnet");
  app.require_subcommand(1);

  Options opt;
  const std::map<std::string, Format> formats{{"text", Format::text},
                                              {"structured", Format::structured}};
  app.add_option("--format", opt.format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("text|structured");

  std::function<int(Printer&, const Options&)> action;
  auto command = [&](const char* name, const char* help, auto fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  auto network_arg = [&](CLI::App* sub) {
    sub->add_option("network", opt.network, "Network file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto code_arg = [&](CLI::App* sub) {
    sub->add_option("code", opt.code, "Code file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto out_opt = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "Write the result to this file");
  };

  auto* validate_cmd =
      command("validate", "Check a network file for structural problems",
              cmd_validate);
  network_arg(validate_cmd);

  auto* transfer_cmd = command(
      "transfer", "Print the transfer matrices of a code and whether it solves",
      cmd_transfer);
  network_arg(transfer_cmd);
  code_arg(transfer_cmd);

  auto* reciprocal_cmd =
      command("reciprocal", "Write the reciprocal network", cmd_reciprocal);
  network_arg(reciprocal_cmd);
  out_opt(reciprocal_cmd);

  auto* unfold_cmd = command(
      "unfold", "Write the layered unfolding over T time instants", cmd_unfold);
  network_arg(unfold_cmd);
  unfold_cmd->add_option("T", opt.horizon, "Number of time instants")
      ->required()
      ->check(CLI::PositiveNumber);
  out_opt(unfold_cmd);

  auto* verify_cmd = command(
      "verify-reciprocity",
      "Check that the transposed code behaves as the transpose on the "
      "reciprocal network",
      cmd_verify);
  network_arg(verify_cmd);
  code_arg(verify_cmd);

  auto* search_cmd = command(
      "search", "Look for a solving linear code (exhaustive unless --trials)",
      cmd_search);
  network_arg(search_cmd);
  search_cmd->add_option("--budget", opt.budget,
                         "Largest number of candidates to examine");
  search_cmd->add_option("--trials", opt.trials,
                         "Random search with this many trials")
      ->check(CLI::PositiveNumber);
  search_cmd->add_option("--seed", opt.seed, "Seed for random search");
  out_opt(search_cmd);

  auto* simulate_cmd =
      command("simulate", "Run a code on concrete messages", cmd_simulate);
  network_arg(simulate_cmd);
  code_arg(simulate_cmd);
  simulate_cmd->add_option("messages", opt.messages, "Message file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* corpus_cmd =
      command("corpus", "Regenerate the bundled example files", cmd_corpus);
  out_opt(corpus_cmd);

  std::vector<const char*> argv{"ldnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : malformed_input;
  }

  Printer printer(out, opt.format);
  try {
    return action(printer, opt);
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

}  // namespace ldnet::cli
