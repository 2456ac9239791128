#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "pervlen/error.hpp"
#include "pervlen/local_system.hpp"
#include "pervlen/torus_set.hpp"
#include "pervlen/trace_geometry.hpp"
#include "pervlen/verification.hpp"

namespace pervlen::cli {
namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

int length_command(const std::string& path, std::ostream& out) {
  const Representation rep = parse_representation(read_file(path));
  const bool semisimple = is_semisimple(rep);
  out << "# pervlen-length v1\n";
  out << "punctures: " << rep.punctures() << "\n";
  out << "rank: " << rep.rank() << "\n";
  out << "sl2: " << (rep.sl2() ? "true" : "false") << "\n";
  out << "semisimple: " << (semisimple ? "true" : "false") << "\n";
  out << "local_system_length: " << local_system_length(rep) << "\n";
  out << "h1_per_puncture: [";
  for (std::size_t p = 0; p < rep.punctures(); ++p) out << (p ? ", " : "") << puncture_h1(rep, p);
  out << "]\n";
  const std::size_t star = pushforward_length(rep, Pushforward::kStar);
  out << "rj_star_length: " << star << "\n";
  out << "rj_shriek_length: " << pushforward_length(rep, Pushforward::kShriek) << "\n";
  if (semisimple)
    out << "ic_length: " << ic_length(rep) << "\n";
  else
    out << "ic_length: n/a (not semisimple)\n";
  if (rep.punctures() == 2 && rep.rank() == 2 && rep.sl2()) {
    const TracePoint t = trace_coords(rep);
    out << "traces: " << to_string(t) << "\n";
    out << "closed_form_length: " << length_from_traces(t) << "\n";
  }
  out << "total: " << star << "\n";
  return kExitOk;
}

// Formula text with a readable comment under the version header.
std::string annotated(const ConstructibleSet& s, const std::string& label) {
  std::string text = to_text(s);
  const auto eol = text.find('\n');
  text.insert(eol + 1, "# " + label + ": " + to_set_notation(s) + "\n");
  return text;
}

int stratify_command(int k, bool all, const std::string& output, std::ostream& out) {
  if (!all) {
    if (k < 1) throw InputError("-k must be at least 1");
    const std::string text = annotated(stratify(k), "length >= " + std::to_string(k));
    if (output.empty())
      out << text;
    else
      write_file(output, text);
    return kExitOk;
  }
  constexpr int kMaxLength = 7;
  std::vector<std::pair<std::string, std::string>> docs;
  for (int j = 1; j <= kMaxLength; ++j)
    docs.emplace_back("length_ge_" + std::to_string(j) + ".formula",
                      annotated(stratify(j), "length >= " + std::to_string(j)));
  for (int j = 1; j <= kMaxLength; ++j)
    docs.emplace_back("length_eq_" + std::to_string(j) + ".formula",
                      annotated(exact_length_locus(j), "length == " + std::to_string(j)));
  if (output.empty()) {
    for (std::size_t i = 0; i < docs.size(); ++i) out << (i ? "\n" : "") << docs[i].second;
    return kExitOk;
  }
  std::filesystem::create_directories(output);
  for (const auto& [name, text] : docs) write_file(std::filesystem::path(output) / name, text);
  return kExitOk;
}

int verify_command(std::ostream& out) {
  out << "# pervlen-verify v1\n";
  const auto results = run_all_checks();
  std::size_t passed = 0;
  for (const auto& r : results) {
    out << format_result(r) << "\n";
    if (r.pass) ++passed;
  }
  const bool ok = passed == results.size();
  out << "result: " << (ok ? "PASS" : "FAIL") << " (" << passed << "/" << results.size() << ")\n";
  return ok ? kExitOk : kExitVerificationFailed;
}

TorsionCoset single_coset(const std::string& path) {
  const TorusFormula f = parse_torus_formula(read_file(path));
  if (f.formula.kind() != CosetFormula::Kind::kLeaf) throw InputError(path + ": expected a single coset");
  return f.formula.leaf();
}

int intersect_command(const std::string& a, const std::string& b, std::ostream& out) {
  const TorsionCoset x = single_coset(a);
  const TorsionCoset y = single_coset(b);
  if (x.ambient_rank() != y.ambient_rank())
    throw InputError("ambient rank mismatch: " + std::to_string(x.ambient_rank()) + " vs " +
                     std::to_string(y.ambient_rank()));
  out << components_to_text(x.ambient_rank(), intersect_cosets(x, y));
  return kExitOk;
}

int member_command(const std::string& formula_path, const std::string& point, std::ostream& out) {
  const TorusFormula f = parse_torus_formula(read_file(formula_path));
  const TorsionPoint v = parse_torsion_point(point);
  if (v.size() != f.ambient_rank)
    throw InputError("ambient rank mismatch: point has " + std::to_string(v.size()) + " coordinates, formula lives in rank " +
                     std::to_string(f.ambient_rank));
  out << "# pervlen-member v1\n" << (member_torsion(f, v) ? "true" : "false") << "\n";
  return kExitOk;
}

int jump_locus_command(int n, int k, std::ostream& out) {
  if (n < 1) throw InputError("-n must be at least 1");
  out << to_text(rank1_jump_locus(static_cast<std::size_t>(n), k));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lengths of perverse pushforwards of local systems on punctured lines"};
  app.name(args.empty() ? "pervlen" : std::filesystem::path(args[0]).filename().string());
  app.require_subcommand(1);

  std::string rep_path;
  auto* length = app.add_subcommand("length", "Report lengths for a representation file");
  length->add_option("file", rep_path, "Representation JSON file")->required();

  int k = 0;
  bool all = false;
  std::string output;
  auto* strat = app.add_subcommand("stratify", "Emit the locus {length >= k} in (tr A, tr B, tr AB)");
  auto* k_opt = strat->add_option("-k", k, "Length threshold");
  auto* all_flag = strat->add_flag("--all", all, "Emit k = 1..7 and the exact-length loci");
  k_opt->excludes(all_flag);
  strat->add_option("-o,--output", output, "Output file (or directory with --all)");

  auto* verify = app.add_subcommand("verify-paper", "Run the acceptance checks");

  auto* tori = app.add_subcommand("tori", "Torsion-translated subtori of (C*)^n");
  tori->require_subcommand(1);
  std::string first, second;
  auto* inter = tori->add_subcommand("intersect", "Intersect two cosets");
  inter->add_option("first", first, "Coset file")->required();
  inter->add_option("second", second, "Coset file")->required();
  std::string formula_path, point;
  auto* mem = tori->add_subcommand("member", "Decide membership of a torsion point");
  mem->add_option("formula", formula_path, "Torus formula file")->required();
  mem->add_option("point", point, "Exponent vector such as 1/3,0")->required();
  int n = 0, jump_k = 0;
  auto* jump = tori->add_subcommand("jump-locus", "Rank-1 exact-length locus");
  jump->add_option("-n", n, "Number of punctures")->required();
  jump->add_option("-k", jump_k, "Length")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*length) return length_command(rep_path, out);
    if (*strat) {
      if (!*k_opt && !all) throw InputError("stratify needs -k N or --all");
      return stratify_command(k, all, output, out);
    }
    if (*verify) return verify_command(out);
    if (*inter) return intersect_command(first, second, out);
    if (*mem) return member_command(formula_path, point, out);
    if (*jump) return jump_locus_command(n, jump_k, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const GuardExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    // Unrepresentable or FieldMismatch.
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace pervlen::cli
