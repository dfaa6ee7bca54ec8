// qdj: build, verify and decompose U_q representations, compute twist and
// associator blocks, and lift module-algebra actions.
//
// Exit codes: 0 every residual passes, 1 some residual fails or a lift stage
// rejects its input, 2 invalid parameters or unreadable files.

#include "qdj/action.hpp"
#include "qdj/cgtwist.hpp"
#include "qdj/harness.hpp"
#include "qdj/json_io.hpp"
#include "qdj/lift.hpp"
#include "qdj/rep.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qdj;
using io::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInvalid = 2;

struct Globals {
  std::string q = "1/2";
  std::string tol = "1e-8";
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

struct Settings {
  QScalar q;
  Real tol;
  std::uint64_t seed = 0;
  std::string out;
  bool csv = false;
};

Settings resolve(const Globals& g) {
  Settings s;
  s.q = QScalar::parse(g.q);
  if (s.q.sign() <= 0) throw std::invalid_argument("--q must be positive, got " + g.q);
  s.tol = parse_real(g.tol);
  if (!(s.tol > 0)) throw std::invalid_argument("--tol must be positive, got " + g.tol);
  s.seed = g.seed;
  s.out = g.out;
  s.csv = g.format == "csv";
  return s;
}

void emit_text(const Settings& s, const std::string& text) {
  if (s.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(s.out);
    if (!f) throw io::IoError("cannot write " + s.out);
    f << text;
  }
}

void emit(const Settings& s, const json& j, const io::CsvTable& table) {
  emit_text(s, s.csv ? table.str() : j.dump(2) + "\n");
}

void summarize(const RelationReport& r) {
  std::size_t failing = 0;
  for (const auto& e : r.entries) failing += e.pass ? 0 : 1;
  std::cerr << "relations: " << r.entries.size() << " checked, " << failing << " failing ("
            << (r.exact ? "exact" : "approximate") << ")\n";
  if (const auto* f = r.first_failure()) {
    std::cerr << "first failure: " << f->relation << " (" << f->i << "," << f->j << ") residual " << f->residual
              << "\n";
  }
}

/// Writes a constructed representation and reports its relation check.
int finish_rep(const Settings& s, const Rep& r) {
  const RelationReport report = verify_relations(r);
  emit_text(s, io::to_json(r).dump(2) + "\n");
  summarize(report);
  return report.passed() ? kExitPass : kExitFail;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad list entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

json error_json(const LiftError& e) {
  return json{{"passed", false},
              {"error", json{{"stage", e.stage()}, {"kind", to_string(e.kind())}, {"node", e.node()}, {"message", e.what()}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drinfeld-Jimbo representations, twists and torsion lifts"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "TOML or INI file with option defaults (flags take precedence)");

  Globals g;
  app.add_option("--q", g.q, "deformation parameter as a rational p/q")->capture_default_str();
  app.add_option("--tol", g.tol, "pass threshold for approximate residuals")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized instances")->capture_default_str();
  app.add_option("--out", g.out, "output file (default: standard output)");
  app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  int irrep_n = 0;
  auto* irrep = app.add_subcommand("irrep", "irreducible U_q(su(2))-module V_n as JSON");
  irrep->add_option("--n", irrep_n, "highest weight n (dimension n+1)")->required();

  int vector_n = 3;
  auto* vrep = app.add_subcommand("vector-rep", "vector representation of U_q(sl_n) as JSON");
  vrep->add_option("--n", vector_n, "n in 2..5")->required();

  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "check every relation of a representation file");
  verify->add_option("rep", verify_path, "representation JSON")->required();

  std::string tensor_left;
  std::string tensor_right;
  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of two representation files");
  tensor_cmd->add_option("left", tensor_left, "first factor")->required();
  tensor_cmd->add_option("right", tensor_right, "second factor")->required();

  int cg_a = 1;
  int cg_b = 1;
  auto* cg = app.add_subcommand("cg", "Clebsch-Gordan decomposition of V_a (x) V_b (q = 1 allowed)");
  cg->add_option("--a", cg_a, "first label")->required();
  cg->add_option("--b", cg_b, "second label")->required();

  std::optional<int> tw_a;
  std::optional<int> tw_b;
  std::optional<int> tw_c;
  std::optional<int> max_spin;
  std::optional<int> max_triple;
  bool serial = false;
  auto* twist = app.add_subcommand(
      "twist", "twist block (a,b), associator block (a,b,c), or sweeps; with no labels, sweeps a,b <= 4 and triples <= 3");
  twist->add_option("--a", tw_a, "first label");
  twist->add_option("--b", tw_b, "second label");
  twist->add_option("--c", tw_c, "third label (associator block)");
  twist->add_option("--max-spin", max_spin, "sweep all twist blocks with a, b <= max-spin");
  twist->add_option("--max-triple", max_triple, "sweep all associator blocks with a, b, c <= max-triple");
  twist->add_flag("--serial", serial, "disable the parallel sweep");

  std::string action_path;
  std::string roundtrip;
  std::string lift_rep;
  std::string lift_blocks;
  std::string write_action;
  bool check = false;
  auto* lift = app.add_subcommand("lift", "lift a module-algebra action to a *-representation");
  lift->add_option("action", action_path, "action JSON");
  lift->add_option("--roundtrip", roundtrip, "comma-separated irrep labels: induce, conjugate at random, lift");
  lift->add_option("--rep", lift_rep, "representation JSON to induce the action from");
  lift->add_option("--blocks", lift_blocks, "block partition for --rep (default: one block)");
  lift->add_option("--write-action", write_action, "also write the input action to this file");
  lift->add_flag("--check-action", check, "verify the module-algebra axioms before lifting (slow)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInvalid;
  }

  try {
    const Settings s = resolve(g);

    if (irrep->parsed()) {
      require_deformation_parameter(s.q);
      return finish_rep(s, irrep_su2(irrep_n, s.q));
    }
    if (vrep->parsed()) {
      require_deformation_parameter(s.q);
      return finish_rep(s, vector_rep_sln(vector_n, s.q));
    }
    if (tensor_cmd->parsed()) {
      return finish_rep(s, tensor(io::rep_from_json(io::read_file(tensor_left)),
                                  io::rep_from_json(io::read_file(tensor_right))));
    }
    if (verify->parsed()) {
      const RelationReport report = verify_relations(io::rep_from_json(io::read_file(verify_path)), s.tol);
      emit(s, io::to_json(report), io::to_csv(report));
      summarize(report);
      return report.passed() ? kExitPass : kExitFail;
    }
    if (cg->parsed()) {
      const CGDecomposition d = cg_decompose(cg_a, cg_b, s.q);
      std::vector<int> expected;
      for (int c = std::abs(cg_a - cg_b); c <= cg_a + cg_b; c += 2) expected.push_back(c);
      json j = io::to_json(d);
      const bool ok = j["pass"].get<bool>() && d.labels() == expected;
      j["pass"] = ok;
      emit(s, j, io::to_csv(d));
      std::cerr << "cg " << cg_a << " x " << cg_b << ": " << d.components.size() << " components, "
                << (ok ? "pass" : "FAIL") << "\n";
      return ok ? kExitPass : kExitFail;
    }
    if (twist->parsed()) {
      require_deformation_parameter(s.q);
      const auto exec = serial ? kernels::Execution::serial : kernels::Execution::parallel;
      const bool single = tw_a.has_value() || tw_b.has_value();
      if (single && !(tw_a && tw_b)) throw std::invalid_argument("twist needs both --a and --b");
      if (single && (max_spin || max_triple)) throw std::invalid_argument("use either labels or sweep cutoffs");
      for (const auto* v : {&tw_a, &tw_b, &tw_c, &max_spin, &max_triple})
        if (*v && **v < 0) throw std::invalid_argument("labels and cutoffs must be nonnegative");

      std::vector<TwistBlock> twists;
      std::vector<AssociatorBlock> assocs;
      if (single && tw_c) {
        assocs.push_back(associator_block(*tw_a, *tw_b, *tw_c, s.q));
      } else if (single) {
        twists.push_back(solve_twist_block(*tw_a, *tw_b, s.q));
      } else {
        const bool both = !max_spin && !max_triple;
        if (max_spin || both) twists = twist_sweep(max_spin.value_or(4), s.q, exec);
        if (max_triple || both) assocs = associator_sweep(max_triple.value_or(3), s.q, exec);
      }
      bool ok = true;
      json tj = json::array();
      json aj = json::array();
      for (const auto& t : twists) {
        ok = ok && t.passed(s.tol);
        tj.push_back(io::to_json(t, s.tol));
      }
      for (const auto& a : assocs) {
        ok = ok && a.passed(s.tol);
        aj.push_back(io::to_json(a, s.tol));
      }
      json j{{"q", s.q.str()}, {"tol", to_decimal_string(s.tol, 6)}, {"passed", ok}};
      if (!twists.empty()) j["twist_blocks"] = tj;
      if (!assocs.empty()) j["associator_blocks"] = aj;
      std::string csv;
      if (!twists.empty()) csv += io::to_csv(twists, s.tol).str();
      if (!assocs.empty()) csv += (csv.empty() ? "" : "\n") + io::to_csv(assocs, s.tol).str();
      emit_text(s, s.csv ? csv : j.dump(2) + "\n");
      std::cerr << "twist: " << twists.size() << " twist blocks, " << assocs.size() << " associator blocks, "
                << (ok ? "pass" : "FAIL") << "\n";
      return ok ? kExitPass : kExitFail;
    }
    if (lift->parsed()) {
      const int sources = int(!action_path.empty()) + int(!roundtrip.empty()) + int(!lift_rep.empty());
      if (sources != 1) throw std::invalid_argument("lift needs exactly one of: action file, --roundtrip, --rep");
      RealAction action;
      json input{{"source", "file"}};
      if (!roundtrip.empty()) {
        require_deformation_parameter(s.q);
        Rng rng(s.seed);
        const RoundTripCase c = make_round_trip(parse_int_list(roundtrip), s.q, rng);
        action = c.action;
        input = json{{"source", "roundtrip"}, {"irreps", c.labels}, {"blocks", c.blocks}, {"seed", s.seed}};
      } else if (!lift_rep.empty()) {
        const Rep r = io::rep_from_json(io::read_file(lift_rep));
        std::vector<std::size_t> blocks{r.dim};
        if (!lift_blocks.empty()) {
          blocks.clear();
          for (int b : parse_int_list(lift_blocks)) {
            if (b <= 0) throw std::invalid_argument("--blocks entries must be positive");
            blocks.push_back(static_cast<std::size_t>(b));
          }
        }
        action = induce_action(r, blocks);
        input = json{{"source", "rep"}, {"blocks", blocks}};
      } else {
        action = io::action_from_json(io::read_file(action_path));
      }
      if (!write_action.empty()) io::write_file(write_action, io::to_json(action));

      json j{{"input", input}};
      if (check) {
        const RelationReport axioms = check_action(action, s.tol);
        j["action_check"] = io::to_json(axioms);
        if (!axioms.passed()) {
          j["passed"] = false;
          emit(s, j, io::to_csv(axioms));
          summarize(axioms);
          return kExitFail;
        }
      }
      LiftOptions options;
      options.tol = s.tol;
      try {
        const LiftResult result = lift_action(action, options);
        j.update(io::to_json(result, s.tol));
        emit(s, j, io::to_csv(result, s.tol));
        std::cerr << "lift: " << (result.passed(s.tol) ? "pass" : "FAIL") << (result.inverted ? " (via q -> 1/q)" : "")
                  << "\n";
        return result.passed(s.tol) ? kExitPass : kExitFail;
      } catch (const LiftError& e) {
        if (e.kind() == LiftErrorKind::unsupported_parameter) throw std::invalid_argument(e.what());
        j.update(error_json(e));
        emit(s, j, io::CsvTable{{"stage", "kind", "node", "message"},
                                {{e.stage(), to_string(e.kind()), std::to_string(e.node()), e.what()}}});
        std::cerr << "lift rejected: " << e.what() << "\n";
        return kExitFail;
      }
    }
  } catch (const io::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInvalid;
}
