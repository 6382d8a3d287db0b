// quotkit command line: realizability of splitting-type triples on the
// projective line, explicit certifying matrices, component censuses,
// irreducibility and connectedness of the locally free Quot locus, Betti
// diagram decomposition, and the numeric kernel oracle.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "quotkit/balancing.hpp"
#include "quotkit/betti.hpp"
#include "quotkit/errors.hpp"
#include "quotkit/matrixgen.hpp"
#include "quotkit/oracle.hpp"
#include "quotkit/quot_geometry.hpp"
#include "quotkit/realizability.hpp"
#include "quotkit/splitting_type.hpp"
#include "quotkit/stable_pairs.hpp"

namespace {

using quotkit::Int;
using quotkit::SplittingType;
using quotkit::Triple;
using nlohmann::json;

std::string type_str(const SplittingType& s) { return "(" + s.str() + ")"; }

json type_json(const SplittingType& s) { return json(s.entries()); }

json rat_json(const quotkit::Rat& r) {
  if (r.is_integer()) return json(r.num);
  return json(r.str());
}

json datum_json(const quotkit::BalancingDatum& d) {
  json out;
  out["sigma"] = d.sigma;
  out["tau"] = d.tau;
  json gamma = json::array();
  for (std::size_t i = 0; i < d.gamma.size(); ++i) {
    for (std::size_t j = 0; j < d.gamma[i].size(); ++j) {
      if (d.gamma[i][j] != 0) {
        gamma.push_back(json::array(
            {static_cast<Int>(i) + 1, static_cast<Int>(j) + 1, d.gamma[i][j]}));
      }
    }
  }
  out["gamma"] = gamma;
  return out;
}

void print_datum(std::ostream& os, const quotkit::BalancingDatum& d) {
  os << "sigma:";
  for (int v : d.sigma) os << " " << v;
  os << "\ntau:";
  for (int v : d.tau) os << " " << v;
  os << "\n";
  for (std::size_t i = 0; i < d.gamma.size(); ++i) {
    for (std::size_t j = 0; j < d.gamma[i].size(); ++j) {
      if (d.gamma[i][j] != 0) {
        os << "gamma(" << i + 1 << "," << j + 1 << ") = " << d.gamma[i][j]
           << "\n";
      }
    }
  }
}

json matrix_json(const quotkit::HomogMatrix& M) {
  json rows = json::array();
  for (int i = 1; i <= M.rows(); ++i) {
    json row = json::array();
    for (int j = 1; j <= M.cols(); ++j) row.push_back(M.at(i, j).str());
    rows.push_back(row);
  }
  return rows;
}

void print_matrix(std::ostream& os, const std::string& name,
                  const quotkit::HomogMatrix& M) {
  std::vector<std::vector<std::string>> cells(
      static_cast<std::size_t>(M.rows()));
  std::vector<std::size_t> width(static_cast<std::size_t>(M.cols()), 0);
  for (int i = 1; i <= M.rows(); ++i) {
    for (int j = 1; j <= M.cols(); ++j) {
      std::string s = M.at(i, j).str();
      width[static_cast<std::size_t>(j - 1)] =
          std::max(width[static_cast<std::size_t>(j - 1)], s.size());
      cells[static_cast<std::size_t>(i - 1)].push_back(std::move(s));
    }
  }
  os << name << " =\n";
  for (const auto& row : cells) {
    os << "  [";
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << " " << row[j]
         << std::string(width[j] - row[j].size() + (j + 1 < row.size() ? 1 : 0),
                        ' ');
    }
    os << " ]\n";
  }
}

quotkit::Rat parse_rat(const json& v, const std::string& where) {
  if (v.is_number_integer()) return quotkit::Rat(v.get<Int>());
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) {
        return quotkit::Rat(static_cast<Int>(std::stoll(s)));
      }
      Int num = static_cast<Int>(std::stoll(s.substr(0, slash)));
      Int den = static_cast<Int>(std::stoll(s.substr(slash + 1)));
      return quotkit::Rat(num, den);
    } catch (const std::logic_error&) {
      throw quotkit::ContractError("cannot parse rational '" + s + "' in " +
                                   where);
    }
  }
  throw quotkit::ContractError("multiplicity in " + where +
                               " must be an integer or a 'p/q' string");
}

quotkit::BettiDiagram load_diagram(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw quotkit::ContractError("cannot open diagram file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw quotkit::ContractError("diagram file " + path +
                                 " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) {
    throw quotkit::ContractError("diagram file must hold a JSON object");
  }
  quotkit::BettiDiagram beta;
  for (const auto& [key, column] : j.items()) {
    if (key != "0" && key != "1" && key != "2") {
      throw quotkit::ContractError("diagram column key '" + key +
                                   "' must be \"0\", \"1\", or \"2\"");
    }
    if (!column.is_object()) {
      throw quotkit::ContractError("diagram column " + key +
                                   " must map degrees to multiplicities");
    }
    int i = key[0] - '0';
    for (const auto& [deg_str, mult] : column.items()) {
      Int deg = 0;
      try {
        deg = static_cast<Int>(std::stoll(deg_str));
      } catch (const std::logic_error&) {
        throw quotkit::ContractError("cannot parse degree '" + deg_str +
                                     "' in diagram column " + key);
      }
      beta.add(i, deg, parse_rat(mult, "diagram column " + key));
    }
  }
  return beta;
}

json pair_json(const quotkit::PairBA& p) {
  return json{{"b", type_json(p.b)}, {"a", type_json(p.a)}};
}

struct TripleArgs {
  std::string b, e, a;
  Triple parse() const {
    return Triple{SplittingType::parse(b), SplittingType::parse(e),
                  SplittingType::parse(a)};
  }
};

void add_triple_options(CLI::App* cmd, TripleArgs& args) {
  cmd->add_option("--b", args.b, "kernel type, comma-separated integers")
      ->required();
  cmd->add_option("--e", args.e, "middle type, comma-separated integers")
      ->required();
  cmd->add_option("--a", args.a, "quotient type, comma-separated integers")
      ->required();
}

void print_component_table(std::ostream& os,
                           const std::vector<quotkit::ComponentRecord>& recs,
                           bool mark_strong) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> head = {"b", "a", "D", "T"};
  if (mark_strong) head.push_back("strongly stable");
  rows.push_back(head);
  for (const auto& r : recs) {
    std::vector<std::string> row = {type_str(r.b), type_str(r.a),
                                    std::to_string(r.D), std::to_string(r.T)};
    if (mark_strong) row.push_back(r.strongly_stable ? "yes" : "no");
    rows.push_back(row);
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      width[j] = std::max(width[j], row[j].size());
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    os << " ";
    for (std::size_t j = 0; j < rows[r].size(); ++j) {
      os << " " << rows[r][j]
         << std::string(width[j] - rows[r][j].size(), ' ');
      if (j + 1 < rows[r].size()) os << " |";
    }
    os << "\n";
    if (r == 0) {
      os << " ";
      for (std::size_t j = 0; j < width.size(); ++j) {
        os << std::string(width[j] + 2, '-');
        if (j + 1 < width.size()) os << "+";
      }
      os << "\n";
    }
  }
}

json record_json(const quotkit::ComponentRecord& r) {
  return json{{"b", type_json(r.b)},
              {"a", type_json(r.a)},
              {"D", r.D},
              {"T", r.T},
              {"strongly_stable", r.strongly_stable}};
}

int run(int argc, char** argv) {
  CLI::App app{
      "quotkit: splitting types in short exact sequences of bundles on the "
      "projective line"};
  app.require_subcommand(1);

  // realizable
  TripleArgs rz_args;
  bool rz_json = false;
  CLI::App* rz = app.add_subcommand(
      "realizable", "decide whether 0 -> O(b) -> O(e) -> O(a) -> 0 exists");
  add_triple_options(rz, rz_args);
  rz->add_flag("--json", rz_json, "emit JSON");

  // balance
  TripleArgs ib_args;
  bool ib_json = false;
  std::string ib_order = "kernel-first";
  CLI::App* ib = app.add_subcommand(
      "balance", "iterative balancing trace from the pair (b, a) inside e");
  add_triple_options(ib, ib_args);
  ib->add_option("--order", ib_order, "kernel-first or quotient-first")
      ->check(CLI::IsMember({"kernel-first", "quotient-first"}));
  ib->add_flag("--json", ib_json, "emit JSON");

  // construct
  TripleArgs cs_args;
  bool cs_json = false;
  CLI::App* cs = app.add_subcommand(
      "construct",
      "build the balancing datum and the certifying matrices G and C");
  add_triple_options(cs, cs_args);
  cs->add_flag("--json", cs_json, "emit JSON");

  // components
  std::string cp_e;
  Int cp_n = 0, cp_d = 0;
  bool cp_all = false, cp_json = false;
  CLI::App* cp = app.add_subcommand(
      "components",
      "irreducible components of the locally free Quot locus of O(e)");
  cp->add_option("--e", cp_e, "middle type, comma-separated integers")
      ->required();
  cp->add_option("--n", cp_n, "quotient rank")->required();
  cp->add_option("--d", cp_d, "quotient degree")->required();
  cp->add_flag("--all-stable", cp_all,
               "list every stable pair, not only the strongly stable ones");
  cp->add_flag("--json", cp_json, "emit JSON");

  // irreducible
  std::string ir_e;
  Int ir_n = 0, ir_d = 0;
  bool ir_json = false;
  CLI::App* ir = app.add_subcommand(
      "irreducible", "decide irreducibility of the locally free Quot locus");
  ir->add_option("--e", ir_e, "middle type, comma-separated integers")
      ->required();
  ir->add_option("--n", ir_n, "quotient rank")->required();
  ir->add_option("--d", ir_d, "quotient degree")->required();
  ir->add_flag("--json", ir_json, "emit JSON");

  // connected
  std::string cn_e;
  Int cn_n = 0, cn_d = 0;
  bool cn_json = false;
  CLI::App* cn = app.add_subcommand(
      "connected",
      "certify connectedness of the locally free Quot locus by explicit "
      "chains");
  cn->add_option("--e", cn_e, "middle type, comma-separated integers")
      ->required();
  cn->add_option("--n", cn_n, "quotient rank")->required();
  cn->add_option("--d", cn_d, "quotient degree")->required();
  cn->add_flag("--json", cn_json, "emit JSON");

  // betti
  CLI::App* bt = app.add_subcommand(
      "betti", "width-3 Betti diagrams: cone decomposition and realizability");
  bt->require_subcommand(1);
  std::string bd_file;
  bool bd_json = false;
  CLI::App* bd = bt->add_subcommand(
      "decompose", "greedy decomposition into pure diagrams");
  bd->add_option("--diagram", bd_file, "JSON diagram file")->required();
  bd->add_flag("--json", bd_json, "emit JSON");
  std::string br_file;
  bool br_json = false;
  CLI::App* br = bt->add_subcommand(
      "realizable",
      "decide whether an integral diagram is realized by a finite-length "
      "module");
  br->add_option("--diagram", br_file, "JSON diagram file")->required();
  br->add_flag("--json", br_json, "emit JSON");

  // oracle
  CLI::App* oc = app.add_subcommand(
      "oracle", "numeric generic kernel/cokernel over a prime field");
  oc->require_subcommand(1);
  std::string ok_e, ok_a;
  Int ok_prime = 32003;
  int ok_trials = 20;
  std::uint64_t ok_seed = 0;
  bool ok_json = false;
  CLI::App* ok = oc->add_subcommand(
      "kernel-split", "splitting type of the kernel of a generic surjection");
  ok->add_option("--e", ok_e, "middle type")->required();
  ok->add_option("--a", ok_a, "quotient type")->required();
  ok->add_option("--prime", ok_prime, "field characteristic");
  ok->add_option("--trials", ok_trials, "independent random trials");
  ok->add_option("--seed", ok_seed, "base RNG seed");
  ok->add_flag("--json", ok_json, "emit JSON");
  std::string oc_b, oc_e;
  Int oc_prime = 32003;
  int oc_trials = 20;
  std::uint64_t oc_seed = 0;
  bool oc_json = false;
  CLI::App* ok2 = oc->add_subcommand(
      "cokernel-split",
      "splitting type of the cokernel of a generic subbundle inclusion");
  ok2->add_option("--b", oc_b, "kernel type")->required();
  ok2->add_option("--e", oc_e, "middle type")->required();
  ok2->add_option("--prime", oc_prime, "field characteristic");
  ok2->add_option("--trials", oc_trials, "independent random trials");
  ok2->add_option("--seed", oc_seed, "base RNG seed");
  ok2->add_flag("--json", oc_json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (rz->parsed()) {
    Triple t = rz_args.parse();
    quotkit::Verdict v = quotkit::realizable(t);
    if (rz_json) {
      json out;
      out["realizable"] = v.value;
      if (v.value) {
        out["datum"] = datum_json(*v.datum);
      } else {
        out["witness"] = v.failure->describe();
      }
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << "realizable: " << (v.value ? "yes" : "no") << "\n";
      if (v.value) {
        print_datum(std::cout, *v.datum);
      } else {
        std::cout << "witness: " << v.failure->describe() << "\n";
      }
    }
    return 0;
  }

  if (ib->parsed()) {
    Triple t = ib_args.parse();
    quotkit::BalanceOrder order = ib_order == "quotient-first"
                                      ? quotkit::BalanceOrder::quotient_first
                                      : quotkit::BalanceOrder::kernel_first;
    quotkit::IBTrace trace = quotkit::iterative_balancing(t.e, t.b, t.a, order);
    if (ib_json) {
      json states = json::array();
      for (const auto& s : trace.states) states.push_back(pair_json(s));
      std::cout << json{{"states", states}}.dump(2) << "\n";
    } else {
      for (const auto& s : trace.states) std::cout << s.str() << "\n";
    }
    return 0;
  }

  if (cs->parsed()) {
    Triple t = cs_args.parse();
    quotkit::BalancingDatum d = quotkit::construct_datum(t);
    quotkit::SESCertificate cert = quotkit::certify_ses(t);
    if (cs_json) {
      json out = datum_json(d);
      out["G"] = matrix_json(cert.G);
      out["C"] = matrix_json(cert.C);
      out["checks"] = json{{"composition_zero", cert.composition_zero},
                           {"G_surjective", cert.G_surjective},
                           {"C_injective_lf", cert.C_injective_lf},
                           {"degrees_ok", cert.degrees_ok},
                           {"all", cert.all_checks()}};
      std::cout << out.dump(2) << "\n";
    } else {
      print_datum(std::cout, d);
      print_matrix(std::cout, "G", cert.G);
      print_matrix(std::cout, "C", cert.C);
      std::cout << "checks: composition_zero="
                << (cert.composition_zero ? "yes" : "no")
                << " G_surjective=" << (cert.G_surjective ? "yes" : "no")
                << " C_injective_lf=" << (cert.C_injective_lf ? "yes" : "no")
                << " degrees_ok=" << (cert.degrees_ok ? "yes" : "no") << "\n";
    }
    return 0;
  }

  if (cp->parsed()) {
    SplittingType e = SplittingType::parse(cp_e);
    auto recs = cp_all
                    ? quotkit::enumerate_stable_pairs(e, static_cast<int>(cp_n),
                                                      cp_d)
                    : quotkit::component_census(e, static_cast<int>(cp_n), cp_d);
    if (cp_json) {
      json arr = json::array();
      for (const auto& r : recs) arr.push_back(record_json(r));
      std::cout << json{{"count", recs.size()},
                        {cp_all ? "stable_pairs" : "components", arr}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << (cp_all ? "stable pairs: " : "components: ") << recs.size()
                << "\n";
      if (!recs.empty()) print_component_table(std::cout, recs, cp_all);
    }
    return 0;
  }

  if (ir->parsed()) {
    SplittingType e = SplittingType::parse(ir_e);
    quotkit::IrreducibilityReport rep =
        quotkit::irreducible_report(e, static_cast<int>(ir_n), ir_d);
    if (ir_json) {
      std::cout << json{{"irreducible", rep.irreducible},
                        {"mb_quotient", type_json(rep.mb_quotient)},
                        {"mb_kernel", type_json(rep.mb_kernel)},
                        {"sufficient_bound", rep.sufficient_bound}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "irreducible: " << (rep.irreducible ? "yes" : "no") << "\n"
                << "most balanced quotient: " << type_str(rep.mb_quotient)
                << "\n"
                << "most balanced kernel: " << type_str(rep.mb_kernel) << "\n"
                << "sufficient bound: " << (rep.sufficient_bound ? "yes" : "no")
                << "\n";
    }
    return 0;
  }

  if (cn->parsed()) {
    SplittingType e = SplittingType::parse(cn_e);
    quotkit::ConnectivityCertificate cert =
        quotkit::connectedness_certificate(e, static_cast<int>(cn_n), cn_d);
    if (cn_json) {
      json nodes = json::array();
      for (const auto& r : cert.nodes) nodes.push_back(record_json(r));
      json chains = json::array();
      for (const auto& ch : cert.chains) {
        json states = json::array();
        for (const auto& s : ch.states) states.push_back(pair_json(s));
        chains.push_back(states);
      }
      std::cout << json{{"connected", cert.connected},
                        {"failure", cert.failure},
                        {"root", pair_json(cert.root)},
                        {"nodes", nodes},
                        {"chains", chains}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "connected: " << (cert.connected ? "yes" : "no") << "\n";
      if (!cert.failure.empty()) std::cout << "failure: " << cert.failure << "\n";
      std::cout << "components: " << cert.nodes.size() << "\n"
                << "root: " << cert.root.str() << "\n";
      for (std::size_t i = 0; i < cert.chains.size(); ++i) {
        std::cout << "chain " << i + 1 << " (" << cert.chains[i].states.size()
                  << " states):\n";
        for (const auto& s : cert.chains[i].states) {
          std::cout << "  " << s.str() << "\n";
        }
      }
    }
    return 0;
  }

  if (bd->parsed()) {
    quotkit::BettiDiagram beta = load_diagram(bd_file);
    quotkit::Decomposition dec = quotkit::decompose(beta);
    if (bd_json) {
      json parts = json::array();
      for (const auto& [c, pure] : dec.parts) {
        parts.push_back(
            json{{"coeff", rat_json(c)},
                 {"degrees", json::array({pure.d0, pure.d1, pure.d2})},
                 {"multiplicities", json::array({pure.m0, pure.m1, pure.m2})}});
      }
      std::cout << json{{"in_cone", dec.in_cone}, {"parts", parts}}.dump(2)
                << "\n";
    } else {
      std::cout << "in cone: " << (dec.in_cone ? "yes" : "no") << "\n";
      if (dec.in_cone) {
        for (const auto& [c, pure] : dec.parts) {
          std::cout << "  " << c.str() << " x pure(" << pure.d0 << ","
                    << pure.d1 << "," << pure.d2 << " ; " << pure.m0 << ","
                    << pure.m1 << "," << pure.m2 << ")\n";
        }
      }
    }
    return 0;
  }

  if (br->parsed()) {
    quotkit::BettiDiagram beta = load_diagram(br_file);
    bool ok_flag = quotkit::lattice_point_realizable(beta);
    if (br_json) {
      std::cout << json{{"realizable", ok_flag}}.dump(2) << "\n";
    } else {
      std::cout << "realizable: " << (ok_flag ? "yes" : "no") << "\n";
    }
    return 0;
  }

  if (ok->parsed()) {
    quotkit::OracleConfig cfg;
    cfg.prime = ok_prime;
    cfg.trials = ok_trials;
    cfg.seed = ok_seed;
    SplittingType b = quotkit::generic_kernel_split_numeric(
        SplittingType::parse(ok_e), SplittingType::parse(ok_a), cfg);
    if (ok_json) {
      std::cout << json{{"b", type_json(b)},
                        {"prime", cfg.prime},
                        {"trials", cfg.trials},
                        {"seed", cfg.seed}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "kernel split: " << type_str(b) << "\n"
                << "prime: " << cfg.prime << " trials: " << cfg.trials
                << " seed: " << cfg.seed << "\n";
    }
    return 0;
  }

  if (ok2->parsed()) {
    quotkit::OracleConfig cfg;
    cfg.prime = oc_prime;
    cfg.trials = oc_trials;
    cfg.seed = oc_seed;
    SplittingType a = quotkit::generic_cokernel_split_numeric(
        SplittingType::parse(oc_b), SplittingType::parse(oc_e), cfg);
    if (oc_json) {
      std::cout << json{{"a", type_json(a)},
                        {"prime", cfg.prime},
                        {"trials", cfg.trials},
                        {"seed", cfg.seed}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "cokernel split: " << type_str(a) << "\n"
                << "prime: " << cfg.prime << " trials: " << cfg.trials
                << " seed: " << cfg.seed << "\n";
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const quotkit::GuardError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const quotkit::ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const quotkit::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
}
