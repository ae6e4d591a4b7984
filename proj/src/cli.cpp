#include "amp/cli.hpp"

#include "amp/affine_hecke.hpp"
#include "amp/amplifier.hpp"
#include "amp/archgeom.hpp"
#include "amp/rootdata.hpp"
#include "amp/sympair.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace amp {

namespace {

using Json = nlohmann::json;

// nlohmann objects iterate in key order, so dump(2) is canonical: the same
// document always serializes to the same bytes.
void emit_json(const Json& doc, std::ostream& out) { out << doc.dump(2) << '\n'; }

Json big_to_json(const BigInt& n) {
  if (n.fits_slong_p()) return static_cast<long long>(n.get_si());
  return n.get_str();  // decimal string once past 64 bits, never floated
}

std::string join_ints(const IntVec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string join_bigints(const std::vector<BigInt>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ' ';
    out += v[i].get_str();
  }
  return out;
}

Rat parse_rat_text(const std::string& text, const std::string& what) {
  const auto is_integer_token = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const std::size_t slash = text.find('/');
  const std::string num = slash == std::string::npos ? text : text.substr(0, slash);
  const std::string den = slash == std::string::npos ? std::string("1") : text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den))
    throw invalid_input(what + " must be an integer or a p/q rational, got \"" + text + "\"");
  const BigInt n(num), d(den);
  if (d == 0) throw invalid_input(what + " has a zero denominator: \"" + text + "\"");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

IntVec parse_lambda_text(const std::string& text) {
  const auto fail = [&text]() -> void {
    throw invalid_input("lambda must be a comma-separated list of integers, got \"" + text + "\"");
  };
  if (text.empty()) fail();
  IntVec out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string token =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;  // from_chars accepts '-' but not '+'
    Int value = 0;
    const auto parsed = std::from_chars(first, last, value);
    if (first == last || parsed.ec != std::errc() || parsed.ptr != last) fail();
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

Model parse_model(const std::string& name) {
  if (name == "h2") return Model::H2;
  if (name == "h3") return Model::H3;
  throw invalid_input("model must be h2 or h3, got \"" + name + "\"");
}

void validate_config(const RunConfig& config) {
  if (config.output != "json" && config.output != "csv" && config.output != "text")
    throw invalid_input("output must be json, csv, or text, got \"" + config.output + "\"");
  const bool known = config.command == "catalog" || config.command == "analyze-pair" ||
                     config.command == "coset-count" || config.command == "amplifier-plan" ||
                     config.command == "verify-arch";
  if (!known) throw invalid_input("unknown command \"" + config.command + "\"");
  if ((config.command == "analyze-pair" || config.command == "amplifier-plan") &&
      config.pair_label.empty())
    throw invalid_input(config.command + " needs a pair label");
  if (config.command == "coset-count") {
    if (config.datum_type.empty()) throw invalid_input("coset-count needs a root datum type");
    if (config.lambda.empty()) throw invalid_input("coset-count needs a nonempty lambda");
    if (config.q < 2) throw invalid_input("q must be at least 2, got " + std::to_string(config.q));
  }
  if (config.command == "amplifier-plan" && config.big_p < 2)
    throw invalid_input("P must be at least 2, got " + std::to_string(config.big_p));
  if (config.command == "verify-arch") parse_model(config.model);
}

int run_catalog(const RunConfig& config, std::ostream& out) {
  const auto pairs = catalog();
  struct Row {
    const SymmetricPair* pair;
    Classification cls;
    std::optional<LargenessWitness> witness;
  };
  std::vector<Row> rows;
  rows.reserve(pairs.size());
  for (const auto& pair : pairs) rows.push_back({&pair, classify(pair), is_H_large(pair)});

  if (config.output == "json") {
    Json list = Json::array();
    for (const auto& row : rows) {
      Json entry = {
          {"label", row.pair->label},
          {"description", row.pair->description},
          {"group", row.pair->g.name},
          {"subgroup", row.pair->h.name},
          {"classification", to_string(row.cls.tag)},
          {"theta_split_rank", row.cls.theta_split_rank},
          {"levi_is_torus", row.cls.levi_is_torus},
          {"h_large", row.witness.has_value()},
          {"witness", nullptr},
          {"margin", nullptr},
      };
      if (row.witness) {
        entry["witness"] = row.witness->mu;
        entry["margin"] = rat_to_string(row.witness->margin);
      }
      list.push_back(std::move(entry));
    }
    const Json doc = {
        {"schema_version", 1},
        {"command", "catalog"},
        {"count", rows.size()},
        {"pairs", list},
        {"methods",
         {{"classification",
           "rank of the (-1)-eigenlattice of the involution, then whether any root vanishes on it"},
          {"h_large",
           "sign of the margin over the cones cut by the H-roots and pulled-back G-roots, "
           "cross-checked by bounded-height search"},
          {"margin", "2|mu|*_H - |embed(mu)|* at the reported witness"}}},
    };
    emit_json(doc, out);
  } else if (config.output == "csv") {
    out << "label,group,subgroup,classification,theta_split_rank,levi_is_torus,h_large,witness,"
           "margin\n";
    for (const auto& row : rows) {
      out << row.pair->label << ',' << row.pair->g.name << ',' << row.pair->h.name << ','
          << to_string(row.cls.tag) << ',' << row.cls.theta_split_rank << ','
          << (row.cls.levi_is_torus ? "true" : "false") << ','
          << (row.witness ? "true" : "false") << ',';
      if (row.witness) out << join_ints(row.witness->mu);
      out << ',';
      if (row.witness) out << rat_to_string(row.witness->margin);
      out << '\n';
    }
  } else {
    std::size_t width = 4;
    for (const auto& row : rows) width = std::max(width, row.pair->label.size());
    out << std::left << std::setw(static_cast<int>(width)) << "pair"
        << "  class  split  h-large  margin\n";
    for (const auto& row : rows) {
      out << std::left << std::setw(static_cast<int>(width)) << row.pair->label << "  "
          << std::setw(7) << to_string(row.cls.tag) << std::setw(7) << row.cls.theta_split_rank
          << std::setw(9) << (row.witness ? "yes" : "no")
          << (row.witness ? rat_to_string(row.witness->margin) : "-") << '\n';
    }
  }
  return 0;
}

int run_analyze_pair(const RunConfig& config, std::ostream& out) {
  const auto pairs = catalog();
  const SymmetricPair& pair = find_pair(pairs, config.pair_label);
  const Classification cls = classify(pair);
  const auto witness = is_H_large(pair);

  if (config.output == "json") {
    Json doc = {
        {"schema_version", 1},
        {"command", "analyze-pair"},
        {"pair", pair.label},
        {"description", pair.description},
        {"group", pair.g.name},
        {"subgroup", pair.h.name},
        {"classification", to_string(cls.tag)},
        {"theta_split_rank", cls.theta_split_rank},
        {"absolute_rank", cls.absolute_rank},
        {"levi_is_torus", cls.levi_is_torus},
        {"rank_coherent", rank_coherent(pair)},
        {"h_large", witness.has_value()},
        {"witness", nullptr},
        {"margin", nullptr},
        {"witness_norm_h", nullptr},
        {"witness_norm_g", nullptr},
        {"methods",
         {{"classification",
           "rank of the (-1)-eigenlattice of the involution, then whether any root vanishes on it"},
          {"h_large",
           "sign of the margin over the cones cut by the H-roots and pulled-back G-roots, "
           "cross-checked by bounded-height search"},
          {"margin", "2|mu|*_H - |embed(mu)|* at the reported witness"}}},
    };
    if (witness) {
      doc["witness"] = witness->mu;
      doc["margin"] = rat_to_string(witness->margin);
      doc["witness_norm_h"] = rat_to_string(witness->norm_h);
      doc["witness_norm_g"] = rat_to_string(witness->norm_g);
    }
    emit_json(doc, out);
  } else if (config.output == "csv") {
    out << "label,group,subgroup,classification,theta_split_rank,levi_is_torus,h_large,witness,"
           "margin\n";
    out << pair.label << ',' << pair.g.name << ',' << pair.h.name << ',' << to_string(cls.tag)
        << ',' << cls.theta_split_rank << ',' << (cls.levi_is_torus ? "true" : "false") << ','
        << (witness ? "true" : "false") << ',';
    if (witness) out << join_ints(witness->mu);
    out << ',';
    if (witness) out << rat_to_string(witness->margin);
    out << '\n';
  } else {
    out << "pair: " << pair.label << '\n';
    out << "description: " << pair.description << '\n';
    out << "group: " << pair.g.name << '\n';
    out << "subgroup: " << pair.h.name << '\n';
    out << "classification: " << to_string(cls.tag) << '\n';
    out << "theta_split_rank: " << cls.theta_split_rank << '\n';
    out << "levi_is_torus: " << (cls.levi_is_torus ? "yes" : "no") << '\n';
    out << "h_large: " << (witness ? "yes" : "no") << '\n';
    if (witness) {
      out << "witness: " << join_ints(witness->mu) << '\n';
      out << "margin: " << rat_to_string(witness->margin) << '\n';
      out << "witness_norm_h: " << rat_to_string(witness->norm_h) << '\n';
      out << "witness_norm_g: " << rat_to_string(witness->norm_g) << '\n';
    }
  }
  return 0;
}

int run_coset_count(const RunConfig& config, std::ostream& out) {
  const RootDatum rd = build_root_datum(config.datum_type);
  if (static_cast<int>(config.lambda.size()) != rd.rank)
    throw invalid_input("lambda has " + std::to_string(config.lambda.size()) +
                        " coordinates but " + rd.name + " has rank " + std::to_string(rd.rank));
  const HeckeCountPolynomial poly = double_coset_count(rd, config.lambda);
  const BigInt value = evaluate_count(poly, config.q);
  const Rat norm = norm_star(rd, to_rational(config.lambda));
  const Rat ratio = coset_growth_ratio(rd, config.lambda, config.q);

  if (config.output == "json") {
    Json coeffs = Json::array();
    for (const auto& c : poly.coeffs) coeffs.push_back(big_to_json(c));
    Json divisor = Json::array();
    for (const auto& c : poly.weyl_divisor) divisor.push_back(big_to_json(c));
    const Json doc = {
        {"schema_version", 1},
        {"command", "coset-count"},
        {"type", rd.name},
        {"lambda", config.lambda},
        {"q", config.q},
        {"polynomial", coeffs},
        {"weyl_divisor", divisor},
        {"value", big_to_json(value)},
        {"norm_star", rat_to_string(norm)},
        {"ratio", rat_to_string(ratio)},
        {"methods",
         {{"polynomial",
           "sum of q^length over the spherical double coset, divided exactly by the Weyl "
           "q-factor; coefficients ascending"},
          {"value", "count polynomial evaluated at q"},
          {"norm_star", "max over the Weyl orbit of the pairing with rho"},
          {"ratio", "value / q^(2 norm_star)"}}},
    };
    emit_json(doc, out);
  } else if (config.output == "csv") {
    out << "type,lambda,q,value,norm_star,ratio,polynomial\n";
    out << rd.name << ',' << join_ints(config.lambda) << ',' << config.q << ',' << value.get_str()
        << ',' << rat_to_string(norm) << ',' << rat_to_string(ratio) << ','
        << join_bigints(poly.coeffs) << '\n';
  } else {
    out << "type: " << rd.name << '\n';
    out << "lambda: " << join_ints(config.lambda) << '\n';
    out << "q: " << config.q << '\n';
    out << "polynomial (ascending coefficients): " << join_bigints(poly.coeffs) << '\n';
    out << "value: " << value.get_str() << '\n';
    out << "norm_star: " << rat_to_string(norm) << '\n';
    out << "ratio: " << rat_to_string(ratio) << '\n';
  }
  return 0;
}

int run_amplifier_plan(const RunConfig& config, std::ostream& out) {
  const Rat a_exp = parse_rat_text(config.amp_a, "A");
  const Rat delta0 = parse_rat_text(config.delta0, "delta0");
  const Rat eta = parse_rat_text(config.eta, "eta");
  const Rat epsilon = parse_rat_text(config.epsilon, "epsilon");
  const auto pairs = catalog();
  const SymmetricPair& pair = find_pair(pairs, config.pair_label);
  const auto witness = is_H_large(pair);

  if (!witness) {
    if (config.output == "json") {
      const Json doc = {
          {"schema_version", 1}, {"command", "amplifier-plan"},
          {"pair", pair.label},  {"h_large", false},
          {"plan", nullptr},     {"budget", nullptr},
          {"note", "pair is not H-large, so no amplifier witness exists"},
      };
      emit_json(doc, out);
    } else if (config.output == "csv") {
      out << "pair,h_large,q,exponent,exact\n";
      out << pair.label << ",false,,,\n";
    } else {
      out << "pair: " << pair.label << '\n';
      out << "h_large: no\n";
      out << "no amplifier witness exists\n";
    }
    return 0;
  }

  const AmplifierPlan plan = build_amplifier(pair, witness->mu, config.big_p, pair.rep_weights);
  const ExponentBudget budget =
      exponent_budget(a_exp, plan.support_exponent_B, delta0, eta, epsilon);
  std::vector<std::pair<Int, PeriodBound>> bounds;
  bounds.reserve(plan.S.size());
  for (const auto& place : plan.S)
    bounds.emplace_back(place.q, period_lower_bound(pair, plan.nu, place.q));

  if (config.output == "json") {
    Json places = Json::array();
    for (const auto& place : plan.S) places.push_back(place.q);
    Json period_bounds = Json::object();
    for (const auto& [q, bound] : bounds) {
      Json entry = {
          {"base", bound.bound.base},
          {"exponent", rat_to_string(bound.bound.exponent)},
          {"exact", nullptr},
      };
      if (bound.exact) entry["exact"] = rat_to_string(*bound.exact);
      period_bounds[std::to_string(q)] = std::move(entry);
    }
    const Json doc = {
        {"schema_version", 1},
        {"command", "amplifier-plan"},
        {"pair", pair.label},
        {"h_large", true},
        {"P", config.big_p},
        {"nu", plan.nu},
        {"margin", rat_to_string(witness->margin)},
        {"S", places},
        {"degenerate", plan.degenerate},
        {"period_bounds", period_bounds},
        {"plan",
         {{"norm_nu", rat_to_string(plan.norm_nu)},
          {"norm_nu_H", rat_to_string(plan.norm_nu_H)},
          {"support_exponent_B", rat_to_string(plan.support_exponent_B)},
          {"coset_exponent_C", rat_to_string(plan.coset_exponent_C)},
          {"sup_bound_constant", rat_to_string(plan.sup_bound_constant)},
          {"sup_bound_exponent", plan.sup_bound_exponent},
          {"k_S_at_identity", rat_to_string(plan.k_S_at_identity)}}},
        {"budget",
         {{"A", rat_to_string(budget.A)},
          {"B", rat_to_string(budget.B)},
          {"delta0", rat_to_string(budget.delta0)},
          {"eta", rat_to_string(budget.eta)},
          {"epsilon", rat_to_string(budget.epsilon)},
          {"c", rat_to_string(budget.c)},
          {"delta", rat_to_string(budget.delta)},
          {"grid_certified", budget.grid_certified},
          {"worst_error_factor", budget.worst_error_factor}}},
        {"methods",
         {{"S", "primes in [P/2, P)"},
          {"nu", "H-largeness witness cocharacter"},
          {"period_bounds",
           "per place, the certified local period lower bound q^(2|nu|*_H - |embed(nu)|*)"},
          {"budget",
           "c = delta0/(2A), delta = c(1-epsilon)/2, certified on a log grid of (1+|xi|)N"},
          {"sup_bound",
           "off-diagonal supports are disjoint, plus at most P diagonal terms capped by the "
           "growth ratio"}}},
    };
    emit_json(doc, out);
  } else if (config.output == "csv") {
    out << "pair,h_large,q,exponent,exact\n";
    if (bounds.empty()) {
      out << pair.label << ",true,,,\n";
    } else {
      for (const auto& [q, bound] : bounds) {
        out << pair.label << ",true," << q << ',' << rat_to_string(bound.bound.exponent) << ',';
        if (bound.exact) out << rat_to_string(*bound.exact);
        out << '\n';
      }
    }
  } else {
    out << "pair: " << pair.label << '\n';
    out << "h_large: yes\n";
    out << "nu: " << join_ints(plan.nu) << '\n';
    out << "margin: " << rat_to_string(witness->margin) << '\n';
    out << "P: " << config.big_p << '\n';
    out << "S:";
    for (const auto& place : plan.S) out << ' ' << place.q;
    out << '\n';
    out << "degenerate: " << (plan.degenerate ? "yes" : "no") << '\n';
    out << "norm_nu: " << rat_to_string(plan.norm_nu) << '\n';
    out << "norm_nu_H: " << rat_to_string(plan.norm_nu_H) << '\n';
    out << "support_exponent_B: " << rat_to_string(plan.support_exponent_B) << '\n';
    out << "coset_exponent_C: " << rat_to_string(plan.coset_exponent_C) << '\n';
    out << "sup_bound: " << rat_to_string(plan.sup_bound_constant) << " * P^"
        << plan.sup_bound_exponent << '\n';
    out << "k_S_at_identity: " << rat_to_string(plan.k_S_at_identity) << '\n';
    out << "period bounds:\n";
    for (const auto& [q, bound] : bounds) {
      out << "  q=" << q << ": " << q << '^' << rat_to_string(bound.bound.exponent);
      if (bound.exact) out << "  (exact " << rat_to_string(*bound.exact) << ')';
      out << '\n';
    }
    out << "budget: c = " << rat_to_string(budget.c) << ", delta = " << rat_to_string(budget.delta)
        << ", grid_certified = " << (budget.grid_certified ? "yes" : "no") << '\n';
  }
  return 0;
}

int run_verify_arch(const RunConfig& config, std::ostream& out) {
  const Model model = parse_model(config.model);
  const auto checks = verify_arch_suite(model, config.suite, config.seed);
  bool all_pass = true;
  for (const auto& check : checks) all_pass = all_pass && check.pass;

  if (config.output == "json") {
    Json reports = Json::array();
    for (const auto& check : checks) {
      Json fitted = Json::object();
      for (const auto& [name, value] : check.fitted) fitted[name] = value;
      reports.push_back({{"suite", check.name},
                         {"pass", check.pass},
                         {"worst_case", check.worst},
                         {"grid", check.grid},
                         {"fitted_constants", fitted}});
    }
    const Json doc = {
        {"schema_version", 1},
        {"command", "verify-arch"},
        {"model", to_string(model)},
        {"suite", config.suite},
        {"seed", config.seed},
        {"pass", all_pass},
        {"reports", reports},
        {"methods",
         {{"reports",
           "each check rescans its declared grid and compares against the frozen constants"}}},
    };
    emit_json(doc, out);
  } else if (config.output == "csv") {
    out << "model,suite,pass,worst_case\n";
    for (const auto& check : checks) {
      out << to_string(model) << ',' << check.name << ',' << (check.pass ? "true" : "false") << ','
          << check.worst << '\n';
    }
  } else {
    out << "model: " << to_string(model) << '\n';
    out << "suite: " << config.suite << '\n';
    out << "seed: " << config.seed << '\n';
    for (const auto& check : checks) {
      out << std::left << std::setw(14) << check.name << (check.pass ? "pass" : "FAIL")
          << "  worst " << check.worst << '\n';
    }
    out << "overall: " << (all_pass ? "pass" : "FAIL") << '\n';
  }
  return all_pass ? 0 : 3;
}

struct ParsedCommandLine {
  RunConfig config;
  bool help = false;
  std::string help_text;
};

ParsedCommandLine parse_command_line(const std::vector<std::string>& args) {
  ParsedCommandLine result;
  RunConfig& config = result.config;
  std::string lambda_text;
  std::string config_path;

  CLI::App app{
      "spherical coset growth, symmetric pair largeness, amplifier budgets, and rank one "
      "verification suites"};
  app.name("amptool");
  app.require_subcommand(0, 1);
  app.add_option("--config", config_path,
                 "JSON file {\"config_version\": 1, \"command\": ...} replacing the flags")
      ->type_name("FILE");

  const auto add_output = [&config](CLI::App* sub) {
    sub->add_option("--output", config.output, "report format: json, csv, or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_flag_callback(
        "--json", [&config] { config.output = "json"; }, "shorthand for --output json");
  };

  CLI::App* cat =
      app.add_subcommand("catalog", "list the symmetric pairs with classification and largeness");
  add_output(cat);

  CLI::App* analyze =
      app.add_subcommand("analyze-pair", "largeness verdict and classification for one pair");
  analyze->add_option("--pair", config.pair_label, "catalog label, e.g. maclachlan-reid")
      ->required();
  add_output(analyze);

  CLI::App* coset = app.add_subcommand(
      "coset-count", "spherical double coset count polynomial and growth ratio");
  coset->add_option("--type", config.datum_type, "root datum name, e.g. A2, B2, GL2, A1xA1")
      ->required();
  coset->add_option("--lambda", lambda_text, "cocharacter coordinates, e.g. 1,0")->required();
  coset->add_option("--q", config.q, "residue field size (>= 2)");
  add_output(coset);

  CLI::App* plan = app.add_subcommand(
      "amplifier-plan", "places, period bounds, and exponent budget for one pair");
  plan->add_option("--pair", config.pair_label, "catalog label")->required();
  plan->add_option("--P", config.big_p, "amplifier length (>= 2)")->required();
  plan->add_option("--A", config.amp_a, "trace formula error exponent, integer or p/q");
  plan->add_option("--delta0", config.delta0, "density saving exponent, integer or p/q");
  plan->add_option("--eta", config.eta, "spectral window exponent, integer or p/q");
  plan->add_option("--epsilon", config.epsilon, "slack in the place-sum gain, integer or p/q");
  add_output(plan);

  CLI::App* arch = app.add_subcommand(
      "verify-arch", "rescan the rank one geometric checks against the frozen constants");
  arch->add_option("--model", config.model, "h2 or h3")->check(CLI::IsMember({"h2", "h3"}));
  arch->add_option("--suite", config.suite, "check name or \"all\"");
  arch->add_option("--seed", config.seed, "Monte Carlo seed");
  add_output(arch);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("amptool");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    const auto parsed = app.get_subcommands();
    if (!parsed.empty()) target = parsed.front();
    result.help = true;
    result.help_text = target->help();
    return result;
  } catch (const CLI::ParseError& e) {
    throw invalid_input(std::string("argument error: ") + e.what());
  }

  if (!config_path.empty()) {
    if (!app.get_subcommands().empty())
      throw invalid_input("--config replaces the subcommand; give one or the other");
    result.config = parse_config_file(config_path);
    return result;
  }
  const auto parsed = app.get_subcommands();
  if (parsed.empty()) throw invalid_input("no command given (try --help)");
  config.command = parsed.front()->get_name();
  if (config.command == "coset-count") config.lambda = parse_lambda_text(lambda_text);
  return result;
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  const ParsedCommandLine parsed = parse_command_line(args);
  if (parsed.help) throw invalid_input("help requested");
  return parsed.config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open config file " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw invalid_input(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw invalid_input("config file must be a JSON object");
  if (!doc.contains("config_version"))
    throw invalid_input("config file is missing config_version (expected 1)");
  if (!doc["config_version"].is_number_integer() || doc["config_version"].get<long long>() != 1)
    throw invalid_input("unsupported config_version (expected 1)");

  const auto as_string = [](const Json& value, const char* key) {
    if (!value.is_string())
      throw invalid_input(std::string("config key ") + key + " must be a string");
    return value.get<std::string>();
  };
  const auto as_int = [](const Json& value, const char* key) {
    if (!value.is_number_integer())
      throw invalid_input(std::string("config key ") + key + " must be an integer");
    return value.get<long long>();
  };
  const auto as_rat_text = [](const Json& value, const char* key) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number_integer()) return std::to_string(value.get<long long>());
    throw invalid_input(std::string("config key ") + key +
                        " must be an integer or a \"p/q\" string");
  };

  RunConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "config_version") continue;
    if (key == "command") {
      config.command = as_string(value, "command");
    } else if (key == "pair") {
      config.pair_label = as_string(value, "pair");
    } else if (key == "type") {
      config.datum_type = as_string(value, "type");
    } else if (key == "lambda") {
      if (!value.is_array()) throw invalid_input("config key lambda must be an array of integers");
      config.lambda.clear();
      for (const auto& entry : value) config.lambda.push_back(as_int(entry, "lambda"));
    } else if (key == "q") {
      config.q = as_int(value, "q");
    } else if (key == "P") {
      config.big_p = as_int(value, "P");
    } else if (key == "A") {
      config.amp_a = as_rat_text(value, "A");
    } else if (key == "delta0") {
      config.delta0 = as_rat_text(value, "delta0");
    } else if (key == "eta") {
      config.eta = as_rat_text(value, "eta");
    } else if (key == "epsilon") {
      config.epsilon = as_rat_text(value, "epsilon");
    } else if (key == "model") {
      config.model = as_string(value, "model");
    } else if (key == "suite") {
      config.suite = as_string(value, "suite");
    } else if (key == "seed") {
      const long long seed = as_int(value, "seed");
      if (seed < 0 || seed > static_cast<long long>(std::numeric_limits<unsigned>::max()))
        throw invalid_input("config key seed is out of range");
      config.seed = static_cast<unsigned>(seed);
    } else if (key == "output") {
      config.output = as_string(value, "output");
    } else {
      throw invalid_input("unknown config key: " + key);
    }
  }
  if (config.command.empty()) throw invalid_input("config file must set \"command\"");
  return config;
}

int run(const RunConfig& config, std::ostream& out) {
  validate_config(config);
  if (config.command == "catalog") return run_catalog(config, out);
  if (config.command == "analyze-pair") return run_analyze_pair(config, out);
  if (config.command == "coset-count") return run_coset_count(config, out);
  if (config.command == "amplifier-plan") return run_amplifier_plan(config, out);
  return run_verify_arch(config, out);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const std::vector<std::string> args(argv + (argc > 0 ? 1 : 0), argv + argc);
    const ParsedCommandLine parsed = parse_command_line(args);
    if (parsed.help) {
      out << parsed.help_text;
      return 0;
    }
    return run(parsed.config, out);
  } catch (const invalid_input& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const consistency_error& e) {
    err << "consistency failure: " << e.what() << '\n';
    return 3;
  } catch (const numeric_error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace amp
