#pragma once

// Command dispatch for the artinloc tool. run() parses argv, executes one subcommand and
// returns the process exit code: 0 success / true verdict, 1 false verdict (check-*),
// 2 input or resource error, 3 internal invariant violation or oracle disagreement.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "artinloc/algebra.hpp"
#include "artinloc/errors.hpp"
#include "artinloc/io.hpp"
#include "artinloc/localization.hpp"
#include "artinloc/oracle.hpp"
#include "artinloc/structure.hpp"

namespace artinloc::cli {

using nlohmann::json;

enum ExitCode : int { kSuccess = 0, kFalse = 1, kInputError = 2, kInternal = 3 };

struct Request {
  std::string command;
  std::string input;
  std::string element;
  std::string generators;
  std::string side = "left";
  bool oracle = false;
  std::optional<std::uint64_t> guard;
  std::string format = "json";
  std::string output;
};

struct Response {
  int code = kSuccess;
  json body;
};

/// Guard precedence: --guard, then ARTINLOC_GUARD, then the default.
inline std::uint64_t effective_guard(const Request& req) {
  if (req.guard) return *req.guard;
  if (const char* env = std::getenv("ARTINLOC_GUARD")) {
    try {
      std::size_t used = 0;
      auto v = std::stoull(env, &used);
      if (used != std::string(env).size() || v == 0) throw std::invalid_argument("bad");
      return v;
    } catch (const std::exception&) {
      throw InputError(std::string("ARTINLOC_GUARD is not a positive integer: '") + env + "'");
    }
  }
  return oracle::kDefaultGuard;
}

struct Loaded {
  AlgebraDesc desc;
  Algebra algebra;
};

inline Loaded load_input(const Request& req) {
  if (req.input.empty()) throw InputError("--input is required");
  std::string text;
  if (req.input == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    text = io::read_file(req.input);
  }
  auto [desc, a] = io::parse_algebra_document(text, req.input);
  return {std::move(desc), std::move(a)};
}

inline Element load_element(const Loaded& in, const std::string& text) {
  if (text.empty()) throw InputError("--element is required");
  return io::parse_element(in.algebra, in.desc, io::parse_json_text(text, "--element"), "--element");
}

/// --generators takes a file holding a JSON array of elements, or the array itself inline.
inline std::vector<Element> load_generators(const Loaded& in, const std::string& arg) {
  if (arg.empty()) throw InputError("--generators is required");
  const bool inline_json = arg.find_first_not_of(" \t") != std::string::npos && arg[arg.find_first_not_of(" \t")] == '[';
  json j = io::parse_json_text(inline_json ? arg : io::read_file(arg), "--generators");
  if (!j.is_array() || j.empty()) throw InputError("--generators: expected a nonempty array of elements");
  std::vector<Element> gens;
  for (std::size_t i = 0; i < j.size(); ++i)
    gens.push_back(io::parse_element(in.algebra, in.desc, j[i], "--generators/" + std::to_string(i)));
  return gens;
}

inline Side parse_side(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  if (s == "both") return Side::twosided;
  throw InputError("--side must be left, right or both");
}

inline json blocksets_json(const std::vector<BlockSet>& sets) {
  json out = json::array();
  for (auto b : sets) out.push_back(format_blockset(b));
  return out;
}

inline json elements_json(const std::vector<Element>& xs) {
  json out = json::array();
  for (auto& x : xs) out.push_back(io::to_json(x));
  return out;
}

inline json algebra_json(const Algebra& a) { return {{"label", a.label()}, {"prime", a.p()}, {"dim", a.dim()}}; }

inline json oracle_json(const oracle::BruteResult& r) {
  json j = {{"is_den", r.is_den}, {"is_ore", r.is_ore}, {"is_reversible", r.is_reversible}};
  if (r.ass) j["ass_dim"] = r.ass->dim();
  if (r.is_den) j["core"] = elements_json(r.core);
  if (r.counterexample) j["counterexample"] = {{"s", io::to_json(r.counterexample->first)}, {"r", io::to_json(r.counterexample->second)}};
  if (!r.failure.empty()) j["failure"] = r.failure;
  return j;
}

/// Marks a disagreement between criterion and oracle.
inline void flag_disagreement(Response& resp, const std::string& what) {
  resp.code = kInternal;
  resp.body["bug_report"]["disagreements"].push_back(what);
  resp.body["bug_report"]["message"] = "criterion and brute-force oracle disagree; please report with this output";
}

// ---------------------------------------------------------------------------

inline Response cmd_report(const Request& req, const Loaded& in, std::uint64_t guard) {
  const Algebra& a = in.algebra;
  Side side = parse_side(req.side);
  IdempotentFamily fam = block_decomposition(a);
  Response resp;
  auto one = [&](Side sd) { return io::to_json(localization_report(a, fam, sd, {guard})); };
  if (side == Side::twosided) resp.body = {{"left", one(Side::left)}, {"right", one(Side::right)}};
  else resp.body = one(side);

  if (req.oracle) {
    Ideal brute = oracle::brute_radical(a, guard);
    resp.body["oracle"]["radical_agrees"] = brute == fam.rad;
    if (!(brute == fam.rad)) flag_disagreement(resp, "radical");
    // Every e_I from the report must give a denominator set {1, e} with ass (1-e)R.
    std::vector<Side> sides = side == Side::twosided ? std::vector<Side>{Side::left, Side::right} : std::vector<Side>{side};
    for (Side sd : sides) {
      LocalizationReport rep = localization_report(a, fam, sd, {guard});
      for (auto& le : rep.loc_entries) {
        auto r = oracle::brute_denominator_check(a, oracle::make_set({a.one(), le.e}), sd, guard);
        bool ok = r.is_den && r.ass && r.ass->space == le.ass.space;
        if (!ok) flag_disagreement(resp, std::string(to_string(sd)) + " idempotent " + format_blockset(le.set));
      }
    }
  }
  return resp;
}

inline Response cmd_check_powers(const Request& req, const Loaded& in, std::uint64_t guard) {
  const Algebra& a = in.algebra;
  Element s = load_element(in, req.element);
  Side side = parse_side(req.side);
  Response resp;
  json& b = resp.body;
  b["algebra"] = algebra_json(a);
  b["element"] = io::to_json(s);
  b["side"] = req.side;
  bool verdict = false;
  std::optional<Ideal> ass;
  std::vector<Element> predicted_core;
  oracle::FiniteSet closure;
  if (req.oracle) closure = oracle::monoid_closure(a, {s}, guard);

  if (side == Side::twosided) {
    TwoSidedReport tr = two_sided_report(a);
    TwoSidedPowersVerdict v = two_sided_powers_criterion(a, tr, s);
    verdict = v.is_den;
    b["nilpotent"] = v.nilpotent;
    json comps = json::array();
    for (auto c : v.components) comps.push_back(c == ComponentKind::unit ? "unit" : c == ComponentKind::nilpotent ? "nilpotent" : "other");
    b["components"] = comps;
    if (v.is_den) {
      ass = v.ass;
      b["e"] = io::to_json(v.e);
      b["ass_dim"] = v.ass.dim();
      b["ass_basis"] = io::to_json(v.ass.space);
      b["quotient_dim"] = a.dim() - v.ass.dim();
      b["unit_factors"] = format_blockset(v.unit_factors);
      for (auto& x : closure.members)
        if (v.in_core(a, x)) predicted_core.push_back(x);
    }
  } else {
    Algebra w = side == Side::left ? a : opposite_algebra(a);
    PowersVerdict v = powers_denominator_criterion(w, s);
    verdict = v.is_den;
    b["nilpotent"] = v.nilpotent;
    b["n"] = v.assoc.n;
    b["e"] = io::to_json(v.assoc.e);
    b["e_prime"] = io::to_json(v.assoc.e_prime);
    b["triangular"] = v.triangular;
    b["corner_nilpotent"] = v.corner_nilpotent;
    if (v.is_den) {
      const auto& d = *v.descriptor;
      ass = d.ass;
      b["ass_dim"] = d.ass.dim();
      b["ass_basis"] = io::to_json(d.ass.space);
      b["quotient_dim"] = d.quotient.algebra.dim();
      b["core_min_exponent"] = *d.core_min_exponent;
      if (req.oracle) {
        // {s^i : i >= m}
        std::set<Element> seen;
        for (Element x = w.pow(s, *d.core_min_exponent); seen.insert(x).second; x = w.mul(x, s)) {}
        predicted_core.assign(seen.begin(), seen.end());
      }
    }
  }
  b["verdict"] = verdict;
  resp.code = verdict ? kSuccess : kFalse;

  if (req.oracle) {
    auto r = oracle::brute_denominator_check(a, closure, side, guard);
    json& o = b["oracle"] = oracle_json(r);
    bool agree = r.is_den == verdict;
    if (agree && verdict) agree = r.ass && ass && r.ass->space == ass->space && r.core == predicted_core;
    o["agree"] = agree;
    if (!agree) flag_disagreement(resp, "powers criterion");
  }
  return resp;
}

inline Response cmd_check_monoid(const Request& req, const Loaded& in, std::uint64_t guard) {
  const Algebra& a = in.algebra;
  std::vector<Element> gens = load_generators(in, req.generators);
  Side side = parse_side(req.side);
  Response resp;
  json& b = resp.body;
  b["algebra"] = algebra_json(a);
  b["generators"] = elements_json(gens);
  b["side"] = req.side;
  std::vector<Side> sides = side == Side::twosided ? std::vector<Side>{Side::left, Side::right} : std::vector<Side>{side};
  bool verdict = true;
  std::optional<Subspace> ass;
  for (Side sd : sides) {
    Algebra w = sd == Side::left ? a : opposite_algebra(a);
    MonoidVerdict v = monoid_denominator_decision(w, gens, guard);
    json part = {{"verdict", v.is_den}, {"closure_size", v.closure_size}, {"contains_zero", v.contains_zero}};
    if (v.is_den) {
      part["witness"] = io::to_json(*v.witness);
      part["e"] = io::to_json(v.descriptor->e);
      part["ass_dim"] = v.descriptor->ass.dim();
      part["ass_basis"] = io::to_json(v.descriptor->ass.space);
      part["quotient_dim"] = v.descriptor->quotient.algebra.dim();
      if (ass) ensure(*ass == v.descriptor->ass.space, "left and right ass differ for a two-sided denominator set");
      ass = v.descriptor->ass.space;
    }
    verdict = verdict && v.is_den;
    b[to_string(sd)] = part;
  }
  b["verdict"] = verdict;
  resp.code = verdict ? kSuccess : kFalse;
  if (req.oracle) {
    auto r = oracle::brute_denominator_check(a, oracle::monoid_closure(a, gens, guard), side, guard);
    json& o = b["oracle"] = oracle_json(r);
    bool agree = r.is_den == verdict;
    if (agree && verdict) agree = r.ass && ass && r.ass->space == *ass;
    o["agree"] = agree;
    if (!agree) flag_disagreement(resp, "monoid decision");
  }
  return resp;
}

inline Response cmd_check_idempotent(const Request& req, const Loaded& in, std::uint64_t guard) {
  const Algebra& a = in.algebra;
  Element e = load_element(in, req.element);
  Side side = parse_side(req.side);
  IdempotentCheck c = idempotent_denominator_check(a, e);
  Response resp;
  json& b = resp.body;
  b["algebra"] = algebra_json(a);
  b["element"] = io::to_json(e);
  b["side"] = req.side;
  b["left"] = c.left;
  b["right"] = c.right;
  b["twosided"] = c.twosided;
  b["central"] = c.central;
  bool verdict = side == Side::left ? c.left : side == Side::right ? c.right : c.twosided;
  b["verdict"] = verdict;
  if (verdict) {
    Algebra w = side == Side::right ? opposite_algebra(a) : a;
    Ideal ass = complement_right_ideal(w, e);
    b["ass_dim"] = ass.dim();
    b["quotient_dim"] = a.dim() - ass.dim();
  }
  resp.code = verdict ? kSuccess : kFalse;
  if (req.oracle) {
    auto r = oracle::brute_denominator_check(a, oracle::make_set({a.one(), e}), side, guard);
    json& o = b["oracle"] = oracle_json(r);
    o["agree"] = r.is_den == verdict;
    if (r.is_den != verdict) flag_disagreement(resp, "idempotent criterion");
  }
  return resp;
}

inline Response cmd_classify(const Request& req, const Loaded& in, std::uint64_t guard) {
  const Algebra& a = in.algebra;
  Element x = load_element(in, req.element);
  Side side = parse_side(req.side);
  IdempotentFamily fam = block_decomposition(a);
  Response resp;
  json& b = resp.body;
  b["algebra"] = algebra_json(a);
  b["element"] = io::to_json(x);
  b["is_unit"] = a.is_unit(x);
  b["is_idempotent"] = a.is_idempotent(x);
  b["is_nilpotent"] = a.is_nilpotent(x);
  b["is_central"] = a.is_central(x);
  std::vector<Side> sides = side == Side::twosided ? std::vector<Side>{Side::left, Side::right} : std::vector<Side>{side};
  for (Side sd : sides) {
    LocalizationReport rep = localization_report(a, fam, sd, {guard});
    ElementClass c = classify_element(a, x, rep);
    b[to_string(sd)] = {{"localizable", c.left_localizable}, {"completely_localizable", c.completely},
                        {"witnesses", blocksets_json(c.witnesses)}};
  }
  return resp;
}

inline Response cmd_dual(const Request&, const Loaded& in, std::uint64_t guard) {
  DualityReport d = duality_report(in.algebra, {guard});
  Response resp;
  json& b = resp.body;
  b["algebra"] = algebra_json(in.algebra);
  b["left_loc_count"] = d.left.loc_count();
  b["right_loc_count"] = d.right.loc_count();
  b["counts_equal"] = d.counts_equal;
  b["l_rad_dim"] = d.left.l_rad.dim();
  b["r_rad_dim"] = d.right.l_rad.dim();
  b["l_neq_r"] = d.l_neq_r;
  b["l_zero_iff_r_zero"] = d.l_zero_iff_r_zero;
  b["loc_max_equivalent"] = d.loc_max_equivalent;
  b["pairing_bijective"] = d.pairing_bijective;
  b["order_reversing"] = d.order_reversing;
  json pairs = json::array();
  for (auto& [i, ci] : d.pairing) pairs.push_back({format_blockset(i), format_blockset(ci)});
  b["pairing"] = pairs;
  b["left_minima"] = blocksets_json(d.left.tri.minimal_sets());
  b["right_minima"] = blocksets_json(d.right.tri.minimal_sets());
  return resp;
}

inline Response cmd_twosided(const Request& req, const Loaded& in, std::uint64_t) {
  const Algebra& a = in.algebra;
  TwoSidedReport tr = two_sided_report(a);
  Response resp;
  json& b = resp.body;
  b["algebra"] = algebra_json(a);
  b["t"] = tr.t;
  b["loc_count"] = tr.loc_count;
  b["central_idempotents"] = elements_json(tr.central_idempotents);
  b["factor_dims"] = tr.factor_dims;
  b["idempotent_sets"] = blocksets_json(tr.idempotent_sets);
  json md = json::array();
  for (std::size_t i = 0; i < tr.t; ++i) md.push_back(format_blockset(BlockSet{1} << i));
  b["max_den_factors"] = md;
  b["localization_radical_dim"] = 0;
  if (!req.element.empty()) {
    Element x = load_element(in, req.element);
    TwoSidedPowersVerdict v = two_sided_powers_criterion(a, tr, x);
    json mem = json::array();
    for (std::size_t i = 0; i < tr.t; ++i) mem.push_back(in_two_sided_max_den(a, tr, i, x));
    b["element"] = {{"value", io::to_json(x)}, {"powers_verdict", v.is_den}, {"in_max_den", mem}};
  }
  return resp;
}

inline Response cmd_verify(const Request& req, const Loaded& in, std::uint64_t guard) {
  const Algebra& a = in.algebra;
  Response resp;
  json checks;
  auto record = [&](const std::string& name, bool ok) {
    checks[name] = ok;
    if (!ok) resp.code = kInternal;
  };
  IdempotentFamily fam = block_decomposition(a);
  record("quotient_semisimple", radical(fam.rbar.algebra).is_zero());
  DualityReport d = duality_report(a, {guard});
  for (auto* rep : {&d.left, &d.right}) {
    const std::string sd = to_string(rep->side);
    AssIdentities ids = check_ass_identities(a, *rep);
    record(sd + ".ass_idempotent", ids.idempotent);
    record(sd + ".ass_product_is_intersection", ids.product_is_intersection);
    record(sd + ".ass_complement", ids.complement);
    record(sd + ".l_in_rad_iff_zero", ids.l_in_rad_iff_zero);
    record(sd + ".little_in_l", ids.little_in_l);
    record(sd + ".completely_localizable_bundle", rep->bundle.consistent());
    record(sd + ".minima_shape", minima_shape_consistent(report_algebra(a, *rep), fam, rep->tri));
  }
  record("dual.counts_equal", d.counts_equal);
  record("dual.pairing_bijective", d.pairing_bijective);
  record("dual.order_reversing", d.order_reversing);
  record("dual.l_zero_iff_r_zero", d.l_zero_iff_r_zero);
  record("dual.loc_max_equivalent", d.loc_max_equivalent);
  TwoSidedReport tr = two_sided_report(a);
  record("twosided.count", tr.loc_count == full_blockset(tr.t));

  if (req.oracle) {
    record("oracle.radical", oracle::brute_radical(a, guard) == fam.rad);
    bool idem_ok = true;
    for (auto& e : oracle::brute_idempotents(a, guard).members) {
      if (e.is_zero()) continue;
      auto l = oracle::brute_denominator_check(a, oracle::make_set({a.one(), e}), Side::left, guard);
      auto r = oracle::brute_denominator_check(a, oracle::make_set({a.one(), e}), Side::right, guard);
      if (l.is_den != is_left_triangular(a, e) || r.is_den != is_right_triangular(a, e)) idem_ok = false;
    }
    record("oracle.idempotents", idem_ok);
    bool powers_ok = true;
    const std::uint64_t n = oracle::element_count(a, guard);
    for (std::uint64_t k = 0; k < n && powers_ok; ++k) {
      Element s = oracle::element_at(a, k);
      PowersVerdict v = powers_denominator_criterion(a, s);
      auto r = oracle::brute_denominator_check(a, oracle::monoid_closure(a, {s}, guard), Side::left, guard);
      if (v.is_den != r.is_den) powers_ok = false;
      else if (v.is_den && !(r.ass && r.ass->space == v.descriptor->ass.space)) powers_ok = false;
    }
    record("oracle.powers", powers_ok);
  }
  resp.body = {{"algebra", algebra_json(a)}, {"checks", checks}, {"all_passed", resp.code == kSuccess}};
  return resp;
}

inline Response execute(const Request& req) {
  Loaded in = load_input(req);
  const std::uint64_t guard = effective_guard(req);
  if (req.command == "report") return cmd_report(req, in, guard);
  if (req.command == "check-powers") return cmd_check_powers(req, in, guard);
  if (req.command == "check-monoid") return cmd_check_monoid(req, in, guard);
  if (req.command == "check-idempotent") return cmd_check_idempotent(req, in, guard);
  if (req.command == "classify-element") return cmd_classify(req, in, guard);
  if (req.command == "dual") return cmd_dual(req, in, guard);
  if (req.command == "twosided") return cmd_twosided(req, in, guard);
  if (req.command == "verify") return cmd_verify(req, in, guard);
  throw InputError("unknown command '" + req.command + "'");
}

inline std::string render(const Request& req, const json& body) {
  return req.format == "text" ? io::to_text(body) : io::dump(body);
}

/// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Denominator sets and localizations of finite-dimensional algebras over GF(p)", "artinloc"};
  app.require_subcommand(1);
  Request req;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"report", "left, right or both-sided localization report"},
      {"check-powers", "is {s^i} a denominator set (--element)"},
      {"check-monoid", "is the monoid generated by --generators a denominator set"},
      {"check-idempotent", "is {1, e} a denominator set (--element)"},
      {"classify-element", "localizability of --element"},
      {"dual", "left/right duality report"},
      {"twosided", "two-sided localizations and maximal denominator sets"},
      {"verify", "run the invariant suite"}};
  for (auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input", req.input, "algebra description (JSON file, - for stdin)")->required();
    sub->add_option("--element", req.element, "element as JSON");
    sub->add_option("--generators", req.generators, "JSON file (or inline array) of generators");
    sub->add_option("--side", req.side, "left|right|both")->check(CLI::IsMember({"left", "right", "both"}));
    sub->add_flag("--oracle", req.oracle, "cross-check with brute force");
    sub->add_option("--guard", req.guard, "maximum number of ring elements to enumerate")->check(CLI::PositiveNumber);
    sub->add_option("--format", req.format, "json|text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", req.output, "write result to this file");
    sub->callback([&req, name = name] { req.command = name; });
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  Response resp;
  try {
    resp = execute(req);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvariantViolation& e) {
    err << "internal invariant violation: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }

  const std::string text = render(req, resp.body);
  if (req.output.empty()) {
    out << text;
  } else {
    std::ofstream f(req.output, std::ios::binary);
    if (!f) {
      err << "input error: cannot write '" << req.output << "'\n";
      return kInputError;
    }
    f << text;
  }
  if (resp.code == kInternal) err << "internal invariant violation: see bug_report in output\n";
  return resp.code;
}

}  // namespace artinloc::cli
