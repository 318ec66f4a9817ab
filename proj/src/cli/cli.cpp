#include "hypred/cli/cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hypred/arith/factor.hpp"
#include "hypred/arith/primes.hpp"
#include "hypred/bounds/bounds.hpp"
#include "hypred/curves/cluster.hpp"
#include "hypred/enumerate/enumerate.hpp"
#include "hypred/forge/forge.hpp"
#include "hypred/sunit/sunit.hpp"

namespace hypred::cli {

using json = nlohmann::ordered_json;

namespace {

// Fits-in-int64 integers become JSON numbers, larger ones decimal strings.
json jint(const Int& v) {
  if (v.fits_slong_p()) return static_cast<std::int64_t>(v.get_si());
  return v.get_str();
}

json jrats(const std::vector<Rat>& v) {
  json a = json::array();
  for (const Rat& r : v) a.push_back(r.str());
  return a;
}

json jints(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(jint(x));
  return a;
}

std::string braces(const std::vector<Int>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + "}";
}

// [[prime, exponent], ...] with negative exponents for the denominator
json factor_pairs(const Rat& r) {
  std::map<Int, long> exps;
  if (!r.is_zero()) {
    for (const auto& pp : arith::factor(r.num()).factors) exps[pp.prime] += pp.exponent;
    for (const auto& pp : arith::factor(r.den()).factors) exps[pp.prime] -= pp.exponent;
  }
  json a = json::array();
  for (const auto& [p, e] : exps) a.push_back(json::array({jint(p), e}));
  return a;
}

std::string factor_text(const json& pairs) {
  std::string s;
  for (const auto& pe : pairs) {
    if (!s.empty()) s += " * ";
    s += pe[0].is_string() ? pe[0].get<std::string>() : std::to_string(pe[0].get<std::int64_t>());
    if (pe[1].get<long>() != 1) s += "^" + std::to_string(pe[1].get<long>());
  }
  return s.empty() ? "1" : s;
}

std::vector<Int> parse_int_list(const std::string& text) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error(Errc::Parse, "empty entry in list '" + text + "'");
    out.push_back(parse_int(item));
  }
  return out;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Parse, "cannot read config file " + path);
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw Error(Errc::Parse, path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

// Everything the command line can set.
struct Settings {
  std::string format = "text";
  std::string config;
  bool timing = false;

  std::string roots;
  std::string twist = "1";
  std::string primes;
  bool auto_primes = false;

  std::string s = "2,3";
  unsigned bound = 40;
  int genus = 2;
  std::uint64_t cap = 100000000;

  std::string field = "q";
  std::int64_t x = 10;

  std::uint64_t limit = 1000000;
  std::string mode = "corrected";
  std::string param;  // --p / --k: build at a given parameter
  std::string resume;
  std::uint64_t max_blocks = 0;
  std::uint64_t block_size = std::uint64_t{1} << 20;

  std::uint64_t p_max = 0;
  unsigned triple_bound = 12;
};

struct Outcome {
  json args = json::object();
  json payload = json::object();
  std::vector<std::string> text;
  int code = kOk;
};

Outcome cmd_reduce(const Settings& st) {
  Outcome o;
  const auto curve = curves::RosenhainCurve::from_roots(curves::parse_roots(st.roots), Rat::parse(st.twist));
  o.args = {{"roots", curves::join_roots(curve.roots())}, {"twist", curve.twist().str()}};
  const Rat disc = curves::model_discriminant(curve);
  const json disc_factors = factor_pairs(disc);

  std::vector<Int> primes;
  if (!st.primes.empty() && !st.auto_primes) {
    primes = parse_int_list(st.primes);
    o.args["primes"] = jints(primes);
  } else {
    for (const auto& pe : disc_factors) {
      const Int p = pe[0].is_string() ? Int(pe[0].get<std::string>()) : Int(static_cast<long>(pe[0].get<std::int64_t>()));
      if (p != 2) primes.push_back(p);
    }
    o.args["primes"] = "auto";
  }
  const auto bad = curves::bad_odd_primes(curve);

  json verdicts = json::array();
  o.text.push_back("curve: " + curve.str());
  for (const Int& pv : primes) {
    const Prime p(pv);
    const auto pic = curves::cluster_picture(curve, p);
    json v = {{"prime", jint(pv)}, {"potentially_good", pic.is_trivial()}, {"cluster", pic.render()}};
    if (curve.normalized()) v["unit_criterion"] = curves::unit_criterion_at(curve, p);
    verdicts.push_back(v);
    o.text.push_back("p=" + pv.get_str() + ": " + (pic.is_trivial() ? "potentially good" : "not potentially good") +
                     "  cluster " + pic.render());
  }
  o.payload = {{"curve", curve_json(curve)},
               {"normalized", curve.normalized()},
               {"verdicts", verdicts},
               {"bad_odd_primes", jints(bad.primes)},
               {"bad_count_with_two", bad.count_with_two()},
               {"discriminant", {{"value", disc.str()}, {"factorization", disc_factors}}}};
  o.text.push_back("B_odd = " + braces(bad.primes));
  o.text.push_back("model discriminant = " + disc.str() + " = " + (disc.sign() < 0 ? "-" : "") +
                   factor_text(disc_factors));
  return o;
}

Outcome cmd_sunit(const Settings& st) {
  Outcome o;
  const auto s = sunit::PrimeSet::parse(st.s);
  if (st.bound < 1) throw Error(Errc::InvalidArgument, "bound must be at least 1");
  o.args = {{"s", s.str()}, {"bound", st.bound}};
  const auto sols = sunit::solve_two_term(s, st.bound);
  json arr = json::array();
  std::vector<Rat> xs;
  for (const auto& sol : sols) {
    arr.push_back({{"x", sol.x.str()}, {"y", sol.y.str()}});
    xs.push_back(sol.x);
  }
  json orbits = nullptr;
  try {
    orbits = json::array();
    for (const auto& orb : sunit::s3_orbits(xs)) orbits.push_back(jrats(orb));
  } catch (const Error& e) {
    if (e.code() != Errc::NotClosed) throw;
    orbits = nullptr;
  }
  o.payload = {{"count", sols.size()}, {"solutions", arr}, {"orbits", orbits}};
  o.text.push_back(std::to_string(sols.size()) + " solutions of x + y = 1 in " + s.str() + "-units, |e| <= " +
                   std::to_string(st.bound));
  for (const auto& sol : sols) o.text.push_back("  " + sol.x.str() + " + " + sol.y.str());
  if (orbits.is_array()) {
    std::string sizes;
    for (const auto& orb : orbits) sizes += (sizes.empty() ? "" : ",") + std::to_string(orb.size());
    o.text.push_back("orbit sizes: " + sizes);
  }
  return o;
}

Outcome cmd_enumerate(const Settings& st) {
  Outcome o;
  const auto s = sunit::PrimeSet::parse(st.s);
  o.args = {{"s", s.str()}, {"bound", st.bound}, {"genus", st.genus}, {"cap", st.cap}};
  const auto e = enumerate::enumerate_genus_g(s, st.genus, st.bound, st.cap);
  json classes = json::array();
  o.text.push_back(std::to_string(e.classes.size()) + " classes (" + (e.exhaustive ? "exhaustive" : "truncated") +
                   ", " + std::to_string(e.root_sets) + " root sets)");
  for (const auto& c : e.classes) {
    json members = json::array();
    for (const auto& m : c.members) members.push_back(jrats(m));
    classes.push_back({{"canonical", jints(c.canonical)},
                       {"bad_odd_primes", jints(c.bad_primes.primes)},
                       {"discriminant", c.discriminant.str()},
                       {"member_count", c.members.size()},
                       {"members", members}});
    o.text.push_back("  " + braces(c.canonical) + "  B_odd=" + braces(c.bad_primes.primes) + "  members=" +
                     std::to_string(c.members.size()));
  }
  o.payload = {{"classes", classes},
               {"exhaustive", e.exhaustive},
               {"subsets_examined", e.subsets_examined},
               {"lambda_count", e.lambda_count},
               {"root_sets", e.root_sets}};
  return o;
}

Outcome cmd_bounds(const Settings& st) {
  Outcome o;
  const auto k = bounds::FieldDescriptor::parse(st.field);
  o.args = {{"field", k.str()}, {"genus", st.genus}};
  const auto r = bounds::bounds_report(k, st.genus);
  using BR = bounds::BoundsReport;
  json lin = {{"value", r.linearithmic.value}};
  lin["exact"] = r.linearithmic.exact ? json(r.linearithmic.exact->str()) : json(nullptr);
  o.payload = {{"field", k.str()}, {"g", st.genus}};
  if (r.lower) {
    o.payload["lower"] = *r.lower;
  } else {
    o.payload["lower"] = nullptr;
    o.payload["lower_missing"] = r.lower_missing;
  }
  o.payload["dickson"] = jint(r.dickson);
  o.payload["schinzel"] = jint(r.schinzel);
  o.payload["corollary"] = r.corollary ? json(r.corollary->str()) : json(nullptr);
  o.payload["linearithmic"] = lin;
  o.payload["conditions"] = {{"lower", to_string(BR::kLower)},
                             {"dickson", to_string(BR::kDickson)},
                             {"schinzel", to_string(BR::kSchinzel)},
                             {"corollary", to_string(BR::kCorollary)},
                             {"linearithmic", to_string(BR::kLinearithmic)}};
  o.text.push_back("field " + k.str() + ", genus " + std::to_string(st.genus));
  o.text.push_back(r.lower ? "lower     " + std::to_string(*r.lower) + "  (unconditional)"
                           : "lower     n/a  (" + r.lower_missing + ")");
  o.text.push_back("dickson   " + r.dickson.get_str() + "  (prime k-tuples)");
  o.text.push_back("schinzel  " + r.schinzel.get_str() + "  (hypothesis H)");
  if (r.corollary) o.text.push_back("corollary " + r.corollary->str() + "  (hypothesis H)");
  std::ostringstream lv;
  lv << std::setprecision(6) << r.linearithmic.value;
  o.text.push_back("linearithmic leading term " + lv.str() + "  (asymptotic only)");
  return o;
}

Outcome cmd_pi_odd(const Settings& st) {
  Outcome o;
  const auto k = bounds::FieldDescriptor::parse(st.field);
  o.args = {{"field", k.str()}, {"x", st.x}};
  const auto n = bounds::pi_odd(k, st.x);
  o.payload = {{"field", k.str()}, {"x", st.x}, {"count", n}};
  o.text.push_back("pi_odd(" + k.str() + ", " + std::to_string(st.x) + ") = " + std::to_string(n));
  return o;
}

Outcome cmd_exceptional(const Settings& st) {
  Outcome o;
  const auto s = sunit::PrimeSet::parse(st.s);
  std::vector<Int> primes;
  if (!st.primes.empty()) {
    primes = parse_int_list(st.primes);
  } else {
    for (std::uint64_t p : arith::primes_upto(st.p_max)) {
      if (p != 2 && !s.contains(int_from_u64(p))) primes.push_back(int_from_u64(p));
    }
  }
  o.args = {{"s", s.str()}, {"primes", jints(primes)}, {"bound", st.triple_bound}};
  const auto found = sunit::exceptional_triple_search(s, primes, st.triple_bound);
  json arr = json::array();
  bool all_verified = true;
  for (const auto& e : found) {
    json vals = json::array();
    for (const auto& v : e.witness.valuations) vals.push_back(v.str());
    bool ok = true;
    for (const auto& w : e.all) ok = ok && sunit::verify_triple(s, w);
    all_verified = all_verified && ok;
    arr.push_back({{"p", jint(e.p)},
                   {"witness", {{"x", e.witness.x.str()}, {"y", e.witness.y.str()}, {"z", e.witness.z.str()},
                                {"valuations", vals}}},
                   {"witness_count", e.all.size()},
                   {"verified", ok}});
    o.text.push_back("p=" + e.p.get_str() + ": (" + e.witness.x.str() + ", " + e.witness.y.str() + ", " +
                     e.witness.z.str() + ")  " + std::to_string(e.all.size()) + " witnesses");
  }
  if (found.empty()) o.text.push_back("no exceptional primes found");
  o.payload = {{"exceptional", arr}, {"verified", all_verified}};
  if (!all_verified) o.code = kInvariant;
  return o;
}

json witness_json(const forge::FamilyWitness& w) {
  json certs = json::array();
  for (const auto& c : w.certificates) {
    certs.push_back({{"n", jint(c.n)}, {"method", std::string(arith::to_string(c.method))}, {"rounds", c.rounds}});
  }
  return {{"kind", std::string(forge::to_string(w.kind))},
          {"mode", std::string(forge::to_string(w.mode))},
          {"g", w.g},
          {"parameter", jint(w.parameter)},
          {"curve", curve_json(w.curve)},
          {"bad_odd_primes", jints(w.bad.primes)},
          {"bad_count_with_two", w.bad_count()},
          {"budget", w.budget},
          {"verdict", w.pass ? "PASS" : "FAIL"},
          {"certificates", certs},
          {"reverified", w.reverify()}};
}

void witness_text(const forge::FamilyWitness& w, std::vector<std::string>& text) {
  text.push_back(std::string(forge::to_string(w.kind)) + " family, genus " + std::to_string(w.g) + ", parameter " +
                 w.parameter.get_str() + " (" + std::string(forge::to_string(w.mode)) + ")");
  text.push_back("roots: " + curves::join_roots(w.curve.roots()));
  text.push_back("B_odd = " + braces(w.bad.primes) + ", |B_odd u {2}| = " + std::to_string(w.bad_count()) +
                 ", budget " + std::to_string(w.budget) + ": " + (w.pass ? "PASS" : "FAIL"));
}

Outcome cmd_forge(const Settings& st, forge::FamilyKind kind) {
  Outcome o;
  const forge::Mode mode = forge::parse_mode(st.mode);
  const int g = kind == forge::FamilyKind::Genus5 ? 5 : st.genus;
  o.args = {{"family", std::string(forge::to_string(kind))}, {"genus", g}, {"mode", std::string(forge::to_string(mode))}};

  auto build = [&](const Int& x) {
    switch (kind) {
      case forge::FamilyKind::Tuple: return forge::build_tuple_curve(g, x, mode);
      case forge::FamilyKind::Cyclotomic: return forge::build_cyclotomic_curve(g, x);
      case forge::FamilyKind::Genus5: break;
    }
    return forge::build_genus5_curve(x);
  };

  if (!st.param.empty()) {
    const Int x = parse_int(st.param);
    o.args["parameter"] = jint(x);
    const auto w = build(x);
    o.payload = {{"status", "built"}, {"witness", witness_json(w)}};
    witness_text(w, o.text);
    return o;
  }

  o.args["limit"] = st.limit;
  forge::Constellation c = kind == forge::FamilyKind::Tuple        ? forge::tuple_constellation(g)
                           : kind == forge::FamilyKind::Cyclotomic ? forge::cyclotomic_constellation(g)
                                                                   : forge::genus5_constellation(mode);
  forge::SearchOptions opt;
  opt.limit = st.limit;
  opt.block_size = st.block_size;
  if (!st.resume.empty()) opt.checkpoint = st.resume;
  if (st.max_blocks > 0) opt.max_blocks = st.max_blocks;
  const auto r = forge::search(c, opt);
  if (!r.finished) {
    o.payload = {{"status", "interrupted"}, {"scanned_upto", r.scanned_upto}};
    o.text.push_back("interrupted after scanning up to " + std::to_string(r.scanned_upto));
    o.code = kNoWitness;
    return o;
  }
  if (!r.witness) {
    o.payload = {{"status", "none"}, {"scanned_upto", r.scanned_upto}};
    o.text.push_back("no witness up to " + std::to_string(st.limit));
    o.code = kNoWitness;
    return o;
  }
  const auto w = build(*r.witness);
  o.payload = {{"status", "found"}, {"scanned_upto", r.scanned_upto}, {"witness", witness_json(w)}};
  witness_text(w, o.text);
  return o;
}

Outcome cmd_omega(const Settings& st) {
  Outcome o;
  o.args = {{"genus", st.genus}, {"limit", st.limit}};
  const auto r = forge::low_omega_search(st.genus, st.limit);
  o.payload = {{"k", r.k}, {"omega", r.omega}};
  o.text.push_back("k = " + std::to_string(r.k) + " with " + std::to_string(r.omega) + " distinct primes");
  return o;
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::InvalidCurve:
    case Errc::Invariant: return kInvariant;
    case Errc::UnsupportedField: return kUnsupportedField;
    case Errc::NotAConstellation: return kNoWitness;
    default: return kUsage;
  }
}

json curve_json(const curves::RosenhainCurve& curve) {
  return {{"genus", curve.genus()}, {"twist", curve.twist().str()}, {"roots", jrats(curve.roots())}};
}

curves::RosenhainCurve curve_from_json(const json& j) {
  try {
    std::vector<Rat> roots;
    for (const auto& r : j.at("roots")) roots.push_back(Rat::parse(r.get<std::string>()));
    return curves::RosenhainCurve(j.at("genus").get<int>(), Rat::parse(j.at("twist").get<std::string>()),
                                  std::move(roots));
  } catch (const json::exception& e) {
    throw Error(Errc::Parse, std::string("bad curve record: ") + e.what());
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings st;
  CLI::App app{"Potential good reduction of hyperelliptic curves via cluster pictures", "hypred"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", st.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--config", st.config, "key = value defaults, overridden by flags");
  app.add_flag("--timing", st.timing, "Report wall-clock time outside the payload");

  auto sub = [](CLI::App* parent, const std::string& name, const std::string& desc) {
    return parent->add_subcommand(name, desc);
  };

  CLI::App* reduce = sub(&app, "reduce", "Cluster pictures and bad primes of a curve");
  reduce->add_option("--roots", st.roots, "Comma-separated rational roots")->required();
  reduce->add_option("--twist", st.twist, "Leading coefficient c");
  reduce->add_option("--primes", st.primes, "Odd primes to examine");
  reduce->add_flag("--auto", st.auto_primes, "Examine every odd prime of the discriminant");

  CLI::App* sunit_cmd = sub(&app, "sunit", "Solve x + y = 1 in S-units");
  sunit_cmd->add_option("--s", st.s, "Prime set, e.g. 2,3");
  sunit_cmd->add_option("--bound", st.bound, "Exponent bound");

  CLI::App* enum_cmd = sub(&app, "enumerate", "Isomorphism classes with good reduction outside S");
  enum_cmd->add_option("--s", st.s, "Prime set containing 2");
  enum_cmd->add_option("--bound", st.bound, "Exponent bound");
  enum_cmd->add_option("--genus", st.genus, "Genus");
  enum_cmd->add_option("--cap", st.cap, "Maximum number of partial subsets examined");

  CLI::App* bounds_cmd = sub(&app, "bounds", "Bounds on c_K(g)");
  bounds_cmd->add_option("--field", st.field, "q | quad:d | abp:n:f | pna:n");
  bounds_cmd->add_option("--genus", st.genus, "Genus");

  CLI::App* pi_cmd = sub(&app, "pi-odd", "Count prime ideals of odd norm");
  pi_cmd->add_option("--field", st.field, "q | quad:d");
  pi_cmd->add_option("--x", st.x, "Norm limit");

  CLI::App* exc = sub(&app, "exceptional", "Triple search for exceptional primes");
  exc->add_option("--s", st.s, "Prime set");
  exc->add_option("--primes", st.primes, "Odd primes to test");
  exc->add_option("--p-max", st.p_max, "Test every odd prime up to this value outside S");
  exc->add_option("--bound", st.triple_bound, "Exponent bound for the lambda sets");

  CLI::App* forge_cmd = sub(&app, "forge", "Conditional curve families");
  forge_cmd->require_subcommand(1);
  auto forge_sub = [&](const std::string& name, const std::string& desc, bool genus, const char* param) {
    CLI::App* f = sub(forge_cmd, name, desc);
    if (genus) f->add_option("--genus", st.genus, "Genus");
    f->add_option("--limit", st.limit, "Search limit");
    if (param) {
      f->add_option("--mode", st.mode, "corrected | paper-exact");
      f->add_option(param, st.param, "Build at this parameter instead of searching");
      f->add_option("--resume", st.resume, "Checkpoint file, resumed when present");
      f->add_option("--max-blocks", st.max_blocks, "Stop after this many blocks");
      f->add_option("--block-size", st.block_size, "Candidates per block");
    }
    return f;
  };
  forge_sub("tuple", "Prime k-tuple family", true, "--p");
  forge_sub("cyclotomic", "Cyclotomic family", true, "--k");
  forge_sub("genus5", "Genus 5 family", false, "--k");
  forge_sub("omega", "Fewest prime divisors over the tuple", true, nullptr);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    // defaults from --config are applied before flags so flags win
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
      if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
      if (path.empty()) continue;
      for (const auto& [key, value] : read_config(path)) {
        bool used = false;
        std::function<void(CLI::App*)> visit = [&](CLI::App* a) {
          if (auto* opt = a->get_option_no_throw("--" + key)) {
            opt->default_val(value);
            used = true;
          }
          for (CLI::App* s : a->get_subcommands([](CLI::App*) { return true; })) visit(s);
        };
        visit(&app);
        if (!used) throw Error(Errc::Parse, "unknown config key '" + key + "'");
      }
    }
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::string chosen;
  for (CLI::App* a = &app; !a->get_subcommands().empty();) {
    a = a->get_subcommands().front();
    chosen += (chosen.empty() ? "" : " ") + a->get_name();
  }

  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (chosen == "reduce") o = cmd_reduce(st);
    else if (chosen == "sunit") o = cmd_sunit(st);
    else if (chosen == "enumerate") o = cmd_enumerate(st);
    else if (chosen == "bounds") o = cmd_bounds(st);
    else if (chosen == "pi-odd") o = cmd_pi_odd(st);
    else if (chosen == "exceptional") o = cmd_exceptional(st);
    else if (chosen == "forge tuple") o = cmd_forge(st, forge::FamilyKind::Tuple);
    else if (chosen == "forge cyclotomic") o = cmd_forge(st, forge::FamilyKind::Cyclotomic);
    else if (chosen == "forge genus5") o = cmd_forge(st, forge::FamilyKind::Genus5);
    else if (chosen == "forge omega") o = cmd_omega(st);
    else throw Error(Errc::InvalidArgument, "no command selected");
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (st.format == "json") {
    json rec = {{"schema", kSchemaVersion}, {"command", {{"name", chosen}, {"args", o.args}}}, {"payload", o.payload}};
    if (st.timing) rec["timing"] = {{"seconds", secs}};
    out << rec.dump(2) << '\n';
  } else {
    for (const auto& line : o.text) out << line << '\n';
    if (st.timing) out << "time: " << secs << " s\n";
  }
  return o.code;
}

}  // namespace hypred::cli
