#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>

#include "uset/analytics.hpp"
#include "uset/construct.hpp"
#include "uset/errors.hpp"
#include "uset/factorials.hpp"
#include "uset/io.hpp"
#include "uset/search.hpp"
#include "uset/universal.hpp"
#include "uset/walk.hpp"

namespace uset::cli {

namespace {

constexpr const char* kToolVersion = "0.3.0";

// Options that never change a result, so they stay out of the config echo.
bool echo_skipped(const std::string& name) {
  return name == "help" || name == "threads" || name == "out";
}

Json config_echo(const CLI::App& sub) {
  Json c{{"tool", "uset"}, {"version", kToolVersion}, {"subcommand", sub.get_name()}};
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_single_name();
    if (echo_skipped(name)) continue;
    if (opt->get_expected_max() == 0) {
      c[name] = opt->count() > 0;
      continue;
    }
    std::string v;
    if (opt->count() > 0) {
      for (const auto& r : opt->results()) v += (v.empty() ? "" : ",") + r;
    } else {
      v = opt->get_default_str();
    }
    if (!v.empty()) c[name] = v;
  }
  return c;
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), {}};
}

std::pair<long, long> parse_box(const std::string& s) {
  const auto x = s.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument("");
    std::size_t used = 0;
    const long w = std::stol(s.substr(0, x), &used);
    if (used != x) throw std::invalid_argument("");
    const long h = std::stol(s.substr(x + 1), &used);
    if (used != s.size() - x - 1 || w < 1 || h < 1) throw std::invalid_argument("");
    return {w, h};
  } catch (const std::exception&) {
    throw InputError("box must look like WxH with positive integers, got '" + s + "'");
  }
}

// "lo:hi" intervals joined by 'x' form a box; boxes are separated by ';'.
std::vector<Box> parse_boxes(const std::string& s) {
  std::vector<Box> out;
  std::stringstream boxes(s);
  std::string item;
  while (std::getline(boxes, item, ';')) {
    if (item.empty()) continue;
    Box b;
    std::stringstream dims(item);
    std::string iv;
    while (std::getline(dims, iv, 'x')) {
      const auto colon = iv.find(':');
      try {
        if (colon == std::string::npos) throw std::invalid_argument("");
        b.lo.push_back(std::stod(iv.substr(0, colon)));
        b.hi.push_back(std::stod(iv.substr(colon + 1)));
      } catch (const std::exception&) {
        throw InputError("interval must look like lo:hi, got '" + iv + "'");
      }
    }
    out.push_back(std::move(b));
  }
  if (out.empty()) throw InputError("no boxes given");
  return out;
}

std::vector<std::uint64_t> parse_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      if (!item.empty() && item[0] == '-') throw std::invalid_argument("");
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InputError("expected a comma-separated list of non-negative integers, got '" + s + "'");
    }
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

struct Params {
  std::string field = "Q";
  std::uint64_t n = 1;
  std::string set_path;
  bool optimal = false;
  bool newton = false;
  bool trace = false;
  std::string rule = "stabilized";
  std::string reduction = "short";
  std::uint64_t crt_limit = 0;
  std::uint64_t factor_bound = kDefaultFactorBound;
  std::string box;
  bool no_prune = false;
  std::uint64_t budget = 4'000'000'000ull;
  bool unit_reduction = false;
  bool conjugation_reduction = false;
  double tol = 0.05;
  std::string boxes = "0:1";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  double scale = 1.0;
  std::uint64_t gamma_n = 100000;
  std::uint64_t L = 8;
  std::uint64_t M = 100;
  std::uint64_t trials = 1000;
  std::string modulus = "conductor";
  std::string sweep;
  unsigned threads = 1;
  std::string out_path;
};

int execute(const CLI::App& sub, const Params& p, std::ostream& out) {
  const std::string cmd = sub.get_name();
  Json doc{{"config", config_echo(sub)}};
  int code = kOk;
  auto field = [&] { return Field::parse(p.field); };

  if (cmd == "factorial") {
    const Field F = field();
    doc["result"] = Json{{"field", F.to_string()}, {"n", p.n}, {"factorial", to_json(factorial_ideal(F, p.n))}};
  } else if (cmd == "check") {
    const Field F = field();
    const PointSet S = parse_point_set(F, read_text(p.set_path));
    // Echo the degree actually used, not the option's placeholder default.
    if (!sub.count("--n")) doc["config"]["n"] = std::to_string(S.empty() ? 0 : S.size() - 1);
    UniversalityOptions uo;
    uo.factor_bound = p.factor_bound;
    Json r{{"set", to_json(S)}};
    bool verdict = true;
    if (p.newton) {
      const bool ok = is_newton_sequence(S.elements(), uo);
      r["newton_sequence"] = ok;
      // s_0..s_n has n+1 elements and length n.
      r["newton_elements"] = S.size();
      r["newton_length"] = S.empty() ? 0 : S.size() - 1;
      verdict = verdict && ok;
    }
    if (p.optimal) {
      if (sub.count("--n") && p.n + 1 != S.size())
        throw InputError("--optimal needs |S| = n+1 (|S| = " + std::to_string(S.size()) +
                         ", n = " + std::to_string(p.n) + ")");
      const bool ok = is_n_optimal(S, uo);
      r["optimal"] = ok;
      r["volume_norm"] = volume_norm(S).get_str();
      r["optimal_volume_norm"] = optimal_volume(F, S.size() - 1).norm().get_str();
      verdict = verdict && ok;
    }
    if (!p.optimal || sub.count("--n")) {
      const std::size_t n = sub.count("--n") ? p.n : (S.empty() ? 0 : S.size() - 1);
      const auto report = is_n_universal(S, n, uo);
      r["universality"] = to_json(report);
      verdict = verdict && report.verdict;
    }
    r["verdict"] = verdict;
    doc["result"] = std::move(r);
    code = verdict ? kOk : kFalse;
  } else if (cmd == "construct") {
    ConstructionOptions co;
    co.exponent_rule = p.rule == "full-valuation" ? ExponentRule::FullValuation : ExponentRule::Stabilized;
    co.reduction = p.reduction == "hermite" ? Reduction::Hermite : Reduction::Short;
    co.crt_norm_limit = p.crt_limit;
    co.factor_bound = p.factor_bound;
    const ConstructionTrace t = build_universal(field(), p.n, co);
    Json r{{"n", p.n}, {"set", to_json(t.chain.back())}};
    if (p.trace) r["trace"] = to_json(t);
    doc["result"] = std::move(r);
  } else if (cmd == "search-optimal") {
    const Field F = field();
    SearchBox box = default_search_box(F, p.n);
    if (!p.box.empty()) {
      const auto [w, h] = parse_box(p.box);
      box = {w, h, "given on the command line"};
    }
    SearchOptions so;
    so.prune = !p.no_prune;
    so.node_budget = p.budget;
    so.threads = p.threads;
    so.unit_reduction = p.unit_reduction;
    so.conjugation_reduction = p.conjugation_reduction;
    const SearchResult res = search_optimal(F, p.n, box, so);
    doc["result"] = to_json(res);
    code = res.sets.empty() ? kFalse : kOk;
  } else if (cmd == "gamma") {
    doc["result"] = to_json(gamma_estimate(field(), p.n));
  } else if (cmd == "check-bound") {
    const Field F = field();
    const BoundCheck b = ihara_bound_check(F, p.n, p.tol);
    doc["result"] = to_json(b);
    code = b.satisfied ? kOk : kFalse;
  } else if (cmd == "potential") {
    std::vector<Box> U = parse_boxes(p.boxes);
    if (p.scale != 1.0) U = scale_boxes(U, p.scale);
    const int d = static_cast<int>(U.front().lo.size());
    Json r{{"d", d}};
    if (sub.count("--field")) {
      const LogInequality li = log_ineq_check(field(), U, p.samples, p.seed, p.gamma_n, p.tol, p.threads);
      r["log_inequality"] = to_json(li);
      code = li.satisfied ? kOk : kFalse;
    } else {
      r["integral"] = to_json(log_potential_integral(U, d, p.samples, p.seed, p.threads));
    }
    doc["result"] = std::move(r);
  } else if (cmd == "simulate") {
    if (p.modulus != "conductor" && p.modulus != "factorial")
      throw InputError("--modulus must be conductor or factorial");
    WalkConfig w;
    w.field = field();
    w.n = p.n;
    w.L = p.L;
    w.M = p.M;
    w.trials = p.trials;
    w.seed = p.seed;
    w.mode = p.modulus == "factorial" ? ScalingMode::Factorial : ScalingMode::Conductor;
    w.threads = p.threads;
    if (!p.sweep.empty()) {
      const auto Ms = parse_list(p.sweep);
      std::ostringstream csv;
      csv << "# config " << doc["config"].dump() << "\n";
      csv << "M,p_hat,ci_low,ci_high\n";
      for (auto M : Ms) {
        w.M = M;
        const auto s = simulate(w);
        csv << M << ',' << s.p_hat << ',' << s.ci_low << ',' << s.ci_high << '\n';
      }
      out << csv.str();
      return kOk;
    }
    doc["result"] = to_json(simulate(w));
  }
  out << doc.dump(2) << '\n';
  return code;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized factorials and universal sets in quadratic fields", "uset"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Params p;

  auto threads_opt = [&](CLI::App* s) {
    s->add_option("--threads", p.threads, "worker threads (0 = all cores)")->envname("USET_THREADS");
  };
  auto field_opt = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--field", p.field, "number field, e.g. Q, \"Q(i)\", \"Q(sqrt -5)\"");
    if (required) o->required();
  };
  std::vector<CLI::App*> subs;
  auto add = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--out", p.out_path, "write the result here instead of stdout");
    subs.push_back(s);
    return s;
  };

  auto* fac = add("factorial", "factor n!_K into prime ideals");
  field_opt(fac, true);
  fac->add_option("--n", p.n)->required();

  auto* chk = add("check", "test n-universality, n-optimality or the Newton property of a set");
  field_opt(chk, true);
  chk->add_option("--set", p.set_path, "JSON set file ('-' for stdin)")->required();
  chk->add_option("--n", p.n, "degree (default |S|-1)");
  chk->add_flag("--optimal", p.optimal, "require |S| = n+1 and the optimal volume");
  chk->add_flag("--newton", p.newton, "treat the file order as a Newton sequence candidate");
  chk->add_option("--factor-bound", p.factor_bound);

  auto* con = add("construct", "build a chain of n-universal sets with n+2 elements");
  field_opt(con, true);
  con->add_option("--n", p.n)->required();
  con->add_flag("--trace", p.trace, "include every step");
  con->add_option("--rule", p.rule)->check(CLI::IsMember({"stabilized", "full-valuation"}));
  con->add_option("--reduction", p.reduction)->check(CLI::IsMember({"short", "hermite"}));
  con->add_option("--crt-limit", p.crt_limit, "0 = 4(n+2)");
  con->add_option("--factor-bound", p.factor_bound);

  auto* srch = add("search-optimal", "exhaustive search for n-optimal sets in a box");
  field_opt(srch, true);
  srch->add_option("--n", p.n)->required();
  srch->add_option("--box", p.box, "WxH (default max(7, n+1) square)");
  srch->add_flag("--no-prune", p.no_prune);
  srch->add_option("--budget", p.budget, "node budget");
  srch->add_flag("--unit-reduction", p.unit_reduction);
  srch->add_flag("--conjugation-reduction", p.conjugation_reduction);
  threads_opt(srch);

  auto* gam = add("gamma", "estimate the Euler-Kronecker constant from n!_K");
  field_opt(gam, true);
  gam->add_option("--n", p.n)->required();

  auto* bnd = add("check-bound", "compare the estimate with the lower bound for totally real fields");
  field_opt(bnd, true);
  bnd->add_option("--n", p.n)->required();
  bnd->add_option("--tol", p.tol);

  auto* pot = add("potential", "Monte Carlo double integral of log|x-y| over a union of boxes");
  field_opt(pot, false);
  pot->add_option("--boxes", p.boxes, "lo:hi[xlo:hi] boxes separated by ';'");
  pot->add_option("--samples", p.samples);
  pot->add_option("--seed", p.seed);
  pot->add_option("--scale", p.scale, "multiply every box by this factor");
  pot->add_option("--gamma-n", p.gamma_n, "n used for the gamma_K estimate");
  pot->add_option("--tol", p.tol);
  threads_opt(pot);

  auto* sim = add("simulate", "random-walk construction of n-universal sets");
  field_opt(sim, true);
  sim->add_option("--n", p.n)->required();
  sim->add_option("--L", p.L);
  sim->add_option("--M", p.M);
  sim->add_option("--trials", p.trials);
  sim->add_option("--seed", p.seed);
  sim->add_option("--modulus", p.modulus)->check(CLI::IsMember({"conductor", "factorial"}));
  sim->add_option("--sweep-M", p.sweep, "comma-separated M values; emits CSV");
  threads_opt(sim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "uset: " << e.what() << '\n';
    return kUsage;
  }

  const CLI::App* chosen = nullptr;
  for (auto* s : subs)
    if (s->parsed()) chosen = s;

  try {
    if (p.out_path.empty()) return execute(*chosen, p, out);
    std::ofstream file(p.out_path);
    if (!file) throw InputError("cannot write '" + p.out_path + "'");
    return execute(*chosen, p, file);
  } catch (const InputError& e) {
    err << "uset: input error: " << e.what() << '\n';
    return kUsage;
  } catch (const InfiniteValuation& e) {
    err << "uset: input error: " << e.what() << '\n';
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "uset: input error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "uset: budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const IntegrityError& e) {
    err << "uset: integrity check failed: " << e.what() << '\n';
    return kBudget;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"uset"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace uset::cli
