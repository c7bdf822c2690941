#include <isdlab/cli.hpp>
#include <isdlab/exponents.hpp>
#include <isdlab/format.hpp>
#include <isdlab/gf2.hpp>
#include <isdlab/isd.hpp>
#include <isdlab/johnson.hpp>
#include <isdlab/walk.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace isdlab {

namespace {

using json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  os << text;
  os.flush();
  if (!os) throw IoError("cannot write " + path);
}

// Writes to `path`, or to `out` when path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-")
    out << text;
  else
    write_file(path, text);
}

json num(double x) { return std::isfinite(x) ? json(round9(x)) : json(nullptr); }

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

BetaVariant parse_beta(const std::string& s) {
  if (s == "support") return BetaVariant::support;
  if (s == "complement") return BetaVariant::complement;
  throw ParameterError("--beta must be support or complement");
}

std::optional<double> parse_omega(const std::string& s) {
  if (s == "gv") return std::nullopt;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v > 0 && v <= 0.5)) throw ParameterError("--omega must be gv or a number in (0, 0.5]");
  return v;
}

// ---- decode ----

struct DecodeArgs {
  std::size_t n = 24, k = 12, w = 3;
  std::string engine = "prange";
  std::size_t ell = 0, p = 0, dp = 0, r2_samples = 0;
  std::uint64_t seed = 1;
  std::size_t max_iters = 0;
  std::string instance, save_instance, format = "json";
};

int cmd_decode(const DecodeArgs& a, std::ostream& out) {
  IsdParams params{parse_engine(a.engine), a.ell, a.p, a.dp, a.r2_samples};
  const DecodingInstance inst =
      a.instance.empty() ? random_instance(a.n, a.k, a.w, a.seed) : instance_from_json(read_file(a.instance));
  params = normalize_params(inst.n, inst.k, inst.w, params);
  std::size_t iters = a.max_iters;
  if (iters == 0) {
    const double P = inst.w == 0 ? 1.0 : engine_success_probability(inst.n, inst.k, inst.w, params);
    if (!(P > 0)) throw ParameterError("decode: parameters give zero success probability; set --max-iters");
    iters = static_cast<std::size_t>(std::min(1e7, std::ceil(50 / P)));
  }
  if (!a.save_instance.empty()) write_file(a.save_instance, instance_to_json(inst) + "\n");

  const DecodeReport rep = isd_decode(inst, params, Rng::derive(a.seed, 0x5eed), iters);
  const bool verified = rep.error && inst.accepts(*rep.error);
  if (a.format == "text") {
    out << "status: " << (rep.status == DecodeStatus::found ? "found" : "not_found") << '\n';
    out << "engine: " << engine_name(rep.params.engine) << " ell=" << rep.params.ell << " p=" << rep.params.p
        << " dp=" << rep.params.dp << '\n';
    out << "error: " << (rep.error ? rep.error->to_hex() : std::string("-")) << '\n';
    out << "verified: " << (verified ? "yes" : "no") << '\n';
    out << "outer_iterations: " << rep.outer_iterations << '\n';
    out << "search_invocations: " << rep.search_invocations << '\n';
  } else {
    json j;
    j["n"] = inst.n;
    j["k"] = inst.k;
    j["w"] = inst.w;
    j["max_iters"] = iters;
    j["verified"] = verified;
    j["report"] = json::parse(report_to_json(rep));
    out << j.dump() << '\n';
  }
  return rep.status == DecodeStatus::found ? exit_code::ok : exit_code::not_found;
}

// ---- exponent ----

struct ExponentArgs {
  std::string alg;
  double R = -1;
  std::string omega = "gv";
  bool max_over_R = false;
  double tol = 1e-7;
  bool audit = false;
  std::string beta = "support";
  std::string format = "text";
};

SweepRow single_row(Algorithm a, const ExponentPoint& p) {
  SweepRow row;
  row.R = p.R;
  row.omega = p.omega;
  switch (a) {
    case Algorithm::prange: row.alpha_prange = p.alpha; break;
    case Algorithm::bernstein: row.alpha_bernstein = p.alpha; break;
    case Algorithm::ssqw:
      row.alpha_ssqw = p.alpha;
      row.lambda_ss = p.lambda;
      row.pi_ss = p.pi;
      break;
    case Algorithm::mmtqw:
      row.alpha_mmtqw = p.alpha;
      row.lambda_mmt = p.lambda;
      row.pi_mmt = p.pi;
      row.dpi_mmt = p.dpi;
      break;
  }
  return row;
}

json point_json(Algorithm a, const ExponentPoint& p, BetaVariant v) {
  json j;
  j["alg"] = std::string(algorithm_name(a));
  j["R"] = num(p.R);
  j["omega"] = num(p.omega);
  j["alpha"] = num(p.alpha);
  if (a == Algorithm::ssqw || a == Algorithm::mmtqw) {
    j["lambda"] = num(p.lambda);
    j["pi"] = num(p.pi);
  }
  if (a == Algorithm::mmtqw) {
    j["dpi"] = num(p.dpi);
    j["beta"] = v == BetaVariant::support ? "support" : "complement";
  }
  return j;
}

std::string point_text(Algorithm a, const ExponentPoint& p, BetaVariant v) {
  std::string s = "alg=" + std::string(algorithm_name(a)) + " R=" + format_real(p.R) +
                  " omega=" + format_real(p.omega) + " alpha=" + format_real(p.alpha);
  if (a == Algorithm::ssqw || a == Algorithm::mmtqw) s += " lambda=" + format_real(p.lambda) + " pi=" + format_real(p.pi);
  if (a == Algorithm::mmtqw)
    s += " dpi=" + format_real(p.dpi) + " beta=" + (v == BetaVariant::support ? "support" : "complement");
  return s + '\n';
}

int cmd_exponent(const ExponentArgs& a, std::ostream& out) {
  const Algorithm alg = parse_algorithm(a.alg);
  const BetaVariant beta = parse_beta(a.beta);
  if (!(a.tol > 0 && a.tol < 0.1)) throw ParameterError("--tol must lie in (0, 0.1)");
  auto compute = [&](BetaVariant v) {
    if (a.max_over_R) {
      if (a.omega != "gv") throw ParameterError("--max-over-R requires --omega gv");
      return max_over_rate(alg, a.tol, v);
    }
    if (!(a.R > 0 && a.R < 1)) throw ParameterError("--R must lie in (0, 1) unless --max-over-R is given");
    const auto w = parse_omega(a.omega);
    return evaluate_exponent(alg, a.R, w ? *w : gv_relative_weight(a.R), a.tol, v);
  };
  std::vector<std::pair<BetaVariant, ExponentPoint>> pts;
  pts.emplace_back(beta, compute(beta));
  if (a.audit && alg == Algorithm::mmtqw) {
    const BetaVariant other = beta == BetaVariant::support ? BetaVariant::complement : BetaVariant::support;
    pts.emplace_back(other, compute(other));
  }
  if (a.format == "csv") {
    out << curve_csv_header << '\n';
    for (const auto& [v, p] : pts) out << curve_csv_row(single_row(alg, p)) << '\n';
  } else if (a.format == "json") {
    json j = point_json(alg, pts[0].second, pts[0].first);
    if (pts.size() > 1) j["audit"] = point_json(alg, pts[1].second, pts[1].first);
    out << j.dump() << '\n';
  } else {
    for (const auto& [v, p] : pts) out << point_text(alg, p, v);
  }
  return exit_code::ok;
}

// ---- curve ----

struct CurveArgs {
  std::string algs = "prange,bernstein,ssqw,mmtqw";
  double start = 0.01, stop = 0.99, step = 0.01;
  std::string omega = "gv";
  double tol = 1e-7;
  std::string out;
  std::size_t threads = 0;
  std::string beta = "support";
};

int cmd_curve(const CurveArgs& a, std::ostream& out) {
  std::set<Algorithm> algs;
  for (const auto& s : split_list(a.algs)) algs.insert(parse_algorithm(s));
  if (algs.empty()) throw ParameterError("--algs is empty");
  if (!(a.step > 0)) throw ParameterError("--R-step must be positive");
  if (!(a.start > 0 && a.stop < 1 && a.start <= a.stop)) throw ParameterError("need 0 < R-start <= R-stop < 1");
  if (!(a.tol > 0 && a.tol < 0.1)) throw ParameterError("--tol must lie in (0, 0.1)");
  const auto count = static_cast<std::size_t>(std::floor((a.stop - a.start) / a.step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = a.start + static_cast<double>(i) * a.step;
  const auto omega = parse_omega(a.omega);
  if (!a.out.empty() && a.out != "-") write_file(a.out, "");  // fail before the sweep
  const std::size_t threads = a.threads ? std::min(a.threads, thread_budget()) : thread_budget();
  const auto rows = sweep_curve(algs, grid, omega, a.tol, threads, parse_beta(a.beta));
  std::ostringstream os;
  write_curve_csv(os, rows);
  emit(a.out, os.str(), out);
  return exit_code::ok;
}

// ---- spectral ----

struct SpectralArgs {
  std::size_t n = 10, r = 3, m = 1;
  bool exact = false;
  std::string format = "csv";
};

int cmd_spectral(const SpectralArgs& a, std::ostream& out, std::ostream& err) {
  const JohnsonSpec spec{a.n, a.r, a.m};
  spec.validate();
  const double formula = johnson_gap_formula(spec);
  std::optional<SpectralGap> gap;
  if (spec.vertex_count() <= 4096)
    gap = exact_spectral_gap(spec);
  else if (a.exact)
    gap = spectral_gap_lanczos(spec);
  const double eps = 1e-9;
  std::optional<bool> matches_one_sided, matches_absolute, bound_holds;
  if (gap) {
    if (spec.m == 1) {
      matches_one_sided = std::abs(formula - gap->one_sided) <= eps;
      matches_absolute = std::abs(formula - gap->absolute) <= eps;
    } else {
      bound_holds = formula <= gap->absolute + eps;
    }
  }
  std::string flag;
  if (matches_absolute && !*matches_absolute) flag = "formula gap differs from the absolute gap";
  if (matches_one_sided && !*matches_one_sided) flag = "formula gap differs from the one-sided gap";
  if (bound_holds && !*bound_holds) flag = "formula lower bound exceeds the absolute gap";

  const std::string name = "J^" + std::to_string(spec.m) + "(" + std::to_string(spec.n) + "," +
                           std::to_string(spec.r) + ")";
  if (a.format == "json") {
    json j;
    j["n"] = spec.n;
    j["r"] = spec.r;
    j["m"] = spec.m;
    j["formula_gap"] = num(formula);
    j["formula_kind"] = spec.m == 1 ? "exact" : "lower_bound";
    j["one_sided"] = gap ? num(gap->one_sided) : json(nullptr);
    j["absolute"] = gap ? num(gap->absolute) : json(nullptr);
    if (matches_one_sided) j["formula_matches_one_sided"] = *matches_one_sided;
    if (matches_absolute) j["formula_matches_absolute"] = *matches_absolute;
    if (bound_holds) j["bound_holds"] = *bound_holds;
    j["flag"] = flag.empty() ? json(nullptr) : json(flag);
    out << j.dump() << '\n';
  } else if (a.format == "text") {
    out << name << ": formula_gap=" << format_real(formula)
        << " one_sided=" << (gap ? format_real(gap->one_sided) : "-")
        << " absolute=" << (gap ? format_real(gap->absolute) : "-");
    if (!flag.empty()) out << " FLAG: " << flag;
    out << '\n';
  } else {
    out << "n,r,m,formula_gap,one_sided,absolute\n";
    out << spec.n << ',' << spec.r << ',' << spec.m << ',' << format_real(formula) << ','
        << (gap ? format_real(gap->one_sided) : "") << ',' << (gap ? format_real(gap->absolute) : "") << '\n';
    if (!flag.empty()) err << name << ": " << flag << '\n';
  }
  return exit_code::ok;
}

// ---- walk ----

struct WalkArgs {
  std::size_t n = 10, r = 3, m = 1;
  double fraction = 1.0;
  std::uint64_t seed = 1;
  std::size_t budget = 1u << 24;
  std::size_t mix_steps = 0;
  std::string trace;
  bool planted = false;
  std::size_t quarter = 6, weight = 3, list_size = 20, U = 8, ell = 20, ell1 = 3, match_limit = 8;
};

json vertex_json(const std::optional<WalkVertex>& v) { return v ? json(*v) : json(nullptr); }

int cmd_walk(const WalkArgs& a, std::ostream& out) {
  json j;
  bool found = false;
  if (a.planted) {
    if (a.ell > 64 || a.ell1 > a.ell) throw ParameterError("need ell1 <= ell <= 64");
    const GroupSplit split(static_cast<unsigned>(a.ell), static_cast<unsigned>(a.ell1), 0);
    const PlantedKSum pk = make_planted_ksum(a.quarter, a.weight, a.list_size, split, a.seed);
    const MergeTarget r = merge_target_of(pk.inst, pk.planted);
    SsWalkOptions opt;
    opt.match_limit = a.match_limit;
    opt.budget = a.budget;
    const SsWalkRecord rec = emulate_ss_walk(pk.inst, a.U, r, Rng::derive(a.seed, 1), opt);
    found = rec.walk.found;
    j["mode"] = "planted";
    j["found"] = found;
    j["setup_count"] = rec.walk.setup_count;
    j["update_count"] = rec.walk.update_count;
    j["check_count"] = rec.walk.check_count;
    j["solution"] = rec.solution ? json(*rec.solution) : json(nullptr);
    j["planted"] = pk.planted;
    j["marked_vertex"] = vertex_json(rec.walk.marked_vertex);
    j["stats"] = {{"match_limit", rec.stats.match_limit},
                  {"reinitializations", rec.stats.reinitializations},
                  {"setup_ops", rec.stats.setup_ops},
                  {"max_update_ops", rec.stats.max_update_ops},
                  {"update_op_limit", rec.stats.update_op_limit},
                  {"max_update_comparisons", rec.stats.max_update_comparisons},
                  {"comparison_limit", rec.stats.comparison_limit},
                  {"limit_violations", rec.stats.limit_violations}};
  } else {
    const JohnsonSpec spec{a.n, a.r, a.m};
    spec.validate();
    WalkOptions opt;
    opt.mix_steps = a.mix_steps;
    opt.max_updates = a.budget;
    std::ostringstream trace;
    if (!a.trace.empty()) {
      if (a.trace != "-") write_file(a.trace, "");
      opt.trace = &trace;
    }
    const WalkRecord rec =
        classical_walk(spec, hashed_marking(a.fraction, Rng::derive(a.seed, 2)), Rng::derive(a.seed, 1), opt);
    if (!a.trace.empty()) emit(a.trace, trace.str(), out);
    found = rec.found;
    j["mode"] = "johnson";
    j["found"] = found;
    j["setup_count"] = rec.setup_count;
    j["update_count"] = rec.update_count;
    j["check_count"] = rec.check_count;
    j["mix_steps"] = a.mix_steps ? a.mix_steps : default_mix_steps(spec);
    j["marked_vertex"] = vertex_json(rec.marked_vertex);
  }
  out << j.dump() << '\n';
  return found ? exit_code::ok : exit_code::not_found;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Information-set decoding and complexity-exponent laboratory", "isdlab"};
  app.require_subcommand(1);

  DecodeArgs d;
  auto* dec = app.add_subcommand("decode", "Decode a random (or loaded) syndrome decoding instance");
  dec->add_option("--n", d.n, "Code length");
  dec->add_option("--k", d.k, "Code dimension");
  dec->add_option("--w", d.w, "Error weight");
  dec->add_option("--engine", d.engine, "prange | dumer | ss | mmt")
      ->check(CLI::IsMember({"prange", "dumer", "ss", "mmt"}));
  dec->add_option("--ell", d.ell, "Extra rows of the punctured system");
  dec->add_option("--p", d.p, "Error weight on the information set");
  dec->add_option("--dp", d.dp, "MMT overlap weight");
  dec->add_option("--r2-samples,--sample-r2", d.r2_samples, "MMT: random r2 values per search (0 = all)");
  dec->add_option("--seed", d.seed, "Seed for the instance and the decoder");
  dec->add_option("--max-iters", d.max_iters, "Outer iterations (0 = ceil(50 / P))");
  dec->add_option("--instance", d.instance, "Read the instance from a JSON file");
  dec->add_option("--save-instance", d.save_instance, "Write the instance as JSON");
  dec->add_option("--format", d.format, "json | text")->check(CLI::IsMember({"json", "text"}));

  ExponentArgs e;
  auto* exp = app.add_subcommand("exponent", "Evaluate one complexity exponent");
  exp->add_option("--alg", e.alg, "prange | bernstein | ssqw | mmtqw")
      ->required()
      ->check(CLI::IsMember({"prange", "bernstein", "ssqw", "mmtqw"}));
  exp->add_option("--R", e.R, "Code rate");
  exp->add_option("--omega", e.omega, "Relative error weight, or gv");
  exp->add_flag("--max-over-R", e.max_over_R, "Maximize over the rate at omega = gv(R)");
  exp->add_option("--tol", e.tol, "Optimizer tolerance");
  exp->add_flag("--audit", e.audit, "Also report the other beta variant (mmtqw)");
  exp->add_option("--beta", e.beta, "support | complement")->check(CLI::IsMember({"support", "complement"}));
  exp->add_option("--format", e.format, "text | csv | json")->check(CLI::IsMember({"text", "csv", "json"}));

  CurveArgs c;
  auto* cur = app.add_subcommand("curve", "Sweep exponents over a rate grid as CSV");
  cur->add_option("--algs", c.algs, "Comma-separated algorithms");
  cur->add_option("--R-start", c.start, "First rate");
  cur->add_option("--R-stop", c.stop, "Last rate");
  cur->add_option("--R-step", c.step, "Rate step");
  cur->add_option("--omega", c.omega, "Relative error weight, or gv");
  cur->add_option("--tol", c.tol, "Optimizer tolerance");
  cur->add_option("--out", c.out, "Output file (default stdout)");
  cur->add_option("--threads", c.threads, "Worker threads (0 = ISDLAB_THREADS or hardware)");
  cur->add_option("--beta", c.beta, "support | complement")->check(CLI::IsMember({"support", "complement"}));

  SpectralArgs s;
  auto* spe = app.add_subcommand("spectral", "Spectral gaps of Johnson graphs and their powers");
  spe->add_option("--n", s.n, "Universe size");
  spe->add_option("--r", s.r, "Subset size");
  spe->add_option("--m", s.m, "Number of cartesian factors");
  spe->add_flag("--exact", s.exact, "Use Lanczos above 4096 vertices (up to 2^20)");
  spe->add_option("--format", s.format, "csv | json | text")->check(CLI::IsMember({"csv", "json", "text"}));

  WalkArgs w;
  auto* wal = app.add_subcommand("walk", "Classical random walk on J^m(n,r) or the planted 4-sum walk");
  wal->add_option("--n", w.n, "Universe size");
  wal->add_option("--r", w.r, "Subset size");
  wal->add_option("--m", w.m, "Number of cartesian factors");
  wal->add_option("--marked-fraction", w.fraction, "Fraction of marked vertices");
  wal->add_option("--seed", w.seed, "Seed");
  wal->add_option("--budget", w.budget, "Maximum number of updates");
  wal->add_option("--mix-steps", w.mix_steps, "Updates between checks (0 = default)");
  wal->add_option("--trace", w.trace, "Write per-check JSON lines (- for stdout)");
  wal->add_flag("--planted", w.planted, "Run the emulated 4-sum walk on a planted instance");
  wal->add_option("--quarter", w.quarter, "Planted: quarter length");
  wal->add_option("--weight", w.weight, "Planted: weight per list element");
  wal->add_option("--list-size", w.list_size, "Planted: elements per list (V)");
  wal->add_option("--U", w.U, "Planted: subset size");
  wal->add_option("--ell", w.ell, "Planted: syndrome bits");
  wal->add_option("--ell1", w.ell1, "Planted: merge bits");
  wal->add_option("--match-limit", w.match_limit, "Planted: per-update match limit");

  std::vector<std::string> argv_store{"isdlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n' << app.help();
    return exit_code::usage;
  }

  try {
    if (*dec) return cmd_decode(d, out);
    if (*exp) return cmd_exponent(e, out);
    if (*cur) return cmd_curve(c, out);
    if (*spe) return cmd_spectral(s, out, err);
    if (*wal) return cmd_walk(w, out);
  } catch (const ParameterError& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code::usage;
  } catch (const TooLarge& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code::usage;
  } catch (const IoError& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code::io;
  } catch (const Infeasible& ex) {
    err << "infeasible: " << ex.what() << '\n';
    return exit_code::not_found;
  }
  return exit_code::usage;
}

}  // namespace isdlab
