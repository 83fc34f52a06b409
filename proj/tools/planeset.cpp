// planeset: search and survey tool for plane integral point sets.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "planeset/planeset.hpp"

namespace {

using namespace planeset;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kMalformed = 2;

unsigned resolve_jobs(unsigned flag) {
  if (const char* env = std::getenv("PLANESET_JOBS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    throw invalid_input(std::string("PLANESET_JOBS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, flag);
}

// Writes to the named file, or stdout when the name is empty.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
      if (!*file_) throw std::runtime_error("cannot open " + path + " for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

struct MinDiameterArgs {
  std::size_t n = 0;
  std::string mode = "any";
  Length dmax = 0;
  std::string method;
  unsigned jobs = 1;
  std::string checkpoint;
  std::string out;
};

int run_min_diameter(const MinDiameterArgs& a) {
  SearchOptions opt;
  opt.mode = parse_position(a.mode);
  opt.dmax = a.dmax;
  opt.method = a.method.empty() ? default_method(opt.mode) : parse_method(a.method);
  opt.jobs = resolve_jobs(a.jobs);
  if (!a.checkpoint.empty()) opt.checkpoint_dir = a.checkpoint;
  FactorTable table(3 * static_cast<std::uint64_t>(a.dmax) + 3);
  auto result = min_diameter(a.n, opt, &table);
  Output out(a.out);
  out.stream() << to_json(result, &table).dump(2) << '\n';
  return kOk;
}

struct EnumerateArgs {
  Length dmax = 0;
  std::string mode = "semigeneral";
  std::size_t nmin = 3;
  unsigned jobs = 1;
  std::string out;
};

int run_enumerate(const EnumerateArgs& a) {
  const Position mode = parse_position(a.mode);
  if (a.nmin < 3) throw invalid_input("--nmin must be at least 3");
  FactorTable table(3 * static_cast<std::uint64_t>(a.dmax) + 3);
  Output out(a.out);
  const unsigned jobs = resolve_jobs(a.jobs);
  for (Length d = 1; d <= a.dmax; ++d) {
    const auto sets = mode == Position::arbitrary
                          ? clique_sets_exact(d, a.nmin, std::numeric_limits<std::size_t>::max(), mode, &table, jobs)
                          : orderly_sets_exact(d, a.nmin, std::numeric_limits<std::size_t>::max(), mode, &table);
    for (const auto& [n, list] : sets)
      for (const auto& m : list) out.stream() << to_json(make_point_set_unchecked(m, &table)).dump() << '\n';
  }
  return kOk;
}

struct LineArgs {
  Length a = 0, b = 0, c = 0;
  std::string window;
  bool csv = false;
};

Window parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw invalid_input("--window expects lo:hi");
  try {
    Window w{std::stoll(text.substr(0, colon)), std::stoll(text.substr(colon + 1))};
    if (w.lo > w.hi) throw invalid_input("--window: lo exceeds hi");
    return w;
  } catch (const std::logic_error&) {
    throw invalid_input("--window expects integers lo:hi, got " + text);
  }
}

int run_extend_line(const LineArgs& a) {
  FactorTable table(3 * static_cast<std::uint64_t>(std::max({a.a, a.b, a.c, Length{1}})) + 3);
  auto profile = decomposition_profile(a.a, a.b, a.c, &table);
  auto cfg = a.window.empty() ? points_on_base(profile) : points_on_base(profile, parse_window(a.window));
  if (a.csv) {
    std::cout << "position,apex_distance\n";
    for (std::size_t i = 0; i < cfg.positions.size(); ++i)
      std::cout << cfg.positions[i] << ',' << cfg.apex_distances[i] << '\n';
    return kOk;
  }
  nlohmann::json j{{"a", a.a},
                   {"b", a.b},
                   {"c", a.c},
                   {"D", profile.D},
                   {"g", profile.g},
                   {"foot", profile.foot.str()},
                   {"height_sq", profile.height_sq.str()},
                   {"positions", cfg.positions},
                   {"apex_distances", cfg.apex_distances},
                   {"tau_bound_holds", tau_necessary_check(cfg)}};
  std::cout << j.dump(2) << '\n';
  return kOk;
}

struct HeuristicArgs {
  std::size_t n = 0;
  std::uint64_t tau_min = 0;
  std::uint64_t d_limit = 100000;
  bool csv = false;
};

std::string joined(const std::vector<Length>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
  return s;
}

int run_heuristic(const HeuristicArgs& a) {
  if (a.n < 4) throw invalid_input("--n must be at least 4");
  const auto tau_min = a.tau_min ? a.tau_min : a.n - 2;
  auto cands = smooth_candidates(a.d_limit, tau_min);
  auto best = heuristic_min_diameter(a.n, cands);
  if (a.csv) {
    std::cout << "n,D,g,diameter,positions,apex_distances\n";
    for (const auto& r : best)
      std::cout << a.n << ',' << r.candidate.D << ',' << r.candidate.g << ',' << r.diameter << ','
                << joined(r.configuration.positions) << ',' << joined(r.configuration.apex_distances) << '\n';
    return kOk;
  }
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : best)
    arr.push_back({{"D", r.candidate.D},
                   {"g", r.candidate.g},
                   {"diameter", r.diameter},
                   {"positions", r.configuration.positions},
                   {"apex_distances", r.configuration.apex_distances},
                   {"theorem4_bound", theorem4_bound(static_cast<double>(a.n), 1.0, 1.0)}});
  std::cout << nlohmann::json{{"n", a.n}, {"optima", arr}}.dump(2) << '\n';
  return kOk;
}

struct PsiArgs {
  Length dmax = 0;
  bool csv = false;
  bool counts = false;
  bool unordered = false;
};

int run_psi(const PsiArgs& a) {
  FactorTable table(3 * static_cast<std::uint64_t>(a.dmax) + 3);
  if (a.counts) {
    if (a.csv) std::cout << "d,count,witness_count\n";
    for (Length d = 1; d <= a.dmax; ++d) {
      const auto count = count_characteristics(d, &table);
      const auto witnesses = prime_pair_witness_count(d, &table);
      if (a.csv)
        std::cout << d << ',' << count << ',' << witnesses << '\n';
      else
        std::cout << nlohmann::json{{"d", d}, {"count", count}, {"witness_count", witnesses}}.dump() << '\n';
    }
    return kOk;
  }
  if (a.csv) std::cout << "d,k,psi\n";
  for (Length d = 1; d <= a.dmax; ++d)
    for (auto [k, v] : characteristic_histogram(d, a.unordered, &table)) {
      if (a.csv)
        std::cout << d << ',' << k << ',' << v << '\n';
      else
        std::cout << nlohmann::json{{"d", d}, {"k", k}, {"psi", v}}.dump() << '\n';
    }
  return kOk;
}

int run_char(Length a, Length b, Length c) {
  if (a <= 0 || b <= 0 || c <= 0) throw invalid_input("side lengths must be positive");
  const auto t = Triangle::sorted(a, b, c);
  const auto H = heron_product(t);
  if (H < 0) throw invalid_input("sides violate the triangle inequality");
  nlohmann::json j{{"a", t.a}, {"b", t.b}, {"c", t.c}, {"heron_product", to_string(H)}, {"degenerate", H == 0}};
  if (H > 0) {
    FactorTable table(3 * static_cast<std::uint64_t>(t.a) + 3);
    j["characteristic"] = characteristic(t, &table);
    auto tuple = find_parameters(t, &table);
    j["parameters"] = {{"p", to_string(tuple.p)},
                       {"q", to_string(tuple.q)},
                       {"h", to_string(tuple.h)},
                       {"i", to_string(tuple.i)},
                       {"j", to_string(tuple.j)}};
  }
  std::cout << j.dump(2) << '\n';
  return kOk;
}

int run_verify(const std::string& path) {
  VerifyReport report;
  try {
    report = verify_file(path);
  } catch (const parse_error& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return kMalformed;
  }
  for (const auto& e : report.entries)
    for (const auto& c : e.checks) {
      std::cout << "entry " << e.index;
      if (e.line) std::cout << " (line " << e.line << ")";
      std::cout << ' ' << c.name << ": " << (c.ok() ? "pass" : "FAIL " + c.counterexample) << '\n';
    }
  std::cout << (report.ok() ? "all invariants hold" : "invariant violations found") << " in "
            << report.entries.size() << " point set(s)\n";
  return report.ok() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search and survey tool for plane integral point sets"};
  app.require_subcommand(1);

  MinDiameterArgs md;
  auto* cmd_md = app.add_subcommand("min-diameter", "Smallest diameter of an n-point set in the given position");
  cmd_md->add_option("--n", md.n, "Number of points")->required()->check(CLI::Range(3, 1000));
  cmd_md->add_option("--mode", md.mode, "any | semigeneral | general")->required();
  cmd_md->add_option("--dmax", md.dmax, "Largest diameter searched")->required()->check(CLI::PositiveNumber);
  cmd_md->add_option("--method", md.method, "orderly | clique | both (default: clique for any, orderly otherwise)");
  cmd_md->add_option("--jobs", md.jobs, "Worker threads (PLANESET_JOBS overrides)");
  cmd_md->add_option("--checkpoint", md.checkpoint, "Directory for resumable progress");
  cmd_md->add_option("--out", md.out, "Write the JSON result here instead of stdout");

  EnumerateArgs en;
  auto* cmd_en = app.add_subcommand("enumerate", "All canonical point sets up to a diameter, as JSON lines");
  cmd_en->add_option("--dmax", en.dmax, "Largest diameter")->required()->check(CLI::PositiveNumber);
  cmd_en->add_option("--mode", en.mode, "any | semigeneral | general")->required();
  cmd_en->add_option("--nmin", en.nmin, "Smallest point count emitted")->required();
  cmd_en->add_option("--jobs", en.jobs, "Worker threads (PLANESET_JOBS overrides)");
  cmd_en->add_option("--out", en.out, "Write JSON lines here instead of stdout");

  LineArgs ln;
  auto* cmd_ln = app.add_subcommand("extend-line", "Integral points on the base line of a triangle");
  cmd_ln->add_option("--a", ln.a, "Base side")->required();
  cmd_ln->add_option("--b", ln.b, "Distance from the left base end to the apex")->required();
  cmd_ln->add_option("--c", ln.c, "Distance from the right base end to the apex")->required();
  cmd_ln->add_option("--window", ln.window, "Position range lo:hi (default -3a:4a)");
  cmd_ln->add_flag("--csv", ln.csv, "CSV output");

  HeuristicArgs he;
  auto* cmd_he = app.add_subcommand("heuristic-line", "Upper bound on d(2,n) from decomposition numbers");
  cmd_he->add_option("--n", he.n, "Number of points")->required();
  cmd_he->add_option("--tau-min", he.tau_min, "Minimum divisor count of candidates (default n-2)");
  cmd_he->add_option("--d-limit", he.d_limit, "Largest decomposition number tried");
  cmd_he->add_flag("--csv", he.csv, "CSV output");

  PsiArgs ps;
  auto* cmd_ps = app.add_subcommand("psi", "Triangle counts per diameter and characteristic");
  cmd_ps->add_option("--dmax", ps.dmax, "Largest diameter")->required()->check(CLI::PositiveNumber);
  cmd_ps->add_flag("--csv", ps.csv, "CSV output");
  cmd_ps->add_flag("--counts", ps.counts, "Number of characteristics per diameter instead");
  cmd_ps->add_flag("--unordered", ps.unordered, "Count unordered side pairs");

  Length ca = 0, cb = 0, cc = 0;
  auto* cmd_ch = app.add_subcommand("char", "Characteristic and parameters of a triangle");
  cmd_ch->add_option("--a", ca)->required();
  cmd_ch->add_option("--b", cb)->required();
  cmd_ch->add_option("--c", cc)->required();

  std::string verify_path;
  auto* cmd_ve = app.add_subcommand("verify", "Re-check stored point sets");
  cmd_ve->add_option("file", verify_path, "JSON or JSON-lines file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    if (*cmd_md) return run_min_diameter(md);
    if (*cmd_en) return run_enumerate(en);
    if (*cmd_ln) return run_extend_line(ln);
    if (*cmd_he) return run_heuristic(he);
    if (*cmd_ps) return run_psi(ps);
    if (*cmd_ch) return run_char(ca, cb, cc);
    if (*cmd_ve) return run_verify(verify_path);
  } catch (const cross_check_failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kViolation;
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kMalformed;
  }
  return kOk;
}
