#pragma once

// Minimum-diameter drivers, structural reports and verification of stored
// point sets.

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "planeset/canonical.hpp"
#include "planeset/clique.hpp"
#include "planeset/geometry.hpp"
#include "planeset/orderly.hpp"
#include "planeset/serialize.hpp"

namespace planeset {

enum class Method { orderly, clique, both };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::orderly: return "orderly";
    case Method::clique: return "clique";
    case Method::both: return "both";
  }
  return "?";
}

inline Method parse_method(const std::string& s) {
  if (s == "orderly") return Method::orderly;
  if (s == "clique") return Method::clique;
  if (s == "both") return Method::both;
  throw invalid_input("unknown method: " + s);
}

/// Default routing: orderly generation for (semi-)general position, cliques
/// for arbitrary position.
inline Method default_method(Position mode) { return mode == Position::arbitrary ? Method::clique : Method::orderly; }

class cross_check_failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Canonical sets with diameter exactly d, keyed by point count.
using SetsBySize = std::map<std::size_t, std::vector<DistanceMatrix>>;

/// All canonical triangles with largest side d (every triangle is in general
/// position).
inline std::vector<DistanceMatrix> triangles_exact(Length d) {
  std::vector<DistanceMatrix> out;
  for (Length b = d - (d - 1) / 2; b <= d; ++b)
    for (Length c = d - b + 1; c <= b; ++c) out.push_back(DistanceMatrix::from_column_lex(3, {d, b, c}));
  std::sort(out.begin(), out.end(), MatrixLess{});
  return out;
}

inline SetsBySize orderly_sets_exact(Length d, std::size_t nmin, std::size_t nmax, Position mode,
                                     const FactorTable* table) {
  if (mode == Position::arbitrary) throw invalid_input("orderly generation does not cover arbitrary position");
  SetsBySize out;
  orderly_search_exact(
      d, nmin, nmax, mode, [&](std::size_t q, const DistanceMatrix& m) { out[q].push_back(m); }, table);
  for (auto& [q, v] : out) std::sort(v.begin(), v.end(), MatrixLess{});
  return out;
}

inline SetsBySize clique_sets_exact(Length d, std::size_t nmin, std::size_t nmax, Position mode,
                                    const FactorTable* table, unsigned jobs = 1) {
  SetsBySize out;
  if (nmin <= 3 && nmax >= 3) out[3] = triangles_exact(d);
  if (nmax >= 4)
    for (auto& m : search_diameter_exact(d, std::max<std::size_t>(nmin, 4), mode, table, nmax, nullptr, jobs))
      out[m.size()].push_back(std::move(m));
  std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

/// Sets of diameter exactly d by the chosen method. With Method::both the
/// two methods must agree exactly, otherwise cross_check_failure is thrown.
inline SetsBySize sets_exact(Length d, std::size_t nmin, std::size_t nmax, Position mode, Method method,
                             const FactorTable* table, unsigned jobs = 1) {
  switch (method) {
    case Method::orderly: return orderly_sets_exact(d, nmin, nmax, mode, table);
    case Method::clique: return clique_sets_exact(d, nmin, nmax, mode, table, jobs);
    case Method::both: {
      auto a = orderly_sets_exact(d, nmin, nmax, mode, table);
      auto b = clique_sets_exact(d, nmin, nmax, mode, table, jobs);
      if (a != b) throw cross_check_failure("orderly and clique results differ at diameter " + std::to_string(d));
      return a;
    }
  }
  return {};
}

struct SearchResult {
  std::size_t n = 0;
  Position mode = Position::arbitrary;
  std::optional<Length> min_diameter;  // nullopt: exceeds dmax
  std::vector<PointSet> witnesses;
  Length dmax_searched = 0;
  Method method = Method::clique;
};

struct SearchOptions {
  Position mode = Position::arbitrary;
  Length dmax = 1;
  Method method = Method::clique;
  unsigned jobs = 1;
  std::optional<std::filesystem::path> checkpoint_dir;
  std::function<void(Length)> on_diameter_done;
};

namespace detail {

inline std::filesystem::path checkpoint_path(const std::filesystem::path& dir, std::size_t n_lo, std::size_t n_hi,
                                             const SearchOptions& opt) {
  std::string mode = to_string(opt.mode);
  return dir / ("min-diameter-" + mode + "-n" + std::to_string(n_lo) + "-" + std::to_string(n_hi) + "-" +
                to_string(opt.method) + ".json");
}

inline nlohmann::json checkpoint_params(std::size_t n_lo, std::size_t n_hi, const SearchOptions& opt) {
  return {{"n_lo", n_lo}, {"n_hi", n_hi}, {"mode", to_string(opt.mode)}, {"method", to_string(opt.method)}};
}

inline void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    os << text;
    if (!os.flush()) throw std::runtime_error("cannot write checkpoint " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

/// Minimum diameters for every n in [n_lo, n_hi], ascending d = 1, 2, ...
/// once for the whole range. The witnesses for n are all canonical n-point
/// sets at the first diameter where any exists.
inline std::vector<SearchResult> min_diameter_table(std::size_t n_lo, std::size_t n_hi, const SearchOptions& opt,
                                                    const FactorTable* table = nullptr) {
  if (n_lo < 3 || n_hi < n_lo) throw invalid_input("min_diameter: need 3 <= n_lo <= n_hi");
  if (opt.dmax < 1) throw invalid_input("min_diameter: dmax must be positive");
  if (opt.mode == Position::arbitrary && opt.method != Method::clique)
    throw invalid_input("orderly generation does not cover arbitrary position; use the clique method");

  std::map<std::size_t, std::optional<Length>> found;
  std::map<std::size_t, std::vector<DistanceMatrix>> witnesses;
  for (std::size_t n = n_lo; n <= n_hi; ++n) found[n] = std::nullopt;
  Length start = 1;

  std::optional<std::filesystem::path> cp_path;
  if (opt.checkpoint_dir) {
    std::filesystem::create_directories(*opt.checkpoint_dir);
    cp_path = detail::checkpoint_path(*opt.checkpoint_dir, n_lo, n_hi, opt);
    std::ifstream is(*cp_path);
    if (is) {
      auto j = nlohmann::json::parse(is, nullptr, false);
      if (!j.is_discarded() && j.value("params", nlohmann::json{}) == detail::checkpoint_params(n_lo, n_hi, opt)) {
        const Length last = j.at("last_completed_d").get<Length>();
        for (const auto& r : j.at("results")) {
          const auto n = r.at("n").get<std::size_t>();
          const auto d = r.at("min_diameter").get<Length>();
          if (d > opt.dmax) continue;
          found[n] = d;
          for (const auto& w : r.at("witnesses"))
            witnesses[n].push_back(DistanceMatrix::from_upper_row_major(n, w.get<std::vector<Length>>()));
        }
        start = std::min(last, opt.dmax) + 1;
      }
    }
  }

  auto save = [&](Length last) {
    if (!cp_path) return;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& [n, d] : found) {
      if (!d) continue;
      nlohmann::json ws = nlohmann::json::array();
      for (const auto& w : witnesses[n]) ws.push_back(w.upper_row_major());
      results.push_back({{"n", n}, {"min_diameter", *d}, {"witnesses", ws}});
    }
    nlohmann::json j{{"params", detail::checkpoint_params(n_lo, n_hi, opt)},
                     {"last_completed_d", last},
                     {"results", results}};
    detail::write_atomically(*cp_path, j.dump(1));
  };

  for (Length d = start; d <= opt.dmax; ++d) {
    std::size_t lo = 0, hi = 0;
    for (const auto& [n, v] : found)
      if (!v) {
        if (!lo) lo = n;
        hi = n;
      }
    if (!lo) break;
    auto sets = sets_exact(d, lo, hi, opt.mode, opt.method, table, opt.jobs);
    for (auto& [n, v] : found)
      if (!v && sets.count(n) && !sets[n].empty()) {
        v = d;
        witnesses[n] = sets[n];
      }
    save(d);
    if (opt.on_diameter_done) opt.on_diameter_done(d);
  }

  std::vector<SearchResult> out;
  for (const auto& [n, d] : found) {
    SearchResult r;
    r.n = n;
    r.mode = opt.mode;
    r.method = opt.method;
    r.dmax_searched = opt.dmax;
    r.min_diameter = d;
    for (const auto& w : witnesses[n]) r.witnesses.push_back(make_point_set_unchecked(w, table));
    out.push_back(std::move(r));
  }
  return out;
}

inline SearchResult min_diameter(std::size_t n, const SearchOptions& opt, const FactorTable* table = nullptr) {
  return min_diameter_table(n, n, opt, table).front();
}

inline nlohmann::json to_json(const SearchResult& r, const FactorTable* table = nullptr) {
  nlohmann::json ws = nlohmann::json::array();
  for (const auto& w : r.witnesses) ws.push_back(to_json(w, true, table));
  nlohmann::json j{{"n", r.n},
                   {"mode", to_string(r.mode)},
                   {"method", to_string(r.method)},
                   {"dmax_searched", r.dmax_searched}};
  if (r.min_diameter)
    j["min_diameter"] = *r.min_diameter;
  else
    j["min_diameter"] = "exceeds dmax";
  j["witnesses"] = std::move(ws);
  return j;
}

// ---------------------------------------------------------------------------
// Structure of a point set

struct StructureReport {
  std::size_t n = 0;
  Length diameter = 0;
  std::uint64_t characteristic = 0;
  Position position_class = Position::arbitrary;
  std::size_t max_collinear = 0;
  bool concyclic = false;
  std::optional<CircleClass> circle;
};

inline bool all_concyclic(const DistanceMatrix& m) {
  if (has_collinear_triple(m)) return false;
  const std::size_t n = m.size();
  for (std::size_t l = 3; l < n; ++l)
    if (!concyclic(m, 0, 1, 2, l)) return false;
  return true;
}

inline StructureReport structure_report(const PointSet& p, const FactorTable* table = nullptr) {
  StructureReport r;
  r.n = p.matrix.size();
  r.diameter = p.diameter;
  r.characteristic = p.characteristic;
  r.position_class = p.position_class;
  r.max_collinear = max_collinear(p.matrix);
  r.concyclic = all_concyclic(p.matrix);
  if (r.concyclic) r.circle = circumradius_class(p.matrix, table);
  return r;
}

inline nlohmann::json to_json(const StructureReport& r) {
  nlohmann::json j{{"n", r.n},
                   {"diameter", r.diameter},
                   {"characteristic", r.characteristic},
                   {"position_class", to_string(r.position_class)},
                   {"max_collinear", r.max_collinear},
                   {"concyclic", r.concyclic}};
  if (r.circle) j["circumradius"] = {{"z", r.circle->z}, {"k", r.circle->k}};
  return j;
}

// ---------------------------------------------------------------------------
// Verification of stored point sets

class parse_error : public invalid_input {
 public:
  parse_error(std::size_t line, const std::string& what)
      : invalid_input("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct VerifyEntry {
  std::size_t index = 0;
  std::size_t line = 0;  // 0 when the entry came from a multi-line document
  std::vector<InvariantCheck> checks;
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.ok(); });
  }
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const VerifyEntry& e) { return e.ok(); });
  }
};

/// Structural invariants of the matrix plus agreement with every claim the
/// record makes about itself.
inline std::vector<InvariantCheck> verify_record(const PointSetRecord& r, const FactorTable* table = nullptr) {
  const auto& m = r.matrix;
  auto checks = check_all(m, table);
  const bool sound = std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.ok(); });
  InvariantCheck diam{"diameter", {}};
  if (r.diameter && *r.diameter != m.diameter())
    diam.counterexample = "claimed " + std::to_string(*r.diameter) + ", actual " + std::to_string(m.diameter());
  checks.push_back(diam);
  if (!sound) return checks;
  InvariantCheck ch{"characteristic-claim", {}};
  const auto k = characteristic_of_set(m, table);
  if (r.characteristic && *r.characteristic != k)
    ch.counterexample = "claimed " + std::to_string(*r.characteristic) + ", actual " + std::to_string(k);
  checks.push_back(ch);
  InvariantCheck pc{"position-class", {}};
  const auto actual = position_class(m);
  if (r.position_class && *r.position_class != actual)
    pc.counterexample = "claimed " + to_string(*r.position_class) + ", actual " + to_string(actual);
  checks.push_back(pc);
  if (r.coordinates) {
    InvariantCheck co{"coordinates", {}};
    const auto& pts = *r.coordinates;
    for (std::size_t i = 0; i < pts.size() && co.ok(); ++i)
      for (std::size_t j = i + 1; j < pts.size() && co.ok(); ++j) {
        std::optional<Length> dij;
        try {
          dij = integral_distance(pts[i], pts[j]);
        } catch (const invalid_input& e) {
          co.counterexample = e.what();
          break;
        }
        if (dij != std::optional<Length>(m(i, j)))
          co.counterexample = "points " + describe({i, j}) + " do not realise their distance";
      }
    checks.push_back(co);
  }
  return checks;
}

/// Accepts JSON lines, a single point set, an array of point sets, or a
/// search result object with a "witnesses" array. Throws parse_error with a
/// line number on malformed content.
inline VerifyReport verify_text(const std::string& text, const FactorTable* table = nullptr) {
  VerifyReport report;
  auto add = [&](const nlohmann::json& j, std::size_t index, std::size_t line) {
    PointSetRecord rec;
    try {
      rec = point_set_from_json(j);
    } catch (const invalid_input& e) {
      throw parse_error(line ? line : 1, "entry " + std::to_string(index) + ": " + e.what());
    }
    report.entries.push_back({index, line, verify_record(rec, table)});
  };
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (!doc.is_discarded()) {
    if (doc.is_array()) {
      for (std::size_t i = 0; i < doc.size(); ++i) add(doc[i], i, 0);
    } else if (doc.is_object() && doc.contains("witnesses")) {
      const auto& ws = doc["witnesses"];
      if (!ws.is_array()) throw parse_error(1, "\"witnesses\" is not an array");
      for (std::size_t i = 0; i < ws.size(); ++i) add(ws[i], i, 0);
    } else {
      add(doc, 0, 1);
    }
    return report;
  }
  // Not a single document: read as JSON lines.
  std::istringstream is(text);
  std::string line;
  std::size_t lineno = 0, index = 0;
  bool any = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw parse_error(lineno, e.what());
    }
    add(j, index++, lineno);
    any = true;
  }
  if (!any) throw parse_error(1, "no point sets found");
  return report;
}

inline VerifyReport verify_file(const std::filesystem::path& path, const FactorTable* table = nullptr) {
  std::ifstream is(path);
  if (!is) throw parse_error(0, "cannot open " + path.string());
  std::stringstream buf;
  buf << is.rdbuf();
  return verify_text(buf.str(), table);
}

}  // namespace planeset
