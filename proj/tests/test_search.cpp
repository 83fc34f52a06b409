#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "planeset/planeset.hpp"

using namespace planeset;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("planeset-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string dump(const std::vector<SearchResult>& rs) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : rs) j.push_back(to_json(r));
  return j.dump();
}

}  // namespace

TEST(MinDiameter, Examples) {
  SearchOptions a;
  a.mode = Position::arbitrary;
  a.dmax = 17;
  a.method = Method::clique;
  EXPECT_EQ(min_diameter(7, a).min_diameter, 17);

  SearchOptions s;
  s.mode = Position::semi_general;
  s.dmax = 33;
  s.method = Method::orderly;
  auto r = min_diameter(7, s);
  EXPECT_EQ(r.min_diameter, 33);
  for (const auto& w : r.witnesses) {
    EXPECT_EQ(w.diameter, 33);
    EXPECT_EQ(w.matrix.size(), 7u);
    EXPECT_TRUE(satisfies(w.position_class, Position::semi_general));
  }

  s.dmax = 20;
  auto miss = min_diameter(7, s);
  EXPECT_FALSE(miss.min_diameter.has_value());
  EXPECT_EQ(to_json(miss)["min_diameter"], "exceeds dmax");

  SearchOptions bad;
  bad.mode = Position::arbitrary;
  bad.method = Method::orderly;
  bad.dmax = 5;
  EXPECT_THROW(min_diameter(4, bad), invalid_input);
}

TEST(MinDiameter, BothMethodsAgree) {
  SearchOptions s;
  s.mode = Position::semi_general;
  s.dmax = 20;
  s.method = Method::both;
  auto rs = min_diameter_table(3, 6, s);
  std::vector<Length> got;
  for (const auto& r : rs) got.push_back(r.min_diameter.value_or(-1));
  EXPECT_EQ(got, (std::vector<Length>{1, 4, 8, 8}));
}

TEST(MinDiameter, ResumeIsByteIdentical) {
  auto dir = scratch("resume");
  SearchOptions s;
  s.mode = Position::arbitrary;
  s.method = Method::clique;
  s.dmax = 17;
  auto full = dump(min_diameter_table(4, 7, s));

  s.checkpoint_dir = dir;
  s.dmax = 9;
  min_diameter_table(4, 7, s);
  auto cp = dir / "min-diameter-arbitrary-n4-7-clique.json";
  ASSERT_TRUE(fs::exists(cp));
  EXPECT_EQ(nlohmann::json::parse(slurp(cp))["last_completed_d"], 9);

  s.dmax = 17;
  std::vector<Length> visited;
  s.on_diameter_done = [&](Length d) { visited.push_back(d); };
  auto resumed = dump(min_diameter_table(4, 7, s));
  EXPECT_EQ(resumed, full);
  ASSERT_FALSE(visited.empty());
  EXPECT_EQ(visited.front(), 10);
  fs::remove_all(dir);
}

TEST(MinDiameter, DeterministicAcrossJobs) {
  SearchOptions s;
  s.mode = Position::arbitrary;
  s.method = Method::clique;
  s.dmax = 21;
  s.jobs = 1;
  auto one = dump(min_diameter_table(4, 8, s));
  s.jobs = 4;
  EXPECT_EQ(dump(min_diameter_table(4, 8, s)), one);
}

TEST(Structure, Examples) {
  auto tri = make_point_set(DistanceMatrix::from_column_lex(3, {5, 4, 3}));
  auto r = structure_report(tri);
  EXPECT_EQ(r.max_collinear, 2u);
  EXPECT_TRUE(r.concyclic);
  auto j = to_json(r);
  EXPECT_EQ(j["n"], 3);
}

TEST(Verify, FreshOutputPasses) {
  SearchOptions s;
  s.mode = Position::semi_general;
  s.method = Method::orderly;
  s.dmax = 8;
  auto r = min_diameter(6, s);
  auto report = verify_text(to_json(r).dump());
  ASSERT_FALSE(report.entries.empty());
  EXPECT_TRUE(report.ok());

  std::string lines;
  for (const auto& w : r.witnesses) lines += to_json(w, true).dump() + "\n";
  auto jl = verify_text(lines);
  EXPECT_TRUE(jl.ok());
  EXPECT_EQ(jl.entries.front().line, 1u);
}

TEST(Verify, PerturbedDistanceFails) {
  auto p = make_point_set(DistanceMatrix::from_rows({{0, 3, 5, 4}, {3, 0, 4, 5}, {5, 4, 0, 3}, {4, 5, 3, 0}}));
  auto j = to_json(p);
  j["upper_triangle"][0] = 4;
  auto report = verify_text(j.dump());
  ASSERT_EQ(report.entries.size(), 1u);
  EXPECT_FALSE(report.ok());
  bool cm = false;
  for (const auto& c : report.entries[0].checks) cm |= c.name == "cayley-menger" && !c.ok();
  EXPECT_TRUE(cm);
}

TEST(Verify, ClassClaimMismatch) {
  auto p = make_point_set(DistanceMatrix::from_rows({{0, 3, 5, 4}, {3, 0, 4, 5}, {5, 4, 0, 3}, {4, 5, 3, 0}}));
  auto j = to_json(p);
  j["position_class"] = "general";
  auto report = verify_text(j.dump());
  bool mismatch = false;
  for (const auto& c : report.entries[0].checks) mismatch |= c.name == "position-class" && !c.ok();
  EXPECT_TRUE(mismatch);
}

TEST(Verify, MalformedInputReportsLine) {
  auto good = to_json(make_point_set(DistanceMatrix::from_column_lex(3, {5, 4, 3}))).dump();
  try {
    verify_text(good + "\n" + good + "\n{\"n\": 3, \"upper_triangle\": [1,2]}\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  try {
    verify_text(good + "\n{not json\n");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(verify_text(""), parse_error);
}

TEST(Serialize, RoundTrip) {
  auto p = make_point_set(DistanceMatrix::from_rows({{0, 3, 5, 4}, {3, 0, 4, 5}, {5, 4, 0, 3}, {4, 5, 3, 0}}));
  auto rec = point_set_from_json(to_json(p, true));
  EXPECT_EQ(rec.matrix, p.matrix);
  EXPECT_EQ(rec.characteristic, p.characteristic);
  EXPECT_EQ(rec.position_class, p.position_class);
  ASSERT_TRUE(rec.coordinates.has_value());
  EXPECT_EQ(*rec.coordinates, embed(p.matrix));
  EXPECT_THROW(point_set_from_json(nlohmann::json::array()), invalid_input);
}
