#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "staircode/datasets.hpp"
#include "staircode/io.hpp"
#include "staircode/pipeline.hpp"

using namespace staircode;
using namespace staircode::io;

namespace {

const std::filesystem::path kData = STAIRCODE_DATA_DIR;

void check_same_space(const AugmentedMetricSpace& a, const AugmentedMetricSpace& b) {
  REQUIRE(a.size() == b.size());
  CHECK(a.ids() == b.ids());
  for (PointIndex i = 0; i < a.size(); ++i) {
    CHECK(a.filter(i) == b.filter(i));
    for (PointIndex j = 0; j < i; ++j) CHECK(a.distance(i, j) == doctest::Approx(b.distance(i, j)).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("points CSV") {
  const auto s = parse_points_csv("id,f,x,y\np,0.5,0,0\nq,1.5,3,4\n");
  CHECK(s.size() == 2);
  CHECK(s.has_coordinates());
  CHECK(s.distance(0, 1) == doctest::Approx(5));
  CHECK(s.filter(1) == 1.5);

  CHECK_THROWS_AS(parse_points_csv(""), InvalidInput);
  CHECK_THROWS_AS(parse_points_csv("name,value\na,1\n"), InvalidInput);
  CHECK_THROWS_AS(parse_points_csv("id,f,x\na,1,0\nb,zz,1\n"), InvalidInput);
  CHECK_THROWS_AS(parse_points_csv("id,f,x\na,1,0\nb,2\n"), InvalidInput);
  CHECK_THROWS_AS(parse_points_csv("id,f\na,1\nb,2\n"), InvalidInput);
  CHECK_THROWS_AS(parse_points_csv("id,f,x\na,1,0\na,2,1\n"), InvalidInput);
}

TEST_CASE("distance matrices in every accepted shape") {
  const std::string pts = "id,f\nx1,1\nx2,2\nx3,3\nx4,4\n";
  const auto reference = datasets::d45();
  check_same_space(parse_distance_csv(pts, "0,3,5,3.6\n3,0,4,1.5\n5,4,0,2.5\n3.6,1.5,2.5,0\n"), reference);
  check_same_space(parse_distance_csv(pts, "3\n5,4\n3.6,1.5,2.5\n"), reference);
  check_same_space(parse_distance_csv(pts, "0\n3,0\n5,4,0\n3.6,1.5,2.5,0\n"), reference);
  check_same_space(parse_distance_csv(pts, ",x1,x2,x3,x4\n0,3,5,3.6\n3,0,4,1.5\n5,4,0,2.5\n3.6,1.5,2.5,0\n"),
                   reference);

  CHECK_THROWS_AS(parse_distance_csv(pts, "0,3,5,3.6\n3,0,4,1.5\n5,4,0,2.5\n3.6,1.5,2.6,0\n"), InvalidInput);
  CHECK_THROWS_AS(parse_distance_csv(pts, "1,3,5,3.6\n3,0,4,1.5\n5,4,0,2.5\n3.6,1.5,2.5,0\n"), InvalidInput);
  CHECK_THROWS_AS(parse_distance_csv(pts, "3\n5,4\n"), InvalidInput);
  CHECK_THROWS_AS(parse_distance_csv(pts, "3\n5,x\n3.6,1.5,2.5\n"), InvalidInput);
  CHECK_THROWS_AS(parse_distance_csv(pts, "-3\n5,4\n3.6,1.5,2.5\n"), InvalidInput);
}

TEST_CASE("dataset files") {
  const auto reference = datasets::d45();
  check_same_space(load_dataset(kData / "d45.json"), reference);
  check_same_space(load_dataset(kData / "d45_points.csv", kData / "d45_dist.csv"), reference);
  const auto planar = load_dataset(kData / "d45_planar.csv");
  CHECK(planar.has_coordinates());
  check_same_space(planar, datasets::d45_planar());
  CHECK_THROWS_AS(load_dataset(kData / "missing.csv"), InvalidInput);
}

TEST_CASE("dataset JSON") {
  const auto s = parse_dataset_json(Json::parse(R"({"points":[{"id":"a","f":0,"coords":[0,0]},{"id":"b","f":1,"coords":[1,0]}]})"));
  CHECK(s.has_coordinates());
  check_same_space(parse_dataset_json(dataset_to_json(s)), s);
  check_same_space(parse_dataset_json(dataset_to_json(datasets::d45())), datasets::d45());
  CHECK_THROWS_AS(parse_dataset_json(Json::parse(R"({"points":[]})")), InvalidInput);
  CHECK_THROWS_AS(parse_dataset_json(Json::parse(R"({"points":[{"id":"a","f":0}, {"id":"b","f":0}]})")), InvalidInput);
  CHECK_THROWS_AS(parse_dataset_json(Json::parse(R"({"points":[{"id":"a","f":0,"coords":[0]},{"id":"b","f":1,"coords":[1,0]}]})")),
                  InvalidInput);
  CHECK_THROWS_AS(parse_dataset_json(Json::parse(R"({"points":[{"id":"a"}]})")), InvalidInput);
}

TEST_CASE("point orders") {
  const auto s = datasets::d45({1, 2, 2, 4});
  CHECK(parse_order("x1, x3, x2, x4", s) == std::vector<PointIndex>{0, 2, 1, 3});
  CHECK(parse_order("x1\nx3\nx2\nx4\n", s) == std::vector<PointIndex>{0, 2, 1, 3});
  CHECK(parse_order(R"(["x1","x2","x3","x4"])", s) == std::vector<PointIndex>{0, 1, 2, 3});
  CHECK_THROWS_AS(parse_order("x1,x2,x3", s), InvalidInput);
  CHECK_THROWS_AS(parse_order("x1,x2,x3,x9", s), InvalidInput);
  CHECK_THROWS_AS(parse_order("[1,2,3,4]", s), InvalidInput);
}

TEST_CASE("staircode documents round-trip exactly") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const int kind = trial % 3;
    const auto s = kind == 0   ? datasets::random_euclidean(n, 2, rng)
                   : kind == 1 ? datasets::random_matrix(n, rng)
                               : datasets::random_ultrametric(n, rng);
    const Staircode code = compute_staircode(s, kind == 0 ? Mode::kEuclidean : Mode::kGeneric);
    const std::string text = staircode_to_json(code).dump();
    const Staircode back = staircode_from_json(Json::parse(text));
    CHECK(back == code);
    CHECK(staircode_to_json(back).dump() == text);
  }
}

TEST_CASE("staircode document contents") {
  const Staircode code = compute_staircode(datasets::d45());
  const Json doc = staircode_to_json(code);
  CHECK(doc["order"] == Json::array({"x1", "x2", "x3", "x4"}));
  CHECK(doc["meta"]["n"] == 4);
  CHECK(doc["meta"]["mode"] == "generic");
  CHECK(doc["staircases"][0]["steps"][0]["u"] == "inf");
  CHECK(doc["staircases"][2]["steps"][1]["u"] == 2.5);
  CHECK(doc["staircases"][2]["conqueror"][1]["id"] == "x2");
  CHECK(doc["betti"]["b2"] == Json::parse("[[4.0,4.0]]"));
  CHECK(doc["betti"]["b1"].size() == 4);
  CHECK(doc["betti"]["tie_broken"] == false);
}

TEST_CASE("malformed staircode documents") {
  const Json good = staircode_to_json(compute_staircode(datasets::d45()));
  CHECK_THROWS_AS(staircode_from_json(Json::object()), InvalidInput);
  CHECK_THROWS_AS(staircode_from_json(Json::parse(R"({"staircases":[]})")), InvalidInput);
  Json bad = good;
  bad["staircases"][1]["steps"][0]["u"] = "lots";
  CHECK_THROWS_AS(staircode_from_json(bad), InvalidInput);
  bad = good;
  bad["staircases"][1]["id"] = "x1";
  CHECK_THROWS_AS(staircode_from_json(bad), InvalidInput);
  bad = good;
  bad["order"][3] = "x9";
  CHECK_THROWS_AS(staircode_from_json(bad), InvalidInput);
  bad = good;
  bad["staircases"][2]["birth_sigma"] = 2.0;
  CHECK_THROWS_AS(staircode_from_json(bad), InvalidInput);
  bad = good;
  bad["staircases"][2]["steps"][1]["u"] = 7.0;
  CHECK_THROWS_AS(staircode_from_json(bad), InvalidInput);
  bad = good;
  bad["meta"]["n"] = 5;
  CHECK_THROWS_AS(staircode_from_json(bad), InvalidInput);
}

TEST_CASE("lines and grades") {
  const Line l = parse_line("1.5,0.5:4.5,3.5");
  CHECK(l.slope() == doctest::Approx(1));
  CHECK(parse_grade(" 4, 2.0 ") == Grade{4, 2});
  CHECK_THROWS_AS(parse_line("0,0:1,0"), InvalidInput);
  CHECK_THROWS_AS(parse_line("0,0"), InvalidInput);
  CHECK_THROWS_AS(parse_line("0,0:a,1"), InvalidInput);
  CHECK_THROWS_AS(parse_grade("1"), InvalidInput);
  CHECK_THROWS_AS(parse_grade("1,inf"), InvalidInput);
  const Json j = line_to_json(l);
  CHECK(j["axis_crossing"] == 1.0);
}

TEST_CASE("bars and treegrams as JSON") {
  const Staircode code = compute_staircode(datasets::d45());
  const FiberedQueryIndex index(code);
  const Line line({1.5, 0.5}, {4.5, 3.5});
  const Json bars = bars_to_json(query_barcode(index, line), code);
  REQUIRE(bars.size() == 3);
  CHECK(bars[0]["death_t"] == "inf");
  CHECK(bars[0]["death"].is_null());
  CHECK(bars[1]["id"] == "x2");
  const Json t = treegram_to_json(query_treegram(code, line), code);
  CHECK(t["leaves"].size() == 4);
  CHECK(t["merges"].size() == 3);
  CHECK(t["barcode"].size() == 4);
}
