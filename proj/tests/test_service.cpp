#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "staircode/datasets.hpp"
#include "staircode/io.hpp"
#include "staircode/pipeline.hpp"
#include "staircode/service.hpp"

using namespace staircode;
using io::Json;

namespace {

const QueryService& d45_service() {
  static const QueryService service(compute_staircode(datasets::d45()));
  return service;
}

Json get(const std::string& path, const std::map<std::string, std::string>& params = {}, int status = 200) {
  const ServiceResponse r = d45_service().handle(path, params);
  CHECK(r.status == status);
  CHECK(r.content_type == "application/json");
  return Json::parse(r.body);
}

}  // namespace

TEST_CASE("static documents") {
  const Json meta = get("/api/meta");
  CHECK(meta["n"] == 4);
  CHECK(meta["ids"] == Json::array({"x1", "x2", "x3", "x4"}));
  const Json code = get("/api/staircode");
  CHECK(io::staircode_from_json(code) == d45_service().staircode());
  const Json betti = get("/api/betti");
  CHECK(betti["b0"].size() == 4);
  CHECK(betti["b1"].size() == 4);
  CHECK(betti["b2"] == Json::parse("[[4.0,4.0]]"));
}

TEST_CASE("barcode route") {
  const Json r = get("/api/barcode", {{"l", "1.5,0.5:4.5,3.5"}});
  CHECK(r["bars"].size() == 3);
  CHECK(r["empty"] == Json::array({"x4"}));
  const Json all = get("/api/barcode", {{"l", "3.9,0:4.1,0.2"}});
  CHECK(all["bars"].size() == 4);
  CHECK(all["empty"].empty());

  CHECK(get("/api/barcode", {{"l", "0,0:1,0"}}, 400)["error"] == "line must have positive slope");
  CHECK(get("/api/barcode", {{"l", "0,1:1,0"}}, 400).contains("error"));
  CHECK(get("/api/barcode", {{"l", "nonsense"}}, 400).contains("error"));
  CHECK(get("/api/barcode", {}, 400).contains("error"));
}

TEST_CASE("treegram route") {
  const Json r = get("/api/treegram", {{"l", "1.5,0.5:4.5,3.5"}});
  CHECK(r["treegram"]["leaves"].size() == 4);
  CHECK(r["treegram"]["merges"].size() == 3);
  get("/api/treegram", {{"l", "1,1:2,1"}}, 400);
}

TEST_CASE("dimension route") {
  const Json a = get("/api/dim", {{"g", "4,2.0"}});
  CHECK(a["dim"] == 3);
  CHECK(a["dim_betti"] == 3);
  CHECK(get("/api/dim", {{"g", "4,3.2"}})["dim"] == 1);
  CHECK(get("/api/dim", {{"g", "0,0"}})["dim"] == 0);
  get("/api/dim", {{"g", "4,-1"}}, 400);
  get("/api/dim", {{"g", "4"}}, 400);
  get("/api/dim", {}, 400);
}

TEST_CASE("unknown routes") {
  CHECK(get("/api/nothing", {}, 404).contains("error"));
  get("/", {}, 404);
}
