#include "staircode/service.hpp"

#include "staircode/io.hpp"

namespace staircode {

namespace {

ServiceResponse json_response(const io::Json& body, int status = 200) {
  return {status, body.dump(), "application/json"};
}

ServiceResponse error(int status, const std::string& message) {
  return json_response(io::Json{{"error", message}}, status);
}

const std::string* param(const std::map<std::string, std::string>& params, const std::string& key) {
  auto it = params.find(key);
  return it == params.end() ? nullptr : &it->second;
}

}  // namespace

QueryService::QueryService(Staircode code, IndexOptions options)
    : index_(std::move(code), options), betti_(graded_betti(index_.staircode())) {
  const Staircode& s = index_.staircode();
  io::Json ids = io::Json::array();
  for (const auto& id : s.ids()) ids.push_back(id);
  meta_body_ = io::Json{{"n", s.size()},
                        {"mode", to_string(s.meta().mode)},
                        {"tie_breaks", {{"points", s.meta().point_ties}, {"distances", s.meta().distance_ties}}},
                        {"ids", std::move(ids)}}
                   .dump();
  staircode_body_ = io::staircode_to_json(s, betti_).dump();
  betti_body_ = io::betti_to_json(betti_).dump();
}

ServiceResponse QueryService::handle(const std::string& path,
                                     const std::map<std::string, std::string>& params) const {
  const Staircode& s = index_.staircode();
  if (path == "/api/meta") return {200, meta_body_};
  if (path == "/api/staircode") return {200, staircode_body_};
  if (path == "/api/betti") return {200, betti_body_};
  try {
    if (path == "/api/barcode" || path == "/api/treegram") {
      const std::string* l = param(params, "l");
      if (!l) return error(400, "missing query parameter 'l' (s1,e1:s2,e2)");
      const Line line = io::parse_line(*l);
      if (path == "/api/barcode") {
        const auto verbose = query_barcode_verbose(index_, line);
        io::Json empty = io::Json::array();
        for (PointIndex x : verbose.empty_owners) empty.push_back(s.id(x));
        return json_response({{"line", io::line_to_json(line)},
                              {"bars", io::bars_to_json(verbose.bars, s)},
                              {"empty", std::move(empty)}});
      }
      return json_response({{"line", io::line_to_json(line)},
                            {"treegram", io::treegram_to_json(query_treegram(s, line), s)}});
    }
    if (path == "/api/dim") {
      const std::string* g = param(params, "g");
      if (!g) return error(400, "missing query parameter 'g' (sigma,eps)");
      const Grade grade = io::parse_grade(*g);
      if (grade.eps < 0.0) return error(400, "eps must be nonnegative");
      return json_response({{"grade", {grade.sigma, grade.eps}},
                            {"dim", dimension_function(s, grade)},
                            {"dim_betti", dimension_function(betti_, grade)}});
    }
  } catch (const InvalidInput& e) {
    return error(400, e.what());
  }
  return error(404, "unknown route '" + path + "'");
}

}  // namespace staircode
