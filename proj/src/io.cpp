#include "staircode/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace staircode::io {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::optional<double> to_double(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return v;
}

double require_double(std::string_view text, const std::string& what) {
  auto v = to_double(text);
  if (!v) throw InvalidInput("cannot parse " + what + " '" + trim(text) + "' as a number");
  return *v;
}

// Non-empty, non-comment lines.
std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(trim(field));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> split_any(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct IdFilter {
  std::vector<std::string> ids;
  std::vector<double> f;
  std::vector<double> coords;
  std::size_t dim = 0;
};

IdFilter parse_point_rows(const std::string& text) {
  const auto rows = lines_of(text);
  if (rows.empty()) throw InvalidInput("points CSV is empty");
  auto header = split(rows.front(), ',');
  for (auto& h : header) std::transform(h.begin(), h.end(), h.begin(), [](unsigned char c) { return std::tolower(c); });
  if (header.size() < 2 || header[0] != "id" || header[1] != "f") {
    throw InvalidInput("points CSV header must start with 'id,f'");
  }
  IdFilter out;
  out.dim = header.size() - 2;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto fields = split(rows[r], ',');
    if (fields.size() != header.size()) {
      throw InvalidInput("points CSV row " + std::to_string(r + 1) + " has " + std::to_string(fields.size()) +
                         " fields, expected " + std::to_string(header.size()));
    }
    out.ids.push_back(fields[0]);
    out.f.push_back(require_double(fields[1], "filter value"));
    for (std::size_t k = 2; k < fields.size(); ++k) out.coords.push_back(require_double(fields[k], "coordinate"));
  }
  if (out.ids.empty()) throw InvalidInput("points CSV has no rows");
  return out;
}

// Accepts a full matrix, strict lower-triangular rows, or lower rows with the diagonal.
std::vector<double> matrix_to_lower(const std::vector<std::vector<double>>& rows, std::size_t n) {
  std::vector<double> lower(pair_count(n));
  const auto set = [&](std::size_t i, std::size_t j, double v) {
    lower[pair_index(static_cast<PointIndex>(i), static_cast<PointIndex>(j))] = v;
  };
  const bool full = rows.size() == n && std::all_of(rows.begin(), rows.end(), [&](const auto& r) { return r.size() == n; });
  if (full && n > 1) {
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i][i] != 0.0) throw InvalidInput("distance matrix diagonal must be zero");
      for (std::size_t j = 0; j < i; ++j) {
        const double a = rows[i][j];
        const double b = rows[j][i];
        if (std::abs(a - b) > 1e-12 * std::max({1.0, std::abs(a), std::abs(b)})) {
          throw InvalidInput("distance matrix is not symmetric");
        }
        set(i, j, a);
      }
    }
    return lower;
  }
  std::vector<std::vector<double>> r = rows;
  if (!r.empty() && r.front().empty()) r.erase(r.begin());
  bool with_diag = r.size() == n;
  bool strict = r.size() + 1 == n;
  for (std::size_t i = 0; i < r.size(); ++i) {
    with_diag = with_diag && r[i].size() == i + 1 && r[i].back() == 0.0;
    strict = strict && r[i].size() == i + 1;
  }
  if (!with_diag && !strict) {
    throw InvalidInput("distance matrix must be n x n or lower-triangular for " + std::to_string(n) + " points");
  }
  const std::size_t offset = with_diag ? 0 : 1;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const std::size_t p = i + offset;
    for (std::size_t j = 0; j < p; ++j) set(p, j, r[i][j]);
  }
  return lower;
}

Json number_or_inf(const Extended& v) { return v.is_infinite() ? Json("inf") : Json(v.value()); }

Extended extended_from(const Json& j, const char* what) {
  if (j.is_string() && j.get<std::string>() == "inf") return Extended::infinity();
  if (!j.is_number()) throw InvalidInput(std::string(what) + " must be a number or \"inf\"");
  return Extended(j.get<double>());
}

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return obj.at(key);
}

double number(const Json& obj, const char* key) {
  const Json& v = field(obj, key);
  if (!v.is_number()) throw InvalidInput(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

template <typename T>
T integer_or(const Json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& v = obj.at(key);
  if (!v.is_number_unsigned()) throw InvalidInput(std::string("field '") + key + "' must be a nonnegative integer");
  return v.get<T>();
}

Json grade_json(const Grade& g) { return Json::array({g.sigma, g.eps}); }

}  // namespace

AugmentedMetricSpace parse_points_csv(const std::string& text) {
  auto rows = parse_point_rows(text);
  if (rows.dim == 0) {
    if (rows.ids.size() == 1) return AugmentedMetricSpace::from_distances(rows.ids, rows.f, {});
    throw InvalidInput("points CSV has no coordinate columns; supply a distance matrix");
  }
  return AugmentedMetricSpace::from_coordinates(std::move(rows.ids), std::move(rows.f), std::move(rows.coords),
                                                rows.dim);
}

AugmentedMetricSpace parse_distance_csv(const std::string& points_text, const std::string& matrix_text) {
  auto pts = parse_point_rows(points_text);
  std::vector<std::vector<double>> rows;
  const auto lines = lines_of(matrix_text);
  for (std::size_t r = 0; r < lines.size(); ++r) {
    std::vector<double> row;
    bool numeric = true;
    for (const auto& tok : split_any(lines[r])) {
      auto v = to_double(tok);
      if (!v) {
        numeric = false;
        break;
      }
      row.push_back(*v);
    }
    if (!numeric) {
      if (r == 0) continue;  // header row of ids
      throw InvalidInput("distance matrix row " + std::to_string(r + 1) + " is not numeric");
    }
    rows.push_back(std::move(row));
  }
  auto lower = matrix_to_lower(rows, pts.ids.size());
  if (pts.dim > 0) {
    return AugmentedMetricSpace::from_parts(std::move(pts.ids), std::move(pts.f), std::move(lower),
                                            std::move(pts.coords), pts.dim);
  }
  return AugmentedMetricSpace::from_distances(std::move(pts.ids), std::move(pts.f), std::move(lower));
}

AugmentedMetricSpace parse_dataset_json(const Json& doc) {
  const Json& points = field(doc, "points");
  if (!points.is_array() || points.empty()) throw InvalidInput("'points' must be a nonempty array");
  std::vector<std::string> ids;
  std::vector<double> f;
  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t with_coords = 0;
  for (const Json& p : points) {
    const Json& id = field(p, "id");
    ids.push_back(id.is_string() ? id.get<std::string>() : id.dump());
    f.push_back(number(p, "f"));
    if (p.contains("coords")) {
      const Json& c = p.at("coords");
      if (!c.is_array() || c.empty()) throw InvalidInput("'coords' must be a nonempty array");
      if (with_coords == 0) dim = c.size();
      if (c.size() != dim) throw InvalidInput("all coordinate vectors must have the same length");
      for (const Json& v : c) {
        if (!v.is_number()) throw InvalidInput("coordinates must be numbers");
        coords.push_back(v.get<double>());
      }
      ++with_coords;
    }
  }
  if (with_coords != 0 && with_coords != ids.size()) throw InvalidInput("either all points have coords or none");
  std::optional<std::vector<double>> lower;
  if (doc.contains("dist")) {
    std::vector<std::vector<double>> rows;
    for (const Json& row : doc.at("dist")) {
      if (!row.is_array()) throw InvalidInput("'dist' must be an array of arrays");
      std::vector<double> r;
      for (const Json& v : row) {
        if (!v.is_number()) throw InvalidInput("distances must be numbers");
        r.push_back(v.get<double>());
      }
      rows.push_back(std::move(r));
    }
    lower = matrix_to_lower(rows, ids.size());
  }
  if (with_coords && lower) {
    return AugmentedMetricSpace::from_parts(std::move(ids), std::move(f), std::move(*lower), std::move(coords), dim);
  }
  if (with_coords) return AugmentedMetricSpace::from_coordinates(std::move(ids), std::move(f), std::move(coords), dim);
  if (lower) return AugmentedMetricSpace::from_distances(std::move(ids), std::move(f), std::move(*lower));
  if (ids.size() == 1) return AugmentedMetricSpace::from_distances(std::move(ids), std::move(f), {});
  throw InvalidInput("dataset needs coordinates or a 'dist' matrix");
}

AugmentedMetricSpace load_dataset(const std::filesystem::path& path,
                                  const std::optional<std::filesystem::path>& matrix) {
  const std::string text = read_file(path);
  if (matrix) return parse_distance_csv(text, read_file(*matrix));
  if (path.extension() == ".json") {
    Json doc;
    try {
      doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InvalidInput(path.string() + ": " + e.what());
    }
    return parse_dataset_json(doc);
  }
  return parse_points_csv(text);
}

std::vector<PointIndex> parse_order(const std::string& text, const AugmentedMetricSpace& space) {
  std::vector<std::string> ids;
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '[') {
    Json doc;
    try {
      doc = Json::parse(t);
    } catch (const Json::parse_error& e) {
      throw InvalidInput(std::string("order: ") + e.what());
    }
    for (const Json& v : doc) {
      if (!v.is_string()) throw InvalidInput("order entries must be point ids");
      ids.push_back(v.get<std::string>());
    }
  } else {
    for (const auto& line : lines_of(t)) {
      for (auto& tok : split_any(line)) ids.push_back(std::move(tok));
    }
  }
  if (ids.size() != space.size()) {
    throw InvalidInput("order lists " + std::to_string(ids.size()) + " ids for " + std::to_string(space.size()) +
                       " points");
  }
  std::vector<PointIndex> seq;
  for (const auto& id : ids) {
    auto idx = space.index_of(id);
    if (!idx) throw InvalidInput("order refers to unknown id '" + id + "'");
    seq.push_back(*idx);
  }
  return seq;
}

Json dataset_to_json(const AugmentedMetricSpace& space) {
  Json points = Json::array();
  for (PointIndex i = 0; i < space.size(); ++i) {
    Json p{{"id", space.id(i)}, {"f", space.filter(i)}};
    if (space.has_coordinates()) {
      const auto c = space.coordinates(i);
      p["coords"] = std::vector<double>(c.begin(), c.end());
    }
    points.push_back(std::move(p));
  }
  Json doc{{"points", std::move(points)}};
  if (!space.has_coordinates()) {
    Json dist = Json::array();
    for (PointIndex i = 0; i < space.size(); ++i) {
      Json row = Json::array();
      for (PointIndex j = 0; j < i; ++j) row.push_back(space.distance(i, j));
      row.push_back(0.0);
      dist.push_back(std::move(row));
    }
    doc["dist"] = std::move(dist);
  }
  return doc;
}

Json betti_to_json(const GradedBetti& betti) {
  Json out = Json::object();
  Json ranks = Json::object();
  for (int j = 0; j < 3; ++j) {
    const std::string key = "b" + std::to_string(j);
    Json real = Json::array();
    Json rank = Json::array();
    for (const auto& [r, entry] : betti.beta[j]) {
      for (std::int64_t c = 0; c < entry.count; ++c) {
        real.push_back(grade_json(entry.grade));
        rank.push_back(Json::array({r.sigma_rank, r.eps_rank}));
      }
    }
    out[key] = std::move(real);
    ranks[key] = std::move(rank);
  }
  out["ranks"] = std::move(ranks);
  out["tie_broken"] = betti.tie_broken;
  return out;
}

Json staircode_to_json(const Staircode& code) { return staircode_to_json(code, graded_betti(code)); }

Json staircode_to_json(const Staircode& code, const GradedBetti& betti) {
  Json order = Json::array();
  for (PointIndex x : code.order().sequence()) order.push_back(code.id(x));
  Json staircases = Json::array();
  for (const auto& e : code.entries()) {
    Json steps = Json::array();
    for (const Step& s : e.base.steps()) {
      steps.push_back({{"sigma", s.sigma},
                       {"u", number_or_inf(s.u)},
                       {"sigma_rank", s.sigma_rank},
                       {"u_rank", s.u_rank == kInfiniteRank ? Json("inf") : Json(s.u_rank)}});
    }
    Json conq = Json::array();
    for (const ConquerorRun& r : e.conqueror) {
      conq.push_back({{"sigma_from", r.sigma_from}, {"id", code.id(r.conqueror)}, {"sigma_rank", r.sigma_rank}});
    }
    staircases.push_back({{"id", code.id(e.base.owner())},
                          {"birth_sigma", e.base.birth_sigma()},
                          {"steps", std::move(steps)},
                          {"conqueror", std::move(conq)}});
  }
  const auto& meta = code.meta();
  return Json{{"order", std::move(order)},
              {"staircases", std::move(staircases)},
              {"betti", betti_to_json(betti)},
              {"meta",
               {{"n", code.size()},
                {"mode", to_string(meta.mode)},
                {"tie_breaks", {{"points", meta.point_ties}, {"distances", meta.distance_ties}}}}}};
}

Staircode staircode_from_json(const Json& doc) {
  try {
    const Json& list = field(doc, "staircases");
    if (!list.is_array() || list.empty()) throw InvalidInput("'staircases' must be a nonempty array");
    std::vector<std::string> ids;
    std::unordered_map<std::string, PointIndex> index;
    for (const Json& s : list) {
      const Json& id = field(s, "id");
      if (!id.is_string()) throw InvalidInput("staircase id must be a string");
      if (!index.emplace(id.get<std::string>(), static_cast<PointIndex>(ids.size())).second) {
        throw InvalidInput("duplicate staircase id '" + id.get<std::string>() + "'");
      }
      ids.push_back(id.get<std::string>());
    }
    const auto lookup = [&](const Json& id) -> PointIndex {
      if (!id.is_string()) throw InvalidInput("point ids must be strings");
      auto it = index.find(id.get<std::string>());
      if (it == index.end()) throw InvalidInput("unknown point id '" + id.get<std::string>() + "'");
      return it->second;
    };

    std::vector<DecoratedStaircase> entries;
    for (PointIndex x = 0; x < list.size(); ++x) {
      const Json& s = list[x];
      std::vector<Step> steps;
      for (const Json& st : field(s, "steps")) {
        Step step;
        step.sigma = number(st, "sigma");
        step.u = extended_from(field(st, "u"), "u");
        step.sigma_rank = integer_or<std::uint32_t>(st, "sigma_rank", 0);
        if (st.contains("u_rank") && st.at("u_rank").is_string()) {
          if (st.at("u_rank").get<std::string>() != "inf") throw InvalidInput("u_rank must be an integer or \"inf\"");
          step.u_rank = kInfiniteRank;
        } else {
          step.u_rank = integer_or<std::uint64_t>(st, "u_rank", 0);
        }
        steps.push_back(step);
      }
      Staircase base(x, std::move(steps));
      if (s.contains("birth_sigma") && number(s, "birth_sigma") != base.birth_sigma()) {
        throw InvalidInput("birth_sigma of '" + ids[x] + "' does not match its first step");
      }
      std::vector<ConquerorRun> runs;
      if (s.contains("conqueror")) {
        for (const Json& r : s.at("conqueror")) {
          runs.push_back({number(r, "sigma_from"), lookup(field(r, "id")),
                          integer_or<std::uint32_t>(r, "sigma_rank", 0)});
        }
      }
      entries.push_back({std::move(base), std::move(runs)});
    }

    std::vector<PointIndex> seq;
    for (const Json& id : field(doc, "order")) seq.push_back(lookup(id));
    StaircodeMeta meta;
    if (doc.contains("meta")) {
      const Json& m = doc.at("meta");
      if (m.contains("mode")) meta.mode = mode_from_string(m.at("mode").get<std::string>());
      if (m.contains("tie_breaks")) {
        meta.point_ties = m.at("tie_breaks").value("points", false);
        meta.distance_ties = m.at("tie_breaks").value("distances", false);
      }
      if (m.contains("n") && m.at("n") != Json(ids.size())) throw InvalidInput("meta.n does not match");
    }
    return Staircode(std::move(ids), PointOrder(std::move(seq)), std::move(entries), meta);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed staircode document: ") + e.what());
  }
}

Json bars_to_json(const std::vector<Bar>& bars, const Staircode& code) {
  Json out = Json::array();
  for (const Bar& b : bars) {
    out.push_back({{"id", code.id(b.owner)},
                   {"birth_t", b.birth_t},
                   {"death_t", number_or_inf(b.death_t)},
                   {"birth", grade_json(b.birth_point)},
                   {"death", b.death_point ? grade_json(*b.death_point) : Json(nullptr)}});
  }
  return out;
}

Json treegram_to_json(const Treegram& tree, const Staircode& code) {
  const DecoratedTreegram dec = decorate(tree, code.order());
  Json leaves = Json::array();
  for (const Leaf& l : tree.leaves()) leaves.push_back({{"id", code.id(l.id)}, {"birth", l.birth}});
  Json merges = Json::array();
  const auto ms = tree.merges();
  for (std::size_t k = 0; k < ms.size(); ++k) {
    merges.push_back({{"height", ms[k].height},
                      {"a", code.id(ms[k].a)},
                      {"b", code.id(ms[k].b)},
                      {"conquered", code.id(dec.decorations[k].conquered)},
                      {"eldest", code.id(dec.decorations[k].eldest)}});
  }
  Json bars = Json::array();
  for (const TreegramBar& b : elder_rule_barcode(tree, code.order())) {
    bars.push_back({{"id", code.id(b.owner)}, {"birth", b.birth}, {"death", number_or_inf(b.death)}});
  }
  return Json{{"leaves", std::move(leaves)}, {"merges", std::move(merges)}, {"barcode", std::move(bars)}};
}

Json line_to_json(const Line& line) {
  return Json{{"anchors", Json::array({grade_json(line.origin()), grade_json(line.anchor_b())})},
              {"slope", line.slope()},
              {"axis_crossing", line.axis_crossing()}};
}

Grade parse_grade(const std::string& text) {
  const auto parts = split(trim(text), ',');
  if (parts.size() != 2) throw InvalidInput("grade must look like 'sigma,eps', got '" + text + "'");
  Grade g{require_double(parts[0], "sigma"), require_double(parts[1], "eps")};
  if (!std::isfinite(g.sigma) || !std::isfinite(g.eps)) throw InvalidInput("grade must be finite");
  return g;
}

Line parse_line(const std::string& text) {
  const auto parts = split(trim(text), ':');
  if (parts.size() != 2) throw InvalidInput("line must look like 's1,e1:s2,e2', got '" + text + "'");
  return Line(parse_grade(parts[0]), parse_grade(parts[1]));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

}  // namespace staircode::io
