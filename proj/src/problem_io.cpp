#include "tscale/problem_io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "tscale/error.hpp"

namespace tscale {

using nlohmann::json;

namespace {

[[noreturn]] void malformed(const std::string& msg) {
  throw Error(ErrorKind::InvalidArgument, "malformed problem file: " + msg);
}

double number(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) malformed(where + " is missing \"" + key + "\"");
  if (!it->is_number()) malformed(where + ": \"" + key + "\" must be a number");
  return it->get<double>();
}

Segment parse_segment(const json& j, std::size_t index) {
  const std::string where = "timescale[" + std::to_string(index) + "]";
  if (!j.is_object()) malformed(where + " must be an object");
  auto type = j.find("type");
  if (type == j.end() || !type->is_string()) malformed(where + " needs a string \"type\"");
  const std::string kind = type->get<std::string>();
  if (kind == "point") return Segment::point(number(j, "at", where));
  if (kind == "interval") return Segment::interval(number(j, "from", where), number(j, "to", where));
  malformed(where + ": unknown segment type \"" + kind + "\"");
}

PotentialPiece parse_piece(const json& j, std::size_t index) {
  const std::string where = "potential[" + std::to_string(index) + "]";
  if (!j.is_object()) malformed(where + " must be an object");
  std::size_t segment = index;
  if (auto s = j.find("segment"); s != j.end()) {
    if (!s->is_number_unsigned()) malformed(where + ": \"segment\" must be a nonnegative integer");
    segment = s->get<std::size_t>();
  }
  auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string()) malformed(where + " needs a string \"kind\"");
  const std::string kind = kind_it->get<std::string>();

  if (kind == "const") return PotentialPiece::constant(segment, number(j, "value", where));
  if (kind == "poly") {
    auto c = j.find("coeffs");
    if (c == j.end() || !c->is_array() || c->empty()) malformed(where + ": \"coeffs\" must be a nonempty array");
    std::vector<double> coeffs;
    for (const json& v : *c) {
      if (!v.is_number()) malformed(where + ": coefficients must be numbers");
      coeffs.push_back(v.get<double>());
    }
    return PotentialPiece::polynomial(segment, std::move(coeffs));
  }
  if (kind == "samples") {
    auto p = j.find("points");
    if (p == j.end() || !p->is_array() || p->empty()) malformed(where + ": \"points\" must be a nonempty array");
    std::vector<std::pair<double, double>> samples;
    for (const json& v : *p) {
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        malformed(where + ": each sample must be a [t, value] pair");
      samples.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    return PotentialPiece::sampled(segment, std::move(samples));
  }
  malformed(where + ": unknown potential kind \"" + kind + "\"");
}

}  // namespace

SLProblem parse_problem_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    malformed(e.what());
  }
  if (!doc.is_object()) malformed("top level must be an object");

  auto ts_it = doc.find("timescale");
  if (ts_it == doc.end() || !ts_it->is_array()) malformed("\"timescale\" must be an array");
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < ts_it->size(); ++i) segments.push_back(parse_segment((*ts_it)[i], i));

  auto q_it = doc.find("potential");
  if (q_it == doc.end() || !q_it->is_array()) malformed("\"potential\" must be an array");
  PotentialSpec q;
  for (std::size_t i = 0; i < q_it->size(); ++i) q.pieces.push_back(parse_piece((*q_it)[i], i));

  const double ha = number(doc, "ha", "problem");
  const double hb = number(doc, "hb", "problem");
  return make_problem(build_timescale(std::move(segments)), std::move(q), ha, hb);
}

SLProblem parse_problem(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open problem file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_json(buf.str());
}

std::string emit_problem(const SLProblem& problem) {
  json doc;
  doc["timescale"] = json::array();
  for (const Segment& s : problem.ts.segments()) {
    if (s.is_point())
      doc["timescale"].push_back({{"type", "point"}, {"at", s.from}});
    else
      doc["timescale"].push_back({{"type", "interval"}, {"from", s.from}, {"to", s.to}});
  }
  doc["potential"] = json::array();
  for (const PotentialPiece& p : problem.q.pieces) {
    json j{{"segment", p.segment}};
    switch (p.kind) {
      case PotentialPiece::Kind::Constant:
        j["kind"] = "const";
        j["value"] = p.value;
        break;
      case PotentialPiece::Kind::Polynomial:
        j["kind"] = "poly";
        j["coeffs"] = p.coeffs;
        break;
      case PotentialPiece::Kind::Samples:
        j["kind"] = "samples";
        j["points"] = json::array();
        for (const auto& [t, v] : p.samples) j["points"].push_back({t, v});
        break;
    }
    doc["potential"].push_back(std::move(j));
  }
  doc["ha"] = problem.ha;
  doc["hb"] = problem.hb;
  return doc.dump(2);
}

void write_eigenfunctions_csv(std::ostream& os, const SpectrumResult& result) {
  const Grid& g = *result.problem.grid;
  os << "t";
  for (std::size_t k = 0; k < result.pairs.size(); ++k) os << ",y" << (k + 1);
  os << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < g.size(); ++i) {
    os << g.points[i];
    for (const Eigenpair& p : result.pairs) os << ',' << p.samples[i];
    os << '\n';
  }
}

void write_grid_csv(std::ostream& os, const Grid& grid) {
  os << "index,t,mu,origin,segment\n" << std::setprecision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double m = i < grid.graininess.size() ? grid.graininess[i] : 0.0;
    os << i << ',' << grid.points[i] << ',' << m << ','
       << (grid.origin[i] == Grid::Origin::Original ? "original" : "sampled") << ',' << grid.segment[i] << '\n';
  }
}

}  // namespace tscale
