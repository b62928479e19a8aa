#include "intdecomp/io.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace intdecomp::io {

json to_json(const Barcode& b, const std::string& coeff) {
  json bars = json::array();
  for (const auto& [bar, m] : b) {
    json death = bar.death ? json(*bar.death) : json(nullptr);
    bars.push_back({{"birth", bar.birth}, {"death", std::move(death)}, {"mult", m}});
  }
  return {{"coeff", coeff}, {"bars", std::move(bars)}};
}

Barcode barcode_from_json(const json& j) {
  Barcode out;
  for (const json& bar : j.at("bars")) {
    Interval iv{bar.at("birth").get<std::int64_t>(), std::nullopt};
    if (!bar.at("death").is_null()) iv.death = bar.at("death").get<std::int64_t>();
    out.add(iv, bar.value("mult", std::size_t{1}));
  }
  return out;
}

json to_json(const PersistenceModule<Integers>& f) {
  const std::size_t n = f.index().size();
  json ranks = json::array(), maps = json::array();
  for (Pos p = 1; p <= n; ++p) ranks.push_back(f.rank_at(p));
  for (Pos p = 1; p < n; ++p)
    maps.push_back({{"from", f.index().label(p)}, {"to", f.index().label(p + 1)}, {"matrix", to_json(f.step(p))}});
  return {{"indices", f.index().grades()}, {"ranks", std::move(ranks)}, {"maps", std::move(maps)}};
}

PersistenceModule<Integers> module_from_json(const json& j) {
  Integers zz;
  try {
    if (!j.is_object()) throw ParseError("module must be a JSON object");
    for (const char* key : {"indices", "ranks", "maps"})
      if (!j.contains(key) || !j.at(key).is_array()) throw ParseError(std::string("module needs a \"") + key + "\" array");
    auto grades = j.at("indices").get<std::vector<std::int64_t>>();
    auto ranks = j.at("ranks").get<std::vector<std::size_t>>();
    if (ranks.size() != grades.size()) throw ParseError("\"ranks\" must have one entry per index");
    IndexSet index(grades);

    std::map<Pos, Matrix<Integers>> given;
    for (const json& m : j.at("maps")) {
      auto from = index.find(m.at("from").get<std::int64_t>());
      auto to = index.find(m.at("to").get<std::int64_t>());
      if (!from || !to) throw ParseError("map between unknown indices " + m.at("from").dump() + " -> " + m.at("to").dump());
      if (*to != *from + 1) throw ParseError("only maps between consecutive indices are accepted");
      auto mat = matrix_from_json(m.at("matrix"), zz);
      if (mat.rows() != ranks[*to - 1] || mat.cols() != ranks[*from - 1])
        throw ParseError("map " + m.at("from").dump() + " -> " + m.at("to").dump() + " has shape " +
                         std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()) + ", expected " +
                         std::to_string(ranks[*to - 1]) + "x" + std::to_string(ranks[*from - 1]));
      if (!given.emplace(*from, std::move(mat)).second) throw ParseError("duplicate map from " + m.at("from").dump());
    }
    std::vector<Matrix<Integers>> steps;
    for (Pos p = 1; p < grades.size(); ++p) {
      auto it = given.find(p);
      if (it != given.end()) {
        steps.push_back(it->second);
      } else if (ranks[p - 1] == 0 || ranks[p] == 0) {
        steps.emplace_back(zz, ranks[p], ranks[p - 1]);
      } else {
        throw ParseError("missing map " + std::to_string(grades[p - 1]) + " -> " + std::to_string(grades[p]));
      }
    }
    return PersistenceModule<Integers>(zz, std::move(index), std::move(ranks), std::move(steps));
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const DimensionMismatch& e) {
    throw ParseError(e.what());
  }
}

SimplicialFiltration read_filtration(std::istream& in) {
  std::vector<Simplex> simplices;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string token;
    std::vector<std::string> tokens;
    while (fields >> token) tokens.push_back(token);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw ParseError("expected a grade followed by at least one vertex", lineno);
    Simplex s;
    s.line = lineno;
    try {
      std::size_t used = 0;
      s.grade = std::stoll(tokens[0], &used);
      if (used != tokens[0].size()) throw std::invalid_argument(tokens[0]);
    } catch (const std::exception&) {
      throw ParseError("bad grade '" + tokens[0] + "'", lineno);
    }
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const std::string& t = tokens[i];
      if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad vertex '" + t + "'", lineno);
      unsigned long long v = 0;
      try {
        v = std::stoull(t);
      } catch (const std::exception&) {
        throw ParseError("bad vertex '" + t + "'", lineno);
      }
      if (v > std::numeric_limits<std::uint32_t>::max()) throw ParseError("vertex out of range", lineno);
      s.vertices.push_back(static_cast<std::uint32_t>(v));
    }
    simplices.push_back(std::move(s));
  }
  return SimplicialFiltration(std::move(simplices));
}

SimplicialFiltration read_filtration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_filtration(in);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

namespace {

json verdict(Verdict v) {
  switch (v) {
    case Verdict::True:
      return true;
    case Verdict::False:
      return false;
    case Verdict::NotApplicable:
      break;
  }
  return nullptr;
}

json witness(const std::optional<PairWitness>& w) {
  if (!w) return nullptr;
  return {{"a", w->a}, {"b", w->b}, {"torsion", w->torsion}};
}

}  // namespace

json to_json(const FieldIndependenceReport& r) {
  json diagrams = json::object();
  for (const auto& [name, bars] : r.diagrams) diagrams[name] = to_json(bars, name == "Q" ? "Q" : "GF(" + name + ")");
  json hypothesis = {{"holds", r.hypothesis_holds}};
  if (r.hypothesis_grade)
    hypothesis["violation"] = {{"grade", *r.hypothesis_grade}, {"dim", r.hypothesis_dim}, {"torsion", r.hypothesis_torsion}};
  json rel = witness(r.relative_witness);
  if (!rel.is_null()) rel["dim"] = r.dim;
  json diag = r.diagram_witness ? json::array({r.diagram_witness->first, r.diagram_witness->second}) : json(nullptr);
  return {{"dim", r.dim},
          {"primes", r.primes},
          {"hypothesis", std::move(hypothesis)},
          {"decomposable", verdict(r.decomposable)},
          {"cokernels_free", {{"verdict", verdict(r.cokernels_free)}, {"witness", witness(r.cokernel_witness)}}},
          {"relative_free", {{"verdict", verdict(r.relative_free)}, {"witness", std::move(rel)}}},
          {"diagrams_equal", {{"verdict", verdict(r.diagrams_equal)}, {"witness", std::move(diag)}}},
          {"diagrams", std::move(diagrams)},
          {"max_invariant_factor", r.max_invariant_factor},
          {"all_true", r.all_true()}};
}

}  // namespace intdecomp::io
