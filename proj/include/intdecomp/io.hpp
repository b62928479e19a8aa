#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "intdecomp/barcode.hpp"
#include "intdecomp/decomp.hpp"
#include "intdecomp/errors.hpp"
#include "intdecomp/homology.hpp"
#include "intdecomp/lattice.hpp"
#include "intdecomp/matrix.hpp"
#include "intdecomp/persmod.hpp"

namespace intdecomp::io {

using nlohmann::json;

// Scalars travel as decimal strings so that values beyond 53 bits survive.

template <EuclideanRing R>
json to_json(const Matrix<R>& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.ring().to_string(m(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

template <EuclideanRing R>
Matrix<R> matrix_from_json(const json& j, const R& ring) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    throw ParseError("matrix needs \"rows\", \"cols\" and \"entries\"");
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != rows) throw ParseError("matrix entries do not match \"rows\"");
  Matrix<R> m(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const json& row = entries[i];
    if (!row.is_array() || row.size() != cols) throw ParseError("matrix row " + std::to_string(i) + " does not match \"cols\"");
    for (std::size_t c = 0; c < cols; ++c) {
      const json& x = row[c];
      try {
        if (x.is_string())
          m(i, c) = ring.parse(x.get<std::string>());
        else if (x.is_number_integer())
          m(i, c) = ring.parse(x.dump());
        else
          throw ParseError("matrix entry must be a decimal string");
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    }
  }
  return m;
}

template <EuclideanRing R>
json to_json(const Submodule<R>& s) {
  json j = to_json(s.basis());
  j["ambient_rank"] = s.ambient_rank();
  return j;
}

template <EuclideanRing R>
Submodule<R> submodule_from_json(const json& j, const R& ring) {
  Matrix<R> basis = matrix_from_json(j, ring);
  if (j.value("ambient_rank", basis.rows()) != basis.rows()) throw ParseError("ambient_rank disagrees with the basis");
  return Submodule<R>::span(basis);
}

json to_json(const Barcode& b, const std::string& coeff);
Barcode barcode_from_json(const json& j);

/// Module file: {"indices": [...], "ranks": [...], "maps": [{"from", "to", "matrix"}]}.
json to_json(const PersistenceModule<Integers>& f);
PersistenceModule<Integers> module_from_json(const json& j);

template <EuclideanRing R>
json to_json(const PersistenceModule<R>& f, const ConsistentBasis<R>& bases) {
  json grades = json::array();
  for (const auto& [p, g] : bases.grades) {
    json labels = json::array();
    for (const auto& l : g.labels) labels.push_back({l.p, l.q});
    json reps = json::array();
    for (Pos r : g.reps) {
      if (r == f.min())
        reps.push_back("-inf");
      else if (r == f.max())
        reps.push_back("+inf");
      else
        reps.push_back(f.index().label(r));
    }
    grades.push_back({{"grade", f.index().label(p)}, {"matrix", to_json(g.basis)}, {"labels", std::move(labels)},
                      {"reps", std::move(reps)}});
  }
  return {{"coeff", f.ring().name()}, {"grades", std::move(grades)}};
}

template <EuclideanRing R>
ConsistentBasis<R> bases_from_json(const json& j, const PersistenceModule<R>& f) {
  ConsistentBasis<R> out;
  if (!j.contains("grades") || !j.at("grades").is_array()) throw ParseError("bases need a \"grades\" array");
  for (const json& g : j.at("grades")) {
    auto pos = f.index().find(g.at("grade").get<std::int64_t>());
    if (!pos) throw ParseError("basis for unknown grade " + g.at("grade").dump());
    GradeBasis<R> gb{matrix_from_json(g.at("matrix"), f.ring()), {}, {}};
    for (const json& l : g.at("labels")) gb.labels.push_back({l.at(0).get<std::size_t>(), l.at(1).get<std::size_t>()});
    for (const json& r : g.at("reps")) {
      if (r.is_string()) {
        gb.reps.push_back(r.get<std::string>() == "-inf" ? f.min() : f.max());
      } else {
        auto rp = f.index().find(r.get<std::int64_t>());
        if (!rp) throw ParseError("unknown representative grade " + r.dump());
        gb.reps.push_back(*rp);
      }
    }
    if (!out.grades.emplace(*pos, std::move(gb)).second) throw ParseError("duplicate grade in bases");
  }
  return out;
}

/// Text format: one simplex per line, "<grade> <v0> <v1> ...", '#' starts a comment.
SimplicialFiltration read_filtration(std::istream& in);
SimplicialFiltration read_filtration_file(const std::string& path);

json read_json_file(const std::string& path);

json to_json(const FieldIndependenceReport& r);

}  // namespace intdecomp::io
