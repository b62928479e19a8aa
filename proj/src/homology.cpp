#include "intdecomp/homology.hpp"

#include <algorithm>
#include <set>

namespace intdecomp {

SimplicialFiltration::SimplicialFiltration(std::vector<Simplex> simplices) {
  std::set<std::int64_t> grades;
  for (auto& s : simplices) {
    if (s.vertices.empty()) throw ParseError("simplex without vertices", s.line);
    std::sort(s.vertices.begin(), s.vertices.end());
    if (std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
      throw ParseError("simplex repeats a vertex", s.line);
    const std::size_t d = s.dim();
    if (by_dim_.size() <= d) by_dim_.resize(d + 1);
    by_dim_[d].push_back(s);
    grades.insert(s.grade);
  }
  grades_.assign(grades.begin(), grades.end());

  lookup_.resize(by_dim_.size());
  for (std::size_t d = 0; d < by_dim_.size(); ++d) {
    auto& cells = by_dim_[d];
    std::sort(cells.begin(), cells.end(), [](const Simplex& x, const Simplex& y) {
      return std::tie(x.grade, x.vertices) < std::tie(y.grade, y.vertices);
    });
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!lookup_[d].emplace(cells[i].vertices, i).second) throw ParseError("duplicate simplex", cells[i].line);
  }

  for (std::size_t d = 1; d < by_dim_.size(); ++d)
    for (const auto& s : by_dim_[d])
      for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        std::vector<std::uint32_t> face = s.vertices;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        auto it = lookup_[d - 1].find(face);
        if (it == lookup_[d - 1].end()) throw ParseError("a face of this simplex is missing", s.line);
        if (by_dim_[d - 1][it->second].grade > s.grade) throw ParseError("a face of this simplex appears at a later grade", s.line);
      }
}

const std::vector<Simplex>& SimplicialFiltration::simplices(std::size_t dim) const {
  static const std::vector<Simplex> none;
  return dim < by_dim_.size() ? by_dim_[dim] : none;
}

std::size_t SimplicialFiltration::count(std::size_t dim, std::optional<std::int64_t> g) const {
  const auto& cells = simplices(dim);
  if (!g) return cells.size();
  return static_cast<std::size_t>(
      std::upper_bound(cells.begin(), cells.end(), *g, [](std::int64_t v, const Simplex& s) { return v < s.grade; }) -
      cells.begin());
}

std::optional<std::size_t> SimplicialFiltration::find(const std::vector<std::uint32_t>& vertices) const {
  if (vertices.empty() || vertices.size() > lookup_.size()) return std::nullopt;
  const auto& table = lookup_[vertices.size() - 1];
  auto it = table.find(vertices);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

Barcode field_diagram(const SimplicialFiltration& k, std::size_t n, std::uint64_t p) {
  PrimeField field(p);
  auto f = persistent_homology_module(k, n, field);
  return decompose(f).barcode;
}

RelativeHomology relative_homology_invariants(const SimplicialFiltration& k, std::int64_t a, std::int64_t b,
                                              std::size_t n) {
  if (a > b) throw BadOrder();
  Integers zz;
  auto h = homology_from_boundaries(boundary_matrix(k, n, a, b, zz), boundary_matrix(k, n + 1, a, b, zz));
  return {h.betti, h.torsion};
}

namespace {

std::string coefficient_name(std::uint64_t p) { return std::to_string(p); }

}  // namespace

FieldIndependenceReport field_independence_report(const SimplicialFiltration& k, std::size_t n,
                                                  const std::vector<std::uint64_t>& primes) {
  if (primes.empty()) throw std::invalid_argument("at least one prime is required");
  Integers zz;
  FieldIndependenceReport report;
  report.dim = n;
  report.primes = primes;

  // Freeness of H_n and H_{n-1} at every grade.
  for (std::int64_t g : k.grades()) {
    for (std::size_t d : {n, n - 1}) {
      if (d > n) continue;  // n == 0 has no H_{n-1}
      auto snap = homology_snapshot(k, d, g, zz);
      if (!snap.torsion.empty()) {
        report.hypothesis_holds = false;
        report.hypothesis_grade = g;
        report.hypothesis_dim = d;
        report.hypothesis_torsion = element_strings(zz, snap.torsion);
        break;
      }
    }
    if (!report.hypothesis_holds) break;
  }

  std::vector<std::string> names;
  for (std::uint64_t p : primes) {
    names.push_back(coefficient_name(p));
    report.diagrams[names.back()] = field_diagram(k, n, p);
  }
  if (!report.hypothesis_holds) return report;

  auto f = persistent_homology_module(k, n, zz);

  // (1) interval decomposition over Z.
  try {
    decompose(f);
    report.decomposable = Verdict::True;
  } catch (const NotDecomposable&) {
    report.decomposable = Verdict::False;
  }

  // (2) free cokernels.
  if (auto w = check_free_cokernels(f)) {
    report.cokernels_free = Verdict::False;
    report.cokernel_witness =
        PairWitness{f.index().label(w->a), f.index().label(w->b), element_strings(zz, w->torsion)};
  } else {
    report.cokernels_free = Verdict::True;
  }
  mpz_class largest = 0;
  for (Pos a = 1; a <= f.index().size(); ++a)
    for (Pos b = a; b <= f.index().size(); ++b)
      for (const auto& d : smith(f.structure_map(a, b)).invariant_factors) largest = std::max<mpz_class>(largest, d);
  report.max_invariant_factor = largest.get_str();

  // (3) free relative homology for every pair of distinct grades.
  report.relative_free = Verdict::True;
  const auto& grades = k.grades();
  for (std::size_t i = 0; i < grades.size() && !report.relative_witness; ++i)
    for (std::size_t j = i + 1; j < grades.size(); ++j) {
      auto rel = relative_homology_invariants(k, grades[i], grades[j], n);
      if (!rel.torsion.empty()) {
        report.relative_free = Verdict::False;
        report.relative_witness = PairWitness{grades[i], grades[j], element_strings(zz, rel.torsion)};
        break;
      }
    }

  // (4) identical diagrams over every tested field, rationals included.
  names.push_back("Q");
  report.diagrams["Q"] = rank_barcode_oracle(f);
  report.diagrams_equal = Verdict::True;
  for (std::size_t i = 0; i < names.size() && !report.diagram_witness; ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (!(report.diagrams.at(names[i]) == report.diagrams.at(names[j]))) {
        report.diagrams_equal = Verdict::False;
        report.diagram_witness = std::make_pair(names[i], names[j]);
        break;
      }
  return report;
}

}  // namespace intdecomp
