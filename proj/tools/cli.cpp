#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "intdecomp/decomp.hpp"
#include "intdecomp/homology.hpp"
#include "intdecomp/io.hpp"

using namespace intdecomp;
using io::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kHypothesis = 3 };

struct Shared {
  std::string format = "json";
  bool verify = false;

  ExtendOptions extend() const {
    ExtendOptions o;
    if (verify) o.verify_input = o.verify_exactness = true;
    return o;
  }
};

void emit(const Shared& sh, const json& j, const std::string& text) {
  if (sh.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::string barcode_text(const Barcode& b) {
  std::ostringstream out;
  for (const auto& [bar, m] : b) out << to_string(bar) << (m > 1 ? " x" + std::to_string(m) : "") << "\n";
  return out.str();
}

json witness_json(const NotDecomposable& e) {
  return {{"a", e.a()}, {"b", e.b()}, {"torsion", e.torsion()}};
}

int not_decomposable(const Shared& sh, const NotDecomposable& e) {
  emit(sh, {{"decomposable", false}, {"witness", witness_json(e)}}, std::string("not decomposable: ") + e.what() + "\n");
  return kNegative;
}

std::optional<std::uint64_t> parse_prime(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 10) return std::nullopt;
  std::uint64_t p = std::stoull(s);
  if (p >= (1ULL << 31) || !PrimeField::is_prime(p)) return std::nullopt;
  return p;
}

template <EuclideanRing R>
Barcode decompose_bars(const PersistenceModule<R>& f, const Shared& sh) {
  DecomposeOptions<R> opts;
  opts.extend = sh.extend();
  return decompose(f, opts).barcode;
}

int run_check(const Shared& sh, const std::string& path) {
  auto f = io::module_from_json(io::read_json_file(path));
  if (auto w = check_free_cokernels(f)) {
    std::vector<std::string> torsion = element_strings(f.ring(), w->torsion);
    return not_decomposable(sh, NotDecomposable(f.index().label(w->a), f.index().label(w->b), torsion));
  }
  emit(sh, {{"decomposable", true}, {"witness", nullptr}}, "decomposable\n");
  return kOk;
}

int run_decompose(const Shared& sh, const std::string& path, const std::string& bases_out) {
  auto f = io::module_from_json(io::read_json_file(path));
  DecomposeOptions<Integers> opts;
  opts.extend = sh.extend();
  auto d = decompose(f, opts);
  if (sh.verify)
    if (auto why = find_inconsistency(f, d.bases)) throw ExactnessViolation("computed bases are inconsistent: " + *why);
  if (!bases_out.empty()) {
    std::ofstream out(bases_out);
    if (!out) throw ParseError("cannot write " + bases_out);
    out << io::to_json(f, d.bases).dump(2) << "\n";
  }
  emit(sh, io::to_json(d.barcode, "Z"), barcode_text(d.barcode));
  return kOk;
}

int run_barcode(const Shared& sh, const std::string& path, const std::string& coeff) {
  auto f = io::module_from_json(io::read_json_file(path));
  Barcode bars;
  std::string name = coeff;
  if (coeff == "Z") {
    bars = decompose_bars(f, sh);
  } else if (coeff == "Q") {
    bars = rank_barcode_oracle(f);
  } else if (auto p = parse_prime(coeff)) {
    PrimeField field(*p);
    bars = decompose_bars(reduce_mod(f, field), sh);
    name = field.name();
  } else {
    throw ParseError("--coeff must be Z, Q or a prime, got '" + coeff + "'");
  }
  emit(sh, io::to_json(bars, name), barcode_text(bars));
  return kOk;
}

int run_ph(const Shared& sh, const std::string& path, std::size_t dim, const std::string& coeff) {
  auto k = io::read_filtration_file(path);
  Barcode bars;
  std::string name = coeff;
  if (coeff == "Z") {
    bars = decompose_bars(persistent_homology_module(k, dim, Integers{}), sh);
  } else if (auto p = parse_prime(coeff)) {
    PrimeField field(*p);
    bars = decompose_bars(persistent_homology_module(k, dim, field), sh);
    name = field.name();
  } else {
    throw ParseError("--coeff must be Z or a prime, got '" + coeff + "'");
  }
  emit(sh, io::to_json(bars, name), barcode_text(bars));
  return kOk;
}

std::string verdict_text(Verdict v) {
  return v == Verdict::True ? "true" : v == Verdict::False ? "false" : "n/a";
}

int run_field_independence(const Shared& sh, const std::string& path, std::size_t dim, const std::string& primes_arg) {
  auto k = io::read_filtration_file(path);
  std::vector<std::uint64_t> primes;
  std::istringstream in(primes_arg);
  for (std::string tok; std::getline(in, tok, ',');) {
    auto p = parse_prime(tok);
    if (!p) throw ParseError("--primes: '" + tok + "' is not a prime below 2^31");
    primes.push_back(*p);
  }
  if (primes.empty()) throw ParseError("--primes needs at least one prime");
  auto r = field_independence_report(k, dim, primes);

  std::ostringstream text;
  if (!r.hypothesis_holds)
    text << "hypothesis violated: H_" << r.hypothesis_dim << " at grade " << *r.hypothesis_grade << " has torsion\n";
  text << "(1) decomposable:    " << verdict_text(r.decomposable) << "\n"
       << "(2) cokernels free:  " << verdict_text(r.cokernels_free);
  if (r.cokernel_witness) text << "  witness " << r.cokernel_witness->a << " -> " << r.cokernel_witness->b;
  text << "\n(3) relative free:   " << verdict_text(r.relative_free);
  if (r.relative_witness) text << "  witness (" << r.relative_witness->a << ", " << r.relative_witness->b << ")";
  text << "\n(4) diagrams equal:  " << verdict_text(r.diagrams_equal);
  if (r.diagram_witness) text << "  witness " << r.diagram_witness->first << " vs " << r.diagram_witness->second;
  text << "\n";
  for (const auto& [name, bars] : r.diagrams) text << "diagram " << name << ": " << to_string(bars) << "\n";
  emit(sh, io::to_json(r), text.str());

  if (!r.hypothesis_holds) return kHypothesis;
  return r.all_true() ? kOk : kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval decomposition of persistence modules over the integers"};
  app.require_subcommand(1);
  Shared sh;
  app.add_option("--format", sh.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--verify", sh.verify, "Run consistency and exactness assertions");

  std::string input, bases_out, coeff = "Z", primes = "2,3,5";
  std::size_t dim = 1;

  auto* check = app.add_subcommand("check", "Exit 0 iff the module is interval decomposable");
  auto* decomp = app.add_subcommand("decompose", "Decompose a module and print its barcode");
  auto* barcode = app.add_subcommand("barcode", "Barcode over Z, Q or GF(p)");
  auto* ph = app.add_subcommand("ph", "Persistent homology barcode of a filtration");
  auto* fi = app.add_subcommand("field-independence", "Field-independence report for a filtration");
  for (auto* sub : {check, decomp, barcode, ph, fi}) {
    sub->add_option("input", input, "Input file")->required();
    sub->add_option("--format", sh.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--verify", sh.verify, "Run consistency and exactness assertions");
  }
  decomp->add_option("--bases-out", bases_out, "Write the consistent basis as JSON");
  barcode->add_option("--coeff", coeff, "Z, Q or a prime");
  ph->add_option("--coeff", coeff, "Z or a prime");
  ph->add_option("--dim", dim, "Homology dimension")->required();
  fi->add_option("--dim", dim, "Homology dimension")->required();
  fi->add_option("--primes", primes, "Comma-separated primes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*check) return run_check(sh, input);
    if (*decomp) return run_decompose(sh, input, bases_out);
    if (*barcode) return run_barcode(sh, input, coeff);
    if (*ph) return run_ph(sh, input, dim, coeff);
    if (*fi) return run_field_independence(sh, input, dim, primes);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const NotDecomposable& e) {
    return not_decomposable(sh, e);
  } catch (const TorsionHomology& e) {
    std::cerr << "error: " << e.what() << " [";
    for (std::size_t i = 0; i < e.torsion().size(); ++i) std::cerr << (i ? ", " : "") << e.torsion()[i];
    std::cerr << "]\n";
    return kHypothesis;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
