#pragma once

// Seeded generation of test matrices with controlled spectra. Every output
// is a pure function of (spec, stream index): identical inputs give
// identical bits, and different trial indices draw from independent streams.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "heinzcert/kernel.hpp"
#include "heinzcert/operator_means.hpp"

namespace heinzcert::gen {

/// Thrown for malformed or inconsistent generator specifications.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SpectrumLaw {
  enum class Kind { kLogUniform, kExplicit, kClustered };

  Kind kind = Kind::kLogUniform;
  double lo = 1e-3;              // log-uniform bounds
  double hi = 1e3;
  std::vector<double> values;    // explicit eigenvalues
  double center = 1.0;           // clustered: center * (1 + jitter * u), u ~ U[-1, 1]
  double jitter = 1e-3;

  static SpectrumLaw log_uniform(double lo, double hi);
  static SpectrumLaw explicit_values(std::vector<double> values);
  static SpectrumLaw clustered(double center, double jitter);

  /// `allow_zero` admits zero eigenvalues (PSD rather than PD output).
  void validate(std::size_t dim, bool allow_zero = false) const;

  /// "log-uniform(lo,hi)", "explicit(v1,v2,...)", "clustered(center,jitter)";
  /// numbers in shortest round-trip form, so parse(to_string()) is exact.
  std::string to_string() const;
  static SpectrumLaw parse(std::string_view text);

  bool operator==(const SpectrumLaw&) const = default;
};

enum class Structure { kGeneralPd, kDiagonal, kOrderedPair, kCommutingPair };
enum class Field { kReal, kComplex };

std::string to_string(Structure s);
std::string to_string(Field f);
Structure parse_structure(std::string_view s);
Field parse_field(std::string_view s);

struct GenSpec {
  std::size_t dim = 2;
  SpectrumLaw spectrum;
  Structure structure = Structure::kGeneralPd;
  std::uint64_t seed = 0;
  Field field = Field::kReal;
  /// Ordered pairs: law and rank of W in B = A + W (defaults: spectrum, dim).
  std::optional<SpectrumLaw> aux_spectrum;
  std::optional<std::size_t> aux_rank;

  void validate() const;
  nlohmann::json to_json() const;
  static GenSpec from_json(const nlohmann::json& j);

  bool operator==(const GenSpec&) const = default;
};

/// Random stream derived from (seed, index) through std::seed_seq, whose
/// output is fixed by the standard, feeding std::mt19937_64. Uniform and
/// normal variates are computed here rather than by the library
/// distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t index);
  std::uint64_t next() { return engine_(); }
  double uniform();  // [0, 1), 53 random bits
  double normal();   // standard normal, Marsaglia polar method

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

std::vector<double> sample_spectrum(const SpectrumLaw& law, std::size_t dim, Rng& rng);

/// Unitary (orthogonal for Field::kReal) factor of the QR decomposition of a
/// Gaussian matrix, column signs fixed by diag(R) > 0.
CMatrix random_unitary(std::size_t dim, Field field, Rng& rng);

HermitianMatrix gen_pd(const GenSpec& spec, Rng& rng);
/// Uses the stream (spec.seed, 0).
HermitianMatrix gen_pd(const GenSpec& spec);

/// Pair per spec.structure: independent PD matrices, a diagonal pair, a
/// commuting pair sharing one eigenbasis, or an ordered pair B = A + W.
op::OperatorPair gen_pair(const GenSpec& spec, Rng& rng);

/// B = A + W, W positive semidefinite of rank aux_rank; A <= B by
/// construction.
op::OperatorPair gen_ordered_pair(const GenSpec& spec, Rng& rng);
op::OperatorPair gen_ordered_pair(const GenSpec& spec);

/// dim x dim matrix of independent standard normal entries (complex entries
/// have E|z|^2 = 1).
GeneralMatrix gen_general(const GenSpec& spec, Rng& rng);
GeneralMatrix gen_general(const GenSpec& spec);

/// FNV-1a over the bit patterns of the entries; identifies generated inputs.
std::uint64_t fingerprint(const CMatrix& m, std::uint64_t h = 0xcbf29ce484222325ULL);
std::uint64_t fingerprint(double v, std::uint64_t h = 0xcbf29ce484222325ULL);

/// Shortest decimal string that parses back to exactly `v`.
std::string exact_number(double v);
double parse_number(std::string_view s);

}  // namespace heinzcert::gen
