#include "heinzcert/random_gen.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>

namespace heinzcert::gen {

std::string exact_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw SpecError("not a number: '" + std::string(s) + "'");
  }
  return v;
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

}  // namespace

SpectrumLaw SpectrumLaw::log_uniform(double lo, double hi) {
  SpectrumLaw l;
  l.kind = Kind::kLogUniform;
  l.lo = lo;
  l.hi = hi;
  return l;
}

SpectrumLaw SpectrumLaw::explicit_values(std::vector<double> values) {
  SpectrumLaw l;
  l.kind = Kind::kExplicit;
  l.values = std::move(values);
  return l;
}

SpectrumLaw SpectrumLaw::clustered(double center, double jitter) {
  SpectrumLaw l;
  l.kind = Kind::kClustered;
  l.center = center;
  l.jitter = jitter;
  return l;
}

void SpectrumLaw::validate(std::size_t dim, bool allow_zero) const {
  switch (kind) {
    case Kind::kLogUniform:
      if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi)) {
        throw SpecError("log-uniform spectrum needs 0 < lo <= hi, got lo=" + exact_number(lo) +
                        " hi=" + exact_number(hi));
      }
      break;
    case Kind::kExplicit:
      if (values.size() != dim) {
        throw SpecError("explicit spectrum has " + std::to_string(values.size()) +
                        " values but dim is " + std::to_string(dim));
      }
      for (double v : values) {
        if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0)) {
          throw SpecError("explicit spectrum value " + exact_number(v) +
                          (allow_zero ? " must be >= 0" : " must be > 0"));
        }
      }
      break;
    case Kind::kClustered:
      if (!(center > 0.0) || !std::isfinite(center) || !(jitter >= 0.0 && jitter < 1.0)) {
        throw SpecError("clustered spectrum needs center > 0 and 0 <= jitter < 1");
      }
      break;
  }
}

std::string SpectrumLaw::to_string() const {
  switch (kind) {
    case Kind::kLogUniform:
      return "log-uniform(" + exact_number(lo) + "," + exact_number(hi) + ")";
    case Kind::kClustered:
      return "clustered(" + exact_number(center) + "," + exact_number(jitter) + ")";
    case Kind::kExplicit: {
      std::string s = "explicit(";
      for (std::size_t i = 0; i < values.size(); ++i) s += (i ? "," : "") + exact_number(values[i]);
      return s + ")";
    }
  }
  return {};
}

SpectrumLaw SpectrumLaw::parse(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw SpecError("malformed spectrum law '" + std::string(text) + "'");
  }
  const auto name = text.substr(0, open);
  const auto body = text.substr(open + 1, text.size() - open - 2);
  std::vector<double> args;
  if (!trim(body).empty()) {
    for (auto part : split(body, ',')) args.push_back(parse_number(trim(part)));
  }
  if (name == "log-uniform") {
    if (args.size() != 2) throw SpecError("log-uniform takes (lo,hi)");
    return log_uniform(args[0], args[1]);
  }
  if (name == "clustered") {
    if (args.size() != 2) throw SpecError("clustered takes (center,jitter)");
    return clustered(args[0], args[1]);
  }
  if (name == "explicit") return explicit_values(std::move(args));
  throw SpecError("unknown spectrum law '" + std::string(name) +
                  "'; expected log-uniform, explicit or clustered");
}

std::string to_string(Structure s) {
  switch (s) {
    case Structure::kGeneralPd: return "general-pd";
    case Structure::kDiagonal: return "diagonal";
    case Structure::kOrderedPair: return "ordered-pair";
    case Structure::kCommutingPair: return "commuting-pair";
  }
  return {};
}

std::string to_string(Field f) { return f == Field::kReal ? "real" : "complex"; }

Structure parse_structure(std::string_view s) {
  for (auto v : {Structure::kGeneralPd, Structure::kDiagonal, Structure::kOrderedPair, Structure::kCommutingPair})
    if (to_string(v) == s) return v;
  throw SpecError("unknown structure '" + std::string(s) +
                  "'; expected general-pd, diagonal, ordered-pair or commuting-pair");
}

Field parse_field(std::string_view s) {
  if (s == "real") return Field::kReal;
  if (s == "complex") return Field::kComplex;
  throw SpecError("unknown field '" + std::string(s) + "'; expected real or complex");
}

void GenSpec::validate() const {
  if (dim == 0) throw SpecError("dim must be >= 1");
  spectrum.validate(dim);
  if (aux_spectrum) aux_spectrum->validate(dim, true);
  if (aux_rank && *aux_rank > dim) {
    throw SpecError("aux_rank " + std::to_string(*aux_rank) + " exceeds dim " + std::to_string(dim));
  }
}

nlohmann::json GenSpec::to_json() const {
  nlohmann::json j;
  j["dim"] = dim;
  j["spectrum"] = spectrum.to_string();
  j["structure"] = to_string(structure);
  j["seed"] = seed;
  j["field"] = to_string(field);
  if (aux_spectrum) j["aux_spectrum"] = aux_spectrum->to_string();
  if (aux_rank) j["aux_rank"] = *aux_rank;
  return j;
}

GenSpec GenSpec::from_json(const nlohmann::json& j) {
  GenSpec s;
  try {
    s.dim = j.at("dim").get<std::size_t>();
    s.spectrum = SpectrumLaw::parse(j.at("spectrum").get<std::string>());
    s.structure = parse_structure(j.value("structure", std::string("general-pd")));
    s.seed = j.value("seed", std::uint64_t{0});
    s.field = parse_field(j.value("field", std::string("real")));
    if (j.contains("aux_spectrum")) s.aux_spectrum = SpectrumLaw::parse(j.at("aux_spectrum").get<std::string>());
    if (j.contains("aux_rank")) s.aux_rank = j.at("aux_rank").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("malformed generator spec: ") + e.what());
  }
  s.validate();
  return s;
}

Rng::Rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  return u * f;
}

std::vector<double> sample_spectrum(const SpectrumLaw& law, std::size_t dim, Rng& rng) {
  std::vector<double> out(dim);
  switch (law.kind) {
    case SpectrumLaw::Kind::kLogUniform: {
      const double l = std::log(law.lo), h = std::log(law.hi);
      for (auto& v : out) v = std::exp(l + (h - l) * rng.uniform());
      break;
    }
    case SpectrumLaw::Kind::kExplicit:
      out = law.values;
      break;
    case SpectrumLaw::Kind::kClustered:
      for (auto& v : out) v = law.center * (1.0 + law.jitter * (2.0 * rng.uniform() - 1.0));
      break;
  }
  return out;
}

CMatrix random_unitary(std::size_t dim, Field field, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(dim);
  if (field == Field::kReal) {
    RMatrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) g(i, j) = rng.normal();
    Eigen::HouseholderQR<RMatrix> qr(g);
    RMatrix q = qr.householderQ() * RMatrix::Identity(n, n);
    const RMatrix& r = qr.matrixQR();
    for (Eigen::Index k = 0; k < n; ++k)
      if (r(k, k) < 0.0) q.col(k) *= -1.0;
    return q.cast<Complex>();
  }
  CMatrix g(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal(), im = rng.normal();
      g(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

namespace {

HermitianMatrix with_basis(const CMatrix& q, const std::vector<double>& spectrum) {
  const RVector d = Eigen::Map<const RVector>(spectrum.data(), static_cast<Eigen::Index>(spectrum.size()));
  return HermitianMatrix::symmetrized(q * d.cast<Complex>().asDiagonal() * q.adjoint());
}

HermitianMatrix sample_matrix(const GenSpec& spec, const SpectrumLaw& law, bool rotate, Rng& rng) {
  const auto spectrum = sample_spectrum(law, spec.dim, rng);
  if (!rotate) return HermitianMatrix::diagonal(spectrum);
  return with_basis(random_unitary(spec.dim, spec.field, rng), spectrum);
}

}  // namespace

HermitianMatrix gen_pd(const GenSpec& spec, Rng& rng) {
  spec.validate();
  return sample_matrix(spec, spec.spectrum, spec.structure != Structure::kDiagonal, rng);
}

HermitianMatrix gen_pd(const GenSpec& spec) {
  Rng rng(spec.seed, 0);
  return gen_pd(spec, rng);
}

op::OperatorPair gen_ordered_pair(const GenSpec& spec, Rng& rng) {
  spec.validate();
  const bool rotate = spec.structure != Structure::kDiagonal;
  HermitianMatrix a = sample_matrix(spec, spec.spectrum, rotate, rng);
  auto w_spec = sample_spectrum(spec.aux_spectrum.value_or(spec.spectrum), spec.dim, rng);
  const std::size_t rank = spec.aux_rank.value_or(spec.dim);
  for (std::size_t i = rank; i < spec.dim; ++i) w_spec[i] = 0.0;
  const HermitianMatrix w =
      rotate ? with_basis(random_unitary(spec.dim, spec.field, rng), w_spec) : HermitianMatrix::diagonal(w_spec);
  HermitianMatrix b = a + w;
  op::OperatorPair p = op::OperatorPair::make(std::move(a), std::move(b));
  p.ordered = true;
  return p;
}

op::OperatorPair gen_ordered_pair(const GenSpec& spec) {
  Rng rng(spec.seed, 0);
  return gen_ordered_pair(spec, rng);
}

op::OperatorPair gen_pair(const GenSpec& spec, Rng& rng) {
  spec.validate();
  switch (spec.structure) {
    case Structure::kOrderedPair:
      return gen_ordered_pair(spec, rng);
    case Structure::kDiagonal: {
      auto a = HermitianMatrix::diagonal(sample_spectrum(spec.spectrum, spec.dim, rng));
      auto b = HermitianMatrix::diagonal(sample_spectrum(spec.spectrum, spec.dim, rng));
      return op::OperatorPair::make(std::move(a), std::move(b));
    }
    case Structure::kCommutingPair: {
      const CMatrix q = random_unitary(spec.dim, spec.field, rng);
      auto a = with_basis(q, sample_spectrum(spec.spectrum, spec.dim, rng));
      auto b = with_basis(q, sample_spectrum(spec.spectrum, spec.dim, rng));
      return op::OperatorPair::make(std::move(a), std::move(b));
    }
    case Structure::kGeneralPd:
      break;
  }
  auto a = sample_matrix(spec, spec.spectrum, true, rng);
  auto b = sample_matrix(spec, spec.spectrum, true, rng);
  return op::OperatorPair::make(std::move(a), std::move(b));
}

GeneralMatrix gen_general(const GenSpec& spec, Rng& rng) {
  if (spec.dim == 0) throw SpecError("dim must be >= 1");
  const auto n = static_cast<Eigen::Index>(spec.dim);
  CMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      if (spec.field == Field::kReal) {
        m(i, j) = Complex(rng.normal(), 0.0);
      } else {
        const double re = rng.normal(), im = rng.normal();
        m(i, j) = Complex(re, im) / std::sqrt(2.0);
      }
    }
  return GeneralMatrix(std::move(m));
}

GeneralMatrix gen_general(const GenSpec& spec) {
  Rng rng(spec.seed, 0);
  return gen_general(spec, rng);
}

namespace {
std::uint64_t fnv_bytes(std::uint64_t h, std::uint64_t bits) {
  for (int k = 0; k < 8; ++k) {
    h ^= (bits >> (8 * k)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
  return h;
}
}  // namespace

std::uint64_t fingerprint(const CMatrix& m, std::uint64_t h) {
  h = fnv_bytes(h, static_cast<std::uint64_t>(m.rows()));
  h = fnv_bytes(h, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      h = fnv_bytes(h, std::bit_cast<std::uint64_t>(m(i, j).real()));
      h = fnv_bytes(h, std::bit_cast<std::uint64_t>(m(i, j).imag()));
    }
  return h;
}

std::uint64_t fingerprint(double v, std::uint64_t h) { return fnv_bytes(h, std::bit_cast<std::uint64_t>(v)); }

}  // namespace heinzcert::gen
