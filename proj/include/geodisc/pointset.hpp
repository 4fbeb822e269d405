#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodisc/core.hpp"
#include "geodisc/rng.hpp"

namespace geodisc {

/// N points in the half-open cube [0,1)^s, stored row-major.
/// Generators may emit 0 but never 1, so box counting never double-counts
/// the upper boundary.
class UnitCubePoints {
 public:
  UnitCubePoints(std::size_t n_points, std::size_t s)
      : s_(s), n_(n_points), coords_(n_points * s, 0.0) {
    if (s < 1 || n_points < 1) throw std::invalid_argument("UnitCubePoints: need N >= 1, s >= 1");
  }

  UnitCubePoints(std::size_t n_points, std::size_t s, std::vector<double> coords)
      : s_(s), n_(n_points), coords_(std::move(coords)) {
    if (s < 1 || n_points < 1) throw std::invalid_argument("UnitCubePoints: need N >= 1, s >= 1");
    if (coords_.size() != n_ * s_) throw std::invalid_argument("UnitCubePoints: shape mismatch");
    for (double c : coords_)
      if (!(c >= 0.0 && c < 1.0))
        throw std::invalid_argument("UnitCubePoints: coordinate outside [0,1)");
  }

  std::size_t dim() const { return s_; }
  std::size_t size() const { return n_; }

  double operator()(std::size_t n, std::size_t j) const { return coords_[n * s_ + j]; }
  double& operator()(std::size_t n, std::size_t j) { return coords_[n * s_ + j]; }

  std::span<const double> row(std::size_t n) const { return {coords_.data() + n * s_, s_}; }
  const std::vector<double>& raw() const { return coords_; }

  /// Column j as a vector (handy for the sorted 1-d formulas).
  std::vector<double> column(std::size_t j) const {
    std::vector<double> out(n_);
    for (std::size_t n = 0; n < n_; ++n) out[n] = coords_[n * s_ + j];
    return out;
  }

 private:
  std::size_t s_;
  std::size_t n_;
  std::vector<double> coords_;
};

namespace detail {

inline double radical_inverse(std::uint64_t n, std::uint64_t base) {
  const double inv = 1.0 / static_cast<double>(base);
  double f = inv, x = 0.0;
  while (n) {
    x += static_cast<double>(n % base) * f;
    n /= base;
    f *= inv;
  }
  return x;
}

// First 16 primes; Halton bases are fixed to these.
inline constexpr std::uint64_t kHaltonPrimes[16] = {2,  3,  5,  7,  11, 13, 17, 19,
                                                    23, 29, 31, 37, 41, 43, 47, 53};

// Direction-number initialisation for dimensions 2..10: primitive polynomial
// degree, encoded coefficients a_1..a_{d-1}, and the first m values.
// Dimension 1 uses the identity matrix (plain binary-digit reversal).
struct SobolInit {
  unsigned degree;
  unsigned coeffs;
  std::uint32_t m[5];
};

inline constexpr SobolInit kSobolInit[9] = {
    {1, 0, {1, 0, 0, 0, 0}},    // x + 1
    {2, 1, {1, 3, 0, 0, 0}},    // x^2 + x + 1
    {3, 1, {1, 3, 1, 0, 0}},    // x^3 + x + 1
    {3, 2, {1, 1, 1, 0, 0}},    // x^3 + x^2 + 1
    {4, 1, {1, 1, 3, 3, 0}},    // x^4 + x + 1
    {4, 4, {1, 3, 5, 13, 0}},   // x^4 + x^3 + 1
    {5, 2, {1, 1, 5, 5, 17}},   // x^5 + x^2 + 1
    {5, 4, {1, 1, 5, 5, 5}},    // x^5 + x^3 + 1
    {5, 7, {1, 1, 7, 11, 19}},  // x^5 + x^3 + x^2 + x + 1
};

inline constexpr unsigned kSobolBits = 32;
inline constexpr unsigned kSobolMaxDim = 10;

/// Column j (0-based) of direction integers V_k = m_k * 2^(32-k-1), k = 0..31.
inline std::vector<std::uint32_t> sobol_direction_integers(std::size_t j) {
  std::vector<std::uint32_t> v(kSobolBits);
  if (j == 0) {
    for (unsigned k = 0; k < kSobolBits; ++k) v[k] = 1u << (kSobolBits - 1 - k);
    return v;
  }
  const SobolInit& init = kSobolInit[j - 1];
  const unsigned d = init.degree;
  std::vector<std::uint64_t> m(kSobolBits);
  for (unsigned k = 0; k < d; ++k) m[k] = init.m[k];
  for (unsigned k = d; k < kSobolBits; ++k) {
    std::uint64_t val = m[k - d] ^ (m[k - d] << d);
    for (unsigned i = 1; i < d; ++i)
      if ((init.coeffs >> (d - 1 - i)) & 1u) val ^= m[k - i] << i;
    m[k] = val;
  }
  for (unsigned k = 0; k < kSobolBits; ++k)
    v[k] = static_cast<std::uint32_t>(m[k] << (kSobolBits - 1 - k));
  return v;
}

}  // namespace detail

/// Base-b radical inverse sequence: point n is n's digits reflected about
/// the radix point.
inline UnitCubePoints van_der_corput(std::size_t n_points, std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("van_der_corput: base must be >= 2");
  if (n_points < 1) throw std::invalid_argument("van_der_corput: N must be >= 1");
  UnitCubePoints p(n_points, 1);
  for (std::size_t n = 0; n < n_points; ++n) p(n, 0) = detail::radical_inverse(n, base);
  return p;
}

/// Halton points: column j is van der Corput in the j-th prime base.
inline UnitCubePoints halton(std::size_t n_points, std::size_t s) {
  if (s < 1 || s > 16) throw std::invalid_argument("halton: dimension must be in [1,16]");
  if (n_points < 1) throw std::invalid_argument("halton: N must be >= 1");
  UnitCubePoints p(n_points, s);
  for (std::size_t n = 0; n < n_points; ++n)
    for (std::size_t j = 0; j < s; ++j)
      p(n, j) = detail::radical_inverse(n, detail::kHaltonPrimes[j]);
  return p;
}

/// Digital net in base 2 with 2^m points: coordinate j of point n is the
/// XOR of the direction integers selected by the binary digits of n.
inline UnitCubePoints sobol_net(unsigned m, std::size_t s) {
  if (m > 20) throw std::invalid_argument("sobol_net: exponent must be in [0,20]");
  if (s < 1 || s > detail::kSobolMaxDim)
    throw std::invalid_argument("sobol_net: dimension must be in [1,10]");
  const std::size_t n_points = std::size_t{1} << m;
  std::vector<std::vector<std::uint32_t>> v(s);
  for (std::size_t j = 0; j < s; ++j) v[j] = detail::sobol_direction_integers(j);
  UnitCubePoints p(n_points, s);
  for (std::size_t n = 0; n < n_points; ++n) {
    for (std::size_t j = 0; j < s; ++j) {
      std::uint32_t acc = 0;
      std::uint64_t bits = n;
      for (unsigned k = 0; bits; ++k, bits >>= 1)
        if (bits & 1) acc ^= v[j][k];
      p(n, j) = static_cast<double>(acc) * 0x1.0p-32;
    }
  }
  return p;
}

/// Hammersley set: n/N in the first coordinate, radical inverses in the
/// first s-1 prime bases for the rest.
inline UnitCubePoints hammersley(std::size_t n_points, std::size_t s) {
  if (s < 1 || s > 17) throw std::invalid_argument("hammersley: dimension must be in [1,17]");
  if (n_points < 1) throw std::invalid_argument("hammersley: N must be >= 1");
  UnitCubePoints p(n_points, s);
  for (std::size_t n = 0; n < n_points; ++n) {
    p(n, 0) = static_cast<double>(n) / static_cast<double>(n_points);
    for (std::size_t j = 1; j < s; ++j)
      p(n, j) = detail::radical_inverse(n, detail::kHaltonPrimes[j - 1]);
  }
  return p;
}

/// Fibonacci lattice: N = F_m points (n/F_m, {n F_{m-1}/F_m}) in [0,1)^2.
/// The fractional part is computed with integer arithmetic, so coordinates
/// are exact multiples of 1/F_m.
inline UnitCubePoints fibonacci_lattice(unsigned m) {
  if (m < 2) throw std::invalid_argument("fibonacci_lattice: index must be >= 2");
  if (m > 45) throw std::invalid_argument("fibonacci_lattice: index too large (N would exceed 2^30)");
  std::uint64_t f_prev = 1, f = 1;  // F_1, F_2
  for (unsigned i = 2; i < m; ++i) {
    std::uint64_t next = f + f_prev;
    f_prev = f;
    f = next;
  }
  const std::uint64_t n_points = f;
  UnitCubePoints p(static_cast<std::size_t>(n_points), 2);
  for (std::uint64_t n = 0; n < n_points; ++n) {
    p(n, 0) = static_cast<double>(n) / static_cast<double>(n_points);
    p(n, 1) = static_cast<double>((n * f_prev) % n_points) / static_cast<double>(n_points);
  }
  return p;
}

/// One uniform point in each of the 2^{ks} dyadic subcubes of side 2^-k,
/// cells in lexicographic order. Deterministic in the seed.
inline UnitCubePoints stratified(unsigned k, std::size_t s, std::uint64_t seed) {
  if (s < 1) throw std::invalid_argument("stratified: dimension must be >= 1");
  if (static_cast<std::uint64_t>(k) * s > 24)
    throw std::invalid_argument("stratified: k*s must be <= 24");
  const std::size_t cells_per_axis = std::size_t{1} << k;
  const std::size_t n_points = std::size_t{1} << (k * s);
  UnitCubePoints p(n_points, s);
  CounterRng rng(seed);
  const double side = 1.0 / static_cast<double>(cells_per_axis);
  for (std::size_t n = 0; n < n_points; ++n) {
    for (std::size_t j = 0; j < s; ++j) {
      const std::size_t cell = (n >> (k * (s - 1 - j))) & (cells_per_axis - 1);
      const double u = rng.uniform(n * s + j);
      p(n, j) = (static_cast<double>(cell) + u) * side;
    }
  }
  return p;
}

/// N i.i.d.-style pseudo-uniform points from the counter generator.
inline UnitCubePoints random_uniform(std::size_t n_points, std::size_t s, std::uint64_t seed) {
  if (n_points < 1 || s < 1) throw std::invalid_argument("random_uniform: need N >= 1, s >= 1");
  UnitCubePoints p(n_points, s);
  CounterRng rng(seed);
  for (std::size_t n = 0; n < n_points; ++n)
    for (std::size_t j = 0; j < s; ++j) p(n, j) = rng.uniform(n * s + j);
  return p;
}

/// Named construction request, as accepted by the CLI.
struct GeneratorSpec {
  enum class Kind { van_der_corput, halton, sobol_net, hammersley, fibonacci, random, stratified };
  Kind kind = Kind::random;
  std::size_t n_points = 1;  // vdc, halton, hammersley, random
  std::size_t s = 1;
  std::uint64_t base = 2;    // vdc
  unsigned m = 0;            // sobol exponent / fibonacci index
  unsigned k = 0;            // stratification level
  std::uint64_t seed = 0;    // random, stratified
};

inline UnitCubePoints generate(const GeneratorSpec& g) {
  using Kind = GeneratorSpec::Kind;
  switch (g.kind) {
    case Kind::van_der_corput: return van_der_corput(g.n_points, g.base);
    case Kind::halton: return halton(g.n_points, g.s);
    case Kind::sobol_net: return sobol_net(g.m, g.s);
    case Kind::hammersley: return hammersley(g.n_points, g.s);
    case Kind::fibonacci: return fibonacci_lattice(g.m);
    case Kind::random: return random_uniform(g.n_points, g.s, g.seed);
    case Kind::stratified: return stratified(g.k, g.s, g.seed);
  }
  throw std::invalid_argument("generate: unknown kind");
}

}  // namespace geodisc
