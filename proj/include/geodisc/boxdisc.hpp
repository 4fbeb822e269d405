#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "geodisc/core.hpp"
#include "geodisc/pointset.hpp"
#include "geodisc/rng.hpp"

namespace geodisc {

/// Size limits for the exact anchored-box enumerations. Exceeding a limit
/// raises BudgetError; callers that want to continue must switch to
/// star_disc_estimate themselves.
struct BudgetConfig {
  std::size_t max_n_s2 = 512;
  std::size_t max_n_s3 = 128;
};

/// Signed local discrepancy with closed-box counting:
/// (1/N) sum 1_{[0,t]}(x_n) - prod t_j.
inline double local_box_discrepancy(const UnitCubePoints& p, std::span<const double> t) {
  if (t.size() != p.dim()) throw std::invalid_argument("local_box_discrepancy: anchor dimension mismatch");
  for (double tj : t)
    if (!(tj >= 0.0 && tj <= 1.0)) throw std::invalid_argument("local_box_discrepancy: anchor outside cube");
  std::size_t count = 0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    bool inside = true;
    for (std::size_t j = 0; j < p.dim(); ++j)
      if (p(n, j) > t[j]) {
        inside = false;
        break;
      }
    if (inside) ++count;
  }
  double vol = 1.0;
  for (double tj : t) vol *= tj;
  return static_cast<double>(count) / static_cast<double>(p.size()) - vol;
}

inline double local_box_discrepancy(const UnitCubePoints& p, std::initializer_list<double> t) {
  return local_box_discrepancy(p, std::span<const double>(t.begin(), t.size()));
}

/// Exact star discrepancy in dimension 1 via the sorted-point formula:
/// max_n max(n/N - y_(n), y_(n) - (n-1)/N). Both one-sided limits of the
/// half-open sup are covered by the two terms.
inline DiscrepancyResult star_disc_1d_exact(const UnitCubePoints& p) {
  if (p.dim() != 1) throw std::invalid_argument("star_disc_1d_exact: s must be 1");
  std::vector<double> y = p.column(0);
  std::stable_sort(y.begin(), y.end());
  const double n_inv = 1.0 / static_cast<double>(y.size());
  double best = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double up = static_cast<double>(i + 1) * n_inv - y[i];
    const double down = y[i] - static_cast<double>(i) * n_inv;
    best = std::max({best, up, down});
  }
  return make_result(best, Family::anchored_box, kInf, Method::exact);
}

namespace detail {

// Per-dimension candidate values: sorted unique coordinates plus 1, and the
// rank of each point's coordinate within them.
struct Axis {
  std::vector<double> values;       // ascending, last element is 1
  std::vector<std::size_t> ranks;   // per point
};

inline Axis build_axis(const UnitCubePoints& p, std::size_t j) {
  Axis a;
  std::vector<double> coords = p.column(j);
  a.values = coords;
  std::sort(a.values.begin(), a.values.end());
  a.values.erase(std::unique(a.values.begin(), a.values.end()), a.values.end());
  a.values.push_back(1.0);  // coords live in [0,1), so 1 is never present
  a.ranks.resize(coords.size());
  for (std::size_t n = 0; n < coords.size(); ++n)
    a.ranks[n] = static_cast<std::size_t>(
        std::lower_bound(a.values.begin(), a.values.end(), coords[n]) - a.values.begin());
  return a;
}

inline double star_grid_2d(const UnitCubePoints& p) {
  const Axis ax = build_axis(p, 0), ay = build_axis(p, 1);
  const std::size_t nx = ax.values.size(), ny = ay.values.size();
  const double n_inv = 1.0 / static_cast<double>(p.size());

  // Points sorted by x-rank so each sweep step inserts a contiguous run.
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ax.ranks[a] < ax.ranks[b]; });

  double best = 0.0;
  // hist[r] = points seen so far with y-rank r; prefix rebuilt per column.
  std::vector<std::size_t> hist(ny, 0), prefix(ny + 1, 0);
  // Closed sweep: at column xi include points with x-rank <= xi, evaluate
  // cc/N - vol. Open sweep handled in the same pass one step behind:
  // before inserting rank-xi points, the histogram holds x-rank < xi, which
  // with prefix[yj] (y-rank < yj) gives the strict count.
  std::size_t pos = 0;
  for (std::size_t xi = 0; xi < nx; ++xi) {
    // open evaluation: points with x < ax.values[xi], y < ay.values[yj]
    prefix[0] = 0;
    for (std::size_t r = 0; r < ny; ++r) prefix[r + 1] = prefix[r] + hist[r];
    for (std::size_t yj = 0; yj < ny; ++yj) {
      const double vol = ax.values[xi] * ay.values[yj];
      const double down = vol - static_cast<double>(prefix[yj]) * n_inv;
      if (down > best) best = down;
    }
    while (pos < order.size() && ax.ranks[order[pos]] == xi) {
      ++hist[ay.ranks[order[pos]]];
      ++pos;
    }
    // closed evaluation: x <= ax.values[xi], y <= ay.values[yj]
    prefix[0] = 0;
    for (std::size_t r = 0; r < ny; ++r) prefix[r + 1] = prefix[r] + hist[r];
    for (std::size_t yj = 0; yj < ny; ++yj) {
      const double vol = ax.values[xi] * ay.values[yj];
      const double up = static_cast<double>(prefix[yj + 1]) * n_inv - vol;
      if (up > best) best = up;
    }
  }
  return best;
}

inline double star_grid_3d(const UnitCubePoints& p) {
  const Axis ax = build_axis(p, 0), ay = build_axis(p, 1), az = build_axis(p, 2);
  const std::size_t nx = ax.values.size(), ny = ay.values.size(), nz = az.values.size();
  const double n_inv = 1.0 / static_cast<double>(p.size());

  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ax.ranks[a] < ax.ranks[b]; });

  double best = 0.0;
  std::vector<std::uint32_t> hist(ny * nz, 0);
  std::vector<std::uint32_t> prefix((ny + 1) * (nz + 1), 0);
  auto rebuild_prefix = [&]() {
    for (std::size_t r = 0; r <= nz; ++r) prefix[r] = 0;
    for (std::size_t q = 0; q < ny; ++q) {
      prefix[(q + 1) * (nz + 1)] = 0;
      for (std::size_t r = 0; r < nz; ++r)
        prefix[(q + 1) * (nz + 1) + r + 1] = hist[q * nz + r] + prefix[q * (nz + 1) + r + 1] +
                                             prefix[(q + 1) * (nz + 1) + r] -
                                             prefix[q * (nz + 1) + r];
    }
  };
  std::size_t pos = 0;
  for (std::size_t xi = 0; xi < nx; ++xi) {
    rebuild_prefix();  // x-rank < xi
    for (std::size_t yj = 0; yj < ny; ++yj) {
      const double vxy = ax.values[xi] * ay.values[yj];
      const std::uint32_t* row = &prefix[yj * (nz + 1)];
      for (std::size_t zk = 0; zk < nz; ++zk) {
        const double down = vxy * az.values[zk] - static_cast<double>(row[zk]) * n_inv;
        if (down > best) best = down;
      }
    }
    while (pos < order.size() && ax.ranks[order[pos]] == xi) {
      const std::size_t n = order[pos];
      ++hist[ay.ranks[n] * nz + az.ranks[n]];
      ++pos;
    }
    rebuild_prefix();  // x-rank <= xi
    for (std::size_t yj = 0; yj < ny; ++yj) {
      const double vxy = ax.values[xi] * ay.values[yj];
      const std::uint32_t* row = &prefix[(yj + 1) * (nz + 1)];
      for (std::size_t zk = 0; zk < nz; ++zk) {
        const double up = static_cast<double>(row[zk + 1]) * n_inv - vxy * az.values[zk];
        if (up > best) best = up;
      }
    }
  }
  return best;
}

}  // namespace detail

/// Exact star discrepancy for s in {1,2,3} by enumerating the candidate
/// grid Gamma = prod_j ({x_{n,j}} u {1}), with both the closed-box count
/// (right limit) and the open-box count (left limit) at every candidate.
inline DiscrepancyResult star_disc_grid_exact(const UnitCubePoints& p,
                                              const BudgetConfig& budget = {}) {
  switch (p.dim()) {
    case 1:
      return star_disc_1d_exact(p);
    case 2:
      if (p.size() > budget.max_n_s2)
        throw BudgetError("star_disc_grid_exact: N=" + std::to_string(p.size()) +
                          " exceeds s=2 budget " + std::to_string(budget.max_n_s2));
      return make_result(detail::star_grid_2d(p), Family::anchored_box, kInf, Method::exact);
    case 3:
      if (p.size() > budget.max_n_s3)
        throw BudgetError("star_disc_grid_exact: N=" + std::to_string(p.size()) +
                          " exceeds s=3 budget " + std::to_string(budget.max_n_s3));
      return make_result(detail::star_grid_3d(p), Family::anchored_box, kInf, Method::exact);
    default:
      throw std::invalid_argument("star_disc_grid_exact: s must be in {1,2,3}");
  }
}

/// Candidate-sampling lower bound for the star discrepancy, for dimensions
/// where the exact enumeration is out of reach. Candidates are drawn as a
/// deterministic stream (point-coordinate combinations, dyadic anchors,
/// uniform anchors in rotation), so results are monotone nondecreasing in
/// n_candidates for a fixed seed.
inline DiscrepancyResult star_disc_estimate(const UnitCubePoints& p, std::size_t n_candidates,
                                            std::uint64_t seed) {
  const std::size_t s = p.dim();
  const double n_inv = 1.0 / static_cast<double>(p.size());
  CounterRng rng(seed);
  std::uint64_t draw = 0;
  std::vector<double> t(s);
  double best = 0.0;
  for (std::size_t c = 0; c < n_candidates; ++c) {
    switch (c % 3) {
      case 0:  // coordinates of random points (or 1) per axis
        for (std::size_t j = 0; j < s; ++j) {
          const std::uint64_t pick = rng.bits(draw++) % (p.size() + 1);
          t[j] = pick == p.size() ? 1.0 : p(pick, j);
        }
        break;
      case 1: {  // dyadic anchor
        const unsigned level = 1 + static_cast<unsigned>(rng.bits(draw++) % 10);
        const double scale = static_cast<double>(std::uint64_t{1} << level);
        for (std::size_t j = 0; j < s; ++j)
          t[j] = static_cast<double>(rng.bits(draw++) % ((std::uint64_t{1} << level) + 1)) / scale;
        break;
      }
      default:  // uniform anchor
        for (std::size_t j = 0; j < s; ++j) t[j] = rng.uniform(draw++);
        break;
    }
    std::size_t cc = 0, co = 0;
    for (std::size_t n = 0; n < p.size(); ++n) {
      bool closed = true, open = true;
      for (std::size_t j = 0; j < s; ++j) {
        const double x = p(n, j);
        if (x > t[j]) { closed = false; open = false; break; }
        if (x == t[j]) open = false;
      }
      cc += closed;
      co += open;
    }
    double vol = 1.0;
    for (double tj : t) vol *= tj;
    best = std::max({best, static_cast<double>(cc) * n_inv - vol,
                     vol - static_cast<double>(co) * n_inv});
  }
  return make_result(best, Family::anchored_box, kInf, Method::lower_bound);
}

/// Warnock closed form for the L2 anchored-box discrepancy:
///   value^2 = 3^-s - (2/N) sum_n prod_j (1-x_{n,j}^2)/2
///           + (1/N^2) sum_{n,m} prod_j (1 - max(x_{n,j}, x_{m,j})).
/// O(N^2 s) with compensated accumulation.
inline DiscrepancyResult l2_star_closed_form(const UnitCubePoints& p) {
  const std::size_t n_points = p.size(), s = p.dim();
  const double n_inv = 1.0 / static_cast<double>(n_points);

  CompensatedSum cross;
  for (std::size_t n = 0; n < n_points; ++n) {
    double prod = 1.0;
    for (std::size_t j = 0; j < s; ++j) prod *= (1.0 - p(n, j) * p(n, j)) * 0.5;
    cross.add(prod);
  }

  CompensatedSum pair;
  for (std::size_t n = 0; n < n_points; ++n) {
    for (std::size_t m = n; m < n_points; ++m) {
      double prod = 1.0;
      for (std::size_t j = 0; j < s; ++j) prod *= 1.0 - std::max(p(n, j), p(m, j));
      pair.add(m == n ? prod : 2.0 * prod);
    }
  }

  const double sq = std::pow(3.0, -static_cast<double>(s)) - 2.0 * n_inv * cross.value() +
                    n_inv * n_inv * pair.value();
  if (sq < -1e-12)
    throw ConsistencyError("l2_star_closed_form: negative squared discrepancy " +
                           std::to_string(sq));
  return make_result(std::sqrt(std::max(sq, 0.0)), Family::anchored_box, 2.0, Method::exact);
}

namespace detail {

// Integral of |c - t|^q over [a,b], splitting at the zero crossing.
inline double abs_affine_integral(double c, double a, double b, double q) {
  const double q1 = q + 1.0;
  auto one_side = [&](double lo, double hi) {
    // both endpoints on the same side of c
    if (hi <= c) return (std::pow(c - lo, q1) - std::pow(c - hi, q1)) / q1;
    return (std::pow(hi - c, q1) - std::pow(lo - c, q1)) / q1;
  };
  if (b <= c || a >= c) return one_side(a, b);
  return one_side(a, c) + one_side(c, b);
}

}  // namespace detail

/// Exact 1-d L^q discrepancy: between consecutive sorted points the local
/// discrepancy is affine (k/N - t), and each piece integrates in closed
/// form.
inline DiscrepancyResult lq_disc_1d_exact(const UnitCubePoints& p, double q) {
  if (p.dim() != 1) throw std::invalid_argument("lq_disc_1d_exact: s must be 1");
  if (!(q >= 1.0) || q == kInf) throw std::invalid_argument("lq_disc_1d_exact: need 1 <= q < inf");
  std::vector<double> y = p.column(0);
  std::stable_sort(y.begin(), y.end());
  const std::size_t n_points = y.size();
  const double n_inv = 1.0 / static_cast<double>(n_points);
  CompensatedSum total;
  double lo = 0.0;
  for (std::size_t i = 0; i <= n_points; ++i) {
    const double hi = i < n_points ? y[i] : 1.0;
    if (hi > lo) total.add(detail::abs_affine_integral(static_cast<double>(i) * n_inv, lo, hi, q));
    lo = hi;
  }
  return make_result(std::pow(total.value(), 1.0 / q), Family::anchored_box, q, Method::exact);
}

/// Monte Carlo L^q estimate over uniform anchors, with a bootstrap
/// standard error as the hint.
inline DiscrepancyResult lq_disc_mc(const UnitCubePoints& p, double q, std::size_t n_samples,
                                    std::uint64_t seed) {
  if (!(q >= 1.0) || q == kInf) throw std::invalid_argument("lq_disc_mc: need 1 <= q < inf");
  if (n_samples < 1) throw std::invalid_argument("lq_disc_mc: need at least one sample");
  const std::size_t s = p.dim();
  CounterRng rng(seed);
  std::vector<double> powers(n_samples);
  std::vector<double> t(s);
  for (std::size_t i = 0; i < n_samples; ++i) {
    for (std::size_t j = 0; j < s; ++j) t[j] = rng.uniform(i * s + j);
    powers[i] = std::pow(std::abs(local_box_discrepancy(p, t)), q);
  }
  CompensatedSum mean_sum;
  for (double g : powers) mean_sum.add(g);
  const double mean = mean_sum.value() / static_cast<double>(n_samples);
  const double value = std::pow(mean, 1.0 / q);

  // bootstrap the q-th-power mean, then transform
  const std::size_t n_boot = 200;
  CounterRng boot_rng(CounterRng::mix(seed) ^ 0x5bf0f3a2ULL);
  double acc = 0.0, acc2 = 0.0;
  std::uint64_t draw = 0;
  for (std::size_t b = 0; b < n_boot; ++b) {
    double bm = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i)
      bm += powers[boot_rng.bits(draw++) % n_samples];
    bm /= static_cast<double>(n_samples);
    const double bv = std::pow(bm, 1.0 / q);
    acc += bv;
    acc2 += bv * bv;
  }
  const double bmean = acc / n_boot;
  const double se = std::sqrt(std::max(acc2 / n_boot - bmean * bmean, 0.0));
  return make_result(value, Family::anchored_box, q, Method::estimate, se);
}

/// A 1-d integrand with the exact data the Koksma inequality needs: its
/// integral over [0,1] and the L^p norm of its derivative as a function
/// of p (kInf allowed).
struct FunctionSpec1D {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  double integral = 0.0;
  std::function<double(double)> variation_norm;  // p -> (int |f'|^p)^(1/p)
};

struct KoksmaReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double p = 1.0;
  double q = kInf;
  bool holds = false;
};

inline double holder_conjugate(double p) {
  if (p == kInf) return 1.0;
  if (p == 1.0) return kInf;
  return p / (p - 1.0);
}

/// Checks |int f - (1/N) sum f(x_n)| <= ||f'||_p * L^q(P) for a Hoelder
/// pair (p,q). Passing both exponents is allowed but they must be
/// conjugate.
inline KoksmaReport koksma_check(const FunctionSpec1D& f, const UnitCubePoints& p, double p_exp,
                                 std::optional<double> q_exp = std::nullopt) {
  if (p.dim() != 1) throw std::invalid_argument("koksma_check: s must be 1");
  if (!(p_exp >= 1.0)) throw std::invalid_argument("koksma_check: p must be in [1,inf]");
  const double q = q_exp.value_or(holder_conjugate(p_exp));
  const double ip = p_exp == kInf ? 0.0 : 1.0 / p_exp;
  const double iq = q == kInf ? 0.0 : 1.0 / q;
  if (std::abs(ip + iq - 1.0) > 1e-9)
    throw std::invalid_argument("koksma_check: (p,q) is not a Hoelder-conjugate pair");

  CompensatedSum qmc;
  for (std::size_t n = 0; n < p.size(); ++n) qmc.add(f.f(p(n, 0)));
  const double lhs = std::abs(f.integral - qmc.value() / static_cast<double>(p.size()));
  const double disc =
      q == kInf ? star_disc_1d_exact(p).value : lq_disc_1d_exact(p, q).value;
  const double rhs = f.variation_norm(p_exp) * disc;
  return KoksmaReport{lhs, rhs, p_exp, q, lhs <= rhs + 1e-12};
}

/// Built-in integrands with exact integrals and derivative norms.
inline std::vector<FunctionSpec1D> builtin_function_suite() {
  std::vector<FunctionSpec1D> suite;
  suite.push_back({"linear", [](double x) { return x; }, [](double) { return 1.0; }, 0.5,
                   [](double) { return 1.0; }});
  suite.push_back({"square", [](double x) { return x * x; }, [](double x) { return 2.0 * x; },
                   1.0 / 3.0, [](double p) {
                     if (p == kInf) return 2.0;
                     return 2.0 / std::pow(p + 1.0, 1.0 / p);
                   }});
  suite.push_back({"sine", [](double x) { return std::sin(kPi * x); },
                   [](double x) { return kPi * std::cos(kPi * x); }, 2.0 / kPi, [](double p) {
                     if (p == kInf) return kPi;
                     // int_0^1 |cos(pi t)|^p dt = Gamma((p+1)/2) / (sqrt(pi) Gamma(p/2+1))
                     const double moment = std::exp(std::lgamma((p + 1.0) / 2.0) -
                                                    std::lgamma(p / 2.0 + 1.0)) /
                                           std::sqrt(kPi);
                     return kPi * std::pow(moment, 1.0 / p);
                   }});
  suite.push_back({"exp", [](double x) { return std::exp(x); }, [](double x) { return std::exp(x); },
                   std::exp(1.0) - 1.0, [](double p) {
                     if (p == kInf) return std::exp(1.0);
                     return std::pow((std::exp(p) - 1.0) / p, 1.0 / p);
                   }});
  suite.push_back({"tent", [](double x) { return std::abs(x - 0.5); },
                   [](double x) { return x < 0.5 ? -1.0 : 1.0; }, 0.25,
                   [](double) { return 1.0; }});
  return suite;
}

}  // namespace geodisc
