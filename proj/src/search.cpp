#include "schatten/search.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "schatten/matrix_io.hpp"

namespace schatten {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign_of(double g, double tol) {
  if (std::abs(g) <= tol) return 0;
  return g > 0.0 ? 1 : -1;
}

double parse_number(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw Error(ErrorCode::InvalidConfig, "bad number '" + std::string(s) + "'");
  return v;
}

// Diagonal from the first n reals, then (re, im) for each upper entry.
ComplexMatrix hermitian_from(std::span<const double> x, int n) {
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) h(i, i) = x[k++];
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      h(i, j) = Complex(x[k], x[k + 1]);
      h(j, i) = std::conj(h(i, j));
      k += 2;
    }
  return h;
}

ComplexMatrix complex_from(std::span<const double> x, int n) {
  ComplexMatrix c(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j, k += 2) c(i, j) = Complex(x[k], x[k + 1]);
  return c;
}

ComplexMatrix unitary_exp(const ComplexMatrix& h) {
  const auto sys = hermitian_eigensystem(h, 0.0);
  Eigen::VectorXcd phases(static_cast<Eigen::Index>(sys.values.size()));
  for (std::size_t i = 0; i < sys.values.size(); ++i) phases(static_cast<Eigen::Index>(i)) = std::polar(1.0, sys.values[i]);
  return sys.vectors * phases.asDiagonal() * sys.vectors.adjoint();
}

ComplexMatrix kron(const ComplexMatrix& x, const ComplexMatrix& y) {
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

std::vector<double> descending(std::span<const double> x) {
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

void require_probes(std::span<const double> p_probe) {
  if (p_probe.empty()) throw Error(ErrorCode::InvalidProbe, "no probe exponents");
  for (double p : p_probe)
    if (!std::isfinite(p) || p < 1.0 || p == 2.0)
      throw Error(ErrorCode::InvalidProbe, "probe exponents must lie in [1, 2) or (2, inf)");
}

struct RestartResult {
  std::vector<double> x;
  double relative = kInf;  // objective / (1 + pair_norm_sum) at the end of the descent
  double margin = 0.0;     // raw violation margin, 0 when below threshold
};

// Scale-free objective used inside the simplex descent. The raw gap grows
// like ||B||^p, so descending on it drives B off to where only rounding
// noise is left.
double relative_objective(int conjecture, const MatrixPair& pair, std::span<const double> p_probe) {
  const Arrangement arr = conjecture_arrangement(conjecture);
  double best = kInf;
  try {
    const auto spectra = PairSpectra::compute(pair.a, pair.b);
    for (double p : p_probe)
      best = std::min(best, conjecture_sign(conjecture, p) * spectra.gap(p, arr) / (1.0 + spectra.pair_norm_sum(p)));
  } catch (const Error&) {
    return kInf;
  }
  return std::isnan(best) ? kInf : best;
}

double raw_margin(int conjecture, const PairFamily& family, const MatrixPair& pair, std::span<const double> p_probe,
                  double tol, double* objective, double* p_at) {
  *objective = search_objective(conjecture, pair, p_probe, p_at);
  if (!std::isfinite(*objective) || !satisfies_family(family, pair)) return 0.0;
  const double pns = pair_norm_sum(pair.a, pair.b, *p_at);
  return *objective < -tol * (1.0 + pns) ? -*objective : 0.0;
}

}  // namespace

std::vector<double> make_p_grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(step))
    throw Error(ErrorCode::InvalidConfig, "grid bounds must be finite");
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidConfig, "grid step must be > 0");
  if (lo < 1.0) throw Error(ErrorCode::InvalidConfig, "grid must start at p >= 1");
  if (hi < lo) throw Error(ErrorCode::InvalidConfig, "grid upper end below lower end");
  const double count = std::floor((hi - lo) / step + 1e-9);
  if (count > 1e6) throw Error(ErrorCode::InvalidConfig, "grid has too many points");
  std::vector<double> grid;
  for (long k = 0; k <= static_cast<long>(count); ++k)
    grid.push_back(std::round((lo + static_cast<double>(k) * step) * 1e10) / 1e10);
  return grid;
}

std::vector<double> parse_p_grid(std::string_view spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos || spec.find(':', c2 + 1) != std::string_view::npos)
    throw Error(ErrorCode::InvalidConfig, "grid must look like lo:hi:step");
  return make_p_grid(parse_number(spec.substr(0, c1)), parse_number(spec.substr(c1 + 1, c2 - c1 - 1)),
                     parse_number(spec.substr(c2 + 1)));
}

GapCurve gap_curve(const ComplexMatrix& a, const ComplexMatrix& b, std::span<const double> p_grid, Arrangement arr,
                   std::string pair_id) {
  if (p_grid.empty()) throw Error(ErrorCode::InvalidConfig, "empty grid");
  for (std::size_t i = 1; i < p_grid.size(); ++i)
    if (!(p_grid[i] > p_grid[i - 1])) throw Error(ErrorCode::InvalidConfig, "grid must be strictly ascending");
  const auto spectra = PairSpectra::compute(a, b);
  GapCurve curve;
  curve.arrangement = arr;
  curve.pair_id = std::move(pair_id);
  curve.p_grid.assign(p_grid.begin(), p_grid.end());
  for (double p : p_grid) curve.gaps.push_back(spectra.gap(p, arr));
  return curve;
}

std::string SignPattern::signature() const {
  std::string s;
  for (const auto& seg : segments) s += seg.sign > 0 ? '+' : seg.sign < 0 ? '-' : '0';
  return s;
}

SignPattern classify_signs(const GapCurve& curve, double tol, const std::function<double(double)>& gap_fn) {
  SignPattern out;
  const auto& p = curve.p_grid;
  const auto& g = curve.gaps;
  if (p.empty()) return out;

  struct Run {
    std::size_t first, last;
    int sign;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int s = sign_of(g[i], tol);
    if (!runs.empty() && runs.back().sign == s)
      runs.back().last = i;
    else
      runs.push_back({i, i, s});
  }

  auto locate = [&](double lo, double hi, int sign_lo) {
    if (!gap_fn) return 0.5 * (lo + hi);
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      const double v = gap_fn(mid);
      if (v == 0.0) return mid;
      if ((v > 0.0 ? 1 : -1) == sign_lo)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  };
  auto interpolate = [&](std::size_t i) {
    const double t = g[i] / (g[i] - g[i + 1]);
    return p[i] + t * (p[i + 1] - p[i]);
  };

  // Boundary between run r and r + 1.
  std::vector<double> cut(runs.size() > 0 ? runs.size() - 1 : 0);
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
    const auto& cur = runs[r];
    const auto& nxt = runs[r + 1];
    if (cur.sign != 0 && nxt.sign != 0) {
      cut[r] = gap_fn ? locate(p[cur.last], p[nxt.first], cur.sign) : interpolate(cur.last);
      out.crossings.push_back(cut[r]);
    } else {
      cut[r] = cur.sign == 0 ? p[cur.last] : p[nxt.first];
    }
  }
  // Sign flips across an interior zero run.
  for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
    const auto& prev = runs[r - 1];
    const auto& next = runs[r + 1];
    if (runs[r].sign == 0 && prev.sign != 0 && next.sign == -prev.sign)
      out.crossings.push_back(locate(p[prev.last], p[next.first], prev.sign));
  }
  std::sort(out.crossings.begin(), out.crossings.end());

  for (std::size_t r = 0; r < runs.size(); ++r) {
    SignSegment seg;
    seg.sign = runs[r].sign;
    seg.p_lo = r == 0 ? p.front() : cut[r - 1];
    seg.p_hi = r + 1 == runs.size() ? p.back() : cut[r];
    if (seg.sign == 0) {
      seg.p_lo = p[runs[r].first];
      seg.p_hi = p[runs[r].last];
    }
    out.segments.push_back(seg);
  }
  return out;
}

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f, std::vector<double> x0,
                             double initial_step, int max_iterations, double restart_diameter) {
  const std::size_t n = x0.size();
  auto eval = [&](const std::vector<double>& x) {
    const double v = f(x);
    return std::isnan(v) ? kInf : v;
  };

  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  auto build = [&](const std::vector<double>& centre) {
    for (std::size_t i = 0; i <= n; ++i) {
      pts[i] = centre;
      if (i > 0) pts[i][i - 1] += initial_step;
      vals[i] = eval(pts[i]);
    }
  };
  build(x0);

  std::vector<std::size_t> order(n + 1);
  auto along = [&](const std::vector<double>& c, const std::vector<double>& from, double coeff) {
    std::vector<double> y(n);
    for (std::size_t k = 0; k < n; ++k) y[k] = c[k] + coeff * (from[k] - c[k]);
    return y;
  };

  int it = 0;
  for (; it < max_iterations; ++it) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1 < n ? n - 1 : 0];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(pts[i][k] - pts[best][k]));
    if (diameter < restart_diameter) {
      const auto centre = pts[best];
      build(centre);
      continue;
    }

    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < n; ++k) c[k] += pts[i][k] / static_cast<double>(n);

    const auto xr = along(c, pts[worst], -1.0);
    const double fr = eval(xr);
    if (fr < vals[best]) {
      const auto xe = along(c, pts[worst], -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const auto xc = outside ? along(c, xr, 0.5) : along(c, pts[worst], 0.5);
    const double fc = eval(xc);
    if (outside ? fc <= fr : fc < vals[worst]) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      pts[i] = along(pts[best], pts[i], 0.5);
      vals[i] = eval(pts[i]);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], it};
}

int parameter_count(const PairFamily& family) {
  const int n = family.dim;
  switch (family.tag) {
    case FamilyTag::GeneralHermitian: return n + n * n;
    case FamilyTag::GeneralComplex: return n + 2 * n * n;
    case FamilyTag::Commuting: return 2 * n;
    case FamilyTag::Anticommuting: return n;
    case FamilyTag::Unitary: return n * n;
    case FamilyTag::OrderedPsd: return 2 * n * n;
    case FamilyTag::Contraction: return 2 * n * n + 1;
    case FamilyTag::HannerPositive: return 2 * n * n;
  }
  return 0;
}

MatrixPair pair_from_parameters(const PairFamily& family, std::span<const double> x) {
  const int n = family.dim;
  if (n < 1 || n > 8) throw Error(ErrorCode::InvalidDim, "search dimension must lie in [1, 8]");
  if (family.tag == FamilyTag::Anticommuting && n % 2 != 0)
    throw Error(ErrorCode::InvalidDim, "anticommuting family needs even dimension");
  if (static_cast<int>(x.size()) != parameter_count(family))
    throw Error(ErrorCode::LengthMismatch, "parameter vector has the wrong length");
  const auto nn = static_cast<std::size_t>(n * n);
  const auto un = static_cast<std::size_t>(n);

  MatrixPair pair;
  switch (family.tag) {
    case FamilyTag::GeneralHermitian:
      pair = {diagonal(descending(x.first(un))), hermitian_from(x.subspan(un), n)};
      break;
    case FamilyTag::GeneralComplex: {
      std::vector<double> d(x.begin(), x.begin() + n);
      for (auto& v : d) v = std::abs(v);
      pair = {diagonal(descending(d)), complex_from(x.subspan(un), n)};
      break;
    }
    case FamilyTag::Commuting:
      pair = {diagonal(x.first(un)), diagonal(x.subspan(un))};
      break;
    case FamilyTag::Anticommuting: {
      const auto m = un / 2;
      ComplexMatrix z(2, 2), s(2, 2);
      z << 1.0, 0.0, 0.0, -1.0;
      s << 0.0, 1.0, 1.0, 0.0;
      pair = {kron(diagonal(x.first(m)), z), kron(diagonal(x.subspan(m)), s)};
      break;
    }
    case FamilyTag::Unitary:
      return {identity(n), unitary_exp(hermitian_from(x, n))};
    case FamilyTag::OrderedPsd: {
      const ComplexMatrix g = hermitian_from(x.first(nn), n);
      const ComplexMatrix h = hermitian_from(x.subspan(nn), n);
      const ComplexMatrix b = hermitian_part(g * g);
      pair = {hermitian_part(b + h * h), b};
      break;
    }
    case FamilyTag::Contraction: {
      const ComplexMatrix b = hermitian_from(x.first(nn), n);
      const ComplexMatrix h = hermitian_from(x.subspan(nn, nn), n);
      const double eps = std::exp(std::clamp(x[2 * nn], -30.0, 30.0));
      pair = {hermitian_part(h * h) + (spectral_norm(b) + eps) * identity(n), b};
      break;
    }
    case FamilyTag::HannerPositive: {
      const ComplexMatrix h1 = hermitian_from(x.first(nn), n);
      const ComplexMatrix h2 = hermitian_from(x.subspan(nn), n);
      const ComplexMatrix p = h1 * h1;
      const ComplexMatrix q = h2 * h2;
      pair = {hermitian_part(0.5 * (p + q)), hermitian_part(0.5 * (p - q))};
      break;
    }
  }
  const double scale = spectral_norm(pair.a);
  if (scale > 0.0 && std::isfinite(scale)) {
    pair.a *= 6.0 / scale;
    pair.b *= 6.0 / scale;
  }
  return pair;
}

double search_objective(int conjecture, const MatrixPair& pair, std::span<const double> p_probe, double* p_argmin) {
  const Arrangement arr = conjecture_arrangement(conjecture);
  double best = kInf;
  try {
    const auto spectra = PairSpectra::compute(pair.a, pair.b);
    for (double p : p_probe) {
      const double v = conjecture_sign(conjecture, p) * spectra.gap(p, arr);
      if (v < best) {
        best = v;
        if (p_argmin) *p_argmin = p;
      }
    }
  } catch (const Error&) {
    return kInf;
  }
  return std::isnan(best) ? kInf : best;
}

SearchReport violation_search(int conjecture, const PairFamily& family, std::span<const double> p_probe, int restarts,
                              RandomStream stream, const SearchOptions& options) {
  conjecture_arrangement(conjecture);
  require_probes(p_probe);
  if (restarts < 1) throw Error(ErrorCode::InvalidConfig, "restarts must be >= 1");
  if (family.dim < 1 || family.dim > 8) throw Error(ErrorCode::InvalidDim, "search dimension must lie in [1, 8]");
  if (family.tag == FamilyTag::Anticommuting && family.dim % 2 != 0)
    throw Error(ErrorCode::InvalidDim, "anticommuting family needs even dimension");

  const int dim = parameter_count(family);
  std::vector<RestartResult> results(static_cast<std::size_t>(restarts));

  auto run_one = [&](int r) {
    Sampler s(stream.child(static_cast<std::uint64_t>(r)));
    std::vector<double> x0(static_cast<std::size_t>(dim));
    for (auto& v : x0) v = s.normal();
    auto f = [&](std::span<const double> x) {
      try {
        return relative_objective(conjecture, pair_from_parameters(family, x), p_probe);
      } catch (const Error&) {
        return kInf;
      }
    };
    auto nm = nelder_mead(f, std::move(x0), 0.5, options.max_iterations, options.restart_diameter);
    double objective = 0.0, p_at = 0.0;
    double margin = 0.0;
    try {
      margin = raw_margin(conjecture, family, pair_from_parameters(family, nm.x), p_probe, options.tol, &objective, &p_at);
    } catch (const Error&) {
    }
    results[static_cast<std::size_t>(r)] = {std::move(nm.x), nm.value, margin};
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(restarts));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int r = next++; r < restarts; r = next++) run_one(r);
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  // Largest certified margin; without any, the lowest relative objective.
  // Strict comparisons keep the lowest restart index on ties.
  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    const auto& cand = results[static_cast<std::size_t>(r)];
    const auto& cur = results[static_cast<std::size_t>(best)];
    if (cand.margin > cur.margin || (cur.margin == 0.0 && cand.margin == 0.0 && cand.relative < cur.relative))
      best = r;
  }

  SearchReport report;
  report.conjecture = conjecture;
  report.family = family;
  report.p_probe.assign(p_probe.begin(), p_probe.end());
  report.restarts_used = restarts;
  report.seed = stream.seed;
  report.best_restart = best;
  report.p_at_violation = p_probe.front();

  // Certification: rebuild the pair and evaluate it afresh.
  report.best_pair = pair_from_parameters(family, results[static_cast<std::size_t>(best)].x);
  report.violation_margin = raw_margin(conjecture, family, report.best_pair, p_probe, options.tol,
                                       &report.best_objective, &report.p_at_violation);
  report.invariants_ok = satisfies_family(family, report.best_pair);
  return report;
}

nlohmann::json search_report_to_json(const SearchReport& r) {
  nlohmann::json j;
  j["conjecture"] = r.conjecture;
  j["arrangement"] = to_string(conjecture_arrangement(r.conjecture));
  j["family"] = std::string(to_string(r.family.tag));
  j["dim"] = r.family.dim;
  j["p_probe"] = r.p_probe;
  j["seed"] = r.seed;
  j["restarts_used"] = r.restarts_used;
  j["best_restart"] = r.best_restart;
  j["best_objective"] = r.best_objective;
  j["violation_margin"] = r.violation_margin;
  j["p_at_violation"] = r.p_at_violation;
  j["invariants_ok"] = r.invariants_ok;
  j["violation_found"] = r.violation_margin > 0.0;
  j["matrices"] = matrices_to_json({{"A", r.best_pair.a}, {"B", r.best_pair.b}})["matrices"];
  return j;
}

}  // namespace schatten
