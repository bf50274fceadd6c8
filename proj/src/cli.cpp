#include "schatten/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>

#include <nlohmann/json.hpp>

#include "schatten/generators.hpp"
#include "schatten/inequalities.hpp"
#include "schatten/majorization.hpp"
#include "schatten/matrix_io.hpp"
#include "schatten/search.hpp"

namespace schatten::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kDefaultGrid = "1:4:0.05";
constexpr double kDefaultProbes[] = {1.25, 1.5, 1.75, 2.25, 2.5, 2.75};
constexpr std::size_t kRecordedViolations = 5;

struct ConfigError {
  std::string message;
};

[[noreturn]] void config_error(std::string message) { throw ConfigError{std::move(message)}; }

RunResult failure(std::string message) {
  RunResult r;
  r.exit_code = kConfigError;
  r.diagnostics = std::move(message);
  return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(std::string_view command, const RunConfig& config) {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["seed"] = config.seed;
  return j;
}

std::vector<double> grid_from(const RunConfig& config) {
  return parse_p_grid(config.p_grid.value_or(std::string(kDefaultGrid)));
}

void require_positive(int value, const char* what) {
  if (value < 1) config_error(std::string(what) + " must be >= 1");
}

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) config_error("--tol must be a positive number");
}

// ---------------------------------------------------------------- verify

struct Tally {
  std::string name;
  std::string family;
  std::uint64_t stream_index = 0;
  long checks = 0;
  long violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  json worst_at;
  json recorded = json::array();

  // margin >= 0 means the expectation holds outright; a violation needs it
  // to fall below -slack.
  void record(double margin, double slack, const json& where) {
    ++checks;
    if (margin < worst_margin) {
      worst_margin = margin;
      worst_at = where;
    }
    if (margin < -slack || std::isnan(margin)) {
      ++violations;
      if (recorded.size() < kRecordedViolations) {
        json v = where;
        v["margin"] = margin;
        recorded.push_back(v);
      }
    }
  }

  // sign +1: value >= 0 expected; -1: value <= 0; 0: value == 0.
  void expect(int sign, double value, double slack, const json& where) {
    record(sign == 0 ? -std::abs(value) : sign * value, slack, where);
  }

  void expect_true(bool ok, const json& where) { record(ok ? 0.0 : -1.0, 0.0, where); }

  json to_json(int trials, const std::vector<int>& dims) const {
    json j;
    j["suite"] = name;
    j["family"] = family;
    j["trials"] = trials;
    j["dims"] = dims;
    j["stream"] = stream_index;
    j["checks"] = checks;
    j["violations"] = violations;
    j["worst_margin"] = checks ? json(worst_margin) : json(nullptr);
    j["worst_at"] = worst_at;
    j["recorded_violations"] = recorded;
    j["passed"] = violations == 0;
    return j;
  }
};

int below_above(double p, int below, int above) { return p < 2.0 ? below : p > 2.0 ? above : 0; }

json where(int trial, int dim, double p) { return json{{"trial", trial}, {"dim", dim}, {"p", p}}; }
json where(int trial, int dim) { return json{{"trial", trial}, {"dim", dim}}; }

struct VerifyContext {
  const RunConfig& config;
  std::vector<double> grid;
  std::vector<int> dims;
  double tol;
};

using PairVisitor = std::function<void(const MatrixPair&, int trial, int dim)>;

void for_each_pair(const VerifyContext& ctx, FamilyTag tag, std::uint64_t stream_index, const PairVisitor& visit) {
  const RandomStream base{ctx.config.seed, stream_index};
  for (int dim : ctx.dims) {
    for (int t = 0; t < ctx.config.trials; ++t) {
      const auto sub = static_cast<std::uint64_t>(dim) * 1000003ULL + static_cast<std::uint64_t>(t);
      visit(random_pair({tag, dim}, base.child(sub)), t, dim);
    }
  }
}

// Expected gap signs for one arrangement: `below` on p < 2, `above` on p > 2,
// zero at p = 2; grid points beyond `p_max` are skipped.
void gap_sign_suite(const VerifyContext& ctx, Tally& tally, FamilyTag tag, const std::vector<Arrangement>& arrs,
                    const std::vector<std::pair<int, int>>& signs, double p_max) {
  for_each_pair(ctx, tag, tally.stream_index, [&](const MatrixPair& pr, int t, int dim) {
    const auto s = PairSpectra::compute(pr.a, pr.b);
    for (double p : ctx.grid) {
      if (p > p_max) continue;
      const double slack = ctx.tol * (1.0 + s.pair_norm_sum(p));
      for (std::size_t k = 0; k < arrs.size(); ++k) {
        auto w = where(t, dim, p);
        w["arrangement"] = to_string(arrs[k]);
        tally.expect(below_above(p, signs[k].first, signs[k].second), s.gap(p, arrs[k]), slack, w);
      }
    }
  });
}

std::vector<double> random_vector(Sampler& s, int n, double lo, double hi) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (auto& x : v) x = s.uniform(lo, hi);
  return v;
}

// Convex combination of shuffled copies: the result is majorized by b.
std::vector<double> averaged_down(Sampler& s, const std::vector<double>& b) {
  std::vector<double> a(b.size(), 0.0);
  std::vector<double> perm = b;
  double left = 1.0;
  for (int r = 0; r < 3; ++r) {
    const double w = r == 2 ? left : left * s.uniform();
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[static_cast<std::size_t>(s.uniform() * static_cast<double>(i))]);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += w * perm[i];
    left -= w;
  }
  return a;
}

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

using VectorVisitor = std::function<void(Sampler&, int trial, int n)>;

void for_each_vector_trial(const VerifyContext& ctx, std::uint64_t stream_index, const VectorVisitor& visit) {
  const RandomStream base{ctx.config.seed, stream_index};
  for (int t = 0; t < ctx.config.trials; ++t) {
    Sampler s(base.child(static_cast<std::uint64_t>(t)));
    const int n = 1 + static_cast<int>(s.uniform() * 8.0);
    visit(s, t, n);
  }
}

Tally run_suite(const VerifyContext& ctx, const std::string& name, std::uint64_t stream_index,
                std::optional<int> conjecture, std::optional<FamilyTag> conj_family) {
  Tally tally;
  tally.name = name;
  tally.stream_index = stream_index;
  const double tol = ctx.tol;

  if (name == "commuting") {
    tally.family = "commuting";
    gap_sign_suite(ctx, tally, FamilyTag::Commuting, {Arrangement::Aligned, Arrangement::UpDown}, {{-1, 1}, {1, -1}},
                   std::numeric_limits<double>::infinity());
  } else if (name == "anticommuting") {
    tally.family = "anticommuting";
    gap_sign_suite(ctx, tally, FamilyTag::Anticommuting, {Arrangement::Aligned}, {{-1, 1}},
                   std::numeric_limits<double>::infinity());
    for_each_pair(ctx, FamilyTag::Anticommuting, stream_index, [&](const MatrixPair& pr, int t, int dim) {
      for (double p : ctx.grid) {
        const double plus = schatten_power(pr.a + pr.b, p);
        const double minus = schatten_power(pr.a - pr.b, p);
        auto w = where(t, dim, p);
        w["check"] = "plus-minus-identity";
        tally.expect(0, plus - minus, tol * (1.0 + std::max(plus, minus)), w);
      }
    });
  } else if (name == "unitary") {
    tally.family = "unitary";
    for_each_pair(ctx, FamilyTag::Unitary, stream_index, [&](const MatrixPair& pr, int t, int dim) {
      for (double p : ctx.grid) {
        const double bound = std::pow(2.0, p) * dim;
        auto w = where(t, dim, p);
        w["check"] = "bound";
        tally.expect(below_above(p, 1, -1), unitary_bound_gap(pr.a, pr.b, p), tol * (1.0 + bound), w);
        w["check"] = "equality-at-u-equals-v";
        tally.expect(0, unitary_bound_gap(pr.a, pr.a, p), 1e-10, w);
        w["check"] = "angle-identity";
        tally.expect_true(unitary_angle_identity_check(pr.a, pr.b, p, tol), w);
      }
    });
  } else if (name == "ordered-psd") {
    tally.family = "ordered-psd";
    gap_sign_suite(ctx, tally, FamilyTag::OrderedPsd, {Arrangement::Aligned}, {{-1, 1}}, 3.0);
  } else if (name == "contraction") {
    tally.family = "contraction";
    gap_sign_suite(ctx, tally, FamilyTag::Contraction, {Arrangement::UpDown}, {{1, -1}}, 3.0);
  } else if (name == "hanner") {
    tally.family = "hanner-positive";
    for_each_pair(ctx, FamilyTag::HannerPositive, stream_index, [&](const MatrixPair& pr, int t, int dim) {
      for (double p : ctx.grid) {
        const double slack = tol * (1.0 + pair_norm_sum(pr.a, pr.b, p));
        tally.expect(below_above(p, 1, -1), hanner_gap(pr.a, pr.b, p), slack, where(t, dim, p));
      }
    });
  } else if (name == "clarkson") {
    tally.family = "general-complex";
    for_each_pair(ctx, FamilyTag::GeneralComplex, stream_index, [&](const MatrixPair& pr, int t, int dim) {
      for (double p : ctx.grid) tally.expect_true(clarkson_check(pr.a, pr.b, p, tol), where(t, dim, p));
    });
  } else if (name == "fan") {
    tally.family = "general-hermitian";
    for_each_pair(ctx, FamilyTag::GeneralHermitian, stream_index, [&](const MatrixPair& pr, int t, int dim) {
      const auto v = fan_check(pr.a, pr.b, tol);
      tally.record(v.margin, v.tolerance, where(t, dim));
    });
  } else if (name == "gelfand-naimark") {
    tally.family = "general-complex";
    for_each_pair(ctx, FamilyTag::GeneralComplex, stream_index, [&](const MatrixPair& pr, int t, int dim) {
      const auto v = gelfand_naimark_check(pr.a, pr.b, tol);
      tally.record(v.margin, v.tolerance, where(t, dim));
    });
  } else if (name == "power-majorization") {
    tally.family = "vectors";
    for_each_vector_trial(ctx, stream_index, [&](Sampler& s, int t, int n) {
      const auto b = random_vector(s, n, 0.0, 3.0);
      const auto a = averaged_down(s, b);
      for (double e : {1.5, 2.0, 3.7}) tally.expect_true(power_lemma_check(a, b, e, tol), json{{"trial", t}, {"s", e}});
    });
  } else if (name == "product-majorization") {
    tally.family = "vectors";
    for_each_vector_trial(ctx, stream_index, [&](Sampler& s, int t, int n) {
      const auto y = sorted_desc(random_vector(s, n, 0.0, 3.0));
      const auto b = sorted_desc(random_vector(s, n, 0.0, 3.0));
      const auto x = sorted_desc(averaged_down(s, y));
      const auto a = sorted_desc(averaged_down(s, b));
      tally.expect_true(product_majorization_check(x, y, a, b, tol), json{{"trial", t}});
    });
  } else if (name == "log-equality") {
    tally.family = "vectors";
    for_each_vector_trial(ctx, stream_index, [&](Sampler& s, int t, int n) {
      const auto a = random_vector(s, n, 0.1, 5.0);
      auto b = a;
      for (std::size_t i = b.size(); i > 1; --i)
        std::swap(b[i - 1], b[static_cast<std::size_t>(s.uniform() * static_cast<double>(i))]);
      tally.expect_true(log_equality_permutation_check(a, b, tol), json{{"trial", t}});
    });
  } else if (name.rfind("conjecture-", 0) == 0) {
    const int c = *conjecture;
    const FamilyTag tag = *conj_family;
    tally.family = std::string(to_string(tag));
    const Arrangement arr = conjecture_arrangement(c);
    for_each_pair(ctx, tag, stream_index, [&](const MatrixPair& pr, int t, int dim) {
      const auto s = PairSpectra::compute(pr.a, pr.b);
      for (double p : ctx.grid) {
        const double slack = tol * (1.0 + s.pair_norm_sum(p));
        tally.expect(conjecture_sign(c, p), s.gap(p, arr), slack, where(t, dim, p));
      }
    });
  }
  return tally;
}

struct SuitePlan {
  std::string name;
  std::optional<int> conjecture;
  std::optional<FamilyTag> family;
};

std::vector<SuitePlan> plan_suites(const RunConfig& config) {
  std::vector<SuitePlan> plan;
  if (!config.family) {
    for (const char* n : {"commuting", "anticommuting", "unitary", "ordered-psd", "contraction", "hanner", "clarkson",
                          "fan", "gelfand-naimark", "power-majorization", "product-majorization", "log-equality"})
      plan.push_back({n, {}, {}});
    if (config.conjecture) config_error("--conjecture needs --family");
    return plan;
  }
  const FamilyTag tag = parse_family(*config.family);
  switch (tag) {
    case FamilyTag::Commuting: plan.push_back({"commuting", {}, {}}); break;
    case FamilyTag::Anticommuting: plan.push_back({"anticommuting", {}, {}}); break;
    case FamilyTag::Unitary: plan.push_back({"unitary", {}, {}}); break;
    case FamilyTag::OrderedPsd: plan.push_back({"ordered-psd", {}, {}}); break;
    case FamilyTag::Contraction: plan.push_back({"contraction", {}, {}}); break;
    case FamilyTag::HannerPositive: plan.push_back({"hanner", {}, {}}); break;
    case FamilyTag::GeneralHermitian: plan.push_back({"fan", {}, {}}); break;
    case FamilyTag::GeneralComplex:
      plan.push_back({"clarkson", {}, {}});
      plan.push_back({"gelfand-naimark", {}, {}});
      break;
  }
  const bool general = tag == FamilyTag::GeneralHermitian || tag == FamilyTag::GeneralComplex;
  std::vector<int> conjectures;
  if (config.conjecture)
    conjectures.push_back(*config.conjecture);
  else if (general)
    conjectures = {1, 2};
  for (int c : conjectures) plan.push_back({"conjecture-" + std::to_string(c), c, tag});
  return plan;
}

std::vector<double> with_landmarks(std::vector<double> grid) {
  const double lo = grid.front();
  const double hi = grid.back();
  for (double p : {1.0, 2.0, 3.0})
    if (p >= lo && p <= hi && std::find(grid.begin(), grid.end(), p) == grid.end()) grid.push_back(p);
  std::sort(grid.begin(), grid.end());
  return grid;
}

// ---------------------------------------------------------------- curves

struct CurveSpec {
  MatrixPair pair;
  std::string pair_id;
  Arrangement arr = Arrangement::Aligned;
  std::vector<double> grid;
  std::string grid_spec;
};

json curve_document(std::string_view command, const RunConfig& config, const CurveSpec& spec, const GapCurve& curve) {
  json j = header(command, config);
  j["pair"] = spec.pair_id;
  j["arrangement"] = to_string(spec.arr);
  j["p_grid"] = spec.grid_spec;
  j["matrices"] = matrices_to_json({{"A", spec.pair.a}, {"B", spec.pair.b}})["matrices"];
  json points = json::array();
  for (std::size_t i = 0; i < curve.p_grid.size(); ++i) points.push_back({{"p", curve.p_grid[i]}, {"gap", curve.gaps[i]}});
  j["points"] = points;

  const auto pair = spec.pair;
  const auto arr = spec.arr;
  const auto signs =
      classify_signs(curve, config.tol, [&](double p) { return rearrangement_gap(pair.a, pair.b, p, arr).gap; });
  j["sign_pattern"] = signs.signature();
  json segs = json::array();
  for (const auto& s : signs.segments) segs.push_back({{"p_lo", s.p_lo}, {"p_hi", s.p_hi}, {"sign", s.sign}});
  j["segments"] = segs;
  j["crossings"] = signs.crossings;
  return j;
}

RunResult emit_curve(std::string_view command, const RunConfig& config, const CurveSpec& spec) {
  const auto curve = gap_curve(spec.pair.a, spec.pair.b, spec.grid, spec.arr, spec.pair_id);
  RunResult r;
  const auto format = config.format.value_or(OutputFormat::Csv);
  r.document = format == OutputFormat::Csv ? format_csv(curve.p_grid, curve.gaps)
                                           : dump(curve_document(command, config, spec, curve));
  if (config.svg)
    r.svg = render_svg(curve.p_grid, curve.gaps, spec.pair_id + " " + to_string(spec.arr));
  return r;
}

void require_svg_target(const RunConfig& config) {
  if (config.svg && !config.out) config_error("--svg needs --out");
}

std::string number(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string format_csv(const std::vector<double>& p, const std::vector<double>& gap) {
  std::string out = "p,gap\n";
  for (std::size_t i = 0; i < p.size(); ++i) out += number(p[i], "%.12g") + "," + number(gap[i], "%.12g") + "\n";
  return out;
}

std::string render_svg(const std::vector<double>& p, const std::vector<double>& gap, std::string_view title) {
  constexpr double W = 640, H = 400, L = 70, R = 20, T = 40, B = 50;
  const double x0 = p.empty() ? 0.0 : p.front();
  const double x1 = p.empty() ? 1.0 : p.back();
  double y0 = 0.0, y1 = 0.0;
  for (double g : gap) {
    y0 = std::min(y0, g);
    y1 = std::max(y1, g);
  }
  if (y1 - y0 <= 0.0) y1 = y0 + 1.0;
  const double xs = x1 > x0 ? (W - L - R) / (x1 - x0) : 1.0;
  const double ys = (H - T - B) / (y1 - y0);
  auto px = [&](double x) { return number(L + (x - x0) * xs, "%.2f"); };
  auto py = [&](double y) { return number(H - B - (y - y0) * ys, "%.2f"); };

  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  s += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">" +
       std::string(title) + "</text>\n";
  s += "<line x1=\"" + px(x0) + "\" y1=\"" + py(0.0) + "\" x2=\"" + px(x1) + "\" y2=\"" + py(0.0) +
       "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  s += "<rect x=\"70\" y=\"40\" width=\"550\" height=\"310\" fill=\"none\" stroke=\"black\"/>\n";
  s += "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + px(p[i]) + "," + py(gap[i]);
  s += "\"/>\n";
  const auto label = [&](const std::string& x, const std::string& y, const std::string& text, const char* anchor) {
    s += "<text x=\"" + x + "\" y=\"" + y + "\" text-anchor=\"" + anchor +
         "\" font-family=\"sans-serif\" font-size=\"11\">" + text + "</text>\n";
  };
  label(px(x0), number(H - B + 16, "%.2f"), number(x0, "%.6g"), "middle");
  label(px(x1), number(H - B + 16, "%.2f"), number(x1, "%.6g"), "middle");
  label(number(L - 6, "%.2f"), py(y0), number(y0, "%.4g"), "end");
  label(number(L - 6, "%.2f"), py(y1), number(y1, "%.4g"), "end");
  label("345", number(H - 12, "%.2f"), "p", "middle");
  s += "</svg>\n";
  return s;
}

RunResult run_verify(const RunConfig& config) {
  require_positive(config.trials, "--trials");
  require_tol(config.tol);
  if (config.format == OutputFormat::Csv) config_error("verify writes a report document only");
  if (config.svg) config_error("--svg applies to sweep and repro");
  VerifyContext ctx{config, with_landmarks(grid_from(config)), {2, 4}, config.tol};
  if (config.dim) {
    if (*config.dim < 1 || *config.dim > 64) config_error("--dim must lie in [1, 64]");
    ctx.dims = {*config.dim};
  }
  if (config.conjecture && *config.conjecture != 1 && *config.conjecture != 2)
    config_error("--conjecture must be 1 or 2");
  const auto plan = plan_suites(config);
  if (config.family == "anticommuting" || !config.family)
    for (int d : ctx.dims)
      if (d % 2) config_error("anticommuting pairs need an even --dim");

  json doc = header("verify", config);
  doc["tol"] = config.tol;
  doc["trials"] = config.trials;
  doc["p_grid"] = config.p_grid.value_or(std::string(kDefaultGrid));
  doc["dims"] = ctx.dims;
  json suites = json::array();
  bool all_passed = true;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const auto tally = run_suite(ctx, plan[k].name, k, plan[k].conjecture, plan[k].family);
    all_passed &= tally.violations == 0;
    suites.push_back(tally.to_json(config.trials, ctx.dims));
  }
  doc["suites"] = suites;
  doc["passed"] = all_passed;

  RunResult r;
  r.exit_code = all_passed ? kOk : kSuiteFailed;
  r.document = dump(doc);
  if (!all_passed) r.diagnostics = "one or more suites recorded violations";
  return r;
}

RunResult run_sweep(const RunConfig& config) {
  require_tol(config.tol);
  require_svg_target(config);
  if (config.matrices.has_value() == config.fixture.has_value()) config_error("sweep needs exactly one of --matrices, --fixture");

  CurveSpec spec;
  if (config.matrices) {
    const auto ms = read_matrix_file(*config.matrices);
    if (ms.size() < 2) throw Error(ErrorCode::ParseError, "matrix file must hold at least two matrices");
    if (ms[0].value.rows() != ms[1].value.rows()) throw Error(ErrorCode::DimensionMismatch, "matrices differ in size");
    spec.pair = {ms[0].value, ms[1].value};
    spec.pair_id = ms[0].name + "," + ms[1].name;
  } else {
    spec.pair = fixture_pair(*config.fixture);
    spec.pair_id = *config.fixture;
  }
  spec.arr = parse_arrangement(config.arrangement.value_or("aligned"));
  spec.grid_spec = config.p_grid.value_or(std::string(kDefaultGrid));
  spec.grid = parse_p_grid(spec.grid_spec);
  return emit_curve("sweep", config, spec);
}

RunResult run_search(const RunConfig& config) {
  require_positive(config.restarts, "--restarts");
  require_tol(config.tol);
  if (config.format == OutputFormat::Csv) config_error("search writes a report document only");
  if (config.svg) config_error("--svg applies to sweep and repro");
  const int conjecture = config.conjecture.value_or(1);
  if (conjecture != 1 && conjecture != 2) config_error("--conjecture must be 1 or 2");
  const PairFamily family{parse_family(config.family.value_or("general-hermitian")), config.dim.value_or(2)};

  std::vector<double> probes(std::begin(kDefaultProbes), std::end(kDefaultProbes));
  if (config.p_grid) {
    probes.clear();
    for (double p : parse_p_grid(*config.p_grid))
      if (p != 2.0) probes.push_back(p);
  }

  SearchOptions opts;
  opts.tol = config.tol;
  opts.threads = config.threads;
  const auto report = violation_search(conjecture, family, probes, config.restarts, {config.seed, 0}, opts);

  json doc = header("search", config);
  doc["tol"] = config.tol;
  doc["report"] = search_report_to_json(report);
  RunResult r;
  const bool found = report.violation_margin > 0.0;
  r.exit_code = found ? kOk : kNoViolation;
  r.document = dump(doc);
  if (!found) r.diagnostics = "no violation found within the restart budget";
  return r;
}

RunResult run_repro(const RunConfig& config) {
  require_tol(config.tol);
  require_svg_target(config);
  CurveSpec spec;
  const auto& name = config.repro_name;
  if (name == "ce1") {
    spec = {fixture_pair("ce1"), "ce1", Arrangement::Aligned, {}, "1:10:0.05"};
  } else if (name == "ce2") {
    spec = {fixture_pair("ce2"), "ce2", Arrangement::UpDown, {}, "1:3:0.05"};
  } else if (name == "figure1") {
    spec = {fixture_pair("ce1"), "ce1", Arrangement::Aligned, {}, "1:3.1:0.02"};
  } else if (name == "figure2") {
    spec = {fixture_pair("ce2"), "ce2", Arrangement::UpDown, {}, "1:3:0.02"};
  } else if (name == "figure3") {
    spec = {fixture_pair("ce2"), "ce2", Arrangement::Aligned, {}, "1:3:0.02"};
  } else {
    throw Error(ErrorCode::UnknownFixture, "unknown reproduction target '" + name + "'");
  }
  if (config.p_grid) config_error("repro uses fixed grids; drop --p-grid");
  spec.grid = parse_p_grid(spec.grid_spec);
  auto r = emit_curve("repro", config, spec);
  return r;
}

RunResult run(const RunConfig& config) {
  try {
    switch (config.command) {
      case Command::Verify: return run_verify(config);
      case Command::Sweep: return run_sweep(config);
      case Command::Search: return run_search(config);
      case Command::Repro: return run_repro(config);
    }
  } catch (const ConfigError& e) {
    return failure(e.message);
  } catch (const Error& e) {
    return failure(e.what());
  }
  return failure("unknown command");
}

bool write_outputs(const RunConfig& config, const RunResult& result) {
  if (!config.out) {
    std::cout << result.document;
    return static_cast<bool>(std::cout);
  }
  std::ofstream doc(*config.out, std::ios::binary);
  doc << result.document;
  if (!doc) return false;
  if (!result.svg.empty()) {
    std::ofstream svg(*config.out + ".svg", std::ios::binary);
    svg << result.svg;
    if (!svg) return false;
  }
  return true;
}

}  // namespace schatten::cli
