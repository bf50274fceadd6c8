// Acceptance runner: one PASS/FAIL line per criterion, each at its pinned
// tolerance. `--criterion ID` restricts the run to a single line.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "oracle.hpp"
#include "schatten/cli.hpp"
#include "schatten/generators.hpp"
#include "schatten/inequalities.hpp"
#include "schatten/integral_rep.hpp"
#include "schatten/majorization.hpp"

using namespace schatten;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_s;  ///< runtime limit, 0 when none is pinned
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

json run_doc(cli::RunConfig cfg, int* exit_code = nullptr) {
  const auto r = cli::run(cfg);
  if (exit_code) *exit_code = r.exit_code;
  if (r.exit_code == cli::kConfigError) throw std::runtime_error(r.diagnostics);
  return json::parse(r.document);
}

cli::RunConfig cmd(cli::Command c) {
  cli::RunConfig cfg;
  cfg.command = c;
  cfg.format = cli::OutputFormat::Doc;
  return cfg;
}

double point(const json& doc, double p) {
  for (const auto& pt : doc["points"])
    if (std::abs(pt["p"].get<double>() - p) < 1e-12) return pt["gap"].get<double>();
  throw std::runtime_error("grid lacks p=" + fmt("%g", p));
}

// ---------------------------------------------------------------- 1, 2

Outcome first_fixture() {
  auto cfg = cmd(cli::Command::Repro);
  cfg.repro_name = "figure1";
  const auto doc = run_doc(cfg);

  auto sweep = cmd(cli::Command::Sweep);
  sweep.fixture = "ce1";
  sweep.p_grid = "4:4:1";
  const double g4 = point(run_doc(sweep), 4.0);

  const double g1 = point(doc, 1.0), g2 = point(doc, 2.0), g3 = point(doc, 3.0);
  const double g15 = point(doc, 1.5), g25 = point(doc, 2.5);
  const bool ok = std::abs(g1) <= 1e-7 && std::abs(g2) <= 1e-7 && std::abs(g3) <= 1e-7 && g15 > 0.0 && g25 < 0.0 &&
                  std::abs(g4 - 4.0) <= 1e-6;
  std::ostringstream d;
  d << "gap(1)=" << fmt("%.2e", g1) << " gap(2)=" << fmt("%.2e", g2) << " gap(3)=" << fmt("%.2e", g3)
    << " gap(1.5)=" << fmt("%.6g", g15) << " gap(2.5)=" << fmt("%.6g", g25) << " gap(4)=" << fmt("%.12g", g4);
  return {ok, d.str()};
}

Outcome second_fixture() {
  auto cfg = cmd(cli::Command::Repro);
  cfg.repro_name = "figure2";
  const auto up = run_doc(cfg);
  cfg.repro_name = "figure3";
  const auto al = run_doc(cfg);

  double worst_low = INFINITY, most_negative = 0.0, most_positive = 0.0;
  for (const auto& pt : up["points"]) {
    const double p = pt["p"], g = pt["gap"];
    if (p <= 2.0) worst_low = std::min(worst_low, g);
    if (p > 2.0 && p < 3.0) most_negative = std::min(most_negative, g);
  }
  bool negative_segment = false;
  for (const auto& s : up["segments"]) {
    const double mid = 0.5 * (s["p_lo"].get<double>() + s["p_hi"].get<double>());
    negative_segment |= s["sign"] == -1 && mid > 2.0 && mid < 3.0;
  }
  for (const auto& pt : al["points"]) {
    const double p = pt["p"], g = pt["gap"];
    if (p > 1.0 && p < 2.0) most_positive = std::max(most_positive, g);
  }
  const bool ok = worst_low >= -1e-8 && most_negative < 0.0 && negative_segment && most_positive > 0.0;
  std::ostringstream d;
  d << "updown min on [1,2]=" << fmt("%.2e", worst_low) << " updown min on (2,3)=" << fmt("%.6g", most_negative)
    << " pattern " << up["sign_pattern"].get<std::string>() << "; aligned max on (1,2)=" << fmt("%.6g", most_positive);
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 3

Outcome theorem_suites() {
  bool ok = true;
  std::ostringstream d;
  for (const char* fam : {"commuting", "anticommuting", "unitary", "ordered-psd", "contraction"}) {
    auto cfg = cmd(cli::Command::Verify);
    cfg.family = fam;
    cfg.trials = 1000;
    cfg.tol = 1e-8;
    int rc = 0;
    const auto doc = run_doc(cfg, &rc);
    const auto& suite = doc["suites"][0];
    const double worst = suite["worst_margin"].get<double>();
    bool fam_ok = rc == cli::kOk;
    // the unitary bound and the U=V equality carry absolute thresholds
    if (std::string(fam) == "unitary") fam_ok &= worst >= -1e-10;
    ok &= fam_ok;
    d << fam << " " << suite["checks"].get<long>() << " checks/" << suite["violations"].get<long>()
      << " violations (worst " << fmt("%.1e", worst) << "); ";
  }
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 4

using Vec = std::vector<double>;

double best_subset_sum(const Vec& v, std::size_t k) {
  double best = -1e300;
  for (unsigned mask = 0; mask < (1u << v.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (mask & (1u << i)) s += v[i];
    best = std::max(best, s);
  }
  return best;
}

bool brute_weak(const Vec& a, const Vec& b) {
  for (std::size_t k = 1; k <= a.size(); ++k)
    if (best_subset_sum(a, k) > best_subset_sum(b, k)) return false;
  return true;
}

Vec averaged_down(oracle::Rng& rng, const Vec& b) {
  Vec a(b.size(), 0.0);
  double left = 1.0;
  for (int r = 0; r < 3; ++r) {
    const double w = r == 2 ? left : left * rng.uniform();
    Vec perm = b;
    std::shuffle(perm.begin(), perm.end(), rng.engine);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += w * perm[i];
    left -= w;
  }
  return a;
}

Vec desc(Vec v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

Outcome majorization_suites() {
  constexpr int kInstances = 10000;
  constexpr double tol = 1e-8;
  oracle::Rng rng(2024);
  long fan_bad = 0, gn_bad = 0, power_bad = 0, product_bad = 0, log_bad = 0, oracle_mismatch = 0;
  for (int i = 0; i < kInstances; ++i) {
    const int n = rng.integer(1, 8);

    fan_bad += !fan_check(rng.hermitian(n), rng.hermitian(n), tol).holds;
    gn_bad += !gelfand_naimark_check(rng.complex(n), rng.complex(n), tol).holds;

    const Vec b = rng.vec(n, 0.0, 3.0);
    Vec a = averaged_down(rng, b);
    const double shrink = rng.uniform(0.5, 1.0);
    for (auto& x : a) x *= shrink;
    const double s = rng.uniform(1.0, 4.0);
    power_bad += !power_lemma_check(a, b, s, tol);

    const Vec y = desc(rng.vec(n, 0.0, 3.0));
    const Vec bb = desc(rng.vec(n, 0.0, 3.0));
    product_bad += !product_majorization_check(desc(averaged_down(rng, y)), y, desc(averaged_down(rng, bb)), bb, tol);

    const Vec pos = rng.vec(n, 0.1, 5.0);
    Vec perm = pos;
    std::shuffle(perm.begin(), perm.end(), rng.engine);
    log_bad += !log_equality_permutation_check(pos, perm, tol);

    // dyadic entries keep every partial sum exact for the brute-force oracle
    Vec ga(static_cast<std::size_t>(n)), gb(static_cast<std::size_t>(n));
    for (auto& x : gb) x = rng.integer(-24, 40) / 8.0;
    ga = gb;
    std::shuffle(ga.begin(), ga.end(), rng.engine);
    ga[static_cast<std::size_t>(rng.integer(0, n - 1))] += rng.integer(-2, 2) / 8.0;
    if (i % 2)
      for (auto& x : ga) x = rng.integer(-24, 40) / 8.0;
    oracle_mismatch += majorization_relation(ga, gb, MajorizationKind::Weak, tol).holds != brute_weak(ga, gb);
  }
  const bool ok = fan_bad + gn_bad + power_bad + product_bad + log_bad + oracle_mismatch == 0;
  std::ostringstream d;
  d << kInstances << " instances each, n<=8: violations fan=" << fan_bad << " gelfand-naimark=" << gn_bad
    << " power=" << power_bad << " product=" << product_bad << " log-equality=" << log_bad
    << "; brute-force oracle mismatches=" << oracle_mismatch;
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 5

double open_unit_exponent(oracle::Rng& rng) {
  for (;;)
    if (const double p = rng.uniform(1.0, 2.0); p > 1.0) return p;
}

Outcome integral_representation() {
  oracle::Rng rng(77);
  double scalar_worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double c = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
    const double p = open_unit_exponent(rng);
    scalar_worst = std::max(scalar_worst, std::abs(power_via_integral_scalar(c, p) - std::pow(c, p)) / std::pow(c, p));
  }

  double matrix_worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = rng.integer(1, 8);
    const auto c = rng.psd(n);
    const double p = open_unit_exponent(rng);
    const auto want = oracle::spectral(c, [p](double x) { return std::pow(x, p); });
    matrix_worst = std::max(matrix_worst, (power_via_integral(c, p) - want).norm() / want.norm());
  }

  double gap_worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto pr = random_pair({FamilyTag::OrderedPsd, static_cast<int>(2 + i % 3)}, {77, i});
    for (double p : {1.25, 1.5, 1.75}) {
      const double direct = oracle::gap(pr.a, pr.b, p, true);
      gap_worst = std::max(gap_worst, std::abs(integral_gap(pr.a, pr.b, p, Arrangement::Aligned) - direct) /
                                          std::abs(direct));
    }
  }
  const bool ok = scalar_worst <= 1e-8 && matrix_worst <= 1e-6 && gap_worst <= 1e-5;
  std::ostringstream d;
  d << "scalar rel err " << fmt("%.1e", scalar_worst) << " (limit 1e-8), matrix rel err " << fmt("%.1e", matrix_worst)
    << " (1e-6), gap rel err " << fmt("%.1e", gap_worst) << " (1e-5)";
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 6

double log_uniform_t(Sampler& s) { return std::exp(s.uniform(std::log(1e-2), std::log(1e2))); }

Outcome resolvent_psd() {
  int psd = 0;
  double lowest = INFINITY;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto pr = random_pair({FamilyTag::OrderedPsd, static_cast<int>(2 + i % 3)}, {601, i});
    Sampler s({602, i});
    const auto r = ordered_resolvent_integrand(pr.a, pr.b, log_uniform_t(s));
    psd += r.psd;
    lowest = std::min(lowest, oracle::eigenvalues_desc(r.matrix).back());
  }
  return {psd == 1000, std::to_string(psd) + "/1000 samples PSD; lowest eigenvalue " + fmt("%.3g", lowest)};
}

Outcome resolvent_trace() {
  int ok = 0;
  double lowest = INFINITY;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto pr = random_pair({FamilyTag::OrderedPsd, static_cast<int>(2 + i % 3)}, {601, i});
    Sampler s({602, i});
    const auto r = ordered_resolvent_integrand(pr.a, pr.b, log_uniform_t(s));
    ok += r.trace >= -1e-8;
    lowest = std::min(lowest, r.trace);
  }
  return {ok == 1000, std::to_string(ok) + "/1000 samples with trace >= -1e-8; lowest trace " + fmt("%.3g", lowest)};
}

Outcome updown_trace() {
  int ok = 0;
  double highest = -INFINITY;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto pr = random_pair({FamilyTag::Contraction, static_cast<int>(2 + i % 3)}, {611, i});
    Sampler s({612, i});
    const double tr = updown_resolvent_trace(pr.a, pr.b, log_uniform_t(s));
    ok += tr <= 1e-8;
    highest = std::max(highest, tr);
  }
  return {ok == 1000, std::to_string(ok) + "/1000 samples with trace <= 1e-8; highest " + fmt("%.3g", highest)};
}

Outcome neumann_bound() {
  int ok = 0;
  double worst = -INFINITY;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto pr = random_pair({FamilyTag::Contraction, static_cast<int>(2 + i % 3)}, {621, i});
    Sampler s({622, i});
    const double t = log_uniform_t(s);
    const int m = static_cast<int>(i % 6);
    const auto term = neumann_trace_term(pr.a, pr.b, t, m);
    const double excess = (term.value - term.bound) / (1.0 + term.bound);
    ok += excess <= 1e-8;
    worst = std::max(worst, excess);
  }
  return {ok == 1000, std::to_string(ok) + "/1000 (pair, t, m<=5) samples with value <= bound; worst relative excess " +
                          fmt("%.3g", worst)};
}

// ---------------------------------------------------------------- 7

Outcome search() {
  auto cfg = cmd(cli::Command::Search);
  cfg.conjecture = 1;
  cfg.family = "general-hermitian";
  cfg.dim = 2;
  cfg.restarts = 500;
  cfg.seed = 11;
  int rc = 0;
  const auto found = run_doc(cfg, &rc)["report"];
  cfg.family = "ordered-psd";
  int rc_neg = 0;
  const auto none = run_doc(cfg, &rc_neg)["report"];
  const double margin = found["violation_margin"];
  const bool ok = rc == cli::kOk && margin > 1e-4 && rc_neg == cli::kNoViolation;
  std::ostringstream d;
  d << "general-hermitian margin " << fmt("%.6g", margin) << " at p=" << found["p_at_violation"].get<double>()
    << " (exit " << rc << "); ordered-psd margin " << none["violation_margin"].get<double>() << " (exit " << rc_neg
    << ")";
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 8

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& exe) {
  const auto dir = std::filesystem::temp_directory_path() / ("schatten_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::vector<std::string> runs = {
      "verify --trials 50 --seed 5",
      "verify --family general-complex --trials 50 --seed 5",
      "sweep --fixture ce2 --arrangement updown --p-grid 1:3:0.1",
      "sweep --fixture ce1 --format doc --svg",
      "search --restarts 40 --seed 9",
      "search --family ordered-psd --restarts 20 --seed 9",
      "repro ce1",
      "repro ce2 --format doc",
      "repro figure1 --svg",
      "repro figure2 --format doc",
      "repro figure3",
  };
  int identical = 0;
  std::string first_diff;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::string outs[2], svgs[2];
    int codes[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / ("run" + std::to_string(k) + "_" + std::to_string(rep));
      const std::string line = "\"" + exe + "\" " + runs[k] + " --out \"" + out.string() + "\" 2>/dev/null";
      codes[rep] = std::system(line.c_str());
      outs[rep] = slurp(out);
      svgs[rep] = std::filesystem::exists(out.string() + ".svg") ? slurp(out.string() + ".svg") : "";
    }
    const bool same = codes[0] == codes[1] && !outs[0].empty() && outs[0] == outs[1] && svgs[0] == svgs[1];
    identical += same;
    if (!same && first_diff.empty()) first_diff = runs[k];
  }
  std::filesystem::remove_all(dir);
  std::string d = std::to_string(identical) + "/" + std::to_string(runs.size()) + " command lines byte-identical";
  if (!first_diff.empty()) d += "; first difference: " + first_diff;
  return {identical == static_cast<int>(runs.size()), d};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string only;
  std::string exe = SCHATTEN_CLI_PATH;
  app.add_option("--criterion", only, "run a single criterion by id");
  app.add_option("--cli", exe, "path to the command-line tool");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {"1", "first fixture curve", 1.0, first_fixture},
      {"2", "second fixture sign patterns", 1.0, second_fixture},
      {"3", "theorem-family suites", 60.0, theorem_suites},
      {"4", "majorization suites", 0.0, majorization_suites},
      {"5", "integral representation", 120.0, integral_representation},
      {"6a", "ordered resolvent integrand is PSD", 0.0, resolvent_psd},
      {"6b", "ordered resolvent integrand trace is nonnegative", 0.0, resolvent_trace},
      {"6c", "up-down resolvent trace is nonpositive", 0.0, updown_trace},
      {"6d", "neumann term below its bound", 0.0, neumann_bound},
      {"7", "violation search", 60.0, search},
      {"8", "determinism", 0.0, [&exe] { return determinism(exe); }},
  };

  bool all = true, matched = false;
  for (const auto& c : criteria) {
    if (!only.empty() && only != c.id) continue;
    matched = true;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) {
      o.pass = false;
      o.detail += "; over the " + fmt("%g", c.budget_s) + " s budget";
    }
    all &= o.pass;
    std::printf("%s [%s] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id.c_str(), c.title.c_str(), o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  if (!matched) {
    std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
    return 2;
  }
  return all ? 0 : 1;
}
