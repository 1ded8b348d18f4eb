// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Budgets assume a single core.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "haudim/experiments.hpp"
#include "haudim/kernel_lab.hpp"
#include "haudim/potential_lab.hpp"
#include "haudim/process_sim.hpp"
#include "haudim/rng.hpp"
#include "haudim/scaling_theory.hpp"
#include "haudim/stats.hpp"
#include "haudim/subordinator.hpp"

using namespace haudim;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s -- %s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BatchSummary run_batch_level(const ProcessClass& proc, const TargetSet& target,
                             std::size_t trials, std::size_t n_steps, std::uint64_t seed) {
  BatchParams p;
  p.trials = trials;
  p.n_steps = n_steps;
  p.seed = seed;
  return summarize_batch(level_batch(proc, target, p));
}

void criterion_gamma_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  CounterRng rng(20240801);
  double max_gamma_diff = 0.0;
  double max_collision_diff = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const double d1 = 0.3 + 2.2 * rng.next_unit();
    const double d2 = 0.3 + 2.2 * rng.next_unit();
    const double a1l = 0.4 + 1.8 * rng.next_unit();
    const double a1g = 0.4 + 1.8 * rng.next_unit();
    const double a2l = 0.4 + 1.8 * rng.next_unit();
    const double a2g = 0.4 + 1.8 * rng.next_unit();
    const double s = rng.next_unit() * 1.5 * d1;

    const VolumeProfile vol(d1, d2);
    const PowerScale sc1(a1l, a1g);
    const ProcessClass p1(vol, sc1, ProcessKind::stable_jump);
    const ProcessClass p2(vol, PowerScale(a2l, a2g), ProcessKind::stable_jump);

    const double closed = gamma_closed_form(p1, s);
    const double numeric = gamma_numeric(vol, sc1, s, 1e-6);
    max_gamma_diff = std::max(max_gamma_diff, std::fabs(closed - numeric));

    const double amin = std::min(a1l, a2l);
    const double amax = std::max(a1l, a2l);
    const double formula = std::max((d1 - s) / amin + d1 / amax, 0.0);
    max_collision_diff =
        std::max(max_collision_diff, std::fabs(collision_gamma(p1, p2, s) - formula));
  }
  const double secs = elapsed_s(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "max|num-closed|=%.2e, max|coll-formula|=%.2e, %.1fs",
                max_gamma_diff, max_collision_diff, secs);
  report(1, "gamma-curve oracle (200 random configurations)",
         max_gamma_diff <= 1e-6 && max_collision_diff == 0.0 && secs < 5.0, buf);
}

void criterion_brownian_level() {
  const auto t0 = std::chrono::steady_clock::now();
  const BatchSummary s = run_batch_level(brownian_class(1.0), TargetSet::point(0.0), 20,
                                          10000000, 1001);
  const double secs = elapsed_s(t0);
  char buf[120];
  std::snprintf(buf, sizeof buf, "median=%.4f (want 0.5 +- 0.07), empty=%zu, %.0fs",
                s.median_slope, s.empty_count, secs);
  report(2, "Brownian level-set dimension",
         std::fabs(s.median_slope - 0.5) <= 0.07 && secs < 300.0, buf);
}

void criterion_stable_level() {
  const BatchSummary s = run_batch_level(stable_class(1.5, 1.0), TargetSet::point(0.0), 20,
                                          10000000, 1002);
  char buf[120];
  std::snprintf(buf, sizeof buf, "median=%.4f (want 1/3 +- 0.08), empty=%zu", s.median_slope,
                s.empty_count);
  report(3, "alpha=1.5 level-set dimension",
         std::fabs(s.median_slope - 1.0 / 3.0) <= 0.08, buf);
}

void criterion_empty_regime() {
  const BatchSummary s = run_batch_level(stable_class(0.8, 1.0), TargetSet::point(1.0), 100,
                                          1000000, 1003);
  char buf[120];
  std::snprintf(buf, sizeof buf, "empty verdicts %zu/100 (want >= 95)", s.empty_count);
  report(4, "polar regime (alpha=0.8) returns Empty", s.empty_count >= 95, buf);
}

void criterion_cantor_inverse() {
  const BatchSummary s = run_batch_level(brownian_class(1.0), TargetSet::cantor(1.0 / 3.0, 12),
                                          20, 10000000, 1004);
  const double predicted = 1.0 - (1.0 - std::log(2.0) / std::log(3.0)) / 2.0;
  char buf[140];
  std::snprintf(buf, sizeof buf, "median=%.4f (want %.4f +- 0.10)", s.median_slope, predicted);
  report(5, "inverse image of Cantor(1/3)",
         std::fabs(s.median_slope - predicted) <= 0.10, buf);
}

void criterion_collision() {
  BatchParams p;
  p.trials = 20;
  p.n_steps = 10000000;
  p.seed = 1005;
  const BatchSummary bb = summarize_batch(
      collision_batch(brownian_class(1.0), brownian_class(1.0), TargetSet::all(), p));
  p.seed = 1006;
  const BatchSummary mixed = summarize_batch(
      collision_batch(stable_class(1.2, 1.0), stable_class(2.0, 1.0), TargetSet::all(), p));
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "two-Brownian median=%.4f (0.5 +- 0.08); mixed median=%.4f (0.5 +- 0.10)",
                bb.median_slope, mixed.median_slope);
  report(6, "collision-set dimensions",
         std::fabs(bb.median_slope - 0.5) <= 0.08 && std::fabs(mixed.median_slope - 0.5) <= 0.10,
         buf);
}

void criterion_subordinator() {
  const SubordinatorSpec spec(0.5, 1.0);
  const std::size_t n = 1000000;
  const auto samples = sample_subordinator(spec, n, 1007);
  const double ks = ks_distance(samples, [](double s) { return half_stable_cdf(1.0, s); });
  bool laplace_ok = true;
  double worst_gap_se = 0.0;
  for (double lam : {0.5, 1.0, 2.0}) {
    double sum = 0, sumsq = 0;
    for (double v : samples) {
      const double e = std::exp(-lam * v);
      sum += e;
      sumsq += e * e;
    }
    const double mean = sum / static_cast<double>(n);
    const double se =
        std::sqrt((sumsq / static_cast<double>(n) - mean * mean) / static_cast<double>(n));
    const double gap = std::fabs(mean - std::exp(-std::pow(lam, 0.5)));
    worst_gap_se = std::max(worst_gap_se, gap / se);
    laplace_ok = laplace_ok && gap <= 3.0 * se;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "KS=%.5f (want < 0.005); worst |gap|/SE=%.2f (want <= 3)", ks,
                worst_gap_se);
  report(7, "subordinator sampler correctness", ks < 0.005 && laplace_ok, buf);
}

void criterion_subordination_identity() {
  const StableKernelTable gaussian(2.0);
  double worst_half = 0.0;
  for (double t : {0.1, 0.5, 1.0, 3.0, 10.0}) {
    for (double x : {0.0, 0.5, 1.0, 2.5, 5.0}) {
      const double q = subordinated_kernel(gaussian, 0.5, t, x);
      const double cauchy = t / (3.14159265358979323846 * (t * t + x * x));
      worst_half = std::max(worst_half, std::fabs(q - cauchy) / cauchy);
    }
  }
  double worst_three_quarters = 0.0;
  for (double x : {0.0, 0.5, 1.0, 2.5, 5.0}) {
    const double q = subordinated_kernel(gaussian, 0.75, 1.0, x);
    const double p = stable_kernel(1.5, 1.0, x);
    worst_three_quarters = std::max(worst_three_quarters, std::fabs(q - p) / p);
  }
  char buf[140];
  std::snprintf(buf, sizeof buf,
                "(2,1/2) vs Cauchy rel err %.2e (<0.01); (2,3/4) vs 1.5-stable %.2e (<0.015)",
                worst_half, worst_three_quarters);
  report(8, "subordination identity q vs closed kernels",
         worst_half < 0.01 && worst_three_quarters < 0.015, buf);
}

void criterion_lemma_bounds() {
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<double, double>> configs = {{2.0, 0.5}, {1.6, 0.75}, {1.2, 0.5}};
  for (const auto& [alpha, gamma] : configs) {
    const std::vector<BoundReport> reports = check_subordinated_bounds(alpha, gamma);
    for (const auto& rep : reports) {
      const bool flat = std::fabs(rep.trend_slope) <= 0.1;
      const bool spread_ok =
          rep.ratio_min > 0 && std::isfinite(rep.ratio_max) && rep.ratio_max / rep.ratio_min < 50;
      ok = ok && flat && spread_ok;
      char buf[120];
      std::snprintf(buf, sizeof buf, "(%.1f,%.2f)%s trend=%.3f spread=%.1f; ", alpha, gamma,
                    rep.name == "subordinated-ondiagonal"   ? "diag"
                    : rep.name == "subordinated-offdiagonal" ? "off"
                                                             : "res",
                    rep.trend_slope, rep.ratio_max / rep.ratio_min);
      detail += buf;
    }
  }
  report(9, "subordinated kernel and resolvent envelopes", ok, detail);
}

void criterion_kernel_sanity() {
  const StableKernelTable mid(1.5);
  const double ck = chapman_kolmogorov_residual(mid, 0.4, 0.7, 0.9);
  const double norm = normalization_residual(mid, 1.0);
  double closed_gap = 0.0;
  for (double t : {0.3, 1.0, 4.0}) {
    for (double x : {0.0, 0.7, 2.5}) {
      closed_gap = std::max(closed_gap, std::fabs(stable_kernel_quadrature(2.0, t, x, 1e-10) -
                                                  stable_kernel(2.0, t, x)));
      closed_gap = std::max(closed_gap, std::fabs(stable_kernel_quadrature(1.0, t, x, 1e-10) -
                                                  stable_kernel(1.0, t, x)));
    }
  }
  char buf[140];
  std::snprintf(buf, sizeof buf, "CK=%.2e, norm=%.2e (<1e-6); closed-form gap=%.2e (<1e-8)", ck,
                norm, closed_gap);
  report(10, "kernel sanity (Chapman-Kolmogorov, normalization, closed forms)",
         ck < 1e-6 && norm < 1e-6 && closed_gap < 1e-8, buf);
}

void criterion_frostman() {
  const DiscreteMeasure nu = cantor_measure(1.0 / 3.0, 14);
  const double dim = std::log(2.0) / std::log(3.0);
  double last_finite = -1, first_divergent = -1;
  for (double s = 0.40; s <= 1.40 + 1e-9; s += 0.01) {
    const FrostmanVerdict v = frostman_verdict(energy_integral(nu, s)).verdict;
    if (v == FrostmanVerdict::FiniteEnergy) last_finite = s;
    if (v == FrostmanVerdict::DivergentEnergy && first_divergent < 0) first_divergent = s;
  }
  const bool ok = last_finite > 0 && first_divergent > 0 &&
                  std::fabs(last_finite - dim) <= 0.05 &&
                  std::fabs(first_divergent - dim) <= 0.05 && first_divergent > last_finite;
  char buf[140];
  std::snprintf(buf, sizeof buf, "verdict flips in (%.2f, %.2f); log2/log3=%.4f (+-0.05)",
                last_finite, first_divergent, dim);
  report(11, "Frostman bracket for Cantor(1/3)", ok, buf);
}

void criterion_wiener() {
  int recurrent_match = 0, transient_match = 0;
  const int replicates = 10;
  for (int rep = 0; rep < replicates; ++rep) {
    WienerConfig rec;
    rec.pair.p1 = PathSpec(2.0, 1.0, 2, 0.0);
    rec.pair.p2 = PathSpec(2.0, 1.0, 2, 0.0);
    rec.start = {0.0, 1.0};
    rec.base = TargetSet::all();
    rec.lambda = 16.0;
    rec.n_lo = 1;
    rec.n_hi = 8;
    rec.steps_per_trial = 12000;
    rec.trials = 150;
    rec.seed = derive_seed(9001, static_cast<std::uint64_t>(rep));
    const WienerReport rr = wiener_experiment(rec);
    if (rr.analytic == Finiteness::Infinite && rr.verdict == WienerVerdict::DivergesLikely)
      ++recurrent_match;

    WienerConfig tr;
    tr.pair.p1 = PathSpec(1.2, 1.0, 2, 0.0);
    tr.pair.p2 = PathSpec(1.2, 1.0, 2, 0.0);
    tr.start = {0.0, 1.0};
    tr.base = TargetSet::intervals({{20.0, 120.0}});
    tr.lambda = 16.0;
    tr.n_lo = 1;
    tr.n_hi = 8;
    tr.steps_per_trial = 12000;
    tr.trials = 150;
    tr.seed = derive_seed(9002, static_cast<std::uint64_t>(rep));
    const WienerReport tt = wiener_experiment(tr);
    if (tt.analytic == Finiteness::Finite && tt.verdict == WienerVerdict::ConvergesLikely)
      ++transient_match;
  }
  char buf[140];
  std::snprintf(buf, sizeof buf, "recurrent match %d/10, transient match %d/10 (want >= 9)",
                recurrent_match, transient_match);
  report(12, "Wiener recurrence/transience verdicts", recurrent_match >= 9 && transient_match >= 9,
         buf);
}

void criterion_reproducibility() {
  ExperimentConfig cfg;
  cfg.name = "repro";
  cfg.kind = "collision-dim";
  cfg.master_seed = 31337;
  cfg.processes.push_back(ProcessBlock{});
  cfg.processes.push_back(ProcessBlock{});
  cfg.params["trials"] = "6";
  cfg.params["n_steps"] = "40000";
  cfg.params["slope_tol"] = "0.5";

  std::string first;
  bool identical = true;
  for (const char* workers : {"1", "4", "16"}) {
    setenv("HAUDIM_THREADS", workers, 1);
    cfg.out_dir = std::string("out_acceptance/repro_w") + workers;
    run_experiment(cfg);
    std::FILE* f = std::fopen((cfg.out_dir + "/result.csv").c_str(), "rb");
    std::string content;
    char chunk[4096];
    std::size_t got;
    while ((got = std::fread(chunk, 1, sizeof chunk, f)) > 0) content.append(chunk, got);
    std::fclose(f);
    if (first.empty())
      first = content;
    else
      identical = identical && content == first;
  }
  setenv("HAUDIM_THREADS", "1", 1);
  report(13, "byte-identical CSV across 1/4/16 workers", identical && !first.empty(),
         identical ? "result.csv identical" : "outputs differ");
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_gamma_oracle();
  criterion_brownian_level();
  criterion_stable_level();
  criterion_empty_regime();
  criterion_cantor_inverse();
  criterion_collision();
  criterion_subordinator();
  criterion_subordination_identity();
  criterion_lemma_bounds();
  criterion_kernel_sanity();
  criterion_frostman();
  criterion_wiener();
  criterion_reproducibility();
  std::printf("%d of 13 criteria passed (%.0f s total)\n", 13 - failures,
              elapsed_s(t0));
  return failures == 0 ? 0 : 1;
}
