#pragma once

#include <random>
#include <sstream>

#include "fatoulab/cf.hpp"
#include "fatoulab/config.hpp"
#include "fatoulab/fatou.hpp"
#include "fatoulab/parallel.hpp"
#include "fatoulab/renorm.hpp"
#include "fatoulab/sectors.hpp"
#include "fatoulab/verify.hpp"

namespace fatoulab::lab {

// ---- cf round trips --------------------------------------------------------

inline VerifyReport cf_roundtrip_section(const Config& cfg) {
  using R = Real256;
  VerifyReport rep;
  rep.id = "cf-roundtrip";
  rep.precision_bits = mantissa_bits<R>();
  const int samples = static_cast<int>(cfg.get_long("cf.samples", 100));
  const int depth = static_cast<int>(cfg.get_long("cf.depth", 30));
  rep.region = std::to_string(samples) + " uniform alphas in (0,1), depth " + std::to_string(depth);
  std::mt19937_64 rng(cfg.get_long("cf.seed", 20260810));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  R worst(0);
  int done = 0;
  for (int i = 0; i < samples; ++i) {
    R alpha = R(uni(rng)) + R(uni(rng)) * R("1e-18") + R(uni(rng)) * R("1e-36");
    if (alpha >= 1 || alpha <= 0) continue;
    auto cf = expand_cf(alpha, depth);
    if (cf.terminated) continue;
    R err = abs(reconstruct(cf) - alpha);
    if (err > worst) worst = err;
    ++done;
  }
  rep.samples = done;
  rep.checks.push_back(CheckEntry::less("max |reconstruct - alpha|", static_cast<double>(worst),
                                        std::ldexp(1.0, -29)));
  rep.checks.push_back(CheckEntry::greater("expansions completed", done, samples - 1.5));
  return rep;
}

// ---- Brjuno-sum vs exponent-product equivalence ----------------------------

inline VerifyReport brjuno_equivalence_section(const Config& cfg) {
  using R = Real256;
  VerifyReport rep;
  rep.id = "brjuno-product-equivalence";
  rep.precision_bits = mantissa_bits<R>();
  const std::size_t kprod = cfg.get_long("brjuno.product_depth", 30);
  const std::size_t npart = cfg.get_long("brjuno.partial_depth", 25);
  rep.region = "curated 10-case family, product depth " + std::to_string(kprod) +
               " vs partial depth " + std::to_string(npart);
  const R thr_prod = log(R("0.01"));
  const R thr_part(100);

  struct Case {
    std::string name;
    BrjunoLedger<R> ledger;
    bool brjuno_truth;
  };
  std::vector<Case> cases;
  auto add_real = [&](const std::string& name, const R& alpha) {
    cases.push_back({name, brjuno_ledger(expand_cf(alpha, std::max(kprod, npart) + 4)), true});
  };
  add_real("const-type-2", sqrt(R(2)) - 1);
  add_real("const-type-3", (sqrt(R(13)) - 3) / 2);
  add_real("pi-3", const_pi<R>() - 3);
  add_real("inv-sqrt-2", R(1) / sqrt(R(2)));
  add_real("golden-neg", (R(3) - sqrt(R(5))) / 2);
  auto add_syn = [&](const std::string& name, std::vector<BigInt> prefix, const R& ratio) {
    SyntheticCF<R> syn{std::move(prefix), ratio, std::max(kprod, npart) + 4};
    cases.push_back({name, brjuno_ledger(syn), false});
  };
  add_syn("iter-exp-4.5", {BigInt(91)}, R("4.5"));
  add_syn("iter-exp-5", {BigInt(149)}, R(5));
  add_syn("iter-exp-5.5", {BigInt(245)}, R("5.5"));
  add_syn("iter-exp-6", {BigInt(404)}, R(6));
  add_syn("mixed-prefix", {BigInt(2), BigInt(2), BigInt(2), BigInt(2)}, R(5));

  for (const auto& c : cases) {
    bool product_nb = c.ledger.log_product_sequence(kprod) < thr_prod;
    bool partial_nb = c.ledger.brjuno_partial(npart) > thr_part;
    rep.checks.push_back(CheckEntry::equals("agree: " + c.name, product_nb == partial_nb));
    rep.checks.push_back(
        CheckEntry::equals("ground truth: " + c.name, product_nb == !c.brjuno_truth));
  }
  rep.samples = cases.size();

  // diagnostic: the canonical slow-divergence growth log a_{j+1} ~ q_j; its
  // partial sums grow like the depth itself, so the fixed-depth partial
  // classifier cannot see the divergence the product classifier reports.
  SyntheticCF<R> slow{{BigInt(3)}, R(1), std::max(kprod, npart) + 4};
  auto lg = brjuno_ledger(slow);
  std::ostringstream note;
  note << "diagnostic iter-exp-1: log product(" << kprod
       << ") = " << static_cast<double>(lg.log_product_sequence(kprod)) << ", partial(" << npart
       << ") = " << static_cast<double>(lg.brjuno_partial(npart))
       << " (divergent, but below the fixed-depth threshold by design of the growth)";
  rep.notes.push_back(note.str());
  return rep;
}

// ---- semiconjugacy ---------------------------------------------------------

template <class R>
double semiconjugacy_sup(const FatouFrame<R>& fr, int grid, std::size_t* used_out) {
  using C = Complex<R>;
  const R alpha = fr.alpha();
  R one_over_alpha = R(1) / alpha;
  R im_lo = fr.im_audit_floor(), im_hi = std::max(R(8), R("1.2") / alpha);
  std::vector<R> sups(grid, R(0));
  std::vector<std::size_t> used(grid, 0);
  parallel_for(static_cast<std::size_t>(grid), [&](std::size_t i) {
    for (int j = 0; j < grid; ++j) {
      C w(one_over_alpha * (R(2 * static_cast<int>(i) + 1) / (2 * grid)),
          im_lo + (im_hi - im_lo) * (R(2 * j + 1) / (2 * grid)));
      if (deck_distance(alpha, w) < R("0.4")) continue;
      try {
        R r = abs(fr.map().eval(fr.tau(w)) - fr.tau(fr.lift_F(w)));
        if (r > sups[i]) sups[i] = r;
        ++used[i];
      } catch (const std::runtime_error&) {
      }
    }
  });
  R sup(0);
  std::size_t total = 0;
  for (int i = 0; i < grid; ++i) {
    if (sups[i] > sup) sup = sups[i];
    total += used[i];
  }
  if (used_out) *used_out = total;
  return static_cast<double>(sup);
}

inline VerifyReport semiconjugacy_section(const Config& cfg) {
  using R = Real128;
  VerifyReport rep;
  rep.id = "semiconjugacy";
  rep.precision_bits = mantissa_bits<R>();
  int grid = static_cast<int>(cfg.get_long("semiconj.grid", 100));
  rep.region = "fundamental-domain grids " + std::to_string(grid) + "^2";
  for (const char* as : {"0.2", "0.05", "0.01", "0.002"}) {
    for (auto kind : {MapKind::Quadratic, MapKind::CubicModel}) {
      R alpha(as);
      auto m = kind == MapKind::Quadratic ? MapSpec<R>::quadratic(alpha)
                                          : MapSpec<R>::cubic_model(alpha);
      FatouFrame<R> fr(m);
      std::size_t used = 0;
      double sup = semiconjugacy_sup(fr, grid, &used);
      std::string label = std::string(kind == MapKind::Quadratic ? "quadratic" : "cubic") +
                          " alpha=" + as;
      rep.checks.push_back(CheckEntry::less("sup residual " + label, sup, 1e-20));
      rep.samples += used;
    }
  }
  return rep;
}

// ---- near-translation radius fit -------------------------------------------

// Largest deviation of F from w+1 over a ring of given radius around the
// deck point at 0 (by periodicity this covers every deck translate).
template <class R>
double ring_deviation(const FatouFrame<R>& fr, const R& radius, int angles) {
  using C = Complex<R>;
  R worst(0);
  for (int i = 0; i < angles; ++i) {
    R theta = 2 * const_pi<R>() * R(2 * i + 1) / (2 * angles);
    C w = polar(radius, theta);
    try {
      R dev = std::max(abs(fr.lift_F(w) - (w + C(R(1)))),
                       abs(fr.lift_F_derivative(w) - C(R(1))));
      if (dev > worst) worst = dev;
    } catch (const std::runtime_error&) {
      worst = std::max(worst, R(1));
    }
  }
  return static_cast<double>(worst);
}

// Smallest sampled ring radius outside of which the deviation stays < 1/4.
// Rings beyond half the deck spacing would run through neighboring deck
// balls, so the scan caps there.
template <class R>
double fit_translation_radius(const FatouFrame<R>& fr, int angles, double r_max = 1e3) {
  double cap = std::min(r_max, 0.49 / static_cast<double>(fr.alpha()));
  double fitted = cap;
  std::vector<double> radii;
  for (double x = 0.05; x <= cap; x *= 1.04) radii.push_back(x);
  for (auto it = radii.rbegin(); it != radii.rend(); ++it) {
    if (ring_deviation(fr, R(*it), angles) >= 0.25) break;
    fitted = *it;
  }
  return fitted;
}

inline VerifyReport near_translation_section(const Config& cfg) {
  using R = Real128;
  VerifyReport rep;
  rep.id = "near-translation";
  rep.precision_bits = mantissa_bits<R>();
  int angles = static_cast<int>(cfg.get_long("neartrans.angles", 96));
  std::ostringstream region;
  region << "ring scans, " << angles << " angles (and doubled)";
  rep.region = region.str();
  for (const char* as : {"0.01", "0.005"}) {
    R alpha(as);
    FatouFrame<R> fr(MapSpec<R>::quadratic(alpha));
    double r1 = fit_translation_radius(fr, angles);
    double r2 = fit_translation_radius(fr, 2 * angles);
    std::string label = std::string(" alpha=") + as;
    rep.checks.push_back(CheckEntry::less("fitted radius" + label, r1, 1e3));
    rep.checks.push_back(
        CheckEntry::less("grid-doubling drift" + label, std::abs(r1 - r2) / std::max(r1, r2), 0.10));
    ThetaSpec<R> region_spec{R(r1), alpha};
    auto sub = fr.near_translation_report(region_spec, static_cast<int>(cfg.get_long("neartrans.grid", 72)));
    for (auto& c : sub.checks)
      rep.checks.push_back({c.name + label, c.value, c.threshold, c.cmp, c.pass});
    rep.samples += sub.samples;
    rep.fitted.push_back({"R" + label, r1, "fitted", "inward geometric ring scan"});
    for (auto& f : sub.fitted) rep.fitted.push_back({f.name + label, f.value, f.provenance, f.probe});
  }
  return rep;
}

// ---- Abel equation, normalization, dilatation --------------------------------

inline VerifyReport abel_section(const Config& cfg) {
  using R = Real128;
  using C = Complex<R>;
  VerifyReport rep;
  rep.id = "abel-coordinate";
  rep.precision_bits = mantissa_bits<R>();
  int per_frame = static_cast<int>(cfg.get_long("abel.samples", 250));
  rep.region = "random valid points, " + std::to_string(per_frame) + " per frame";
  std::mt19937_64 rng(cfg.get_long("abel.seed", 424242));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (const char* as : {"0.05", "0.01"}) {
    for (auto kind : {MapKind::Quadratic, MapKind::CubicModel}) {
      R alpha(as);
      auto m = kind == MapKind::Quadratic ? MapSpec<R>::quadratic(alpha)
                                          : MapSpec<R>::cubic_model(alpha);
      FatouFrame<R> fr(m);
      std::string label = std::string(" ") + (kind == MapKind::Quadratic ? "quadratic" : "cubic") +
                          " alpha=" + as;
      R sup(0);
      int used = 0;
      double c2 = fr.fitted_c2();
      for (int k = 0; k < per_frame * 4 && used < per_frame; ++k) {
        C w(R(uni(rng)) * (R(1) / alpha - 3) + 1, R(uni(rng)) * (R(2) / alpha));
        if (deck_distance(alpha, w) < R(c2) + R("0.3")) continue;
        try {
          R e = abs(fr.phi(fr.lift_F(w)) - fr.phi(w) - C(R(1)));
          if (e > sup) sup = e;
          ++used;
        } catch (const std::runtime_error&) {
        }
      }
      rep.samples += used;
      rep.checks.push_back(CheckEntry::less("abel residual" + label, static_cast<double>(sup), 1e-15));
      rep.checks.push_back(CheckEntry::greater("valid samples" + label, used, per_frame - 0.5));
      rep.checks.push_back(CheckEntry::less("|phi(cp_lift)|" + label,
                                            static_cast<double>(abs(fr.phi(fr.cp_lift()))), 1e-12));
      auto dil = fr.dilatation_report(static_cast<int>(cfg.get_long("abel.dilatation_grid", 160)),
                                      fr.im_audit_floor(), std::max(R(8), R("1.2") / alpha));
      for (auto& c : dil.checks)
        rep.checks.push_back({c.name + label, c.value, c.threshold, c.cmp, c.pass});
    }
  }
  return rep;
}

// ---- rotation-number contract -----------------------------------------------

inline VerifyReport rotation_section(const Config& cfg) {
  using R = Real128;
  using C = Complex<R>;
  VerifyReport rep;
  rep.id = "renormalization-rotation";
  rep.precision_bits = mantissa_bits<R>();
  std::size_t steps = cfg.get_long("rotation.steps", 150);
  rep.region = "orbit radius 1e-3, " + std::to_string(steps) + " return steps";

  struct RotationStub : ReturnMapHandle<R> {
    C lambda;
    explicit RotationStub(const R& beta) : lambda(unit_circle(beta)) {}
    C eval(const C& z) const override { return lambda * z; }
    R validated_radius() const override { return R(1); }
  };
  RotationStub stub(R("0.31830988618367"));
  auto se = rotation_number_estimate<R>(stub, R("0.001"), steps);
  rep.checks.push_back(
      CheckEntry::less("stub error", std::abs(se.value - 0.31830988618367), 1e-12));

  std::vector<R> alphas = {sqrt(R(2)) - 1, R("0.208"), R("0.24")};
  for (const R& alpha : alphas) {
    auto frame = std::make_shared<FatouFrame<R>>(MapSpec<R>::quadratic(alpha));
    auto rr = make_renormalization<R>(frame);
    auto est = rotation_number_estimate<R>(*rr.map, R("0.001"), steps);
    std::ostringstream label;
    label << " alpha=" << static_cast<double>(alpha);
    rep.checks.push_back(CheckEntry::less(
        "rotation error" + label.str(),
        std::abs(est.value - static_cast<double>(rr.child_alpha_expected)), 1e-2));
    // multiplier secant at two radii: a single increment carries the
    // coordinate's quasi-conformal wobble, so it is only gated on frames
    // whose base line sits inside the paper-regime window; elsewhere the
    // value is recorded for the report.
    for (const char* r : {"1e-3", "1e-4"}) {
      C z(R(r), R(0));
      R rot = arg(rr.map->eval(z) / z) / (2 * const_pi<R>());
      rot = rot - nearest_int(rot);
      double err =
          std::abs(std::abs(static_cast<double>(rot)) - static_cast<double>(rr.child_alpha_expected));
      std::string name = std::string("secant |z|=") + r + label.str();
      if (frame->base_in_paper_range()) {
        rep.checks.push_back(CheckEntry::less(name, err, 1e-2));
      } else {
        std::ostringstream note;
        note << name << " = " << err << " (recorded; base line outside the small-alpha window)";
        rep.notes.push_back(note.str());
      }
    }
    // every recorded return time sits in the first-return window
    long upper = static_cast<long>(floor(R(1) / alpha)) - 2 + rr.k_h + 1;
    bool window_ok = rr.k_h >= 1;
    for (long t : rr.map->ledger().return_times)
      if (t < 2 || t > upper) window_ok = false;
    rep.checks.push_back(CheckEntry::equals("return-time window" + label.str(), window_ok));
    rep.samples += rr.map->ledger().return_times.size();
  }
  return rep;
}

// ---- sector counts -----------------------------------------------------------

inline VerifyReport sector_count_section(const Config& cfg) {
  using R = Real256;
  VerifyReport rep;
  rep.id = "sector-counts";
  rep.precision_bits = 0;  // exact integer arithmetic
  long trials = cfg.get_long("sectors.trials", 1000);
  rep.region = std::to_string(trials) + " randomized triples + Pell levels <= 20";
  std::mt19937_64 rng(cfg.get_long("sectors.seed", 4242));
  std::uniform_int_distribution<long> qd(1, 1 << 20), kd(1, 40), ad(2, 500);
  bool all_hold = true, all_equal = true, strict_ok = true;
  for (long t = 0; t < trials; ++t) {
    BigInt q_prev = qd(rng), q_n = BigInt(qd(rng)) + q_prev;
    long k = kd(rng), k_n = k + kd(rng);
    BigInt a_next = ad(rng);
    BigInt q_next = a_next * q_n + q_prev;
    auto c = sector_count_check(q_prev, q_n, q_next, k_n, k, a_next);
    all_hold &= c.holds;
    all_equal &= (c.equality && c.equality_expected);
    auto c2 = sector_count_check(q_prev, q_n, q_next + 1, k_n, k, a_next);
    strict_ok &= (c2.holds && !c2.equality);
  }
  ModifiedCF<R> pell;
  pell.a = {BigInt(0)};
  pell.eps = {1};
  for (int i = 0; i < 21; ++i) {
    pell.a.push_back(BigInt(2));
    pell.eps.push_back(1);
  }
  auto ap = approximants(pell);
  bool pell_ok = true;
  for (std::size_t n = 1; n + 1 < ap.q.size(); ++n) {
    auto c = sector_count_check(ap.q[n - 1], ap.q[n], ap.q[n + 1], 3, 1, BigInt(2));
    pell_ok &= (c.holds && c.equality);
  }
  rep.samples = trials + 20;
  rep.checks.push_back(CheckEntry::equals("identity holds", all_hold));
  rep.checks.push_back(CheckEntry::equals("equality iff plain recurrence", all_equal));
  rep.checks.push_back(CheckEntry::equals("strict once q_{n+1} exceeds", strict_ok));
  rep.checks.push_back(CheckEntry::equals("pell ledger levels", pell_ok));
  return rep;
}

// ---- gate experiment ----------------------------------------------------------

template <class R>
R quadratic_orbit_min(const R& alpha, std::size_t budget, std::size_t* argmin) {
  // hot loop kept free of temporaries on purpose
  R two_pi_alpha = 2 * const_pi<R>() * alpha;
  R lr = cos(two_pi_alpha), li = sin(two_pi_alpha);
  R zr = -(lr * lr - li * li) / 4, zi = -(2 * lr * li) / 4;  // critical value
  R best = hypot(zr, zi), nr(0), ni(0), a2(0);
  std::size_t arg_best = 0;
  for (std::size_t k = 1; k <= budget; ++k) {
    nr = lr * zr - li * zi + zr * zr - zi * zi;
    ni = lr * zi + li * zr + 2 * zr * zi;
    zr = nr;
    zi = ni;
    a2 = zr * zr + zi * zi;
    if (a2 < best * best) {
      best = sqrt(a2);
      arg_best = k;
    }
  }
  if (argmin) *argmin = arg_best;
  return best;
}

struct GateSectionOutcome {
  VerifyReport report;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
};

inline GateSectionOutcome gate_section(const Config& cfg) {
  using R = Real128;
  GateSectionOutcome out;
  VerifyReport& rep = out.report;
  rep.id = "gate-experiment";
  rep.precision_bits = mantissa_bits<R>();
  std::size_t budget = cfg.get_long("gate.budget", 10000000);
  rep.region = "critical-value orbits, budget " + std::to_string(budget);

  // fitted sector-size constant M over moderate-alpha frames
  double m_fit = 1.0;
  for (const char* as : {"0.05", "0.02"}) {
    FatouFrame<R> fr(MapSpec<R>::quadratic(R(as)));
    m_fit = std::max(m_fit, fit_sector_constant(fr, 48));
  }
  rep.fitted.push_back({"M", m_fit, "fitted", "mid-domain gate diameter / alpha at alpha in {0.05, 0.02}"});

  std::vector<std::vector<BigInt>> inflations = {{}, {BigInt(50)}, {BigInt(50), BigInt(100000)}};
  std::vector<R> alphas, minima, bounds;
  std::vector<std::size_t> argmins;
  for (const auto& extra : inflations) {
    std::vector<BigInt> qs{BigInt(3)};
    qs.insert(qs.end(), extra.begin(), extra.end());
    alphas.push_back(classical_cf_with_golden_tail<R>(qs));
  }
  minima.resize(3);
  argmins.resize(3);
  parallel_for(3, [&](std::size_t v) {
    minima[v] = quadratic_orbit_min(alphas[v], budget, &argmins[v]);
  });
  for (std::size_t v = 0; v < 3; ++v) {
    auto ledger = brjuno_ledger(expand_cf(alphas[v], v + 6));
    bounds.push_back(gate_diameter_bound(ledger, v + 1, R(m_fit)));
    nlohmann::ordered_json rec;
    rec["depth"] = v + 1;
    rec["budget"] = budget;
    rec["min_abs"] = static_cast<double>(minima[v]);
    rec["argmin_iter"] = argmins[v];
    rec["gate_bound"] = static_cast<double>(bounds[v]);
    out.records.push_back(rec);
  }
  rep.samples = 3 * budget;
  rep.checks.push_back(
      CheckEntry::equals("minima strictly decreasing", minima[0] > minima[1] && minima[1] > minima[2]));
  for (std::size_t v = 0; v < 3; ++v) {
    rep.checks.push_back(CheckEntry::less("min within 10x gate bound, depth " + std::to_string(v + 1),
                                          static_cast<double>(minima[v]),
                                          10.0 * static_cast<double>(bounds[v])));
  }
  return out;
}

// ---- bundle -------------------------------------------------------------------

inline ReportBundle run_verification(const Config& cfg) {
  ReportBundle bundle;
  std::map<std::string, std::string> kv(cfg.items().begin(), cfg.items().end());
  bundle.config = config_hash(kv);
  bundle.stamp = cfg.get("stamp", "");
  std::string sections = cfg.get(
      "sections", "cf,brjuno,semiconjugacy,near-translation,abel,rotation,sector-counts,gate");
  auto enabled = [&](const std::string& name) {
    return sections.find(name) != std::string::npos;
  };
  if (enabled("cf")) bundle.reports.push_back(cf_roundtrip_section(cfg));
  if (enabled("brjuno")) bundle.reports.push_back(brjuno_equivalence_section(cfg));
  if (enabled("semiconjugacy")) bundle.reports.push_back(semiconjugacy_section(cfg));
  if (enabled("near-translation")) bundle.reports.push_back(near_translation_section(cfg));
  if (enabled("abel")) bundle.reports.push_back(abel_section(cfg));
  if (enabled("rotation")) bundle.reports.push_back(rotation_section(cfg));
  if (enabled("sector-counts")) bundle.reports.push_back(sector_count_section(cfg));
  if (enabled("gate")) bundle.reports.push_back(gate_section(cfg).report);
  return bundle;
}

}  // namespace fatoulab::lab
