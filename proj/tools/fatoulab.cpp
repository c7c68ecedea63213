// fatoulab command-line front end: continued-fraction reports, orbit dumps,
// escape-time and post-critical renders, coordinate checks, and the full
// verification bundle. All outputs are deterministic functions of the
// arguments, the config file, and the precision setting.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fatoulab/fatoulab.hpp"

using namespace fatoulab;

namespace {

struct CommonArgs {
  std::string alpha = "0.4142135623730950488016887242096980785696718753769";
  std::string cf_list;
  long depth = 30;
  int precision_bits = 256;
  std::string out;
  std::string config_path;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--alpha", args.alpha, "rotation number in (0,1), decimal string");
  cmd->add_option("--cf", args.cf_list, "explicit partial quotients \"a0,a1,...\" (eps all +1)");
  cmd->add_option("--depth", args.depth, "expansion depth");
  cmd->add_option("--precision-bits", args.precision_bits, "working precision (snaps to 64..1024)");
  cmd->add_option("--out", args.out, "output file (default: stdout)");
  cmd->add_option("--config", args.config_path, "flat key=value config file");
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream os(out, std::ios::binary);
  if (!os) throw IOFailure("cannot open " + out);
  os << text << "\n";
}

template <class R>
ModifiedCF<R> cf_from_args(const CommonArgs& args) {
  if (!args.cf_list.empty()) {
    ModifiedCF<R> cf;
    std::istringstream is(args.cf_list);
    std::string tok;
    while (std::getline(is, tok, ',')) {
      cf.a.push_back(BigInt(tok));
      cf.eps.push_back(1);
    }
    if (cf.a.empty()) throw std::invalid_argument("--cf needs at least one quotient");
    cf.depth = cf.a.size() - 1;
    R x(0);
    for (std::size_t i = cf.a.size(); i-- > 1;) x = R(1) / (R(cf.a[i].str()) + x);
    cf.alpha_seq.push_back(x);
    for (std::size_t i = 1; i < cf.a.size(); ++i) {
      x = R(1) / x - R(cf.a[i].str());
      cf.alpha_seq.push_back(abs(x));
      x = abs(x);
      if (x == 0) break;
    }
    return cf;
  }
  return expand_cf_auto(R(args.alpha), static_cast<std::size_t>(args.depth));
}

int run_cf(const CommonArgs& args, bool classifier_focus) {
  return with_precision(args.precision_bits, [&]<class R>() {
    auto cf = cf_from_args<R>(args);
    auto ledger = brjuno_ledger(cf);
    auto j = cf_to_json(cf, ledger);
    if (classifier_focus) {
      std::size_t kp = std::min<std::size_t>(30, ledger.log_product.size());
      std::size_t np = ledger.partial_sums.empty() ? 0 : ledger.partial_sums.size() - 1;
      np = std::min<std::size_t>(25, np);
      nlohmann::ordered_json c;
      if (kp) c["log_product"] = static_cast<double>(ledger.log_product_sequence(kp));
      c["product_depth"] = kp;
      if (!ledger.partial_sums.empty())
        c["brjuno_partial"] = static_cast<double>(ledger.brjuno_partial(np));
      c["partial_depth"] = np;
      if (kp)
        c["product_classifier_nonbrjuno"] = ledger.log_product_sequence(kp) < log(R("0.01"));
      if (!ledger.partial_sums.empty())
        c["partial_classifier_nonbrjuno"] = ledger.brjuno_partial(np) > R(100);
      j["classifier"] = c;
    }
    emit(args.out, j.dump(2));
    return 0;
  });
}

int run_orbit(const CommonArgs& args, const std::string& map_name, const std::string& z0_str,
              long iters, double escape_radius, const std::string& format) {
  return with_precision(args.precision_bits, [&]<class R>() {
    using C = Complex<R>;
    R alpha(args.alpha);
    auto map = map_name == "cubic" ? MapSpec<R>::cubic_model(alpha) : MapSpec<R>::quadratic(alpha);
    C z0 = map.critical_value();
    if (z0_str != "cv") {
      auto comma = z0_str.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("--z0 expects \"re,im\" or cv");
      z0 = C(R(z0_str.substr(0, comma)), R(z0_str.substr(comma + 1)));
    }
    auto rec = orbit(map, z0, static_cast<std::size_t>(iters), R(escape_radius));
    if (format == "json") {
      auto j = orbit_to_json(rec);
      validate_orbit_json(j);
      emit(args.out, j.dump(2));
    } else if (args.out.empty()) {
      orbit_to_csv(rec, std::cout);
    } else {
      orbit_to_csv_file(rec, args.out);
    }
    return 0;
  });
}

void print_sections(const ReportBundle& bundle, std::ostream& os) {
  for (const auto& r : bundle.reports)
    os << (r.pass() ? "PASS" : "FAIL") << "  " << r.id << "  (" << r.samples << " samples)\n";
}

int finish_reports(const ReportBundle& bundle, const std::string& out) {
  if (!out.empty()) {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw IOFailure("cannot open " + out);
    os << bundle.to_json().dump(2) << "\n";
  }
  if (!bundle.pass()) {
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const auto& r : bundle.reports)
      for (const auto& c : r.checks)
        if (!c.pass)
          failures.push_back({{"report", r.id}, {"check", c.name}, {"value", c.value},
                              {"threshold", c.threshold}});
    std::cerr << nlohmann::ordered_json{{"failed_checks", failures}}.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for neutral quadratic-like dynamics"};
  app.require_subcommand(1);

  CommonArgs cf_args, brjuno_args, orbit_args, rj_args, rpc_args, fat_args, ren_args, ver_args;

  auto* cmd_cf = app.add_subcommand("cf", "nearest-integer continued fraction document");
  add_common(cmd_cf, cf_args);

  auto* cmd_brjuno = app.add_subcommand("brjuno", "classifier document: partial sums vs products");
  add_common(cmd_brjuno, brjuno_args);

  auto* cmd_orbit = app.add_subcommand("orbit", "orbit dump (CSV or JSON)");
  add_common(cmd_orbit, orbit_args);
  std::string orbit_map = "quadratic", orbit_z0 = "cv", orbit_format = "csv";
  long orbit_iters = 100;
  double orbit_escape = 4.0;
  cmd_orbit->add_option("--map", orbit_map, "quadratic | cubic");
  cmd_orbit->add_option("--z0", orbit_z0, "start point \"re,im\" or cv");
  cmd_orbit->add_option("-n,--iters", orbit_iters, "iteration count");
  cmd_orbit->add_option("--escape-radius", orbit_escape, "escape radius");
  cmd_orbit->add_option("--format", orbit_format, "csv | json");

  auto* cmd_rj = app.add_subcommand("render-julia", "escape-time render (binary PPM)");
  add_common(cmd_rj, rj_args);
  std::string rj_viewport = "0,0,3";
  int rj_res = 512, rj_max_iter = 500;
  std::string rj_map = "quadratic", rj_coloring = "escape-time";
  cmd_rj->add_option("--viewport", rj_viewport, "cx,cy,w");
  cmd_rj->add_option("--res", rj_res, "pixels per side (<= 8192)");
  cmd_rj->add_option("--max-iter", rj_max_iter, "iteration cap");
  cmd_rj->add_option("--map", rj_map, "quadratic | cubic");
  cmd_rj->add_option("--coloring", rj_coloring, "escape-time | orbit-trap-origin");

  auto* cmd_rpc = app.add_subcommand("render-pc", "post-critical orbit density render (PPM)");
  add_common(cmd_rpc, rpc_args);
  std::string rpc_viewport = "-0.2,0,1.2";
  int rpc_res = 512;
  long rpc_budget = 200000;
  cmd_rpc->add_option("--viewport", rpc_viewport, "cx,cy,w");
  cmd_rpc->add_option("--res", rpc_res, "pixels per side");
  cmd_rpc->add_option("--budget", rpc_budget, "orbit length (<= 1e8)");

  auto* cmd_fat = app.add_subcommand("fatou-check", "coordinate checks for one map");
  add_common(cmd_fat, fat_args);
  std::string fat_map = "quadratic";
  cmd_fat->add_option("--map", fat_map, "quadratic | cubic");

  auto* cmd_ren = app.add_subcommand("renorm-check", "rotation-number contract for one alpha");
  add_common(cmd_ren, ren_args);

  auto* cmd_ver = app.add_subcommand("verify", "full verification bundle");
  add_common(cmd_ver, ver_args);
  std::string ver_sections, ver_stamp;
  long ver_budget = -1;
  cmd_ver->add_option("--sections", ver_sections, "comma list; default: all");
  cmd_ver->add_option("--budget", ver_budget, "gate-experiment budget override");
  cmd_ver->add_option("--stamp", ver_stamp, "timestamp string recorded in the bundle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_cf->parsed()) return run_cf(cf_args, false);
    if (cmd_brjuno->parsed()) return run_cf(brjuno_args, true);
    if (cmd_orbit->parsed())
      return run_orbit(orbit_args, orbit_map, orbit_z0, orbit_iters, orbit_escape, orbit_format);

    if (cmd_rj->parsed()) {
      if (rj_res > 8192) throw std::invalid_argument("--res above the configured maximum 8192");
      RenderJob job;
      job.kind = rj_map == "cubic" ? MapKind::CubicModel : MapKind::Quadratic;
      job.alpha = std::stod(rj_args.alpha);
      std::sscanf(rj_viewport.c_str(), "%lf,%lf,%lf", &job.center_x, &job.center_y, &job.width);
      job.resolution = rj_res;
      job.max_iter = rj_max_iter;
      job.coloring = rj_coloring == "orbit-trap-origin" ? Coloring::OrbitTrapOrigin
                                                        : Coloring::EscapeTime;
      Image img = render_julia(job);
      write_ppm(img, rj_args.out.empty() ? "julia.ppm" : rj_args.out);
      return 0;
    }

    if (cmd_rpc->parsed()) {
      if (rpc_budget > 100000000L) throw std::invalid_argument("--budget above 1e8");
      double cx, cy, w;
      std::sscanf(rpc_viewport.c_str(), "%lf,%lf,%lf", &cx, &cy, &w);
      Image img = render_postcritical(Real128(rpc_args.alpha),
                                      static_cast<std::size_t>(rpc_budget), cx, cy, w, rpc_res);
      write_ppm(img, rpc_args.out.empty() ? "postcritical.ppm" : rpc_args.out);
      return 0;
    }

    if (cmd_fat->parsed()) {
      using R = Real128;
      R alpha(fat_args.alpha);
      auto m = fat_map == "cubic" ? MapSpec<R>::cubic_model(alpha) : MapSpec<R>::quadratic(alpha);
      FatouFrame<R> fr(m);
      ReportBundle bundle;
      ThetaSpec<R> region{R(fr.fitted_c2()), alpha};
      bundle.reports.push_back(fr.near_translation_report(region, 64));
      bundle.reports.push_back(
          fr.dilatation_report(160, fr.im_audit_floor(), std::max(R(8), R("1.2") / alpha)));
      print_sections(bundle, std::cout);
      return finish_reports(bundle, fat_args.out);
    }

    if (cmd_ren->parsed()) {
      using R = Real128;
      Config cfg;
      cfg.override("rotation.steps", "150");
      ReportBundle bundle;
      auto frame = std::make_shared<FatouFrame<R>>(MapSpec<R>::quadratic(R(ren_args.alpha)));
      auto rr = make_renormalization<R>(frame);
      auto est = rotation_number_estimate<R>(*rr.map, R("0.001"), 150);
      VerifyReport rep;
      rep.id = "renormalization-rotation";
      rep.region = "alpha=" + ren_args.alpha;
      rep.precision_bits = mantissa_bits<R>();
      rep.samples = est.steps_used;
      rep.checks.push_back(CheckEntry::less(
          "rotation error", std::abs(est.value - static_cast<double>(rr.child_alpha_expected)),
          1e-2));
      rep.fitted.push_back({"k_h", static_cast<double>(rr.k_h), "fitted", "wrapped-band placement"});
      bundle.reports.push_back(rep);
      print_sections(bundle, std::cout);
      return finish_reports(bundle, ren_args.out);
    }

    if (cmd_ver->parsed()) {
      Config cfg;
      if (!ver_args.config_path.empty()) cfg = Config::parse_file(ver_args.config_path);
      if (!ver_sections.empty()) cfg.override("sections", ver_sections);
      if (ver_budget >= 0) cfg.override("gate.budget", std::to_string(ver_budget));
      if (!ver_stamp.empty()) cfg.override("stamp", ver_stamp);
      ReportBundle bundle = lab::run_verification(cfg);
      print_sections(bundle, std::cout);
      return finish_reports(bundle, ver_args.out.empty() ? "fatoulab-verify.json" : ver_args.out);
    }
  } catch (const ConfigError& e) {
    std::cerr << nlohmann::ordered_json{{"error", "config"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::ordered_json{{"error", "runtime"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }
  return 0;
}
