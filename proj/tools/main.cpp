// cyclo: evaluation, randomized identity sweeps, cut-region scans,
// rapidity solving. Exit codes: 0 pass, 1 verification failure,
// 2 usage/domain error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cyclo/branched.hpp"
#include "cyclo/chiral_potts.hpp"
#include "cyclo/complex_io.hpp"
#include "cyclo/fermat.hpp"
#include "cyclo/sampling.hpp"
#include "cyclo/summation.hpp"
#include "cyclo/transforms.hpp"

using nlohmann::json;
using namespace cyclo;

namespace {

constexpr const char* kSchemaVersion = "cyclo/1";

json jc(Complex z) { return json::array({z.real(), z.imag()}); }

json jconfig(const NumericConfig& c) {
  return {{"on_cut_tol", c.on_cut_tol},
          {"identity_tol", c.identity_tol},
          {"exact_tol", c.exact_tol},
          {"boundary_margin", c.boundary_margin}};
}

struct IntRange {
  int lo = 0, hi = 0;
};

struct RealRange {
  double lo = 0.0, hi = 0.0;
};

IntRange parse_int_range(const std::string& s) {
  IntRange r;
  const auto pos = s.find("..");
  if (pos == std::string::npos) {
    r.lo = r.hi = std::stoi(s);
  } else {
    r.lo = std::stoi(s.substr(0, pos));
    r.hi = std::stoi(s.substr(pos + 2));
  }
  if (r.lo < 2 || r.hi < r.lo)
    throw DomainError("bad N range '" + s + "' (want e.g. 3 or 2..7)");
  return r;
}

RealRange parse_real_range(const std::string& s) {
  RealRange r;
  const auto pos = s.find("..");
  if (pos == std::string::npos)
    throw DomainError("bad magnitude range '" + s + "' (want lo..hi)");
  r.lo = std::stod(s.substr(0, pos));
  r.hi = std::stod(s.substr(pos + 2));
  if (!(r.lo > 0.0) || !(r.hi >= r.lo))
    throw DomainError("bad magnitude range '" + s + "'");
  return r;
}

// stdout by default, a file when --output is given
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw DomainError("cannot open output file '" + path + "'");
    os = &file;
  }
  std::ostream& out() { return *os; }
};

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// ---------------------------------------------------------------- verify

struct SweepConfig {
  IntRange n_range{2, 5};
  long samples = 1000;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  RealRange mag{0.0, 0.0};  // 0 means per-identity default
  bool json_out = false;
};

struct SweepTally {
  long total = 0, passed = 0, failed = 0, skipped = 0;
  double max_residual = 0.0;
  std::map<std::string, long> regions;
};

std::uint64_t sweep_seed(std::uint64_t seed, int n) {
  return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(n);
}

void emit_sample(Sink& sink, const SweepConfig& cfg, const json& rec) {
  if (cfg.json_out) {
    sink.out() << rec.dump() << "\n";
  } else if (!rec.value("pass", true)) {
    sink.out() << "FAIL " << rec["identity"].get<std::string>() << " N="
               << rec["N"].get<int>() << " sample=" << rec["sample"].get<long>()
               << " residual=" << fmt(rec["residual"].get<double>()) << "\n";
  }
}

int emit_summary(Sink& sink, const std::string& identity,
                 const SweepConfig& cfg, const SweepTally& tally) {
  if (cfg.json_out) {
    json s = {{"schema", kSchemaVersion},
              {"kind", "summary"},
              {"identity", identity},
              {"config",
               {{"N", {cfg.n_range.lo, cfg.n_range.hi}},
                {"samples", cfg.samples},
                {"seed", cfg.seed},
                {"tolerance", cfg.tolerance},
                {"magnitude_range", {cfg.mag.lo, cfg.mag.hi}},
                {"numeric", jconfig(default_config())}}},
              {"total", tally.total},
              {"passed", tally.passed},
              {"failed", tally.failed},
              {"skipped", tally.skipped},
              {"max_residual", tally.max_residual}};
    if (!tally.regions.empty()) s["regions"] = tally.regions;
    sink.out() << s.dump() << "\n";
  } else {
    sink.out() << identity << ": " << tally.passed << "/" << tally.total
               << " passed, " << tally.failed << " failures, " << tally.skipped
               << " skipped, max residual " << fmt(tally.max_residual) << "\n";
    if (!tally.regions.empty()) {
      sink.out() << "  regions:";
      for (const auto& [name, count] : tally.regions)
        sink.out() << " " << name << "=" << count;
      sink.out() << "\n";
    }
  }
  return tally.failed == 0 ? 0 : 1;
}

// Draw samples until `body` returns a record; library rejections
// (on-cut, boundary, degenerate draws) are resampled and counted.
template <typename Body>
void rejection_loop(long samples, SweepTally& tally, Body body) {
  for (long s = 0; s < samples; ++s) {
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 500)
        throw DomainError("sampling stalled: 500 consecutive rejections");
      try {
        body(s);
        break;
      } catch (const Error&) {
        ++tally.skipped;
      }
    }
  }
}

json base_record(const std::string& identity, int n, long sample) {
  return {{"schema", kSchemaVersion},
          {"kind", "sample"},
          {"identity", identity},
          {"N", n},
          {"sample", sample}};
}

void score(SweepTally& tally, double residual, double tol, json& rec) {
  const bool pass = residual < tol;
  rec["residual"] = residual;
  rec["pass"] = pass;
  ++tally.total;
  if (pass)
    ++tally.passed;
  else
    ++tally.failed;
  if (residual > tally.max_residual) tally.max_residual = residual;
}

int verify_summation(const SweepConfig& cfg, Sink& sink) {
  SweepTally tally;
  const RealRange mag = cfg.mag.hi > 0 ? cfg.mag : RealRange{0.25, 3.0};
  for (int n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n) {
    UnityContext ctx(n);
    Sampler smp(sweep_seed(cfg.seed, n));
    rejection_loop(cfg.samples, tally, [&](long s) {
      const Complex a = smp.annulus(mag.lo, mag.hi);
      const Complex b = smp.annulus(mag.lo, mag.hi);
      const int k = smp.uniform_int(0, n - 1);
      SummationInput in{BranchedValue::principal(a, ctx),
                        BranchedValue::principal(b, ctx), k};
      const RegionTag tag = classify_region(in, ctx);
      const Complex lhs = closed_form(in, ctx);
      const Complex rhs = phi_eval(to_hyp_spec(in, ctx));
      const DerivedQuantities dq = derived_quantities(in, ctx);
      json rec = base_record("summation", n, s);
      rec["params"] = {{"alpha", jc(a)}, {"beta", jc(b)}, {"k", k}};
      rec["region"] = region_name(tag.region);
      rec["im_alpha_n_positive"] = tag.im_alpha_positive;
      rec["m"] = dq.m;
      rec["n_sector"] = dq.n;
      rec["phase_exponent"] = region_phase_exponent(tag, dq.m, dq.n, k, ctx);
      rec["lhs"] = jc(lhs);
      rec["rhs"] = jc(rhs);
      score(tally, rel_residual(lhs, rhs), cfg.tolerance, rec);
      ++tally.regions[region_name(tag.region)];
      emit_sample(sink, cfg, rec);
    });
  }
  return emit_summary(sink, "summation", cfg, tally);
}

Phi1Params draw_triple(Sampler& smp, const RealRange& mag,
                       const UnityContext& ctx) {
  return Phi1Params::principal(smp.annulus(mag.lo, mag.hi),
                               smp.annulus(mag.lo, mag.hi), ctx,
                               smp.uniform_int(0, ctx.n() - 1));
}

int verify_z4(const SweepConfig& cfg, Sink& sink) {
  SweepTally tally;
  const RealRange mag = cfg.mag.hi > 0 ? cfg.mag : RealRange{0.2, 2.5};
  for (int n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n) {
    UnityContext ctx(n);
    Sampler smp(sweep_seed(cfg.seed, n));
    rejection_loop(cfg.samples, tally, [&](long s) {
      const Phi1Params p = draw_triple(smp, mag, ctx);
      const Z4Report rep = cyclo::verify_z4(p, ctx);
      double worst = 0.0;
      for (double r : rep.residuals) worst = std::max(worst, r);
      json rec = base_record("z4", n, s);
      rec["params"] = {{"alpha", jc(p.alpha)},
                       {"beta", jc(p.beta)},
                       {"gamma", jc(p.gamma)}};
      rec["values"] = {jc(rep.values[0]), jc(rep.values[1]), jc(rep.values[2]),
                       jc(rep.values[3])};
      score(tally, worst, cfg.tolerance, rec);
      emit_sample(sink, cfg, rec);
    });
  }
  return emit_summary(sink, "z4", cfg, tally);
}

int verify_recurrence(const SweepConfig& cfg, Sink& sink) {
  SweepTally tally;
  const RealRange mag = cfg.mag.hi > 0 ? cfg.mag : RealRange{0.2, 2.5};
  for (int n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n) {
    UnityContext ctx(n);
    Sampler smp(sweep_seed(cfg.seed, n));
    rejection_loop(cfg.samples, tally, [&](long s) {
      const Phi1Params p = draw_triple(smp, mag, ctx);
      const long shift = smp.uniform_int(0, 2 * n);
      const IdentityReport rep = recurrence_check(p, shift, ctx);
      json rec = base_record("recurrence", n, s);
      rec["params"] = {{"alpha", jc(p.alpha)},
                       {"beta", jc(p.beta)},
                       {"gamma", jc(p.gamma)},
                       {"shift", shift}};
      rec["lhs"] = jc(rep.lhs);
      rec["rhs"] = jc(rep.rhs);
      score(tally, rep.residual, cfg.tolerance, rec);
      emit_sample(sink, cfg, rec);
    });
  }
  return emit_summary(sink, "recurrence", cfg, tally);
}

json phi2_params_json(const Phi2Params& p) {
  return {{"alpha1", jc(p.first.alpha)},   {"beta1", jc(p.first.beta)},
          {"gamma1", jc(p.first.gamma)},   {"alpha2", jc(p.second.alpha)},
          {"beta2", jc(p.second.beta)},    {"gamma2", jc(p.second.gamma)},
          {"z", jc(p.z)}};
}

// convolution, transform-3phi2, m-transform share the sampling shape
int verify_phi2(const std::string& identity, const SweepConfig& cfg,
                Sink& sink) {
  SweepTally tally;
  const RealRange mag = cfg.mag.hi > 0 ? cfg.mag : RealRange{0.2, 2.5};
  for (int n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n) {
    UnityContext ctx(n);
    Sampler smp(sweep_seed(cfg.seed, n));
    rejection_loop(cfg.samples, tally, [&](long s) {
      const Phi2Params p = Phi2Params::from_components(
          draw_triple(smp, mag, ctx), draw_triple(smp, mag, ctx));
      IdentityReport rep;
      if (identity == "convolution")
        rep = convolution_3phi2(p, ctx);
      else if (identity == "transform-3phi2")
        rep = transform_3phi2(p, ctx).report;
      else
        rep = m_transform(p, ctx).report;
      json rec = base_record(identity, n, s);
      rec["params"] = phi2_params_json(p);
      rec["lhs"] = jc(rep.lhs);
      rec["rhs"] = jc(rep.rhs);
      score(tally, rep.residual, cfg.tolerance, rec);
      emit_sample(sink, cfg, rec);
    });
  }
  return emit_summary(sink, identity, cfg, tally);
}

RapidityPoint draw_rapidity(Sampler& smp, const Moduli& mod,
                            const UnityContext& ctx) {
  return solve_rapidity(
      mod, smp.annulus(0.3, 1.4),
      smp.uniform01() < 0.5 ? LambdaBranch::Inside : LambdaBranch::Outside,
      ctx, smp.uniform_int(0, ctx.n() - 1), smp.uniform_int(0, ctx.n() - 1));
}

int verify_star_triangle(const SweepConfig& cfg, Sink& sink) {
  SweepTally tally;
  for (int n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n) {
    UnityContext ctx(n);
    Sampler smp(sweep_seed(cfg.seed, n));
    rejection_loop(cfg.samples, tally, [&](long s) {
      const Moduli mod = Moduli::from_kprime(smp.uniform(0.15, 0.9), ctx);
      const RapidityPoint p = draw_rapidity(smp, mod, ctx);
      const RapidityPoint q = draw_rapidity(smp, mod, ctx);
      const RapidityPoint r = draw_rapidity(smp, mod, ctx);
      const StarTriangleReport rep = star_triangle_check(p, q, r, ctx);
      json rec = base_record("star-triangle", n, s);
      rec["params"] = {{"kprime", jc(mod.kprime)},
                       {"tp", jc(p.t)},
                       {"tq", jc(q.t)},
                       {"tr", jc(r.t)}};
      rec["mean_ratio"] = jc(rep.mean_ratio);
      score(tally, rep.spin_spread, cfg.tolerance, rec);
      emit_sample(sink, cfg, rec);
    });
  }
  return emit_summary(sink, "star-triangle", cfg, tally);
}

int verify_psi(const SweepConfig& cfg, Sink& sink) {
  SweepTally tally;
  for (int n = cfg.n_range.lo; n <= cfg.n_range.hi; ++n) {
    UnityContext ctx(n);
    Sampler smp(sweep_seed(cfg.seed, n));
    rejection_loop(cfg.samples, tally, [&](long s) {
      auto rnd_pt = [&] {
        return affine_to_fermat(
            BranchedValue::principal(smp.annulus(0.15, 0.85), ctx), ctx);
      };
      const int r = 1 + smp.uniform_int(0, 2);
      std::vector<FermatPoint> num, den;
      for (int i = 0; i < r; ++i) {
        num.push_back(rnd_pt());
        den.push_back(rnd_pt());
      }
      const long shift = smp.uniform_int(0, n - 1);
      const PsiTranslation tr = translate_psi(num, den, shift, ctx);
      const Complex lhs = psi_direct(num, den, shift, ctx);
      const Complex rhs = tr.prefactor * phi_eval(tr.spec);
      json rec = base_record("psi-translation", n, s);
      rec["params"] = {{"order", r}, {"shift", shift}};
      rec["lhs"] = jc(lhs);
      rec["rhs"] = jc(rhs);
      score(tally, rel_residual(lhs, rhs), cfg.tolerance, rec);
      emit_sample(sink, cfg, rec);
    });
  }
  return emit_summary(sink, "psi-translation", cfg, tally);
}

// ------------------------------------------------------------------ eval

void print_eval(Sink& sink, bool json_out, const std::string& kind,
                json rec, Complex value) {
  rec["schema"] = kSchemaVersion;
  rec["kind"] = kind;
  rec["value"] = jc(value);
  rec["numeric"] = jconfig(default_config());
  if (json_out)
    sink.out() << rec.dump() << "\n";
  else
    sink.out() << format_complex(value) << "\n";
}

void print_eval_real(Sink& sink, bool json_out, const std::string& kind,
                     json rec, double value) {
  rec["schema"] = kSchemaVersion;
  rec["kind"] = kind;
  rec["value"] = value;
  rec["numeric"] = jconfig(default_config());
  if (json_out)
    sink.out() << rec.dump() << "\n";
  else
    sink.out() << fmt(value) << "\n";
}

// ----------------------------------------------------------- scan-regions

int run_scan(int n, Complex alpha, int k, int grid, double extent,
             bool json_out, Sink& sink) {
  UnityContext ctx(n);
  const BranchedValue a = BranchedValue::principal(alpha, ctx);
  if (!json_out)
    sink.out() << "beta_re,beta_im,status,region,classifier_exponent,"
                  "oracle_exponent,agree\n";
  long agree = 0, disagree = 0, skipped = 0;
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      // cell centers, so the axes (common cut locations) are avoided
      // unless the grid is dense enough to deserve the skip marker
      const double re = -extent + (2.0 * extent) * (ix + 0.5) / grid;
      const double im = -extent + (2.0 * extent) * (iy + 0.5) / grid;
      const Complex beta{re, im};
      json rec = {{"schema", kSchemaVersion},
                  {"kind", "scan-point"},
                  {"beta", jc(beta)}};
      try {
        SummationInput in{a, BranchedValue::principal(beta, ctx), k};
        const RegionTag tag = classify_region(in, ctx);
        const DerivedQuantities dq = derived_quantities(in, ctx);
        const int cls = region_phase_exponent(tag, dq.m, dq.n, k, ctx);
        const int orc = oracle_phase(in, ctx);
        const bool ok = cls == orc;
        ok ? ++agree : ++disagree;
        if (json_out) {
          rec["status"] = "ok";
          rec["region"] = region_name(tag.region);
          rec["classifier_exponent"] = cls;
          rec["oracle_exponent"] = orc;
          rec["agree"] = ok;
          sink.out() << rec.dump() << "\n";
        } else {
          sink.out() << fmt(re) << "," << fmt(im) << ",ok,"
                     << region_name(tag.region) << "," << cls << "," << orc
                     << "," << (ok ? "true" : "false") << "\n";
        }
      } catch (const Error&) {
        ++skipped;
        if (json_out) {
          rec["status"] = "skipped";
          sink.out() << rec.dump() << "\n";
        } else {
          sink.out() << fmt(re) << "," << fmt(im) << ",skipped,,,,\n";
        }
      }
    }
  }
  if (json_out) {
    json s = {{"schema", kSchemaVersion}, {"kind", "summary"},
              {"agree", agree},           {"disagree", disagree},
              {"skipped", skipped},       {"numeric", jconfig(default_config())}};
    sink.out() << s.dump() << "\n";
  } else {
    sink.out() << "# agree=" << agree << " disagree=" << disagree
               << " skipped=" << skipped << "\n";
  }
  return disagree == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclic hypergeometric / chiral Potts toolbox"};
  app.require_subcommand(1);

  std::string output_path;
  bool json_out = false;

  // ---- eval
  auto* eval = app.add_subcommand("eval", "single evaluation with metadata");
  eval->require_subcommand(1);
  int ev_n = 3, ev_k = 0, ev_spin = 0, ev_order_n = 1;
  std::string ev_alpha = "0+0i", ev_beta = "0+0i", ev_z = "0+0i";
  std::string ev_tp = "0.5+0i", ev_tq = "0.7+0i", ev_kind_w = "W";
  double ev_kprime = 0.5;

  auto add_common = [&](CLI::App* c) {
    c->add_flag("--json", json_out, "emit a JSON document");
    c->add_option("--output", output_path, "write to file instead of stdout");
  };

  auto* ev_series = eval->add_subcommand("series", "cyclic 2Phi1 sum");
  ev_series->add_option("--N", ev_n)->required();
  ev_series->add_option("--alpha", ev_alpha)->required();
  ev_series->add_option("--beta", ev_beta)->required();
  ev_series->add_option("--k", ev_k);
  add_common(ev_series);

  auto* ev_closed = eval->add_subcommand("closed-form", "product-form 2Phi1");
  ev_closed->add_option("--N", ev_n)->required();
  ev_closed->add_option("--alpha", ev_alpha)->required();
  ev_closed->add_option("--beta", ev_beta)->required();
  ev_closed->add_option("--k", ev_k);
  add_common(ev_closed);

  auto* ev_p = eval->add_subcommand("p", "p(z)");
  ev_p->add_option("--N", ev_n)->required();
  ev_p->add_option("--z", ev_z)->required();
  add_common(ev_p);

  auto* ev_p0 = eval->add_subcommand("p0", "p0(z)");
  ev_p0->add_option("--N", ev_n)->required();
  ev_p0->add_option("--z", ev_z)->required();
  add_common(ev_p0);

  auto* ev_delta = eval->add_subcommand("delta", "(1 - z^N)^{1/N}");
  ev_delta->add_option("--N", ev_n)->required();
  ev_delta->add_option("--z", ev_z)->required();
  add_common(ev_delta);

  auto* ev_op = eval->add_subcommand("order-param", "<sigma_0^n>");
  ev_op->add_option("--N", ev_n)->required();
  ev_op->add_option("--n", ev_order_n)->required();
  ev_op->add_option("--kprime", ev_kprime)->required();
  add_common(ev_op);

  auto* ev_w = eval->add_subcommand("weight", "Boltzmann weight W_pq(n)");
  ev_w->add_option("--N", ev_n)->required();
  ev_w->add_option("--kprime", ev_kprime)->required();
  ev_w->add_option("--tp", ev_tp, "t of rapidity p")->required();
  ev_w->add_option("--tq", ev_tq, "t of rapidity q")->required();
  ev_w->add_option("--n", ev_spin)->required();
  ev_w->add_option("--kind", ev_kind_w, "W or Wbar");
  add_common(ev_w);

  // ---- verify
  auto* verify = app.add_subcommand("verify", "randomized identity sweep");
  std::string vf_identity, vf_nrange = "2..5", vf_mag;
  SweepConfig cfg;
  verify
      ->add_option("identity", vf_identity,
                   "summation | z4 | convolution | transform-3phi2 | "
                   "m-transform | star-triangle | psi-translation | recurrence")
      ->required();
  verify->add_option("--N", vf_nrange, "N or lo..hi");
  verify->add_option("--samples", cfg.samples);
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--tolerance", cfg.tolerance);
  verify->add_option("--mag-range", vf_mag, "|alpha|,|beta| range lo..hi");
  verify->add_flag("--json", json_out, "JSON-lines stream + JSON summary");
  verify->add_option("--output", output_path, "write to file instead of stdout");

  // ---- scan-regions
  auto* scan = app.add_subcommand("scan-regions",
                                  "classifier/oracle grid over beta");
  int sc_n = 3, sc_k = 0, sc_grid = 21;
  double sc_extent = 2.0;
  std::string sc_alpha;
  scan->add_option("--N", sc_n)->required();
  scan->add_option("--alpha", sc_alpha)->required();
  scan->add_option("--k", sc_k);
  scan->add_option("--grid", sc_grid, "points per axis");
  scan->add_option("--extent", sc_extent, "grid covers [-extent, extent]^2");
  scan->add_flag("--json", json_out, "JSON-lines instead of CSV");
  scan->add_option("--output", output_path, "write to file instead of stdout");

  // ---- rapidity
  auto* rap = app.add_subcommand("rapidity", "solve the curve for given t");
  int rp_n = 3, rp_mu = 0, rp_x = 0;
  double rp_kprime = 0.5;
  std::string rp_t = "0.7+0.2i", rp_branch = "inside";
  rap->add_option("--N", rp_n)->required();
  rap->add_option("--kprime", rp_kprime)->required();
  rap->add_option("--t", rp_t)->required();
  rap->add_option("--branch", rp_branch, "inside or outside");
  rap->add_option("--mu-index", rp_mu);
  rap->add_option("--x-index", rp_x);
  rap->add_flag("--json", json_out, "emit a JSON document");
  rap->add_option("--output", output_path, "write to file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage errors map to 2, --help to 0
  }

  Sink sink;
  try {
    sink.open(output_path);

    if (app.got_subcommand(eval)) {
      UnityContext ctx(ev_n);
      if (eval->got_subcommand(ev_series) ||
          eval->got_subcommand(ev_closed)) {
        const Complex a = parse_complex(ev_alpha);
        const Complex b = parse_complex(ev_beta);
        SummationInput in{BranchedValue::principal(a, ctx),
                          BranchedValue::principal(b, ctx), ev_k};
        const DerivedQuantities dq = derived_quantities(in, ctx);
        json rec = {{"N", ev_n},
                    {"alpha", jc(a)},
                    {"beta", jc(b)},
                    {"k", ev_k},
                    {"m", dq.m},
                    {"n_sector", dq.n},
                    {"gamma", jc(dq.gamma)}};
        if (eval->got_subcommand(ev_series)) {
          print_eval(sink, json_out, "series", rec,
                     phi_eval(to_hyp_spec(in, ctx)));
        } else {
          const RegionTag tag = classify_region(in, ctx);
          rec["region"] = region_name(tag.region);
          rec["phase_exponent"] =
              region_phase_exponent(tag, dq.m, dq.n, ev_k, ctx);
          print_eval(sink, json_out, "closed-form", rec, closed_form(in, ctx));
        }
      } else if (eval->got_subcommand(ev_p)) {
        const Complex z = parse_complex(ev_z);
        print_eval(sink, json_out, "p", {{"N", ev_n}, {"z", jc(z)}},
                   p_func(z, ctx));
      } else if (eval->got_subcommand(ev_p0)) {
        const Complex z = parse_complex(ev_z);
        print_eval(sink, json_out, "p0", {{"N", ev_n}, {"z", jc(z)}},
                   p0(z, ctx));
      } else if (eval->got_subcommand(ev_delta)) {
        const Complex z = parse_complex(ev_z);
        print_eval(sink, json_out, "delta", {{"N", ev_n}, {"z", jc(z)}},
                   delta(z, ctx));
      } else if (eval->got_subcommand(ev_op)) {
        print_eval_real(sink, json_out, "order-param",
                        {{"N", ev_n}, {"n", ev_order_n}, {"kprime", ev_kprime}},
                        order_parameter(ev_order_n, ev_n, ev_kprime));
      } else {  // weight
        const Moduli mod = Moduli::from_kprime(ev_kprime, ctx);
        const RapidityPoint p = solve_rapidity(mod, parse_complex(ev_tp),
                                               LambdaBranch::Inside, ctx);
        const RapidityPoint q = solve_rapidity(mod, parse_complex(ev_tq),
                                               LambdaBranch::Inside, ctx);
        const Complex w = ev_kind_w == "Wbar"
                              ? weight_Wbar(p, q, ev_spin, ctx)
                              : weight_W(p, q, ev_spin, ctx);
        print_eval(sink, json_out, "weight",
                   {{"N", ev_n},
                    {"kprime", ev_kprime},
                    {"tp", jc(p.t)},
                    {"tq", jc(q.t)},
                    {"n", ev_spin},
                    {"weight_kind", ev_kind_w}},
                   w);
      }
      return 0;
    }

    if (app.got_subcommand(verify)) {
      cfg.n_range = parse_int_range(vf_nrange);
      if (!vf_mag.empty()) cfg.mag = parse_real_range(vf_mag);
      cfg.json_out = json_out;
      if (cfg.samples < 1) throw DomainError("--samples must be >= 1");
      if (!(cfg.tolerance > 0)) throw DomainError("--tolerance must be > 0");
      if (vf_identity == "summation") return verify_summation(cfg, sink);
      if (vf_identity == "z4") return verify_z4(cfg, sink);
      if (vf_identity == "recurrence") return verify_recurrence(cfg, sink);
      if (vf_identity == "convolution" || vf_identity == "transform-3phi2" ||
          vf_identity == "m-transform")
        return verify_phi2(vf_identity, cfg, sink);
      if (vf_identity == "star-triangle") return verify_star_triangle(cfg, sink);
      if (vf_identity == "psi-translation") return verify_psi(cfg, sink);
      throw DomainError("unknown identity '" + vf_identity + "'");
    }

    if (app.got_subcommand(scan)) {
      return run_scan(sc_n, parse_complex(sc_alpha), sc_k, sc_grid, sc_extent,
                      json_out, sink);
    }

    // rapidity
    UnityContext ctx(rp_n);
    if (rp_branch != "inside" && rp_branch != "outside")
      throw DomainError("--branch must be inside or outside");
    const Moduli mod = Moduli::from_kprime(rp_kprime, ctx);
    const RapidityPoint p = solve_rapidity(
        mod, parse_complex(rp_t),
        rp_branch == "outside" ? LambdaBranch::Outside : LambdaBranch::Inside,
        ctx, rp_mu, rp_x);
    const double res = curve_residual(p, ctx);
    if (json_out) {
      json rec = {{"schema", kSchemaVersion},
                  {"kind", "rapidity"},
                  {"N", rp_n},
                  {"kprime", rp_kprime},
                  {"branch", rp_branch},
                  {"t", jc(p.t)},
                  {"x", jc(p.x)},
                  {"y", jc(p.y)},
                  {"mu", jc(p.mu)},
                  {"lambda", jc(p.lambda)},
                  {"curve_residual", res},
                  {"numeric", jconfig(default_config())}};
      sink.out() << rec.dump() << "\n";
    } else {
      sink.out() << "x = " << format_complex(p.x) << "\n"
                 << "y = " << format_complex(p.y) << "\n"
                 << "mu = " << format_complex(p.mu) << "\n"
                 << "lambda = " << format_complex(p.lambda) << "\n"
                 << "curve residual = " << fmt(res) << "\n";
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
