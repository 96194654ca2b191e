// Command-line front end: integrate, polefield, strings, backlund, series,
// rescale, special, verify.

#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "pnlv/io.hpp"
#include "pnlv/verify.hpp"

using namespace pnlv;

namespace {

std::map<std::string, std::string> parse_kv(const std::string& text, size_t from = 0) {
  std::map<std::string, std::string> kv;
  size_t pos = from;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const size_t eq = item.find('=');
    if (eq != std::string::npos) kv[item.substr(0, eq)] = item.substr(eq + 1);
    pos = comma + 1;
  }
  return kv;
}

EquationSpec equation_from_config(const RunConfig& cfg) {
  const Complex alpha = parse_complex(cfg.alpha);
  const Complex beta = parse_complex(cfg.beta);
  const GammaBranch branch =
      cfg.gammaBranch == "minus" ? GammaBranch::Minus : GammaBranch::Plus;
  if (cfg.eq == "i") return EquationSpec::p1();
  if (cfg.eq == "ii") return EquationSpec::p2(alpha);
  if (cfg.eq == "iv") return EquationSpec::p4(alpha, beta, branch);
  throw WrongParameters("--eq must be i, ii or iv");
}

PathSpec path_from_string(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) throw WrongParameters("path: expected kind:args");
  const std::string kind = text.substr(0, colon);
  std::vector<std::string> args;
  size_t pos = colon + 1;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    args.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  if (kind == "segment" && args.size() == 2)
    return PathSpec::segment(parse_complex(args[0]), parse_complex(args[1]));
  if (kind == "ray" && args.size() == 3)
    return PathSpec::ray(parse_complex(args[0]), std::stod(args[1]), std::stod(args[2]));
  if (kind == "circle" && args.size() >= 2)
    return PathSpec::circle(parse_complex(args[0]), std::stod(args[1]),
                            args.size() > 2 ? std::stod(args[2]) : 1.0);
  if (kind == "polyline" && args.size() >= 2) {
    std::vector<Complex> pts;
    for (const auto& a : args) pts.push_back(parse_complex(a));
    return PathSpec::polyline(pts);
  }
  throw WrongParameters("bad path descriptor: " + text);
}

RegionSpec region_from_string(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos || text.substr(0, colon) != "annulus")
    throw WrongParameters("region: expected annulus:r0,r1[,theta0,theta1]");
  std::vector<double> vals;
  size_t pos = colon + 1;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    vals.push_back(std::stod(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  RegionSpec region;
  if (vals.size() < 2) throw WrongParameters("region: need r0,r1");
  region.r0 = vals[0];
  region.r1 = vals[1];
  if (vals.size() >= 4) {
    region.theta0 = vals[2];
    region.theta1 = vals[3];
  }
  return region;
}

struct SeedContext {
  SolutionFn accessor;     // may be empty for plain jets
  Jet jet;                 // starting jet when a path origin is known
  bool hasJet = false;
  EquationSpec eq;         // possibly refined by the seed (special solutions)
  std::string description;
};

SeedContext seed_from_config(const RunConfig& cfg, const PathSpec* path) {
  SeedContext ctx;
  ctx.eq = equation_from_config(cfg);
  ctx.description = cfg.seed;
  const std::string& text = cfg.seed;
  const size_t colon = text.find(':');
  const std::string kind = colon == std::string::npos ? text : text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  if (kind == "jet") {
    const auto kv = parse_kv(rest);
    ctx.jet.z = parse_complex(kv.at("z"));
    ctx.jet.w = parse_complex(kv.at("w"));
    ctx.jet.w1 = parse_complex(kv.at("w1"));
    if (kv.count("w2")) ctx.jet.w2 = parse_complex(kv.at("w2"));
    else if (ctx.eq.kind == EquationKind::PIV) ctx.jet.w2 = rhs(ctx.eq, ctx.jet);
    ctx.hasJet = true;
    return ctx;
  }
  if (kind == "pole") {
    const auto kv = parse_kv(rest);
    PoleSeed seed;
    seed.eq = ctx.eq;
    seed.p = parse_complex(kv.at("p"));
    seed.eps = kv.count("eps") ? std::stoi(kv.at("eps")) : 1;
    seed.h = kv.count("h") ? parse_complex(kv.at("h")) : Complex{0.0};
    const Complex offset = kv.count("offset") ? parse_complex(kv.at("offset"))
                                              : Complex{pole_disc_radius(ctx.eq, seed.p)};
    ctx.jet = seed_jet(seed, offset, 16);
    ctx.hasJet = true;
    return ctx;
  }
  if (kind == "special" || kind == "chain") {
    if (kind == "chain") {
      const auto kv = parse_kv(rest);
      const int order = std::stoi(kv.at("order"));
      const Complex alpha = parse_complex(kv.at("alpha"));
      const bool rotate = kv.count("rotate") && kv.at("rotate") == "1";
      const auto chain = chain_build(order, rotate ? -alpha : alpha);
      const Complex u0 = kv.count("u0") ? parse_complex(kv.at("u0")) : Complex{1.0};
      const Complex u1 = kv.count("u1") ? parse_complex(kv.at("u1")) : Complex{0.7};
      const auto wh =
          LinearizedSolution::weber_hermite(chain[0].gamma, RootBranch::Plus, u0, u1);
      ctx.accessor = make_chain_accessor(wh, chain);
      ctx.eq = chain.back().equation();
      if (rotate) {
        ctx.accessor = make_rotated_accessor(ctx.accessor);
        ctx.eq = EquationSpec::p4_gamma(-chain.back().alpha, chain.back().gamma);
      }
    } else {
      const size_t comma = rest.find(',');
      const std::string sub = rest.substr(0, comma == std::string::npos ? rest.size() : comma);
      const auto kv = parse_kv(rest, comma == std::string::npos ? rest.size() : comma + 1);
      const RootBranch branch = kv.count("branch") && kv.at("branch") == "minus"
                                    ? RootBranch::Minus
                                    : RootBranch::Plus;
      if (sub == "wh") {
        const auto sol = LinearizedSolution::weber_hermite(
            parse_complex(kv.at("gamma")), branch,
            kv.count("u0") ? parse_complex(kv.at("u0")) : Complex{1.0},
            kv.count("u1") ? parse_complex(kv.at("u1")) : Complex{1.0});
        ctx.eq = sol.equation();
        ctx.accessor = make_accessor(sol);
      } else if (sub == "airy") {
        const auto sol = LinearizedSolution::airy(
            branch, kv.count("u0") ? parse_complex(kv.at("u0")) : Complex{1.0},
            kv.count("u1") ? parse_complex(kv.at("u1")) : Complex{0.0});
        ctx.eq = sol.equation();
        ctx.accessor = make_accessor(sol);
      } else if (sub == "rational") {
        const auto sols = rational_solutions(ctx.eq);
        const size_t index = kv.count("index") ? std::stoul(kv.at("index")) : 0;
        if (index >= sols.size()) throw WrongParameters("rational index out of range");
        const auto sol = sols[index];
        ctx.accessor = [sol](Complex z) { return sol.jet(z); };
      } else if (sub == "hm") {
        const double tolerance = kv.count("tolerance") ? std::stod(kv.at("tolerance")) : 1e-8;
        const auto hm = hastings_mcleod_shoot(tolerance);
        ctx.eq = EquationSpec::p2(0.0);
        ctx.jet = hm.jetAtZero;
        ctx.hasJet = true;
        return ctx;
      } else {
        throw WrongParameters("unknown special seed: " + sub);
      }
    }
    if (path) {
      ctx.jet = ctx.accessor(path->start());
      ctx.hasJet = true;
    }
    return ctx;
  }
  throw WrongParameters("unknown seed descriptor: " + text);
}

void print_report(const VerifyReport& rep) {
  for (const auto& c : rep.checks) {
    std::printf("%s  %-18s %-55s measured=%-12.4g threshold=%-10.3g %s\n",
                c.passed ? "PASS" : "FAIL", rep.suite.c_str(), c.name.c_str(), c.measured,
                c.threshold, c.note.c_str());
  }
}

int cmd_integrate(const RunConfig& cfg, const std::string& outCsv, const std::string& outEvents) {
  const PathSpec path = path_from_string(cfg.path);
  const SeedContext ctx = seed_from_config(cfg, &path);
  IntegrateOptions opts;
  opts.tol = cfg.tol;
  opts.laurentOrder = cfg.order;
  const auto traj = integrate(ctx.eq, ctx.jet, path, opts);
  if (!outCsv.empty()) write_file(outCsv, trajectory_to_csv(traj, cfg));
  if (!outEvents.empty()) {
    json j;
    j["events"] = pole_events_to_json(traj.poleEvents);
    write_file(outEvents, finalize_json(std::move(j), cfg));
  }
  std::printf("integrated %zu samples, %d pole hops, max |C| drift %.3g, max W drift %.3g\n",
              traj.samples.size(), traj.diag.poleHops, traj.diag.maxConstraintResidual,
              traj.diag.maxWDrift);
  return 0;
}

int cmd_polefield(const RunConfig& cfg, const std::string& outJson, const std::string& outSvg,
                  bool serial) {
  const RegionSpec region = region_from_string(cfg.region);
  const SeedContext ctx = seed_from_config(cfg, nullptr);
  if (!ctx.accessor) throw WrongParameters("polefield needs an accessor seed (special:/chain:)");
  SweepStrategy strategy;
  strategy.tol = cfg.tol;
  strategy.threads = cfg.threads;
  const auto catalog = serial ? sweep_serial(ctx.eq, ctx.accessor, region, strategy)
                              : sweep(ctx.eq, ctx.accessor, region, strategy);
  if (!outJson.empty()) write_file(outJson, finalize_json(catalog_to_json(catalog), cfg));
  if (!outSvg.empty()) write_file(outSvg, catalog_to_svg(catalog));
  std::printf("catalogued %zu poles, %zu zeros, %zu warnings\n", catalog.poles.size(),
              catalog.zeros.size(), catalog.warnings.size());
  return 0;
}

int cmd_strings(const RunConfig& cfg, const std::string& inJson, const std::string& outJson) {
  const json in = json::parse(read_file(inJson));
  const PoleCatalog catalog = catalog_from_json(in);
  std::vector<size_t> unchained;
  const auto strings = cluster_strings(catalog, &unchained);
  for (const auto& s : strings) {
    const auto law = check_string_law(s, catalog);
    std::printf(
        "string: %3zu members  theta*=%7.4f  omega=%s  eps=%+d%s  countCoeff=%.5f  "
        "lemma(gap=%.3g, angle=%.3g, count=%.3g)\n",
        s.memberIndices.size(), s.thetaStar, format_complex(s.omega).c_str(), s.eps,
        s.alternating ? " (alternating)" : "", s.countingCoeff, law.maxIndexGapError,
        law.angleError, law.countingError);
  }
  std::printf("%zu strings, %zu unchained poles\n", strings.size(), unchained.size());
  if (!outJson.empty()) {
    json j;
    j["strings"] = strings_to_json(strings, catalog);
    j["unchained"] = unchained.size();
    write_file(outJson, finalize_json(std::move(j), cfg));
  }
  return 0;
}

int cmd_backlund(const RunConfig& cfg, const std::string& inCsv, const std::string& outCsv,
                 const std::string& outParams, bool inverse, const std::string& gammaText) {
  const auto jets = jets_from_csv(read_file(inCsv));
  ParameterState ps{parse_complex(cfg.alpha), parse_complex(gammaText), {}};
  Trajectory traj;
  traj.eq = ps.equation();
  ParameterState after = ps;
  for (const auto& jet : jets) {
    try {
      auto [tj, tps] = inverse ? biv_inverse(jet, ps) : biv_forward(jet, ps);
      after = tps;
      traj.samples.push_back({std::abs(tj.z), tj, Complex{0.0}});
    } catch (const Error&) {
      // transform undefined at zeros of w; skip the sample
    }
  }
  traj.eq = after.equation();
  if (!outCsv.empty()) write_file(outCsv, trajectory_to_csv(traj, cfg));
  if (!outParams.empty()) {
    json j;
    j["alpha"] = complex_to_json(after.alpha);
    j["gamma"] = complex_to_json(after.gamma);
    j["beta"] = complex_to_json(-2.0 * after.gamma * after.gamma);
    j["history"] = after.history;
    write_file(outParams, finalize_json(std::move(j), cfg));
  }
  std::printf("transformed %zu of %zu jets; new (alpha, gamma) = (%s, %s)\n",
              traj.samples.size(), jets.size(), format_complex(after.alpha).c_str(),
              format_complex(after.gamma).c_str());
  return 0;
}

int cmd_series(const RunConfig& cfg, const std::string& family, const std::string& outJson,
               int N) {
  const EquationSpec eq = equation_from_config(cfg);
  SeriesExpansion series;
  std::string label;
  if (!family.empty()) {
    static const std::map<std::string, FamilyTag> tags = {
        {"i", FamilyTag::I},     {"iia", FamilyTag::IIa},       {"iib", FamilyTag::IIb},
        {"iva", FamilyTag::IVa}, {"ivb", FamilyTag::IVb},       {"ivc+", FamilyTag::IVcPlus},
        {"ivc-", FamilyTag::IVcMinus}};
    if (tags.count(family)) {
      series = asymptotic_series({tags.at(family), RootBranch::Plus}, eq, N);
      label = family;
    } else if (family == "logderiv02" || family == "logderiv13") {
      series = log_derivative_series(
          eq, family == "logderiv02" ? SectorPair::Sigma02 : SectorPair::Sigma13, N);
      label = family;
    } else {
      throw WrongParameters("unknown family: " + family);
    }
  } else {
    const auto kv = parse_kv(cfg.seed.substr(cfg.seed.find(':') + 1));
    PoleSeed seed;
    seed.eq = eq;
    seed.p = parse_complex(kv.at("p"));
    seed.eps = kv.count("eps") ? std::stoi(kv.at("eps")) : 1;
    seed.h = kv.count("h") ? parse_complex(kv.at("h")) : Complex{0.0};
    series = laurent_w(seed, N);
    label = cfg.seed;
  }
  const std::string out = finalize_json(series_to_json(series, label), cfg);
  if (!outJson.empty()) write_file(outJson, out);
  else std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_rescale(const RunConfig& cfg, double theta, double rMin, double rMax, int nSamples,
                const std::string& polesJson, const std::string& outJson) {
  const SeedContext ctx = seed_from_config(cfg, nullptr);
  if (!ctx.accessor) throw WrongParameters("rescale needs an accessor seed");
  std::vector<Complex> poles;
  if (!polesJson.empty()) {
    const auto catalog = catalog_from_json(json::parse(read_file(polesJson)));
    for (const auto& p : catalog.poles) poles.push_back(p.seed.p);
  }
  const auto est = cluster_estimate(ctx.accessor, ctx.eq, theta, rMin, rMax, nSamples, poles);
  const std::string out = finalize_json(cluster_to_json(est), cfg);
  if (!outJson.empty()) write_file(outJson, out);
  else std::fputs(out.c_str(), stdout);
  return 0;
}

int cmd_special(const RunConfig& cfg) {
  const SeedContext ctx = seed_from_config(cfg, nullptr);
  std::printf("equation: kind=%s alpha=%s beta=%s gamma=%s\n", kind_name(ctx.eq.kind),
              format_complex(ctx.eq.alpha).c_str(), format_complex(ctx.eq.beta).c_str(),
              format_complex(ctx.eq.gamma).c_str());
  if (ctx.hasJet) {
    std::printf("jet at z=%s: w=%s w1=%s\n", format_complex(ctx.jet.z).c_str(),
                format_complex(ctx.jet.w).c_str(), format_complex(ctx.jet.w1).c_str());
  } else if (ctx.accessor) {
    for (double x : {1.0, 2.0, 4.0}) {
      try {
        const Jet j = ctx.accessor(Complex{x});
        std::printf("w(%g) = %s\n", x, format_complex(j.w).c_str());
      } catch (const Error& e) {
        std::printf("w(%g): %s\n", x, e.what());
      }
    }
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, bool all) {
  std::vector<std::string> suites;
  if (all) suites = verify_suite_names();
  else suites.push_back(cfg.suite);
  bool ok = true;
  for (const auto& s : suites) {
    const auto rep = run_verify_suite(s, cfg.randomSeed);
    print_report(rep);
    std::printf("%s  suite %-18s (%.1f s)\n\n", rep.passed() ? "PASS" : "FAIL",
                rep.suite.c_str(), rep.seconds);
    ok = ok && rep.passed();
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Painleve I/II/IV laboratory"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string outCsv, outJson, outSvg, outEvents, outParams, inFile, family, gammaText = "0+0i";
  bool serial = false, inverse = false, all = false;
  int order = 8;
  double theta = 0.0, rMin = 10.0, rMax = 30.0;
  int nSamples = 60;

  auto add_eq_flags = [&](CLI::App* sub) {
    sub->add_option("--eq", cfg.eq, "equation: i, ii or iv");
    sub->add_option("--alpha", cfg.alpha, "alpha as a+bi");
    sub->add_option("--beta", cfg.beta, "beta as a+bi");
    sub->add_option("--gamma-branch", cfg.gammaBranch, "plus|minus branch of sqrt(-beta/2)");
    sub->add_option("--tol", cfg.tol, "integration tolerance");
    sub->add_option("--random-seed", cfg.randomSeed, "seed for randomized checks");
    sub->add_option("--threads", cfg.threads, "sweep parallelism cap (0 = auto)");
    sub->set_config("--config", "", "flat key=value config file (JSON also accepted)");
  };

  auto* cIntegrate = app.add_subcommand("integrate", "integrate along a path");
  add_eq_flags(cIntegrate);
  cIntegrate->add_option("--seed", cfg.seed, "jet:|pole:|special:|chain: descriptor")->required();
  cIntegrate->add_option("--path", cfg.path, "segment:|ray:|circle:|polyline: descriptor")
      ->required();
  cIntegrate->add_option("--out", outCsv, "trajectory CSV");
  cIntegrate->add_option("--events", outEvents, "pole events JSON");

  auto* cPolefield = app.add_subcommand("polefield", "sweep a region for poles and zeros");
  add_eq_flags(cPolefield);
  cPolefield->add_option("--seed", cfg.seed)->required();
  cPolefield->add_option("--region", cfg.region, "annulus:r0,r1[,theta0,theta1]")->required();
  cPolefield->add_option("--out", outJson, "pole catalogue JSON");
  cPolefield->add_option("--svg", outSvg, "pole map SVG");
  cPolefield->add_flag("--serial", serial, "use the serial reference sweep");

  auto* cStrings = app.add_subcommand("strings", "cluster a catalogue into strings");
  add_eq_flags(cStrings);
  cStrings->add_option("--in", inFile, "pole catalogue JSON")->required();
  cStrings->add_option("--out", outJson, "strings JSON");

  auto* cBacklund = app.add_subcommand("backlund", "transform a trajectory pointwise");
  add_eq_flags(cBacklund);
  cBacklund->add_option("--in", inFile, "trajectory CSV")->required();
  cBacklund->add_option("--gamma", gammaText, "gamma as a+bi")->required();
  cBacklund->add_flag("--inverse", inverse, "apply the inverse transform");
  cBacklund->add_option("--out", outCsv, "transformed trajectory CSV");
  cBacklund->add_option("--params", outParams, "parameter history JSON");

  auto* cSeries = app.add_subcommand("series", "emit a series expansion");
  add_eq_flags(cSeries);
  cSeries->add_option("--family", family, "i|iia|iib|iva|ivb|ivc+|ivc-|logderiv02|logderiv13");
  cSeries->add_option("--seed", cfg.seed, "pole:p=..,eps=..,h=.. for a Laurent expansion");
  cSeries->add_option("--order", order, "truncation order");
  cSeries->add_option("--out", outJson, "series JSON (stdout when omitted)");

  auto* cRescale = app.add_subcommand("rescale", "cluster-set estimate along a ray");
  add_eq_flags(cRescale);
  cRescale->add_option("--seed", cfg.seed)->required();
  cRescale->add_option("--theta", theta, "ray angle");
  cRescale->add_option("--rmin", rMin);
  cRescale->add_option("--rmax", rMax);
  cRescale->add_option("--samples", nSamples);
  cRescale->add_option("--poles", inFile, "pole catalogue JSON for the admission rule");
  cRescale->add_option("--out", outJson, "cluster JSON (stdout when omitted)");

  auto* cSpecial = app.add_subcommand("special", "exact and shot special solutions");
  add_eq_flags(cSpecial);
  cSpecial->add_option("--seed", cfg.seed, "special:|chain: descriptor")->required();

  auto* cVerify = app.add_subcommand("verify", "machine-checkable claims");
  add_eq_flags(cVerify);
  cVerify->add_option("--suite", cfg.suite, "one suite name");
  cVerify->add_flag("--all", all, "run every suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cIntegrate->parsed()) {
      cfg.subcommand = "integrate";
      return cmd_integrate(cfg, outCsv, outEvents);
    }
    if (cPolefield->parsed()) {
      cfg.subcommand = "polefield";
      return cmd_polefield(cfg, outJson, outSvg, serial);
    }
    if (cStrings->parsed()) {
      cfg.subcommand = "strings";
      return cmd_strings(cfg, inFile, outJson);
    }
    if (cBacklund->parsed()) {
      cfg.subcommand = "backlund";
      return cmd_backlund(cfg, inFile, outCsv, outParams, inverse, gammaText);
    }
    if (cSeries->parsed()) {
      cfg.subcommand = "series";
      cfg.order = order;
      return cmd_series(cfg, family, outJson, order);
    }
    if (cRescale->parsed()) {
      cfg.subcommand = "rescale";
      return cmd_rescale(cfg, theta, rMin, rMax, nSamples, inFile, outJson);
    }
    if (cSpecial->parsed()) {
      cfg.subcommand = "special";
      return cmd_special(cfg);
    }
    if (cVerify->parsed()) {
      cfg.subcommand = "verify";
      if (!all && cfg.suite.empty())
        throw WrongParameters("verify: pass --suite <name> or --all");
      return cmd_verify(cfg, all);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
