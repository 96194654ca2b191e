#include "pnlv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pnlv {

json RunConfig::to_json() const {
  json j;
  j["subcommand"] = subcommand;
  j["eq"] = eq;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["gammaBranch"] = gammaBranch;
  j["seed"] = seed;
  j["path"] = path;
  j["region"] = region;
  j["tol"] = tol;
  j["order"] = order;
  j["suite"] = suite;
  j["randomSeed"] = randomSeed;
  j["threads"] = threads;
  return j;
}

Complex parse_complex(const std::string& text) {
  if (text.empty()) throw WrongParameters("empty complex literal");
  // forms: a, bi, a+bi, a-bi (no spaces)
  std::string s = text;
  double re = 0.0, im = 0.0;
  const bool hasI = s.back() == 'i' || s.back() == 'I';
  if (!hasI) {
    size_t used = 0;
    re = std::stod(s, &used);
    if (used != s.size()) throw WrongParameters("bad complex literal: " + text);
    return Complex{re, 0.0};
  }
  s.pop_back();  // drop the i
  if (s.empty() || s == "+") return kI;
  if (s == "-") return -kI;
  // split at the last +/- that is not an exponent sign
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) {
    size_t used = 0;
    im = std::stod(s, &used);
    if (used != s.size()) throw WrongParameters("bad complex literal: " + text);
    return Complex{0.0, im};
  }
  size_t used = 0;
  re = std::stod(s.substr(0, split), &used);
  if (used != split) throw WrongParameters("bad complex literal: " + text);
  const std::string imPart = s.substr(split);
  if (imPart == "+") im = 1.0;
  else if (imPart == "-") im = -1.0;
  else {
    im = std::stod(imPart, &used);
    if (used != imPart.size()) throw WrongParameters("bad complex literal: " + text);
  }
  return Complex{re, im};
}

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string format_complex(Complex v) {
  std::string out = fmt_double(v.real());
  out += (v.imag() < 0.0 || std::signbit(v.imag())) ? "-" : "+";
  out += fmt_double(std::abs(v.imag()));
  out += "i";
  return out;
}

std::string content_hash(const std::string& payload) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", h);
  return buf;
}

json complex_to_json(Complex v) { return json{{"re", v.real()}, {"im", v.imag()}}; }

namespace {
Complex complex_from_json(const json& j) {
  return Complex{j.at("re").get<double>(), j.at("im").get<double>()};
}
}  // namespace

json eq_to_json(const EquationSpec& eq) {
  json j;
  j["kind"] = kind_name(eq.kind);
  j["alpha"] = complex_to_json(eq.alpha);
  j["beta"] = complex_to_json(eq.beta);
  j["gammaBranch"] = eq.gammaBranch == GammaBranch::Plus ? "plus" : "minus";
  return j;
}

EquationSpec eq_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const Complex alpha = complex_from_json(j.at("alpha"));
  const Complex beta = complex_from_json(j.at("beta"));
  const GammaBranch branch =
      j.value("gammaBranch", "plus") == std::string("minus") ? GammaBranch::Minus
                                                             : GammaBranch::Plus;
  if (kind == "i") return EquationSpec::p1();
  if (kind == "ii") return EquationSpec::p2(alpha);
  if (kind == "iv") return EquationSpec::p4(alpha, beta, branch);
  throw WrongParameters("eq_from_json: unknown kind " + kind);
}

json series_to_json(const SeriesExpansion& s, const std::string& familyOrSeed) {
  json j;
  j[s.variable == SeriesVariable::AroundPole ? "seed" : "family"] = familyOrSeed;
  if (s.variable == SeriesVariable::AroundPole) j["polePoint"] = complex_to_json(s.polePoint);
  j["exponentStep"] = json{{"num", s.exponentStep.num}, {"den", s.exponentStep.den}};
  j["leadingExponent"] = json{{"num", s.leadingExponent.num}, {"den", s.leadingExponent.den}};
  json coeffs = json::array();
  for (const auto& c : s.coeffs) coeffs.push_back(complex_to_json(c));
  j["coeffs"] = std::move(coeffs);
  j["truncationOrder"] = s.truncationOrder;
  return j;
}

json pole_events_to_json(const std::vector<PoleEvent>& events) {
  json arr = json::array();
  for (const auto& ev : events) {
    json e;
    e["p"] = complex_to_json(ev.seed.p);
    e["eps"] = ev.seed.eps;
    e["h"] = complex_to_json(ev.seed.h);
    e["pathParam"] = ev.pathParam;
    arr.push_back(std::move(e));
  }
  return arr;
}

json catalog_to_json(const PoleCatalog& catalog) {
  json j;
  j["eq"] = eq_to_json(catalog.eq);
  j["region"] = json{{"r0", catalog.region.r0},
                     {"r1", catalog.region.r1},
                     {"theta0", catalog.region.theta0},
                     {"theta1", catalog.region.theta1}};
  json poles = json::array();
  for (const auto& p : catalog.poles) {
    json e;
    e["re"] = p.seed.p.real();
    e["im"] = p.seed.p.imag();
    e["eps"] = p.seed.eps;
    e["h"] = complex_to_json(p.seed.h);
    e["stringId"] = p.stringId;
    poles.push_back(std::move(e));
  }
  j["poles"] = std::move(poles);
  json zeros = json::array();
  for (const auto& z : catalog.zeros) {
    json e;
    e["re"] = z.z.real();
    e["im"] = z.z.imag();
    e["sign"] = z.sign;
    e["multiplicity"] = z.multiplicity;
    zeros.push_back(std::move(e));
  }
  j["zeros"] = std::move(zeros);
  if (!catalog.warnings.empty()) j["warnings"] = catalog.warnings;
  return j;
}

PoleCatalog catalog_from_json(const json& j) {
  PoleCatalog catalog;
  catalog.eq = eq_from_json(j.at("eq"));
  const auto& r = j.at("region");
  catalog.region = {r.at("r0").get<double>(), r.at("r1").get<double>(),
                    r.at("theta0").get<double>(), r.at("theta1").get<double>()};
  for (const auto& e : j.at("poles")) {
    CataloguedPole p;
    p.seed.eq = catalog.eq;
    p.seed.p = Complex{e.at("re").get<double>(), e.at("im").get<double>()};
    p.seed.eps = e.at("eps").get<int>();
    p.seed.h = complex_from_json(e.at("h"));
    p.stringId = e.value("stringId", -1);
    catalog.poles.push_back(p);
  }
  if (j.contains("zeros")) {
    for (const auto& e : j.at("zeros")) {
      CataloguedZero z;
      z.z = Complex{e.at("re").get<double>(), e.at("im").get<double>()};
      z.sign = e.at("sign").get<int>();
      z.multiplicity = e.value("multiplicity", 1);
      catalog.zeros.push_back(z);
    }
  }
  return catalog;
}

json strings_to_json(const std::vector<StringModel>& strings, const PoleCatalog& catalog) {
  json arr = json::array();
  for (const auto& s : strings) {
    json e;
    e["omega"] = complex_to_json(s.omega);
    e["tau"] = json{{"num", s.tau.num}, {"den", s.tau.den}};
    e["eps"] = s.eps;
    e["alternating"] = s.alternating;
    e["theta"] = s.thetaStar;
    e["countCoeff"] = s.countingCoeff;
    e["members"] = s.memberIndices.size();
    const auto law = check_string_law(s, catalog);
    e["lemmaIndexGapError"] = law.maxIndexGapError;
    e["lemmaAngleError"] = law.angleError;
    e["lemmaCountingError"] = law.countingError;
    arr.push_back(std::move(e));
  }
  return arr;
}

json cluster_to_json(const ClusterEstimate& est) {
  json j;
  j["d"] = json{{"num", est.d.num}, {"den", est.d.den}};
  json samples = json::array();
  for (const auto& s : est.samples) {
    samples.push_back(json{{"h", complex_to_json(s.h)},
                           {"value", complex_to_json(s.value)},
                           {"scaledPoleDist", s.scaledPoleDist}});
  }
  j["samples"] = std::move(samples);
  j["histogramEdges"] = est.histogramEdges;
  j["histogramCounts"] = est.histogramCounts;
  return j;
}

std::string trajectory_to_csv(const Trajectory& traj, const RunConfig& config) {
  const bool hasW2 = traj.eq.kind == EquationKind::PIV;
  std::string body;
  body += "pathParam,zRe,zIm,wRe,wIm,w1Re,w1Im";
  if (hasW2) body += ",w2Re,w2Im";
  body += ",flags\n";
  size_t nextEvent = 0;
  for (const auto& s : traj.samples) {
    int flags = 0;
    while (nextEvent < traj.poleEvents.size() &&
           traj.poleEvents[nextEvent].pathParam <= s.s) {
      flags = 1;  // first sample at or beyond a pole hop
      ++nextEvent;
    }
    body += fmt_double(s.s);
    const Complex zs[3] = {s.jet.z, s.jet.w, s.jet.w1};
    for (const auto& v : zs) {
      body += ",";
      body += fmt_double(v.real());
      body += ",";
      body += fmt_double(v.imag());
    }
    if (hasW2) {
      const Complex w2 = s.jet.w2 ? *s.jet.w2 : Complex{0.0};
      body += ",";
      body += fmt_double(w2.real());
      body += ",";
      body += fmt_double(w2.imag());
    }
    body += ",";
    body += std::to_string(flags);
    body += "\n";
  }
  std::string out = "# config " + config.to_json().dump() + "\n";
  out += "# contentHash " + content_hash(body) + "\n";
  out += body;
  return out;
}

std::vector<Jet> jets_from_csv(const std::string& text) {
  std::vector<Jet> jets;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("pathParam", 0) == 0) continue;
    std::vector<double> vals;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
    if (vals.size() < 8) continue;
    Jet j;
    j.z = Complex{vals[1], vals[2]};
    j.w = Complex{vals[3], vals[4]};
    j.w1 = Complex{vals[5], vals[6]};
    if (vals.size() >= 10) j.w2 = Complex{vals[7], vals[8]};
    jets.push_back(j);
  }
  return jets;
}

std::string catalog_to_svg(const PoleCatalog& catalog) {
  const double R = catalog.region.r1;
  const double size = 640.0;
  const double pad = 20.0;
  auto X = [&](double x) { return pad + (x + R) / (2.0 * R) * (size - 2.0 * pad); };
  auto Y = [&](double y) { return pad + (R - y) / (2.0 * R) * (size - 2.0 * pad); };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\" viewBox=\"0 0 " << size << " " << size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Stokes rays, dashed
  const int rays = catalog.eq.kind == EquationKind::PIV ? 4
                   : (catalog.eq.kind == EquationKind::PII ? 3 : 5);
  for (int nu = 0; nu < 2 * rays; ++nu) {
    double theta = 0.0;
    switch (catalog.eq.kind) {
      case EquationKind::PIV: theta = (2.0 * nu + 1.0) * M_PI / 4.0; break;
      case EquationKind::PII: theta = (nu + 1.0) * M_PI / 3.0; break;
      case EquationKind::PI: theta = (2.0 * nu + 1.0) * M_PI / 5.0; break;
    }
    if (theta >= 2.0 * M_PI) continue;
    svg << "<line x1=\"" << X(0) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(R * std::cos(theta))
        << "\" y2=\"" << Y(R * std::sin(theta))
        << "\" stroke=\"#999\" stroke-dasharray=\"6,4\" stroke-width=\"1\"/>\n";
  }
  for (const auto& p : catalog.poles) {
    const double x = X(p.seed.p.real()), y = Y(p.seed.p.imag());
    if (p.seed.eps >= 0)
      svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"black\"/>\n";
    else
      svg << "<circle cx=\"" << x << "\" cy=\"" << y
          << "\" r=\"3\" fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"/>\n";
  }
  for (const auto& z : catalog.zeros) {
    const double x = X(z.z.real()), y = Y(z.z.imag());
    svg << "<path d=\"M" << x - 4 << " " << y << " L" << x + 4 << " " << y << " M" << x << " "
        << y - 4 << " L" << x << " " << y + 4 << " M" << x - 2.8 << " " << y - 2.8 << " L"
        << x + 2.8 << " " << y + 2.8 << " M" << x - 2.8 << " " << y + 2.8 << " L" << x + 2.8
        << " " << y - 2.8 << "\" stroke=\"#c00\" stroke-width=\"1\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string finalize_json(json payload, const RunConfig& config) {
  payload["config"] = config.to_json();
  payload["contentHash"] = content_hash(payload.dump());
  return payload.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pnlv
