#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pnlv/integrate.hpp"
#include "pnlv/localseries.hpp"
#include "pnlv/polefield.hpp"
#include "pnlv/rescale.hpp"

namespace pnlv {

using json = nlohmann::ordered_json;

/// Fully resolved run configuration; embedded into every output file so
/// reruns are reproducible byte for byte.
struct RunConfig {
  std::string subcommand;
  std::string eq;          // i | ii | iv
  std::string alpha = "0+0i";
  std::string beta = "0+0i";
  std::string gammaBranch = "plus";
  std::string seed;
  std::string path;
  std::string region;
  double tol = 1e-10;
  int order = 14;
  std::string suite;
  unsigned long long randomSeed = 20240817ULL;
  int threads = 0;

  json to_json() const;
};

/// Complex literals in the form a+bi / a-bi / a / bi (no spaces).
Complex parse_complex(const std::string& text);
std::string format_complex(Complex v);

/// FNV-1a 64-bit content hash, hex-encoded.
std::string content_hash(const std::string& payload);

json eq_to_json(const EquationSpec& eq);
EquationSpec eq_from_json(const json& j);
json complex_to_json(Complex v);

json series_to_json(const SeriesExpansion& s, const std::string& familyOrSeed);
json pole_events_to_json(const std::vector<PoleEvent>& events);
json catalog_to_json(const PoleCatalog& catalog);
PoleCatalog catalog_from_json(const json& j);
json strings_to_json(const std::vector<StringModel>& strings, const PoleCatalog& catalog);
json cluster_to_json(const ClusterEstimate& est);

/// Trajectory CSV with the config header; columns follow the declared
/// schema: pathParam, zRe, zIm, wRe, wIm, w1Re, w1Im [, w2Re, w2Im], flags.
std::string trajectory_to_csv(const Trajectory& traj, const RunConfig& config);

/// Parse a trajectory CSV produced by trajectory_to_csv (header ignored).
std::vector<Jet> jets_from_csv(const std::string& text);

/// SVG pole map: filled/open circles by residue sign, stars for zeros,
/// dashed Stokes rays.
std::string catalog_to_svg(const PoleCatalog& catalog);

/// Serialize with an embedded content hash and the run configuration.
std::string finalize_json(json payload, const RunConfig& config);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace pnlv
