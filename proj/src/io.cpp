#include "gravnoise/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gravnoise/errors.hpp"
#include "json.hpp"

namespace gravnoise::io {
namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InputError(std::string("ensemble JSON: missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

void append_g17(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace

std::string ensemble_to_json(const BackgroundEnsemble& ensemble) {
  json modes = json::array();
  for (const GwMode& m : ensemble.modes) {
    modes.push_back({{"direction", {m.direction[0], m.direction[1], m.direction[2]}},
                     {"omega", m.omega},
                     {"amp_plus", m.amp_plus},
                     {"amp_cross", m.amp_cross},
                     {"phase0", m.phase0}});
  }
  json doc = {{"sigma", ensemble.sigma},
              {"seed", ensemble.seed},
              {"h_max", ensemble.h_max},
              {"modes", std::move(modes)}};
  return doc.dump(2) + "\n";
}

BackgroundEnsemble ensemble_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("ensemble JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("ensemble JSON: top level must be an object");

  BackgroundEnsemble ens;
  ens.sigma = number(doc, "sigma");
  ens.h_max = number(doc, "h_max");
  if (!doc.contains("seed") || !doc.at("seed").is_number_unsigned()) {
    throw InputError("ensemble JSON: 'seed' must be a non-negative integer");
  }
  ens.seed = doc.at("seed").get<std::uint64_t>();
  if (!doc.contains("modes") || !doc.at("modes").is_array()) {
    throw InputError("ensemble JSON: 'modes' must be an array");
  }
  for (const json& jm : doc.at("modes")) {
    if (!jm.is_object()) throw InputError("ensemble JSON: each mode must be an object");
    const json& dir = jm.contains("direction") ? jm.at("direction") : json();
    if (!dir.is_array() || dir.size() != 3) {
      throw InputError("ensemble JSON: 'direction' must be a 3-element array");
    }
    GwMode m;
    for (std::size_t k = 0; k < 3; ++k) {
      if (!dir[k].is_number()) throw InputError("ensemble JSON: direction entries must be numbers");
      m.direction[k] = dir[k].get<double>();
    }
    m.omega = number(jm, "omega");
    m.amp_plus = number(jm, "amp_plus");
    m.amp_cross = number(jm, "amp_cross");
    m.phase0 = number(jm, "phase0");
    ens.modes.push_back(m);
  }
  validate(ens);
  return ens;
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out(kTrajectoryHeader);
  out += '\n';
  for (const DeviationState& s : trajectory.samples) {
    append_g17(out, s.tau);
    for (double v : s.ell) {
      out += ',';
      append_g17(out, v);
    }
    for (double v : s.ell_dot) {
      out += ',';
      append_g17(out, v);
    }
    out += '\n';
  }
  return out;
}

std::string wavefield_csv(const WaveField& field) {
  std::string out = "x,re_psi,im_psi\n";
  for (std::size_t i = 0; i < field.psi.size(); ++i) {
    append_g17(out, field.grid.x(i));
    out += ',';
    append_g17(out, field.psi[i].real());
    out += ',';
    append_g17(out, field.psi[i].imag());
    out += '\n';
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace gravnoise::io
