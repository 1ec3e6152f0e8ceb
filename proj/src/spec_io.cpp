#include "cobreak/spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace cobreak {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& detail) {
  throw spec_parse_error(origin + ": " + detail);
}

double require_number(const json& j, const std::string& origin, const std::string& field) {
  if (!j.is_number()) fail(origin, field + " must be a number");
  return j.get<double>();
}

std::complex<double> parse_complex(const json& j, const std::string& origin,
                                   const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(origin, field + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

AffineRep parse_affine(const json& j, int dim, const std::string& origin) {
  if (!j.is_object()) fail(origin, "affine payload must be an object");
  if (!j.contains("M") || !j.contains("n")) fail(origin, "affine payload needs M and n");
  const int m = dim * dim - 1;

  const json& jm = j["M"];
  if (!jm.is_array() || static_cast<int>(jm.size()) != m) {
    std::ostringstream msg;
    msg << "affine.M must have " << m << " rows, got " << jm.size();
    fail(origin, msg.str());
  }
  Eigen::MatrixXd M(m, m);
  for (int r = 0; r < m; ++r) {
    if (!jm[r].is_array() || static_cast<int>(jm[r].size()) != m) {
      std::ostringstream msg;
      msg << "affine.M row " << r << " must have " << m << " entries";
      fail(origin, msg.str());
    }
    for (int c = 0; c < m; ++c) {
      std::ostringstream field;
      field << "affine.M[" << r << "][" << c << "]";
      M(r, c) = require_number(jm[r][c], origin, field.str());
    }
  }

  const json& jn = j["n"];
  if (!jn.is_array() || static_cast<int>(jn.size()) != m) {
    std::ostringstream msg;
    msg << "affine.n must have " << m << " entries, got " << jn.size();
    fail(origin, msg.str());
  }
  Eigen::VectorXd n(m);
  for (int i = 0; i < m; ++i) {
    std::ostringstream field;
    field << "affine.n[" << i << "]";
    n(i) = require_number(jn[i], origin, field.str());
  }
  return AffineRep(dim, std::move(M), std::move(n));
}

KrausChannel parse_kraus(const json& j, int dim, const std::string& origin) {
  if (!j.is_array() || j.empty()) fail(origin, "kraus payload must be a non-empty array");
  std::vector<Eigen::MatrixXcd> ops;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& jk = j[i];
    if (!jk.is_array() || static_cast<int>(jk.size()) != dim) {
      std::ostringstream msg;
      msg << "kraus[" << i << "] must have " << dim << " rows";
      fail(origin, msg.str());
    }
    Eigen::MatrixXcd k(dim, dim);
    for (int r = 0; r < dim; ++r) {
      if (!jk[r].is_array() || static_cast<int>(jk[r].size()) != dim) {
        std::ostringstream msg;
        msg << "kraus[" << i << "] row " << r << " must have " << dim << " entries";
        fail(origin, msg.str());
      }
      for (int c = 0; c < dim; ++c) {
        std::ostringstream field;
        field << "kraus[" << i << "][" << r << "][" << c << "]";
        k(r, c) = parse_complex(jk[r][c], origin, field.str());
      }
    }
    ops.push_back(std::move(k));
  }
  try {
    return KrausChannel(dim, std::move(ops));
  } catch (const std::invalid_argument& e) {
    fail(origin, e.what());
  }
}

NCFamilyParams parse_family(const json& j, const std::string& origin, bool degrees) {
  if (!j.is_object()) fail(origin, "nc_family payload must be an object");
  if (!j.contains("family") || !j["family"].is_number_integer())
    fail(origin, "nc_family.family must be an integer");
  NCFamilyParams p;
  p.family = j["family"].get<int>();
  if (p.family != 1 && p.family != 2) fail(origin, "nc_family.family must be 1 or 2");
  for (const char* name : {"theta", "phi", "xi"})
    if (!j.contains(name)) fail(origin, std::string("nc_family.") + name + " is required");
  p.theta = require_number(j["theta"], origin, "nc_family.theta");
  p.phi = require_number(j["phi"], origin, "nc_family.phi");
  p.xi = require_number(j["xi"], origin, "nc_family.xi");
  p.eta = j.contains("eta") ? require_number(j["eta"], origin, "nc_family.eta") : 0.0;
  if (degrees) {
    const double scale = std::numbers::pi / 180.0;
    p.theta *= scale;
    p.phi *= scale;
    p.xi *= scale;
    p.eta *= scale;
  }
  for (double v : {p.theta, p.phi, p.xi, p.eta})
    if (!std::isfinite(v)) fail(origin, "nc_family angles must be finite");
  return p;
}

}  // namespace

ChannelSpec parse_spec_text(const std::string& text, const std::string& origin,
                            bool degrees) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("invalid document: ") + e.what());
  }
  if (!doc.is_object()) fail(origin, "top level must be an object");

  if (!doc.contains("dim") || !doc["dim"].is_number_integer())
    fail(origin, "dim must be an integer");
  const int dim = doc["dim"].get<int>();
  if (dim < 2) fail(origin, "dim must be >= 2");

  if (!doc.contains("representation") || !doc["representation"].is_string())
    fail(origin, "representation must be a string");
  const std::string rep = doc["representation"].get<std::string>();

  ChannelSpec spec;
  spec.dim = dim;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) fail(origin, "label must be a string");
    spec.label = doc["label"].get<std::string>();
  }

  const int payloads = static_cast<int>(doc.contains("affine")) +
                       static_cast<int>(doc.contains("kraus")) +
                       static_cast<int>(doc.contains("nc_family"));
  if (payloads != 1) fail(origin, "exactly one of affine/kraus/nc_family must be present");

  if (rep == "affine") {
    spec.representation = Representation::affine;
    if (!doc.contains("affine")) fail(origin, "representation is affine but payload is not");
    try {
      spec.affine = parse_affine(doc["affine"], dim, origin);
    } catch (const std::invalid_argument& e) {
      fail(origin, e.what());
    }
  } else if (rep == "kraus") {
    spec.representation = Representation::kraus;
    if (!doc.contains("kraus")) fail(origin, "representation is kraus but payload is not");
    spec.kraus = parse_kraus(doc["kraus"], dim, origin);
  } else if (rep == "nc_family") {
    spec.representation = Representation::nc_family;
    if (!doc.contains("nc_family"))
      fail(origin, "representation is nc_family but payload is not");
    if (dim != 2) fail(origin, "nc_family channels are qubit channels; dim must be 2");
    spec.family = parse_family(doc["nc_family"], origin, degrees);
  } else {
    fail(origin, "representation must be one of affine, kraus, nc_family");
  }
  return spec;
}

ChannelSpec parse_spec(const std::string& path, bool degrees) {
  std::ifstream in(path);
  if (!in) fail(path, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), path, degrees);
}

AffineRep spec_affine(const ChannelSpec& spec) {
  if (spec.affine) return *spec.affine;
  if (spec.kraus) return kraus_to_affine(*spec.kraus);
  if (spec.family) return kraus_to_affine(nc_family_channel(*spec.family));
  throw spec_parse_error("channel spec carries no payload");
}

std::optional<KrausChannel> spec_kraus(const ChannelSpec& spec) {
  if (spec.kraus) return spec.kraus;
  if (spec.family) return nc_family_channel(*spec.family);
  return std::nullopt;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace cobreak
