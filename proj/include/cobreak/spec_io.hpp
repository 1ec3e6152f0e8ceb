#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cobreak/channel.hpp"

namespace cobreak {

// Input file problem; the message carries file and field context (CLI exit 2).
class spec_parse_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Representation { kraus, affine, nc_family };

// A channel description read from disk.  Exactly one payload is present and
// it matches `representation`.
struct ChannelSpec {
  int dim = 0;
  Representation representation = Representation::affine;
  std::string label;

  std::optional<KrausChannel> kraus;
  std::optional<AffineRep> affine;
  std::optional<NCFamilyParams> family;
};

// Parse a channel-spec document.  Layout:
//   {
//     "dim": 2,
//     "representation": "affine" | "kraus" | "nc_family",
//     "label": "optional name",
//     "affine":    {"M": [[..]..], "n": [..]},
//     "kraus":     [ [[ [re,im], .. ], ..], .. ],
//     "nc_family": {"family": 1, "theta": t, "phi": p, "xi": x, "eta": e}
//   }
// With degrees = true the nc_family angles are converted from degrees.
ChannelSpec parse_spec(const std::string& path, bool degrees = false);
ChannelSpec parse_spec_text(const std::string& text, const std::string& origin,
                            bool degrees = false);

// Affine representation of the spec, derived when not stored directly.
AffineRep spec_affine(const ChannelSpec& spec);
// Kraus form when one is available (kraus and nc_family inputs).
std::optional<KrausChannel> spec_kraus(const ChannelSpec& spec);

// Fixed-width decimal rendering used for all emitted numbers (17 significant
// digits, enough to round-trip a double).
std::string format_number(double x);

}  // namespace cobreak
