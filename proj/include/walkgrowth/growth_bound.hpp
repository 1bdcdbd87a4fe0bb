#pragma once

#include <optional>
#include <string>
#include <vector>

#include "walkgrowth/stepset.hpp"

namespace walkgrowth {

enum class BoundKind { upper, lower, exact };

inline const char* to_string(BoundKind k) {
  switch (k) {
    case BoundKind::upper: return "upper";
    case BoundKind::lower: return "lower";
    case BoundKind::exact: return "exact";
  }
  return "?";
}

/// How a bound was obtained.
struct Certificate {
  enum class Kind {
    angle,              // best bounding half-plane, theta recorded
    hyperplane,         // best bounding hyperplane, normal recorded
    partition,          // shuffle of two sub-models
    rotation,           // rotation of one step
    excursion,          // excursion growth P at the critical point
    fr_formula,         // closed form for small-step planar models
    half_plane,         // quarter-plane count equals a half-plane count
    enumeration_floor,  // max q_n^{1/n} from exact counts
    trivial,            // unconstrained growth |S|
  };
  Kind kind;
  std::string description;
  std::optional<double> theta;
  std::vector<double> normal;
  std::vector<std::string> parts;  // partition members or rotation chain, in compass/vector form
};

inline const char* to_string(Certificate::Kind k) {
  switch (k) {
    case Certificate::Kind::angle: return "angle";
    case Certificate::Kind::hyperplane: return "hyperplane";
    case Certificate::Kind::partition: return "partition";
    case Certificate::Kind::rotation: return "rotation";
    case Certificate::Kind::excursion: return "excursion";
    case Certificate::Kind::fr_formula: return "fr_formula";
    case Certificate::Kind::half_plane: return "half_plane";
    case Certificate::Kind::enumeration_floor: return "enumeration_floor";
    case Certificate::Kind::trivial: return "trivial";
  }
  return "?";
}

struct GrowthBound {
  double value;
  BoundKind kind;
  Certificate certificate;
  StepSet source_model;
};

}  // namespace walkgrowth
