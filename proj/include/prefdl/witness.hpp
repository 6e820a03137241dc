#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "prefdl/formula.hpp"
#include "prefdl/modal.hpp"
#include "prefdl/model.hpp"
#include "prefdl/pgraph.hpp"

namespace prefdl {

// One labelled component of a counterexample. Formula values render inline;
// model and graph values render as multi-line stanzas in the file formats.
using WitnessValue =
    std::variant<std::string, PropFormula, ModalFormula, PreferenceModel, PGraph, GroundedPGraph>;

struct WitnessField {
  std::string key;
  WitnessValue value;
};

// A re-checkable counterexample: every field needed to replay the single
// failing instance, in presentation order.
using Witness = std::vector<WitnessField>;

} // namespace prefdl
