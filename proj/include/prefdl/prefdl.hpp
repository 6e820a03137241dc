#pragma once

// Umbrella header: the whole library.

#include "prefdl/bitset.hpp"
#include "prefdl/dynamics.hpp"
#include "prefdl/enumerate.hpp"
#include "prefdl/errors.hpp"
#include "prefdl/eval.hpp"
#include "prefdl/formula.hpp"
#include "prefdl/io.hpp"
#include "prefdl/modal.hpp"
#include "prefdl/model.hpp"
#include "prefdl/parser.hpp"
#include "prefdl/pgraph.hpp"
#include "prefdl/postulates.hpp"
#include "prefdl/semantics.hpp"
#include "prefdl/symbols.hpp"
#include "prefdl/verify.hpp"
#include "prefdl/witness.hpp"
