// sqent.hpp — umbrella header

#pragma once

#include "sqent/asymptotic.hpp"
#include "sqent/entanglement.hpp"
#include "sqent/error.hpp"
#include "sqent/evolve.hpp"
#include "sqent/liouvillian.hpp"
#include "sqent/model.hpp"
#include "sqent/scan.hpp"
