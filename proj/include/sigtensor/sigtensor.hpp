// Umbrella header.
#pragma once

#include "sigtensor/bench.hpp"
#include "sigtensor/csv.hpp"
#include "sigtensor/field.hpp"
#include "sigtensor/matrix.hpp"
#include "sigtensor/random.hpp"
#include "sigtensor/recovery.hpp"
#include "sigtensor/serialization.hpp"
#include "sigtensor/signatures.hpp"
#include "sigtensor/tensor_algebra.hpp"
