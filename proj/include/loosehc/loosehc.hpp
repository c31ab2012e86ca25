#pragma once

#define LOOSEHC_VERSION "0.1.0"

#include "rng.hpp"
#include "text_io.hpp"
#include "hypercore.hpp"
#include "colorgraph.hpp"
#include "sample.hpp"
#include "solve.hpp"
#include "reduce.hpp"
#include "lab.hpp"
