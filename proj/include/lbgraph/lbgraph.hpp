#pragma once

#include "csr.hpp"
#include "degree.hpp"
#include "engine.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "oracles.hpp"
#include "strategies.hpp"
#include "types.hpp"
