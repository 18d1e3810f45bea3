#pragma once

// Umbrella header for the library (the CLI layer lives in bsgen/cli.hpp).

#include "bsgen/annihilator.hpp"
#include "bsgen/family.hpp"
#include "bsgen/fs_oracle.hpp"
#include "bsgen/generic.hpp"
#include "bsgen/parse.hpp"
#include "bsgen/primes.hpp"
#include "bsgen/stratify.hpp"
