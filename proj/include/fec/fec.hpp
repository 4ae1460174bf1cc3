#pragma once

#include "fec/rational.hpp"
#include "fec/linalg.hpp"
#include "fec/lattice.hpp"
#include "fec/bernstein.hpp"
#include "fec/decomposition.hpp"
#include "fec/functional.hpp"
#include "fec/elements.hpp"
#include "fec/mesh.hpp"
#include "fec/parallel.hpp"
#include "fec/assembly.hpp"
#include "fec/div_stability.hpp"
#include "fec/complex.hpp"
