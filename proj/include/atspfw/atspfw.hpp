#pragma once

#include "cost.hpp"
#include "determining_vertex.hpp"
#include "error.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "oracles.hpp"
#include "ordinal_index.hpp"
#include "permutation.hpp"
#include "phase1.hpp"
#include "phase2.hpp"
#include "phase3.hpp"
#include "reduced_matrix.hpp"
#include "solver.hpp"
#include "trace.hpp"
