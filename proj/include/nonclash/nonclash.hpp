#pragma once

// Umbrella header.

#include "nonclash/error.hpp"
#include "nonclash/graph.hpp"
#include "nonclash/family.hpp"
#include "nonclash/teaching.hpp"
#include "nonclash/solver.hpp"
#include "nonclash/oracle.hpp"
#include "nonclash/vertex_integrity.hpp"
#include "nonclash/twins.hpp"
#include "nonclash/prune.hpp"
#include "nonclash/reduce.hpp"
#include "nonclash/cores.hpp"
#include "nonclash/lift.hpp"
#include "nonclash/instance.hpp"
#include "nonclash/sat3.hpp"
#include "nonclash/nae.hpp"
#include "nonclash/io.hpp"
