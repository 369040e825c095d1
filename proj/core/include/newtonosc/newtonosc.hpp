#pragma once

#include "newtonosc/bounds.hpp"
#include "newtonosc/decay_fit.hpp"
#include "newtonosc/error.hpp"
#include "newtonosc/exact_linalg.hpp"
#include "newtonosc/ladder.hpp"
#include "newtonosc/lp.hpp"
#include "newtonosc/nondegeneracy.hpp"
#include "newtonosc/phase.hpp"
#include "newtonosc/polyhedron.hpp"
#include "newtonosc/quadrature.hpp"
#include "newtonosc/rational.hpp"
#include "newtonosc/report.hpp"
