#ifndef LACUNARY_LACUNARY_HPP
#define LACUNARY_LACUNARY_HPP

#include "lacunary/convergence.hpp"
#include "lacunary/delta2.hpp"
#include "lacunary/error.hpp"
#include "lacunary/experiments.hpp"
#include "lacunary/inequalities.hpp"
#include "lacunary/matrix.hpp"
#include "lacunary/norms.hpp"
#include "lacunary/orlicz.hpp"
#include "lacunary/schedule.hpp"
#include "lacunary/sequence.hpp"

#endif  // LACUNARY_LACUNARY_HPP
