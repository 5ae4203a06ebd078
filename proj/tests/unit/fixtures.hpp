#pragma once

#include "resokit/radial_model.hpp"

namespace testfx {

// Unit-ball Neumann resonance set (d=3, rho=1) up to l_max, memoized so the
// solver runs once per cutoff for the whole test binary.
const resokit::radial::ResonanceSet& unit_ball_set(int l_max);

}  // namespace testfx
