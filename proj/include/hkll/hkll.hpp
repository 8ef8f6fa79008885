#pragma once

#include "hkll/cohomology.hpp"
#include "hkll/fujiki.hpp"
#include "hkll/gerbe.hpp"
#include "hkll/lattice.hpp"
#include "hkll/mukai.hpp"
#include "hkll/reflections.hpp"
#include "hkll/weierstrass.hpp"
