#pragma once

#include "gfk/entanglement.hpp"
#include "gfk/fission.hpp"
#include "gfk/gf2.hpp"
#include "gfk/graph_state.hpp"
#include "gfk/orbit.hpp"
#include "gfk/serialize.hpp"
#include "gfk/statevector.hpp"
