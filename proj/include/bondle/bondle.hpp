#pragma once

#include "bondle/affine.hpp"
#include "bondle/algebra.hpp"
#include "bondle/cluster.hpp"
#include "bondle/common.hpp"
#include "bondle/diagram.hpp"
#include "bondle/modular.hpp"
#include "bondle/moves.hpp"
#include "bondle/solver.hpp"
#include "bondle/statesum.hpp"
#include "bondle/weights.hpp"
