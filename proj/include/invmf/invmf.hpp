#pragma once

#include "invmf/arith.hpp"
#include "invmf/bigint.hpp"
#include "invmf/engine.hpp"
#include "invmf/expression.hpp"
#include "invmf/functions.hpp"
#include "invmf/lattice.hpp"
#include "invmf/semiring.hpp"
