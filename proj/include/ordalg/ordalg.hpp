#pragma once

#include "ordalg/algebra.hpp"
#include "ordalg/colimit.hpp"
#include "ordalg/enumerate.hpp"
#include "ordalg/error.hpp"
#include "ordalg/fixtures.hpp"
#include "ordalg/io.hpp"
#include "ordalg/monad.hpp"
#include "ordalg/poset.hpp"
#include "ordalg/report.hpp"
#include "ordalg/term.hpp"
#include "ordalg/verify.hpp"
