#pragma once

// Convenience include for the whole library.

#include "srvf/curve.hpp"
#include "srvf/transform.hpp"
#include "srvf/action.hpp"
#include "srvf/matching.hpp"
#include "srvf/dp.hpp"
#include "srvf/rational.hpp"
#include "srvf/interval_set.hpp"
#include "srvf/counterexample.hpp"
#include "srvf/shape.hpp"
#include "srvf/io.hpp"
