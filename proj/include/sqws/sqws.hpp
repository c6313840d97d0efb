#pragma once

// Core library: graphs, generator terms, propagation, observables and the
// experiment harness. JSON configuration lives in sqws/config.hpp and the
// command-line front end in sqws/cli.hpp.

#include "sqws/error.hpp"
#include "sqws/graph.hpp"
#include "sqws/operators.hpp"
#include "sqws/trajectory.hpp"
#include "sqws/observables.hpp"
#include "sqws/propagate.hpp"
#include "sqws/experiments.hpp"
