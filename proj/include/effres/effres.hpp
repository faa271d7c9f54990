// effres.hpp - umbrella header.
#pragma once

#include "effres/error.hpp"
#include "effres/generators.hpp"
#include "effres/graph.hpp"
#include "effres/graph_io.hpp"
#include "effres/local_estimator.hpp"
#include "effres/matrices.hpp"
#include "effres/monte_carlo.hpp"
#include "effres/perturbation.hpp"
#include "effres/query_oracle.hpp"
#include "effres/random.hpp"
#include "effres/spectral.hpp"
