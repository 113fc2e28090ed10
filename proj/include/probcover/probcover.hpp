#pragma once

// Umbrella header for the probcover selection library.

#include "probcover/common.hpp"
#include "probcover/cover_graph.hpp"
#include "probcover/delta_estimation.hpp"
#include "probcover/embedding_set.hpp"
#include "probcover/evaluation.hpp"
#include "probcover/io.hpp"
#include "probcover/kmeans.hpp"
#include "probcover/oracle.hpp"
#include "probcover/rng.hpp"
#include "probcover/selection.hpp"
