#pragma once

#include "c45/dataset.hpp"
#include "c45/discretize.hpp"
#include "c45/experiments.hpp"
#include "c45/io.hpp"
#include "c45/metrics.hpp"
#include "c45/policy.hpp"
#include "c45/rng.hpp"
#include "c45/tree.hpp"
#include "c45/version.hpp"
