#pragma once

#include "tsmlab/core.hpp"
#include "tsmlab/constants.hpp"
#include "tsmlab/special_functions.hpp"
#include "tsmlab/quadrature.hpp"
#include "tsmlab/field.hpp"
#include "tsmlab/twisted_transforms.hpp"
#include "tsmlab/euclidean_means.hpp"
#include "tsmlab/injectivity_lab.hpp"
#include "tsmlab/io.hpp"
