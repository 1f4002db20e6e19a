#pragma once

#include "algebra.hpp"
#include "common.hpp"
#include "config.hpp"
#include "foliation.hpp"
#include "gauss_manin.hpp"
#include "holonomy.hpp"
#include "homology.hpp"
#include "modular.hpp"
#include "periods.hpp"
#include "quadrature.hpp"
#include "theta.hpp"
