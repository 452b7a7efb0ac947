#pragma once

#include "ctphs/covering.hpp"
#include "ctphs/cubature.hpp"
#include "ctphs/error.hpp"
#include "ctphs/io.hpp"
#include "ctphs/jacobi.hpp"
#include "ctphs/kernels.hpp"
#include "ctphs/manifold.hpp"
#include "ctphs/mzlab.hpp"
#include "ctphs/parallel.hpp"
#include "ctphs/quadrature.hpp"
#include "ctphs/random.hpp"
#include "ctphs/report.hpp"
#include "ctphs/version.hpp"
