#ifndef LACUNARY_LACUNARY_HPP
#define LACUNARY_LACUNARY_HPP

#include "arith.hpp"
#include "bench.hpp"
#include "dense_poly.hpp"
#include "error.hpp"
#include "factor.hpp"
#include "interp.hpp"
#include "kronecker.hpp"
#include "natural.hpp"
#include "poly_io.hpp"
#include "ring.hpp"
#include "sparse_poly.hpp"

#endif
