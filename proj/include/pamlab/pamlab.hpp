#pragma once

// Exact-arithmetic toolkit for one-dimensional piecewise affine maps over the
// rationals: p-adic weight machinery, reachability deciders, beta-expansion
// systems, transfer-operator iteration and fractional-part experiments.

#include "pamlab/beta.hpp"
#include "pamlab/dyadic.hpp"
#include "pamlab/errors.hpp"
#include "pamlab/interval.hpp"
#include "pamlab/io.hpp"
#include "pamlab/padic.hpp"
#include "pamlab/pam.hpp"
#include "pamlab/rational.hpp"
#include "pamlab/reach.hpp"
#include "pamlab/seqlab.hpp"
#include "pamlab/transfer.hpp"
