/// @file vpf.hpp
/// Everything except the command-line driver.
#pragma once

#include "vpf/arith.hpp"
#include "vpf/error.hpp"
#include "vpf/evaluate.hpp"
#include "vpf/genfunc.hpp"
#include "vpf/geometry.hpp"
#include "vpf/latex.hpp"
#include "vpf/laurent.hpp"
#include "vpf/parallel.hpp"
#include "vpf/pfd.hpp"
#include "vpf/quasi.hpp"
#include "vpf/relations.hpp"
#include "vpf/rootsys.hpp"
#include "vpf/serialize.hpp"
