#ifndef APL_APL_HPP
#define APL_APL_HPP

#include "apl/rational.hpp"
#include "apl/seqcore.hpp"
#include "apl/arrangement.hpp"
#include "apl/simplex.hpp"
#include "apl/realize.hpp"
#include "apl/extend.hpp"
#include "apl/duality.hpp"
#include "apl/dynamics.hpp"
#include "apl/generators.hpp"
#include "apl/io.hpp"
#include "apl/svg.hpp"

#endif  // APL_APL_HPP
