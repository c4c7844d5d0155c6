#pragma once

#include "motivix/error.hpp"
#include "motivix/gf.hpp"
#include "motivix/poly.hpp"
#include "motivix/frac.hpp"
#include "motivix/residue.hpp"
#include "motivix/factor.hpp"
#include "motivix/bivar.hpp"
#include "motivix/matrix.hpp"
#include "motivix/laurent.hpp"
#include "motivix/local_factor.hpp"
#include "motivix/motive.hpp"
#include "motivix/invariants.hpp"
#include "motivix/io.hpp"
