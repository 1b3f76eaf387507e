#pragma once

#include "chaindecomp/canon_t3.hpp"
#include "chaindecomp/chain.hpp"
#include "chaindecomp/errors.hpp"
#include "chaindecomp/field.hpp"
#include "chaindecomp/gadget.hpp"
#include "chaindecomp/invariants.hpp"
#include "chaindecomp/io.hpp"
#include "chaindecomp/matrix.hpp"
#include "chaindecomp/subspace.hpp"
