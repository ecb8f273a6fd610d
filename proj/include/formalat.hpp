#pragma once

#include "formalat/config.hpp"
#include "formalat/context.hpp"
#include "formalat/corpus.hpp"
#include "formalat/critical.hpp"
#include "formalat/element_set.hpp"
#include "formalat/error.hpp"
#include "formalat/formation.hpp"
#include "formalat/group_io.hpp"
#include "formalat/invariants.hpp"
#include "formalat/lattice.hpp"
#include "formalat/partition.hpp"
#include "formalat/perm.hpp"
#include "formalat/perm_group.hpp"
#include "formalat/subnormality.hpp"
#include "formalat/table.hpp"
#include "formalat/verifier.hpp"
