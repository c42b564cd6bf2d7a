#ifndef HYPERTURAN_HYPERTURAN_HPP
#define HYPERTURAN_HYPERTURAN_HPP

#include "hyperturan/constructions.hpp"
#include "hyperturan/copy_counter.hpp"
#include "hyperturan/count.hpp"
#include "hyperturan/edge_list_io.hpp"
#include "hyperturan/error.hpp"
#include "hyperturan/formulas.hpp"
#include "hyperturan/isomorphism.hpp"
#include "hyperturan/pattern.hpp"
#include "hyperturan/triple_system.hpp"
#include "hyperturan/turan_search.hpp"
#include "hyperturan/vertex_set.hpp"

#endif
