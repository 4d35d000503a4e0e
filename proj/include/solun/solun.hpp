#pragma once

#include "solun/error.hpp"
#include "solun/fresh.hpp"
#include "solun/generalizer.hpp"
#include "solun/linear_solver.hpp"
#include "solun/normalize.hpp"
#include "solun/parser.hpp"
#include "solun/print.hpp"
#include "solun/problem.hpp"
#include "solun/substitution.hpp"
#include "solun/superficializer.hpp"
#include "solun/term.hpp"
#include "solun/tree_export.hpp"
#include "solun/type.hpp"
