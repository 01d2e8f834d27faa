#ifndef CRITSET_CRITSET_HPP
#define CRITSET_CRITSET_HPP

#include "critset/bounds.hpp"
#include "critset/corpus.hpp"
#include "critset/criticality.hpp"
#include "critset/error.hpp"
#include "critset/pls.hpp"
#include "critset/search.hpp"
#include "critset/solver.hpp"
#include "critset/trades.hpp"

#endif  // CRITSET_CRITSET_HPP
