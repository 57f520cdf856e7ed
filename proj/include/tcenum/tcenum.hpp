#pragma once

// Umbrella header for the congruence enumeration library.

#include "concrete.hpp"
#include "enumerate.hpp"
#include "felsch_tree.hpp"
#include "union_find.hpp"
#include "variants.hpp"
#include "word_graph.hpp"
#include "words.hpp"
