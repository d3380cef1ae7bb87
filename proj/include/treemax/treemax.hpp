#pragma once

#include "treemax/canonical.hpp"
#include "treemax/construct.hpp"
#include "treemax/degree_sequence.hpp"
#include "treemax/labeled_tree.hpp"
#include "treemax/oracle.hpp"
#include "treemax/prufer.hpp"
#include "treemax/serialize.hpp"
#include "treemax/weight_function.hpp"
